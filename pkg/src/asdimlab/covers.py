"""s-covers: sequences of far-apart, uniformly bounded set families.

Disjointness convention used everywhere in this package: a family is
r-disjoint when distinct sets are MORE than r apart (equivalently, at
integer distance >= r + 1).  The strict reading is the one under which the
small-cube infeasibility facts that anchor the test suite are true; with a
non-strict reading they fail already on the 5x5 grid (split the grid into
parity classes of singletons).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    HullCoverageError,
    InvalidInputError,
    ResourceLimitError,
    SpaceMismatchError,
)
from .spaces import (
    CoarseMap,
    FiniteMetricSpace,
    build_grid_space,
    check_coarse_embedding,
    subspace,
)

# Above this point count, lattice-box spaces switch to the vectorized
# label-propagation disjointness check.
_LATTICE_FAST_THRESHOLD = 5_000


@dataclass(frozen=True)
class SetFamily:
    """Sets with a declared disjointness r and a declared bound D.

    A disjointness of 0 makes no separation claim; it appears only on
    degenerate transported families and is flagged by the producer.
    """

    sets: tuple
    disjointness: int
    bound: int

    def __post_init__(self):
        if self.disjointness < 0 or self.bound < 0:
            raise InvalidInputError("declared disjointness/bound must be >= 0")

    @property
    def n_sets(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class SCover:
    """One family per demand entry, all sharing the uniform bound."""

    space_label: str
    demands: tuple
    bound: int
    families: tuple

    def family_sets(self) -> list:
        return [list(f.sets) for f in self.families]

    def total_sets(self) -> int:
        return sum(f.n_sets for f in self.families)

    def retagged(self, label: str) -> "SCover":
        return SCover(label, self.demands, self.bound, self.families)


def make_cover(space_label: str, demands: Sequence[int], bound: int,
               families: Sequence[Iterable]) -> SCover:
    """Build an SCover from raw per-family collections of point sets."""
    demands = tuple(int(x) for x in demands)
    fams = tuple(
        SetFamily(tuple(frozenset(s) for s in fam), demands[i], bound)
        for i, fam in enumerate(families)
    )
    if len(fams) != len(demands):
        raise InvalidInputError("one family per demand entry required")
    return SCover(space_label, demands, int(bound), fams)


@dataclass(frozen=True)
class CoverViolation:
    kind: str  # structure | declaration | membership | coverage | diameter | disjointness
    family: Optional[int]
    detail: str


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    violation: Optional[CoverViolation] = None

    def __bool__(self):
        return self.ok


def _fail(kind, family, detail) -> CoverReport:
    return CoverReport(False, CoverViolation(kind, family, detail))


def _taxicab_diameter(coords: np.ndarray) -> int:
    """Exact taxicab diameter via directional projections: the L1 distance is
    the maximum over sign patterns of a linear form, so the diameter is the
    largest projected spread."""
    if len(coords) <= 1:
        return 0
    d = coords.shape[1]
    best = 0
    for signs in itertools.product((1, -1), repeat=d - 1):
        w = np.array((1,) + signs, dtype=np.int64)
        proj = coords @ w
        best = max(best, int(proj.max() - proj.min()))
    return best


def _set_diameter(space: FiniteMetricSpace, idx: np.ndarray) -> int:
    if space.kind == "taxicab":
        return _taxicab_diameter(space.coords[idx])
    sub = space.distance_matrix[np.ix_(idx, idx)]
    return int(sub.max()) if len(idx) > 1 else 0


def _min_cross(space: FiniteMetricSpace, a: np.ndarray, b: np.ndarray) -> int:
    """Exact minimum distance between two index sets."""
    if space.kind == "matrix" or space.n_points <= 2000:
        sub = space.distance_matrix[np.ix_(a, b)]
        return int(sub.min())
    ca = space.coords[a]
    cb = space.coords[b]
    best = None
    chunk = max(1, 4_000_000 // max(1, len(b) * ca.shape[1]))
    for lo in range(0, len(ca), chunk):
        block = np.abs(ca[lo : lo + chunk, None, :] - cb[None, :, :]).sum(axis=2)
        m = int(block.min())
        best = m if best is None else min(best, m)
    return best


def _lattice_layout(space: FiniteMetricSpace):
    steps = np.array(space.lattice_steps, dtype=np.int64)
    box = space.lattice_box
    counts = 2 * (box // steps) + 1
    lows = -(box // steps) * steps
    return steps, lows, counts


def _lattice_disjointness(space, fam_idx_sets, r):
    """Label-propagation separation check on a full lattice box.

    Runs a multi-source shortest-path relaxation over the box (per-axis edge
    weight = lattice step; geodesics in a full box realize the taxicab
    distance exactly) and reports any edge witnessing two differently
    labeled sets at distance <= r.  Returns (ok, (set_a, set_b)) where the
    pair is present on failure.
    """
    steps, lows, counts = _lattice_layout(space)
    dims = tuple(int(c) for c in counts)
    big = np.int64(1) << 40
    lab = np.full(dims, -1, dtype=np.int32)
    dst = np.full(dims, big, dtype=np.int64)
    # seed sources; overlap between sets is distance 0
    for k, idx in enumerate(fam_idx_sets):
        pos = (space.coords[idx] - lows) // steps
        flat = tuple(pos[:, a] for a in range(pos.shape[1]))
        existing = lab[flat]
        clash = existing >= 0
        if clash.any():
            other = int(existing[clash][0])
            return False, (other, k)
        lab[flat] = k
        dst[flat] = 0

    naxes = len(dims)
    w = [int(s) for s in steps]

    def axis_slices(a, d):
        src = [slice(None)] * naxes
        dstl = [slice(None)] * naxes
        if d > 0:
            src[a] = slice(None, -1)
            dstl[a] = slice(1, None)
        else:
            src[a] = slice(1, None)
            dstl[a] = slice(None, -1)
        return tuple(src), tuple(dstl)

    changed = True
    while changed:
        changed = False
        for a in range(naxes):
            for d in (1, -1):
                ssrc, sdst = axis_slices(a, d)
                cand = dst[ssrc] + w[a]
                better = (cand < dst[sdst]) & (cand <= r)
                if better.any():
                    dst[sdst][better] = cand[better]
                    lab[sdst][better] = lab[ssrc][better]
                    changed = True

    for a in range(naxes):
        ssrc, sdst = axis_slices(a, 1)
        lu, lv = lab[ssrc], lab[sdst]
        conflict = (lu >= 0) & (lv >= 0) & (lu != lv) & (dst[ssrc] + dst[sdst] + w[a] <= r)
        if conflict.any():
            where = np.argwhere(conflict)[0]
            i = tuple(where)
            return False, (int(lu[i]), int(lv[i]))
    return True, None


def check_s_cover(space: FiniteMetricSpace, cover: SCover) -> CoverReport:
    """Certify an SCover exactly: declarations, coverage, diameters and
    strict disjointness.  The first violation found is reported."""
    if cover.space_label != space.label:
        raise SpaceMismatchError(
            f"cover is for {cover.space_label!r}, space is {space.label!r}"
        )
    if len(cover.families) != len(cover.demands):
        return _fail("structure", None,
                     f"{len(cover.families)} families for {len(cover.demands)} demands")
    if any(d < 0 for d in cover.demands):
        return _fail("structure", None, "negative demand entry")
    for i, fam in enumerate(cover.families):
        if fam.disjointness != cover.demands[i]:
            return _fail("declaration", i,
                         f"family declares {fam.disjointness}, demand is {cover.demands[i]}")
        if fam.bound != cover.bound:
            return _fail("declaration", i,
                         f"family declares bound {fam.bound}, cover bound is {cover.bound}")

    # membership (index conversion) and nonemptiness
    fam_indices = []
    for i, fam in enumerate(cover.families):
        idx_sets = []
        for k, st in enumerate(fam.sets):
            if not st:
                return _fail("membership", i, f"set {k} is empty")
            try:
                idx_sets.append(space.indices(st))
            except InvalidInputError as exc:
                return _fail("membership", i, str(exc))
        fam_indices.append(idx_sets)

    seen = np.zeros(space.n_points, dtype=bool)
    for idx_sets in fam_indices:
        for idx in idx_sets:
            seen[idx] = True
    if not seen.all():
        missing = int(np.argwhere(~seen)[0][0])
        return _fail("coverage", None, f"point {space.points[missing]!r} uncovered")

    for i, idx_sets in enumerate(fam_indices):
        for k, idx in enumerate(idx_sets):
            diam = _set_diameter(space, idx)
            if diam > cover.bound:
                return _fail("diameter", i,
                             f"set {k} has diameter {diam} > {cover.bound}")

    for i, idx_sets in enumerate(fam_indices):
        r = cover.demands[i]
        if len(idx_sets) < 2:
            continue
        total = sum(len(ix) for ix in idx_sets)
        if space.is_lattice_box and space.n_points > _LATTICE_FAST_THRESHOLD:
            ok, pair = _lattice_disjointness(space, idx_sets, r)
            if not ok:
                return _fail("disjointness", i,
                             f"sets {pair[0]} and {pair[1]} are at distance <= {r}")
        else:
            for a in range(len(idx_sets)):
                for b in range(a + 1, len(idx_sets)):
                    m = _min_cross(space, idx_sets[a], idx_sets[b])
                    if m <= r:
                        return _fail("disjointness", i,
                                     f"sets {a} and {b} are at distance {m} <= {r}")
    return CoverReport(True)


# ---------------------------------------------------------------------------
# traces


def trace_cover(space: FiniteMetricSpace, cover: SCover, subset: Iterable,
                label: Optional[str] = None):
    """Restrict a cover to a subset: intersect every set, drop empties,
    keep family order.  Returns (subspace, traced cover)."""
    chosen = frozenset(subset)
    sub = subspace(space, chosen, label=label)
    fams = []
    for fam in cover.families:
        kept = tuple(s & chosen for s in fam.sets if s & chosen)
        fams.append(SetFamily(kept, fam.disjointness, fam.bound))
    return sub, SCover(sub.label, cover.demands, cover.bound, tuple(fams))


def covers_equal(a: SCover, b: SCover) -> bool:
    """Geometric equality: same demands, bound, and family-wise sets
    (order inside a family is irrelevant)."""
    if a.demands != b.demands or a.bound != b.bound:
        return False
    if len(a.families) != len(b.families):
        return False
    for fa, fb in zip(a.families, b.families):
        if frozenset(fa.sets) != frozenset(fb.sets):
            return False
    return True


# ---------------------------------------------------------------------------
# transport along a coarse map


@dataclass(frozen=True)
class TransportResult:
    cover: SCover
    degenerate: tuple  # indices whose declared disjointness collapsed to 0


def transport_cover(cover: SCover, m: CoarseMap, E: int) -> TransportResult:
    """Push a cover through a verified coarse map: each set becomes the
    N-hull of its image, declared (p1(r_i) - 2N)-disjoint and
    (p2(E) + 2N)-bounded.

    When the source family is strictly r_i-disjoint and p1 is strictly
    increasing at r_i the declared disjointness is certified; families whose
    declared value collapses to 0 are listed in ``degenerate`` and make no
    separation claim.
    """
    if cover.space_label != m.source.label:
        raise SpaceMismatchError("cover does not live on the map's source")
    rep = check_coarse_embedding(m)
    if not rep.ok:
        raise InvalidInputError(f"map fails its controls: {rep.detail}")
    tgt = m.target
    N = m.controls.N
    img_idx = m.image_indices()
    dm = tgt.distance_matrix
    to_image = dm[:, img_idx]  # (|Y|, |X|) distances to mapped points
    if (to_image.min(axis=1) > N).any():
        j = int(np.argwhere(to_image.min(axis=1) > N)[0][0])
        raise HullCoverageError(
            f"target point {tgt.points[j]!r} is farther than N={N} from the image"
        )

    src_pos = {p: i for i, p in enumerate(m.source.points)}
    new_demands = tuple(max(m.controls.p1(r) - 2 * N, 0) for r in cover.demands)
    new_bound = m.controls.p2(E) + 2 * N
    fams = []
    for i, fam in enumerate(cover.families):
        hulls = []
        for st in fam.sets:
            cols = np.fromiter((src_pos[p] for p in st), dtype=np.int64)
            near = to_image[:, cols].min(axis=1) <= N
            hull = frozenset(tgt.points[j] for j in np.flatnonzero(near))
            hulls.append(hull)
        fams.append(SetFamily(tuple(hulls), new_demands[i], new_bound))
    out = SCover(tgt.label, new_demands, new_bound, tuple(fams))
    degenerate = tuple(i for i, d in enumerate(new_demands) if d == 0)
    return TransportResult(out, degenerate)


# ---------------------------------------------------------------------------
# brick construction: n+1 families of shrunken cubes


@dataclass(frozen=True)
class BrickCover:
    space: FiniteMetricSpace
    cover: SCover
    c_constant: int  # recorded constant: bound <= c_constant * r
    cube_side: int
    shrink: int


def brick_cover(n: int, r: int, box: int, cap: int = 10_000_000) -> BrickCover:
    """Cover the unit grid box with n+1 families of r-disjoint bricks.

    Uses n+1 diagonally shifted cube grids of side L = (n+1)(r+1), each cube
    shrunk by g = (r+1)//2 on every side.  Per coordinate at most one shift
    can place a point near a cube boundary, so some shift keeps it deep;
    each point is assigned to the first such family, which makes the
    families a partition.  Same-family bricks are separated by 2g+1 >= r+1,
    i.e. strictly more than r; diameters are at most n(L-1-2g).
    """
    if r < 1:
        raise InvalidInputError("need r >= 1")
    space = build_grid_space(n, 1, box, cap=cap)
    R = r + 1
    L = (n + 1) * R
    g = R // 2
    coords = space.coords
    N = space.n_points

    fam = np.full(N, -1, dtype=np.int32)
    for i in range(n, -1, -1):
        resid = (coords - i * R) % L
        deep = ((resid >= g) & (resid <= L - 1 - g)).all(axis=1)
        fam[deep] = i
    if (fam < 0).any():
        raise AssertionError("brick construction left a point uncovered")

    shifted = coords - fam[:, None].astype(np.int64) * R
    cube = shifted // L
    key = np.concatenate([fam[:, None].astype(np.int64), cube], axis=1)
    _, inverse = np.unique(key, axis=0, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    boundaries = np.flatnonzero(np.diff(inverse[order])) + 1
    groups = np.split(order, boundaries)

    pts = space.points
    families: list = [[] for _ in range(n + 1)]
    for grp in groups:
        f = int(fam[grp[0]])
        families[f].append(frozenset(pts[j] for j in grp))

    bound = n * (L - 1 - 2 * g)
    cover = make_cover(space.label, (r,) * (n + 1), bound, families)
    return BrickCover(space, cover, c_constant=2 * n * (n + 1), cube_side=L, shrink=g)


# ---------------------------------------------------------------------------
# sums of covered spaces


def finite_sum_cover(parts: Sequence, separation: int):
    """Merge identically-demanded covers of disjoint parts into one cover of
    their sum, parts held pairwise ``separation`` apart through basepoints.

    Cross-part set distances are at least ``separation``; the strict
    disjointness convention therefore requires separation > max demand.
    Returns (sum space, merged cover).
    """
    if not parts:
        raise InvalidInputError("need at least one part")
    spaces_ = [sp for sp, _ in parts]
    covers_ = [cv for _, cv in parts]
    for sp, cv in parts:
        if cv.space_label != sp.label:
            raise SpaceMismatchError(f"cover {cv.space_label!r} not on part {sp.label!r}")
    demands = covers_[0].demands
    bound = covers_[0].bound
    if any(cv.demands != demands or cv.bound != bound for cv in covers_):
        raise InvalidInputError("all parts must share the demand sequence and bound")
    if len(parts) == 1:
        return spaces_[0], covers_[0]
    if demands and separation <= max(demands):
        raise InvalidInputError(
            f"separation {separation} too small: must exceed max demand {max(demands)}"
        )
    if separation < 1:
        raise InvalidInputError("separation must be positive")

    from .spaces import MATRIX_CAP, FiniteMetricSpace as _FMS

    total = sum(sp.n_points for sp in spaces_)
    if total > MATRIX_CAP:
        raise ResourceLimitError(f"{total} points exceeds matrix cap")
    ids = []
    owner = []
    for pi, sp in enumerate(spaces_):
        for p in sp.points:
            ids.append(f"{pi}:{p}")
            owner.append((pi, sp.index(p)))
    rows = [[0] * total for _ in range(total)]
    for a in range(total):
        pa, ia = owner[a]
        for b in range(a + 1, total):
            pb, ib = owner[b]
            if pa == pb:
                d = spaces_[pa].dist_idx(ia, ib)
            else:
                # hub metric: through each part's first point, constant gap
                d = (
                    spaces_[pa].dist_idx(ia, 0)
                    + separation
                    + spaces_[pb].dist_idx(0, ib)
                )
            rows[a][b] = rows[b][a] = d
    label = "sum(" + "+".join(sp.label for sp in spaces_) + f";sep={separation})"
    ambient = _FMS(label=label, points=tuple(ids), kind="matrix",
                   rows=tuple(map(tuple, rows)))

    fams = []
    for i in range(len(demands)):
        merged = []
        for pi, cv in enumerate(covers_):
            for st in cv.families[i].sets:
                merged.append(frozenset(f"{pi}:{p}" for p in st))
        fams.append(SetFamily(tuple(merged), demands[i], bound))
    return ambient, SCover(label, demands, bound, tuple(fams))


# ---------------------------------------------------------------------------
# fiber composition along a uniformly expansive map


def fiber_compose(f: CoarseMap, base: SCover, fibers: Sequence[Sequence[SCover]]) -> SCover:
    """Compose a cover of the target with covers of the base-set preimages.

    ``fibers[j][k]`` covers the preimage of the k-th set in base family j;
    all fiber covers within a family must share a demand sequence tau_j.
    With R_j = max tau_j, the preimage of a strictly S_j-disjoint family is
    strictly R_j-disjoint provided p2(R_j) < S_j (checked), so merging the
    fiber covers across the family keeps min(tau_j(i), R_j)-disjointness.
    Only the upper control of ``f`` is consulted: the composition needs
    uniform expansiveness, not an embedding.
    """
    X, Y = f.source, f.target
    if base.space_label != Y.label:
        raise SpaceMismatchError("base cover does not live on the map's target")
    if len(fibers) != len(base.families):
        raise InvalidInputError("one fiber list per base family required")
    p2 = f.controls.p2
    # uniform expansiveness check
    for i in range(X.n_points):
        for j in range(i + 1, X.n_points):
            dx = X.dist_idx(i, j)
            dy = Y.dist(f.mapping[X.points[i]], f.mapping[X.points[j]])
            if dy > p2(dx):
                raise InvalidInputError(
                    f"map is not p2-expansive at ({X.points[i]!r},{X.points[j]!r})"
                )

    from .covers import check_s_cover as _check  # self-import for clarity

    out_demands: list = []
    out_families: list = []
    all_bounds = [cv.bound for row in fibers for cv in row]
    if not all_bounds:
        raise InvalidInputError("no fiber covers supplied")
    out_bound = max(all_bounds)

    preimages = {}
    for x in X.points:
        preimages.setdefault(f.mapping[x], []).append(x)

    for j, fam in enumerate(base.families):
        S_j = base.demands[j]
        row = fibers[j]
        if len(row) != len(fam.sets):
            raise InvalidInputError(f"base family {j}: one fiber cover per set required")
        if not row:
            out_demands.extend(())
            continue
        tau = row[0].demands
        if any(cv.demands != tau for cv in row):
            raise InvalidInputError(f"base family {j}: fiber demand sequences differ")
        R_j = max(tau)
        if p2(R_j) >= S_j:
            raise InvalidInputError(
                f"control inequality violated on base family {j}: "
                f"p2({R_j})={p2(R_j)} >= S_j={S_j}"
            )
        for k, B in enumerate(fam.sets):
            pre = [x for y in B for x in preimages.get(y, ())]
            if not pre:
                raise InvalidInputError(f"base set {k} of family {j} has empty preimage")
            sub = subspace(X, pre, label=row[k].space_label)
            rep = _check(sub, row[k])
            if not rep.ok:
                raise InvalidInputError(
                    f"fiber cover for set {k} of family {j} invalid: {rep.violation.detail}"
                )
        merged_sets: list = [[] for _ in tau]
        for cv in row:
            for i, ff in enumerate(cv.families):
                merged_sets[i].extend(ff.sets)
        for i, t in enumerate(tau):
            d = min(t, R_j)
            out_demands.append(d)
            out_families.append(SetFamily(tuple(merged_sets[i]), d, out_bound))

    return SCover(X.label, tuple(out_demands), out_bound, tuple(out_families))


# ---------------------------------------------------------------------------
# gluing consistent covers along a chain or a sum-covering family


@dataclass(frozen=True)
class GlueResult:
    ok: bool
    cover: Optional[SCover]
    space: Optional[FiniteMetricSpace]
    selections: tuple
    detail: str = ""
    combos_tried: int = 0


def _normalize_candidates(entry):
    if entry is None:
        return []
    if isinstance(entry, SCover):
        return [entry]
    return list(entry)


def glue_covers(space: FiniteMetricSpace, subsets: Sequence[Iterable], covers: Sequence,
                mode: str = "chain", s=None, D=None,
                enumerate_missing: bool = True, budget: int = 200_000) -> GlueResult:
    """Select one cover per subset so that all selections are
    trace-consistent, and assemble a cover of the union.

    ``covers[i]`` is a cover of ``subsets[i]``, a list of candidate covers,
    or None; missing candidates are searched for with the exact solver,
    constrained to extend the selections already made (the finite shadow of
    extending a consistent partial choice).  Failure is reported only when
    the whole selection search is exhausted.
    """
    if mode not in ("chain", "finite-sums"):
        raise InvalidInputError(f"unknown glue mode {mode!r}")
    if not subsets:
        raise InvalidInputError("need at least one subset")
    subs = [frozenset(b) for b in subsets]
    if mode == "chain":
        for a, b in zip(subs, subs[1:]):
            if not a <= b:
                raise InvalidInputError("chain not ascending")
    cand_lists = [_normalize_candidates(c) for c in covers]
    provided = [cv for lst in cand_lists for cv in lst]
    if s is None or D is None:
        if not provided:
            raise InvalidInputError("demand sequence and bound required when no covers given")
        s = provided[0].demands
        D = provided[0].bound
    s = tuple(int(x) for x in s)
    D = int(D)
    for cv in provided:
        if cv.demands != s or cv.bound != D:
            raise InvalidInputError("candidate covers disagree on demands or bound")

    sub_spaces = [subspace(space, b, label=f"{space.label}|glue{i}")
                  for i, b in enumerate(subs)]
    cand_lists = [[cv.retagged(sub_spaces[i].label) for cv in lst]
                  for i, lst in enumerate(cand_lists)]
    for i, lst in enumerate(cand_lists):
        for cv in lst:
            rep = check_s_cover(sub_spaces[i], cv)
            if not rep.ok:
                raise InvalidInputError(
                    f"candidate cover {i} invalid on its subset: {rep.violation.detail}"
                )

    from .solver import iter_exact_solutions

    union = frozenset().union(*subs)
    union_space = subspace(space, union, label=f"{space.label}|glued")
    counter = {"combos": 0}

    def consistent(sel, i, cand) -> bool:
        for j in range(i):
            if sel[j] is None:
                continue
            if mode == "chain":
                overlap = subs[j]
            else:
                overlap = subs[j] & subs[i]
                if not overlap:
                    continue
            _, ta = trace_cover(sub_spaces[i], cand, overlap & subs[i])
            _, tb = trace_cover(sub_spaces[j], sel[j], overlap)
            if not covers_equal(ta, tb):
                return False
        return True

    def seeded_from(sel, i):
        """Pinned clusters for the solver from earlier overlapping selections.
        Parts sharing a point must end up in the same cluster, so they are
        union-merged before seeding."""
        pins: list = []
        for fi in range(len(s)):
            parts = []
            for j in range(i):
                if sel[j] is None:
                    continue
                for st in sel[j].families[fi].sets:
                    part = st & subs[i]
                    if part:
                        parts.append(set(part))
            merged: list = []
            for part in parts:
                acc = set(part)
                rest = []
                for m in merged:
                    if m & acc:
                        acc |= m
                    else:
                        rest.append(m)
                merged = rest + [acc]
            pins.append(tuple(frozenset(m) for m in merged))
        return pins

    def candidates_for(sel, i):
        lst = cand_lists[i]
        if lst:
            for cv in lst:
                if consistent(sel, i, cv):
                    yield cv
            return
        if not enumerate_missing:
            return
        seeds = seeded_from(sel, i)
        for cv in iter_exact_solutions(sub_spaces[i], s, D, seeds=seeds, budget=budget):
            if consistent(sel, i, cv):
                yield cv

    def assemble(sel):
        if mode == "chain":
            top = sel[-1]
            return union_space, top.retagged(union_space.label)
        # overlap-component merge per family index
        fams = []
        for fi in range(len(s)):
            pieces = []
            for cv in sel:
                pieces.extend(cv.families[fi].sets)
            parent = list(range(len(pieces)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a in range(len(pieces)):
                for b in range(a + 1, len(pieces)):
                    if pieces[a] & pieces[b]:
                        parent[find(a)] = find(b)
            merged = {}
            for k, st in enumerate(pieces):
                merged.setdefault(find(k), set()).update(st)
            fams.append(tuple(frozenset(v) for v in merged.values()))
        cover = make_cover(union_space.label, s, D, fams)
        return union_space, cover

    sel: list = [None] * len(subs)

    def search(i):
        if i == len(subs):
            sp, cover = assemble(sel)
            rep = check_s_cover(sp, cover)
            if rep.ok:
                return cover
            return None
        for cand in candidates_for(sel, i):
            counter["combos"] += 1
            sel[i] = cand
            out = search(i + 1)
            if out is not None:
                return out
            sel[i] = None
        return None

    found = search(0)
    if found is None:
        return GlueResult(False, None, None, (), "no consistent selection exists",
                          counter["combos"])
    return GlueResult(True, found, union_space, tuple(sel), "", counter["combos"])
