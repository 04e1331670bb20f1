"""Independent brute-force verifiers.

The cover oracle enumerates every family-labeled partition and validates
complete assignments only at the leaves; no pruning, no symmetry reduction,
no sharing with the solver beyond the distance matrix.  It is deliberately
slow and obviously correct, and it is the release gate for the solver.

run_suite() bundles the cross-checks that anchor the rank machinery, the
game engine and the cover transforms at small scale.  Every suite is
deterministic under a fixed seed and reports reproduction digests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import covers as cv
from . import game as gm
from . import solver as sv
from . import spaces as sp
from . import trees as tr
from .errors import InvalidInputError, ResourceLimitError

ORACLE_MAX_POINTS = 10
ORACLE_MAX_LEN = 2
ORACLE_MAX_BOUND = 6


def exhaustive_cover_oracle(space: sp.FiniteMetricSpace, s: Sequence[int], D: int) -> str:
    """Ground-truth SAT/UNSAT by enumerating all assignments of points to
    (family, cluster) slots and validating only complete assignments."""
    s = tuple(int(x) for x in s)
    if space.n_points > ORACLE_MAX_POINTS:
        raise ResourceLimitError(f"oracle capped at {ORACLE_MAX_POINTS} points")
    if not 1 <= len(s) <= ORACLE_MAX_LEN:
        raise ResourceLimitError(f"oracle capped at |s| <= {ORACLE_MAX_LEN}")
    if not 0 <= D <= ORACLE_MAX_BOUND:
        raise ResourceLimitError(f"oracle capped at D <= {ORACLE_MAX_BOUND}")
    if any(x < 1 for x in s):
        raise InvalidInputError("demand entries must be >= 1")
    n = space.n_points
    if n == 0:
        return "SAT"
    dm = space.distance_rows
    nfam = len(s)
    assignment: List[Optional[Tuple[int, int]]] = [None] * n
    counts = [0] * nfam

    def complete_is_valid() -> bool:
        groups: Dict[Tuple[int, int], List[int]] = {}
        for p, slot in enumerate(assignment):
            groups.setdefault(slot, []).append(p)
        by_family: Dict[int, List[List[int]]] = {}
        for (f, _c), members in groups.items():
            by_family.setdefault(f, []).append(members)
        for f, clusters in by_family.items():
            for members in clusters:
                for i in range(len(members)):
                    for j in range(i + 1, len(members)):
                        if dm[members[i]][members[j]] > D:
                            return False
            for a in range(len(clusters)):
                for b in range(a + 1, len(clusters)):
                    for p in clusters[a]:
                        for q in clusters[b]:
                            if dm[p][q] <= s[f]:
                                return False
        return True

    def rec(i: int) -> bool:
        if i == n:
            return complete_is_valid()
        for f in range(nfam):
            for c in range(counts[f] + 1):
                opened = c == counts[f]
                assignment[i] = (f, c)
                if opened:
                    counts[f] += 1
                if rec(i + 1):
                    return True
                if opened:
                    counts[f] -= 1
        assignment[i] = None
        return False

    return "SAT" if rec(0) else "UNSAT"


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class SuiteReport:
    name: str
    trials: int
    failures: tuple  # (digest, expected, got)
    seed: int

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def _random_space(rng: random.Random, max_points: int = 8) -> sp.FiniteMetricSpace:
    dim = rng.choice((1, 1, 1, 2))
    box = rng.randint(2, 6) if dim == 1 else rng.randint(1, 3)
    grid = sp.build_grid_space(dim, 1, box)
    want = rng.randint(2, min(max_points, grid.n_points))
    pts = sorted(rng.sample(list(grid.points), want))
    return sp.subspace(grid, pts, label=f"rnd(d{dim},b{box},n{want})")


def _random_tree(rng: random.Random, max_depth: int = 4, max_branch: int = 4) -> tr.FinTree:
    seqs = []

    def grow(prefix, depth):
        if depth >= max_depth:
            return
        nkids = rng.randint(0, max_branch)
        labels = rng.sample(range(1, max_branch + 3), min(nkids, max_branch + 2))
        for lab in labels:
            child = prefix + (lab,)
            seqs.append(child)
            if rng.random() < 0.6:
                grow(child, depth + 1)

    grow((), 0)
    return tr.tree_from_sequences(seqs)


def _suite_solver_vs_oracle(rng, trials):
    failures = []
    for t in range(trials):
        space = _random_space(rng, max_points=8)
        length = rng.randint(1, 2)
        s = tuple(sorted(rng.randint(1, 4) for _ in range(length)))
        D = rng.randint(0, 4)
        want = exhaustive_cover_oracle(space, s, D)
        got = sv.solve_s_cover(space, s, D, mode="exact").status
        if got != want:
            failures.append((f"trial {t}: {space.label} s={s} D={D}", want, got))
    return trials, failures


def _suite_rank_equivalence(rng, trials):
    failures = []
    for t in range(trials):
        tree = _random_tree(rng)
        a = tr.rank_recursive(tree)
        b = tr.rank_levels(tree)
        if a != b:
            failures.append((f"trial {t}: {sorted(tree.nodes)}", str(a), str(b)))
            continue
        if not tree.is_empty:
            ra = tr.node_ranks_recursive(tree)
            rb = tr.node_levels(tree)
            if ra != rb:
                failures.append((f"trial {t}: node maps differ", str(ra), str(rb)))
    return trials, failures


def _suite_ord_vs_ta(rng, trials):
    ground = (1, 2, 3, 4, 5)
    all_subsets = []
    for mask in range(1, 1 << len(ground)):
        all_subsets.append(frozenset(g for i, g in enumerate(ground) if mask >> i & 1))
    failures = []
    for t in range(trials):
        k = rng.randint(1, 8)
        members = rng.sample(all_subsets, k)
        m = tr.ord_set_from(members, ground)
        want = tr.ord_set(m)
        got = tr.rank_recursive(tr.ta_tree(m))
        if got != want:
            failures.append(
                (f"trial {t}: M={sorted(map(sorted, members))}", str(want), str(got))
            )
    return trials, failures


def _suite_kb_order(rng, trials):
    failures = []
    for t in range(trials):
        tree = _random_tree(rng, max_depth=3, max_branch=3)
        nodes = tree.sorted_nodes()
        for a in nodes:
            for b in nodes:
                cab = tr.kb_compare(a, b)
                cba = tr.kb_compare(b, a)
                if (a == b) != (cab == 0) or cab != -cba:
                    failures.append((f"trial {t}: {a} vs {b}", "antisymmetric", f"{cab},{cba}"))
        small = nodes[:10]
        for a in small:
            for b in small:
                for c in small:
                    if tr.kb_compare(a, b) < 0 and tr.kb_compare(b, c) < 0:
                        if not tr.kb_compare(a, c) < 0:
                            failures.append((f"trial {t}: {a},{b},{c}", "transitive", "not"))
        for s in nodes:
            if s and tr.kb_compare(s, s[:-1]) != -1:
                failures.append((f"trial {t}: child {s}", "-1", str(tr.kb_compare(s, s[:-1]))))
        # rank folded along the KB order, children always before parents
        if not tree.is_empty:
            folded: dict = {}
            for node in tr.kb_sorted(nodes):
                kids = [folded[c] for c in tree.children(node)]
                folded[node] = 1 + max(kids) if kids else 0
            if folded[()] != tr.rank_recursive(tree):
                failures.append((f"trial {t}: kb fold", str(tr.rank_recursive(tree)),
                                 str(folded[()])))
    return trials, failures


def _suite_fraktal_monotone(rng, trials):
    failures = []
    done = 0
    while done < trials:
        space = _random_space(rng, max_points=8)
        length = rng.randint(1, 2)
        s = tuple(sorted(rng.randint(1, 3) for _ in range(length)))
        D = rng.randint(0, 4)
        base = sv.solve_s_cover(space, s, D, mode="exact")
        s_up = tuple(x + rng.randint(0, 2) for x in s)
        d_down = rng.randint(0, D) if D else 0
        up = sv.solve_s_cover(space, s_up, D, mode="exact")
        down = sv.solve_s_cover(space, s, d_down, mode="exact")
        done += 3
        if base.status == "UNSAT" and up.status == "SAT":
            failures.append((f"{space.label} s={s}->{s_up} D={D}", "UNSAT stays", "SAT"))
        if base.status == "UNSAT" and down.status == "SAT":
            failures.append((f"{space.label} s={s} D={D}->{d_down}", "UNSAT stays", "SAT"))
    return done, failures


_GAME_TREE_SPACES: Callable[[], list] = lambda: [
    (sp.interval_space(-7, 7), 2),
    (sp.interval_space(-5, 5), 2),
    (sp.build_grid_space(2, 1, 1), 2),
    (sp.subspace(sp.interval_space(-6, 6), [str(v) for v in (-6, -4, -2, 0, 2, 4, 6)],
                 label="even(-6,6)"), 4),
    (sp.build_cup_c_space((1, 2), 2, 1), 2),
]


def _nondecreasing_sequences(rmax, lmax):
    out = []

    def grow(prefix):
        if len(prefix) >= lmax:
            return
        lo = prefix[-1] if prefix else 1
        for v in range(lo, rmax + 1):
            seq = prefix + (v,)
            out.append(seq)
            grow(seq)

    grow(())
    return out


def _suite_game_equals_tree(rng, trials, rmax=3, lmax=3, kcap=5):
    """Exhaustive on fixed spaces: prefixes along which B survives the game
    equal the nondecreasing empirical tree at matched caps."""
    failures = []
    count = 0
    for space, bound in _GAME_TREE_SPACES():
        cfg = tr.EmpiricalTreeConfig(rmax=rmax, lmax=lmax, bound=bound,
                                     variant="nondecreasing")
        tree = tr.empirical_dim_tree(space, cfg)
        gcfg = gm.GameConfig(bound=bound, kcap=kcap, rmax=rmax)
        for seq in _nondecreasing_sequences(rmax, lmax):
            count += 1
            g = gm.play_script(space, gcfg, seq)
            a_won_within = g.status == gm.A_WINS and g.round_number <= len(seq)
            in_tree = seq in tree
            if in_tree == a_won_within:
                failures.append(
                    (f"{space.label} seq={seq}", f"in_tree={in_tree}",
                     f"a_won_within={a_won_within}")
                )
    return count, failures


def _whole_space_cover(space, s, D):
    fams = [[set(space.points)]] + [[] for _ in s[1:]]
    return cv.make_cover(space.label, s, D, fams)


def _random_valid_cover(rng, space, s):
    """Some valid cover of the space at the given demands; bound grows until
    the heuristic finds one, with the whole-space cover as last resort."""
    diam = 0
    n = space.n_points
    for i in range(n):
        for j in range(i + 1, n):
            diam = max(diam, space.dist_idx(i, j))
    D = max(2, min(s))
    while D < diam:
        res = sv.solve_s_cover(space, s, D, mode="heuristic",
                               seed=rng.randint(0, 10**6), budget=20_000)
        if res.sat:
            return res.witness
        D *= 2
    return _whole_space_cover(space, s, diam)


def _suite_glue_roundtrip(rng, trials):
    failures = []
    for t in range(trials):
        dim = rng.choice((1, 2))
        box = rng.randint(4, 6) if dim == 1 else rng.randint(2, 3)
        grid = sp.build_grid_space(dim, 1, box)
        want = rng.randint(8, min(40, grid.n_points))
        pts = sorted(rng.sample(list(grid.points), want))
        space = sp.subspace(grid, pts, label=f"glue{t}")
        length = rng.randint(1, 2)
        s = tuple(sorted(rng.randint(1, 3) for _ in range(length)))
        cover = _random_valid_cover(rng, space, s)
        n3 = rng.randint(3, space.n_points)
        n2 = rng.randint(2, n3)
        n1 = rng.randint(1, n2)
        b3 = sorted(rng.sample(list(space.points), n3))
        b2 = sorted(rng.sample(b3, n2))
        b1 = sorted(rng.sample(b2, n1))
        provided = [tr_cov for _, tr_cov in
                    (cv.trace_cover(space, cover, b) for b in (b1, b2, b3))]
        res = cv.glue_covers(space, [b1, b2, b3], provided, mode="chain")
        if not res.ok:
            failures.append((f"trial {t}: {space.label}", "glued", res.detail))
            continue
        for b, want_cov in zip((b1, b2, b3), provided):
            _, got_cov = cv.trace_cover(res.space, res.cover, b)
            if not cv.covers_equal(got_cov, want_cov):
                failures.append((f"trial {t}: trace on {len(b)} pts", "equal", "differs"))
                break
    return trials, failures


def _transport_predicates(target, result, demands_in, controls, E):
    """Direct evaluation of the declared transport bounds, bypassing the
    cover checker."""
    N = controls.N
    out = result.cover
    for i, fam in enumerate(out.families):
        declared = out.demands[i]
        want_bound = controls.p2(E) + 2 * N
        for st in fam.sets:
            pts = sorted(st)
            for a in range(len(pts)):
                for b in range(a + 1, len(pts)):
                    if target.dist(pts[a], pts[b]) > want_bound:
                        return f"family {i}: diameter beyond {want_bound}"
        if i in result.degenerate:
            continue
        sets = [sorted(st) for st in fam.sets]
        for a in range(len(sets)):
            for b in range(a + 1, len(sets)):
                m = min(target.dist(p, q) for p in sets[a] for q in sets[b])
                if m <= declared:
                    return f"family {i}: separation {m} <= declared {declared}"
    covered = set()
    for fam in out.families:
        for st in fam.sets:
            covered |= st
    if covered != set(target.points):
        return "image hulls do not cover the target"
    return None


def _suite_transport_lemma(rng, trials):
    failures = []
    for t in range(trials):
        a = rng.randint(-6, 0)
        b = rng.randint(a + 3, a + 10)
        X = sp.interval_space(a, b)
        c = rng.randint(1, 3)
        shift = rng.randint(-3, 3)
        N = max(c // 2, rng.randint(0, 1))
        lo, hi = c * a + shift - N, c * b + shift + N
        Y = sp.interval_space(lo, hi, label=f"target{t}")
        mapping = {p: str(c * int(p) + shift) for p in X.points}
        controls = sp.ControlPair(sp.StepFunction.scale(c), sp.StepFunction.scale(c), N)
        m = sp.CoarseMap(X, Y, mapping, controls)
        length = rng.randint(1, 2)
        s = tuple(sorted(rng.randint(1, 3) for _ in range(length)))
        cover = _random_valid_cover(rng, X, s)
        res = cv.transport_cover(cover, m, E=cover.bound)
        bad = _transport_predicates(Y, res, cover.demands, controls, cover.bound)
        if bad:
            failures.append((f"trial {t}: c={c} N={N} s={s}", "declared bounds hold", bad))
    return trials, failures


_SUITES: Dict[str, Callable] = {
    "solver-vs-oracle": _suite_solver_vs_oracle,
    "rank-equivalence": _suite_rank_equivalence,
    "ord-vs-ta": _suite_ord_vs_ta,
    "kb-order": _suite_kb_order,
    "fraktal-monotone": _suite_fraktal_monotone,
    "game-equals-tree": _suite_game_equals_tree,
    "glue-roundtrip": _suite_glue_roundtrip,
    "transport-lemma": _suite_transport_lemma,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, seed: int = 7, trials: int = 200) -> SuiteReport:
    if name not in _SUITES:
        raise InvalidInputError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    rng = random.Random(seed)
    done, failures = _SUITES[name](rng, trials)
    return SuiteReport(name=name, trials=done, failures=tuple(failures), seed=seed)


def run_all(seed: int = 7, trials: int = 200) -> list:
    return [run_suite(name, seed=seed, trials=trials) for name in SUITE_NAMES]
