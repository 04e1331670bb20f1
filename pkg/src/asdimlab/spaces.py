"""Finite metric spaces with exact integer distances.

Everything downstream (cover solving, trees, the dimension game) runs on
these values: explicit point sets with an integer metric given either by
lattice coordinates under the taxicab distance or by an explicit matrix.
All distances are exact integers; nothing in the package ever rounds.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    InvalidInputError,
    MetricError,
    ResourceLimitError,
)

DEFAULT_POINT_CAP = 100_000

# Distance matrices are materialized lazily; beyond this point count the
# vectorized code paths must be used instead.
MATRIX_CAP = 4_000


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """A finite point set with an exact integer metric.

    ``points`` is the canonical ordering used by every deterministic scan in
    the package (lexicographic on coordinates for lattice-derived spaces).
    ``coords`` is an ``(N, dim)`` int64 array aligned with ``points`` when the
    space is lattice-derived; the metric is then the taxicab distance.
    Otherwise ``rows`` holds an explicit distance matrix.

    ``lattice_steps``/``lattice_box`` are set only when the point set is a
    full axis-aligned lattice box; they unlock exact vectorized geometry in
    the cover checker and are dropped by any operation that can break the
    box structure.
    """

    label: str
    points: tuple
    kind: str  # "taxicab" | "matrix"
    coords: Optional[np.ndarray] = None
    rows: Optional[tuple] = None
    lattice_steps: Optional[tuple] = None
    lattice_box: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("taxicab", "matrix"):
            raise InvalidInputError(f"unknown metric kind {self.kind!r}")
        if self.kind == "taxicab" and self.coords is None:
            raise InvalidInputError("taxicab space needs coords")
        if self.kind == "matrix" and self.rows is None and self.points:
            raise InvalidInputError("matrix space needs rows")
        if len(set(self.points)) != len(self.points):
            raise InvalidInputError("duplicate point ids")

    @property
    def n_points(self) -> int:
        return len(self.points)

    @cached_property
    def _index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, pid) -> int:
        try:
            return self._index[pid]
        except KeyError:
            raise InvalidInputError(f"unknown point {pid!r} in space {self.label!r}")

    def indices(self, pids: Iterable) -> np.ndarray:
        idx = self._index
        try:
            return np.fromiter((idx[p] for p in pids), dtype=np.int64)
        except KeyError as exc:
            raise InvalidInputError(
                f"unknown point {exc.args[0]!r} in space {self.label!r}"
            )

    @cached_property
    def _coord_tuples(self) -> tuple:
        return tuple(map(tuple, self.coords.tolist()))

    def coord_of(self, pid) -> Optional[tuple]:
        if self.coords is None:
            return None
        return self._coord_tuples[self.index(pid)]

    def dist_idx(self, i: int, j: int) -> int:
        if self.kind == "taxicab":
            a = self._coord_tuples[i]
            b = self._coord_tuples[j]
            return sum(abs(x - y) for x, y in zip(a, b))
        return self.rows[i][j]

    def dist(self, a, b) -> int:
        return self.dist_idx(self.index(a), self.index(b))

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """Full pairwise matrix, int64.  Guarded by MATRIX_CAP."""
        n = self.n_points
        if n > MATRIX_CAP:
            raise ResourceLimitError(
                f"distance matrix for {n} points exceeds cap {MATRIX_CAP}"
            )
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        if self.kind == "taxicab":
            c = self.coords
            return np.abs(c[:, None, :] - c[None, :, :]).sum(axis=2)
        return np.asarray(self.rows, dtype=np.int64)

    @cached_property
    def distance_rows(self) -> list:
        """Distance matrix as nested lists; faster scalar indexing for the solver."""
        return self.distance_matrix.tolist()

    @property
    def is_lattice_box(self) -> bool:
        return self.lattice_steps is not None and self.lattice_box is not None

    def __repr__(self):
        return f"FiniteMetricSpace({self.label!r}, {self.n_points} points)"


def validate_metric(space: FiniteMetricSpace, max_points: int = 1200) -> None:
    """Exhaustively verify symmetry, identity of indiscernibles and the
    triangle inequality.  Raises MetricError on the first failure."""
    n = space.n_points
    if n > max_points:
        raise ResourceLimitError(f"metric validation capped at {max_points} points")
    if n == 0:
        return
    dm = space.distance_matrix
    if (dm < 0).any():
        i, j = np.argwhere(dm < 0)[0]
        raise MetricError(f"negative distance at ({space.points[i]}, {space.points[j]})")
    if (np.diag(dm) != 0).any():
        i = int(np.argwhere(np.diag(dm) != 0)[0][0])
        raise MetricError(f"dist(x,x) != 0 at {space.points[i]}")
    if (dm != dm.T).any():
        i, j = np.argwhere(dm != dm.T)[0]
        raise MetricError(f"asymmetric at ({space.points[i]}, {space.points[j]})")
    off = dm + np.eye(n, dtype=np.int64)
    if (off == 0).any():
        i, j = np.argwhere(off == 0)[0]
        raise MetricError(f"distinct points at distance 0: ({space.points[i]}, {space.points[j]})")
    for k in range(n):
        via = dm[:, k][:, None] + dm[k, :][None, :]
        bad = dm > via
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise MetricError(
                f"triangle violated: d({space.points[i]},{space.points[j]}) > "
                f"d(.,{space.points[k]}) sum"
            )


def _grid_axis(step: int, box: int) -> list:
    m = box // step
    return [v * step for v in range(-m, m + 1)]


def _lattice_space(label: str, axes: Sequence[Sequence[int]], steps, box, cap) -> FiniteMetricSpace:
    count = 1
    for ax in axes:
        count *= len(ax)
    if count > cap:
        raise ResourceLimitError(f"{count} points exceeds cap {cap}")
    vectors = sorted(itertools.product(*axes))
    ids = tuple(",".join(str(v) for v in vec) for vec in vectors)
    coords = np.array(vectors, dtype=np.int64).reshape(len(vectors), len(axes))
    return FiniteMetricSpace(
        label=label,
        points=ids,
        kind="taxicab",
        coords=coords,
        lattice_steps=tuple(steps),
        lattice_box=box,
    )


def build_grid_space(n: int, k: int, s: int, cap: int = DEFAULT_POINT_CAP) -> FiniteMetricSpace:
    """Lattice kZ^n intersected with the box [-s, s]^n, taxicab metric."""
    if n < 1 or k < 1 or s < 0:
        raise InvalidInputError("need n >= 1, k >= 1, s >= 0")
    axes = [_grid_axis(k, s)] * n
    return _lattice_space(f"grid(n={n},k={k},s={s})", axes, (k,) * n, s, cap)


def build_cup_c_space(
    c: Sequence[int], n: int, box: int, cap: int = DEFAULT_POINT_CAP
) -> FiniteMetricSpace:
    """Union over m <= n of the lattices c_1 Z x ... x c_m Z x {0}^(n-m)
    inside [-box, box]^n, taxicab metric, duplicates merged.

    Since 0 belongs to every c_i Z the union collapses to the m = n lattice;
    the construction still enumerates the union literally and deduplicates.
    """
    c = tuple(int(x) for x in c)
    if n < 1:
        raise InvalidInputError("need n >= 1")
    if len(c) < n:
        raise InvalidInputError(f"need at least {n} entries in c, got {len(c)}")
    if any(b <= a for a, b in zip(c, c[1:])):
        raise InvalidInputError("c must be strictly increasing")
    if any(x < 1 for x in c):
        raise InvalidInputError("c entries must be positive")
    seen = set()
    for m in range(1, n + 1):
        axes = [_grid_axis(c[i], box) for i in range(m)] + [[0]] * (n - m)
        count = 1
        for ax in axes:
            count *= len(ax)
        if count > cap:
            raise ResourceLimitError(f"{count} points exceeds cap {cap}")
        seen.update(itertools.product(*axes))
        if len(seen) > cap:
            raise ResourceLimitError(f"{len(seen)} points exceeds cap {cap}")
    vectors = sorted(seen)
    ids = tuple(",".join(str(v) for v in vec) for vec in vectors)
    coords = np.array(vectors, dtype=np.int64).reshape(len(vectors), n)
    label = f"cupc(c={','.join(map(str, c[:n]))},box={box})"
    return FiniteMetricSpace(
        label=label,
        points=ids,
        kind="taxicab",
        coords=coords,
        lattice_steps=c[:n],
        lattice_box=box,
    )


def from_matrix(label: str, points: Sequence, rows: Sequence[Sequence[int]]) -> FiniteMetricSpace:
    """Explicit-matrix space.  The matrix is taken on faith here; run
    validate_metric to certify it."""
    pts = tuple(points)
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if len(rows) != len(pts) or any(len(r) != len(pts) for r in rows):
        raise InvalidInputError("matrix shape does not match point count")
    return FiniteMetricSpace(label=label, points=pts, kind="matrix", rows=rows)


def interval_space(lo: int, hi: int, label: Optional[str] = None) -> FiniteMetricSpace:
    """Integer interval [lo, hi] on the line; convenience wrapper."""
    if hi < lo:
        raise InvalidInputError("empty interval")
    vectors = [(v,) for v in range(lo, hi + 1)]
    ids = tuple(str(v) for v, in vectors)
    coords = np.array(vectors, dtype=np.int64)
    return FiniteMetricSpace(
        label=label or f"interval({lo},{hi})",
        points=ids,
        kind="taxicab",
        coords=coords,
        lattice_steps=None,
        lattice_box=None,
    )


def subspace(space: FiniteMetricSpace, subset: Iterable, label: Optional[str] = None) -> FiniteMetricSpace:
    """Restriction of the metric to a nonempty subset, canonical order kept."""
    chosen = set(subset)
    if not chosen:
        raise InvalidInputError("empty subset")
    keep = [p for p in space.points if p in chosen]
    if len(keep) != len(chosen):
        missing = chosen.difference(space.points)
        raise InvalidInputError(f"subset contains unknown points: {sorted(map(str, missing))[:3]}")
    if label is None:
        label = f"{space.label}|sub{len(keep)}"
    if len(keep) == space.n_points and space.kind == "taxicab":
        return FiniteMetricSpace(
            label=label,
            points=space.points,
            kind="taxicab",
            coords=space.coords,
            lattice_steps=space.lattice_steps,
            lattice_box=space.lattice_box,
        )
    idx = space.indices(keep)
    if space.kind == "taxicab":
        return FiniteMetricSpace(
            label=label,
            points=tuple(keep),
            kind="taxicab",
            coords=space.coords[idx],
        )
    dm = space.distance_matrix[np.ix_(idx, idx)]
    return FiniteMetricSpace(
        label=label,
        points=tuple(keep),
        kind="matrix",
        rows=tuple(map(tuple, dm.tolist())),
    )


def build_asymptotic_sum(
    parts: Sequence[FiniteMetricSpace],
    basepoints: Sequence,
    gaps: Sequence[int],
    label: Optional[str] = None,
) -> FiniteMetricSpace:
    """Disjoint sum with growing inter-part gaps routed through basepoints.

    For a in part i and b in part j (i < j) the distance is
    d_i(a, base_i) + (gaps[i] + ... + gaps[j]) + d_j(base_j, b); inside a part
    the original metric survives.  One part is returned unchanged.
    """
    if not parts:
        raise InvalidInputError("need at least one part")
    gaps = tuple(int(x) for x in gaps)
    if len(gaps) < len(parts):
        raise InvalidInputError("need at least one gap per part")
    if any(x < 1 for x in gaps):
        raise InvalidInputError("gaps must be positive")
    if any(b <= a for a, b in zip(gaps, gaps[1:])):
        raise InvalidInputError("gaps must be strictly increasing")
    if len(basepoints) != len(parts):
        raise InvalidInputError("one basepoint per part required")
    for part, base in zip(parts, basepoints):
        part.index(base)  # raises on unknown basepoint
    if len(parts) == 1:
        return parts[0]

    total = sum(p.n_points for p in parts)
    if total > MATRIX_CAP:
        raise ResourceLimitError(f"{total} points exceeds matrix cap {MATRIX_CAP}")

    ids = []
    owner = []  # (part index, local index)
    for pi, part in enumerate(parts):
        for p in part.points:
            ids.append(f"{pi}:{p}")
            owner.append((pi, part.index(p)))

    def base_gap(i: int, j: int) -> int:
        return sum(gaps[i : j + 1])

    base_idx = [part.index(b) for part, b in zip(parts, basepoints)]
    rows = [[0] * total for _ in range(total)]
    for a in range(total):
        pa, ia = owner[a]
        for b in range(a + 1, total):
            pb, ib = owner[b]
            if pa == pb:
                d = parts[pa].dist_idx(ia, ib)
            else:
                lo, lo_i, hi, hi_i = (pa, ia, pb, ib) if pa < pb else (pb, ib, pa, ia)
                d = (
                    parts[lo].dist_idx(lo_i, base_idx[lo])
                    + base_gap(lo, hi)
                    + parts[hi].dist_idx(base_idx[hi], hi_i)
                )
            rows[a][b] = d
            rows[b][a] = d
    return FiniteMetricSpace(
        label=label or "asum(" + "+".join(p.label for p in parts) + ")",
        points=tuple(ids),
        kind="matrix",
        rows=tuple(map(tuple, rows)),
    )


# ---------------------------------------------------------------------------
# coarse maps


@dataclass(frozen=True)
class StepFunction:
    """Nondecreasing integer step function: a breakpoint table plus a linear
    tail.  The tail (slope >= 1) witnesses unboundedness beyond the last
    breakpoint; inside the table the function is a step function."""

    breaks: tuple  # ((t, value), ...) with t strictly ascending, first t = 0
    tail_slope: int = 1

    def __post_init__(self):
        if not self.breaks:
            raise InvalidInputError("step function needs at least one breakpoint")
        ts = [t for t, _ in self.breaks]
        vs = [v for _, v in self.breaks]
        if ts[0] != 0:
            raise InvalidInputError("first breakpoint must be at t=0")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InvalidInputError("breakpoints must be strictly ascending")
        if any(b < a for a, b in zip(vs, vs[1:])):
            raise InvalidInputError("step function must be nondecreasing")
        if self.tail_slope < 1:
            raise InvalidInputError("tail slope must be >= 1 (unboundedness witness)")

    def __call__(self, t: int) -> int:
        if t < 0:
            raise InvalidInputError("step functions are defined on t >= 0")
        ts = [b[0] for b in self.breaks]
        pos = bisect_right(ts, t) - 1
        t0, v0 = self.breaks[pos]
        if pos == len(self.breaks) - 1 and t > t0:
            return v0 + self.tail_slope * (t - t0)
        return v0

    @classmethod
    def identity(cls) -> "StepFunction":
        return cls(breaks=((0, 0),), tail_slope=1)

    @classmethod
    def scale(cls, a: int) -> "StepFunction":
        return cls(breaks=((0, 0),), tail_slope=a)

    @classmethod
    def plus(cls, c: int) -> "StepFunction":
        return cls(breaks=((0, c),), tail_slope=1)

    @classmethod
    def delayed(cls, hold: int) -> "StepFunction":
        """max(t - hold, 0): flat at 0 through t = hold, then slope 1."""
        if hold <= 0:
            return cls.identity()
        return cls(breaks=((0, 0), (hold, 0)), tail_slope=1)


@dataclass(frozen=True)
class ControlPair:
    """Lower/upper distance controls (p1, p2) plus a co-density radius N."""

    p1: StepFunction
    p2: StepFunction
    N: int = 0

    def __post_init__(self):
        if self.N < 0:
            raise InvalidInputError("co-density radius must be >= 0")
        horizon = max(self.p1.breaks[-1][0], self.p2.breaks[-1][0]) + 2
        for t in range(horizon + 1):
            if self.p1(t) > self.p2(t):
                raise InvalidInputError(f"p1({t}) > p2({t})")
        if self.p1.tail_slope > self.p2.tail_slope:
            raise InvalidInputError("p1 tail eventually overtakes p2 tail")


@dataclass(frozen=True, eq=False)
class CoarseMap:
    """A total map between spaces together with its declared controls.

    The control inequalities are checked by check_coarse_embedding, never
    assumed."""

    source: FiniteMetricSpace
    target: FiniteMetricSpace
    mapping: Mapping
    controls: ControlPair

    def __post_init__(self):
        for p in self.source.points:
            if p not in self.mapping:
                raise InvalidInputError(f"map not total: missing {p!r}")
            if self.mapping[p] not in self.target._index:
                raise InvalidInputError(f"map image {self.mapping[p]!r} outside target")

    def image_indices(self) -> np.ndarray:
        return self.target.indices(self.mapping[p] for p in self.source.points)


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    pair: Optional[tuple] = None
    side: Optional[str] = None  # "lower" | "upper"
    detail: str = ""

    def __bool__(self):
        return self.ok


def check_coarse_embedding(m: CoarseMap) -> EmbeddingReport:
    """Verify p1(d(x,x')) <= d(f(x), f(x')) <= p2(d(x,x')) on every pair."""
    src, tgt = m.source, m.target
    n = src.n_points
    img = [tgt.index(m.mapping[p]) for p in src.points]
    p1, p2 = m.controls.p1, m.controls.p2
    p1_cache: dict = {}
    p2_cache: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            ds = src.dist_idx(i, j)
            dt = tgt.dist_idx(img[i], img[j])
            lo = p1_cache.get(ds)
            if lo is None:
                lo = p1_cache[ds] = p1(ds)
            if dt < lo:
                return EmbeddingReport(
                    False,
                    (src.points[i], src.points[j]),
                    "lower",
                    f"p1({ds})={lo} > d(f x, f x')={dt}",
                )
            hi = p2_cache.get(ds)
            if hi is None:
                hi = p2_cache[ds] = p2(ds)
            if dt > hi:
                return EmbeddingReport(
                    False,
                    (src.points[i], src.points[j]),
                    "upper",
                    f"d(f x, f x')={dt} > p2({ds})={hi}",
                )
    return EmbeddingReport(True)


def greedy_r_net(space: FiniteMetricSpace, r: int):
    """Greedy maximal r-separated subset plus the retraction onto it.

    Points are scanned in canonical order; the result is r-separated
    (pairwise distance >= r) and r-dense (every point is within < r of its
    representative).  The witness map carries the slack controls
    p1(t) = max(t - 2r, 0), p2(t) = t + 2r and co-density radius r.
    """
    if r < 1:
        raise InvalidInputError("need r >= 1")
    if space.n_points == 0:
        raise InvalidInputError("empty space has no net")
    net: list = []
    net_idx: list = []
    assign = {}
    for i, p in enumerate(space.points):
        rep = None
        for q, qi in zip(net, net_idx):
            if space.dist_idx(i, qi) < r:
                rep = q
                break
        if rep is None:
            net.append(p)
            net_idx.append(i)
            assign[p] = p
        else:
            assign[p] = rep
    net_space = subspace(space, net, label=f"{space.label}|net(r={r})")
    controls = ControlPair(
        p1=StepFunction.delayed(2 * r), p2=StepFunction.plus(2 * r), N=r
    )
    witness = CoarseMap(source=space, target=net_space, mapping=assign, controls=controls)
    return net_space, witness
