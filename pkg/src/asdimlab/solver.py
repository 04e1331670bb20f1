"""Exact and heuristic search for s-covers at a fixed bound.

The exact engine assigns points to (family, cluster) slots in a canonical
order with fail-first selection, pruning on diameter overflow and strict
disjointness.  Searching over partitions is complete: any cover shrinks to
a partition cover with the same demands and bound (drop repeated points;
subsets only shrink diameters and grow separations), so feasibility is
unchanged.  Exhausting the tree therefore certifies UNSAT.

The heuristic engine is greedy with seeded restarts and never claims UNSAT.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .covers import SCover, check_s_cover, make_cover
from .errors import BudgetExhaustedError, InvalidInputError, ResourceLimitError
from .spaces import FiniteMetricSpace

DEFAULT_NODE_BUDGET = 2_000_000
SOLVER_POINT_CAP = 4_000


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    elapsed: float
    restarts: int = 0
    seed: int = 0


@dataclass(frozen=True)
class SolveResult:
    status: str  # "SAT" | "UNSAT" | "UNKNOWN"
    witness: Optional[SCover]
    stats: SolveStats
    exactness: str  # "exact" | "heuristic"

    @property
    def sat(self) -> bool:
        return self.status == "SAT"


class _Budget(Exception):
    pass


class _Search:
    """Shared state for one exact search over cluster assignments."""

    def __init__(self, space: FiniteMetricSpace, demands, bound, budget, seeds=None):
        self.space = space
        self.s = list(demands)
        self.D = bound
        self.budget = budget
        self.nodes = 0
        n = space.n_points
        self.n = n
        self.dm = space.distance_rows if n else []
        self.nfam = len(self.s)
        # cluster registry (LIFO open/close discipline follows the DFS)
        self.cl_family: list = []      # cluster id -> family
        self.cl_members: list = []     # cluster id -> [point indices]
        self.fam_clusters: list = [[] for _ in range(self.nfam)]
        self.agg_min: list = []        # cluster id -> per-point min distance
        self.agg_max: list = []        # cluster id -> per-point max distance
        self.assigned: list = [None] * n
        self.free_count = n
        self.seed_ok = True
        if seeds:
            self._apply_seeds(seeds)

    def _apply_seeds(self, seeds) -> None:
        if len(seeds) != self.nfam:
            raise InvalidInputError("one seed list per family required")
        for f, pinned in enumerate(seeds):
            for group in pinned:
                idx = [self.space.index(p) for p in group]
                for i in idx:
                    if self.assigned[i] is not None:
                        self.seed_ok = False
                        return
                cid = self._open(f, idx[0])
                self.assigned[idx[0]] = (f, cid)
                self.free_count -= 1
                for i in idx[1:]:
                    if not self._can_join(i, cid):
                        self.seed_ok = False
                        return
                    self._join(i, cid)
                    self.assigned[i] = (f, cid)
                    self.free_count -= 1

    # -- cluster bookkeeping ------------------------------------------------

    def _open(self, f: int, p: int) -> int:
        cid = len(self.cl_family)
        self.cl_family.append(f)
        self.cl_members.append([p])
        self.fam_clusters[f].append(cid)
        row = self.dm[p]
        self.agg_min.append(list(row))
        self.agg_max.append(list(row))
        return cid

    def _close(self, cid: int) -> None:
        f = self.cl_family.pop()
        self.cl_members.pop()
        self.fam_clusters[f].pop()
        self.agg_min.pop()
        self.agg_max.pop()

    def _join(self, p: int, cid: int):
        self.cl_members[cid].append(p)
        row = self.dm[p]
        mn = self.agg_min[cid]
        mx = self.agg_max[cid]
        saved_mn = mn[:]
        saved_mx = mx[:]
        for q in range(self.n):
            dq = row[q]
            if dq < mn[q]:
                mn[q] = dq
            if dq > mx[q]:
                mx[q] = dq
        return saved_mn, saved_mx

    def _unjoin(self, p: int, cid: int, saved):
        self.cl_members[cid].pop()
        self.agg_min[cid] = saved[0]
        self.agg_max[cid] = saved[1]

    # -- feasibility --------------------------------------------------------

    def _can_join(self, p: int, cid: int) -> bool:
        f = self.cl_family[cid]
        if self.agg_max[cid][p] > self.D:
            return False
        sf = self.s[f]
        for other in self.fam_clusters[f]:
            if other != cid and self.agg_min[other][p] <= sf:
                return False
        return True

    def options(self, p: int):
        """Legal moves for point p: ('j', cid) or ('n', family)."""
        out = []
        for f in range(self.nfam):
            sf = self.s[f]
            close = None
            blocked = False
            for cid in self.fam_clusters[f]:
                if self.agg_min[cid][p] <= sf:
                    if close is None:
                        close = cid
                    else:
                        blocked = True
                        break
            if blocked:
                continue
            if close is not None:
                if self.agg_max[close][p] <= self.D:
                    out.append(("j", close))
            else:
                for cid in self.fam_clusters[f]:
                    if self.agg_max[cid][p] <= self.D:
                        out.append(("j", cid))
                if self._new_allowed(f):
                    out.append(("n", f))
        return out

    def _new_allowed(self, f: int) -> bool:
        # interchangeable empty families with equal demand: only the first
        # may open its initial cluster
        if self.fam_clusters[f]:
            return True
        sf = self.s[f]
        for g in range(f):
            if self.s[g] == sf and not self.fam_clusters[g]:
                return False
        return True

    # -- search -------------------------------------------------------------

    def _pick(self):
        best = None
        best_opts = None
        for p in range(self.n):
            if self.assigned[p] is not None:
                continue
            opts = self.options(p)
            if not opts:
                return p, []
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = p, opts
                if len(opts) == 1:
                    break
        return best, best_opts

    def solutions(self) -> Iterator[list]:
        """Yield complete assignments (list point-index -> (family, cid))."""
        if not self.seed_ok:
            return
        if self.free_count == 0:
            yield list(self.assigned)
            return
        p, opts = self._pick()
        for move in opts:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget()
            if move[0] == "j":
                cid = move[1]
                saved = self._join(p, cid)
                self.assigned[p] = (self.cl_family[cid], cid)
                self.free_count -= 1
                yield from self.solutions()
                self.free_count += 1
                self.assigned[p] = None
                self._unjoin(p, cid, saved)
            else:
                f = move[1]
                cid = self._open(f, p)
                self.assigned[p] = (f, cid)
                self.free_count -= 1
                yield from self.solutions()
                self.free_count += 1
                self.assigned[p] = None
                self._close(cid)

    def witness_from(self, assignment) -> SCover:
        groups: dict = {}
        for p, slot in enumerate(assignment):
            groups.setdefault(slot, []).append(p)
        fams: list = [[] for _ in range(self.nfam)]
        for (f, _cid), members in sorted(groups.items(), key=lambda kv: kv[0]):
            fams[f].append(frozenset(self.space.points[p] for p in members))
        return make_cover(self.space.label, self.s, self.D, fams)


def _validate_problem(space, s, D):
    s = tuple(int(x) for x in s)
    if not s:
        raise InvalidInputError("demand sequence must be nonempty")
    if any(x < 1 for x in s):
        raise InvalidInputError("demand entries must be >= 1")
    if D < 0:
        raise InvalidInputError("bound must be >= 0")
    if space.n_points > SOLVER_POINT_CAP:
        raise ResourceLimitError(
            f"{space.n_points} points exceeds solver cap {SOLVER_POINT_CAP}"
        )
    return s, int(D)


def solve_s_cover(space: FiniteMetricSpace, s: Sequence[int], D: int,
                  mode: str = "exact", budget: int = DEFAULT_NODE_BUDGET,
                  seed: int = 0, seeds=None) -> SolveResult:
    """Decide whether an s-cover at bound D exists.

    Exact mode exhausts the assignment tree and is the only mode allowed to
    answer UNSAT; heuristic mode answers SAT or UNKNOWN.  Witnesses are
    re-checked before being returned.
    """
    s, D = _validate_problem(space, s, D)
    t0 = time.perf_counter()
    if mode == "exact":
        search = _Search(space, s, D, budget, seeds=seeds)
        try:
            for assignment in search.solutions():
                witness = search.witness_from(assignment)
                rep = check_s_cover(space, witness)
                if not rep.ok:  # engine bug guard
                    raise AssertionError(f"solver witness invalid: {rep.violation}")
                stats = SolveStats(search.nodes, time.perf_counter() - t0)
                return SolveResult("SAT", witness, stats, "exact")
            stats = SolveStats(search.nodes, time.perf_counter() - t0)
            return SolveResult("UNSAT", None, stats, "exact")
        except _Budget:
            stats = SolveStats(search.nodes, time.perf_counter() - t0)
            return SolveResult("UNKNOWN", None, stats, "exact")
    if mode != "heuristic":
        raise InvalidInputError(f"unknown mode {mode!r}")

    rng = random.Random(seed)
    nodes = 0
    restarts = 0
    order = list(range(space.n_points))
    while nodes <= budget:
        search = _Search(space, s, D, budget)
        ok = True
        for p in order:
            opts = search.options(p)
            nodes += 1
            if not opts:
                ok = False
                break
            move = opts[0]
            if move[0] == "j":
                search._join(p, move[1])
                search.assigned[p] = (search.cl_family[move[1]], move[1])
            else:
                cid = search._open(move[1], p)
                search.assigned[p] = (move[1], cid)
            search.free_count -= 1
        if ok:
            witness = search.witness_from(search.assigned)
            rep = check_s_cover(space, witness)
            if not rep.ok:
                raise AssertionError(f"heuristic witness invalid: {rep.violation}")
            stats = SolveStats(nodes, time.perf_counter() - t0, restarts, seed)
            return SolveResult("SAT", witness, stats, "heuristic")
        restarts += 1
        rng.shuffle(order)
    stats = SolveStats(nodes, time.perf_counter() - t0, restarts, seed)
    return SolveResult("UNKNOWN", None, stats, "heuristic")


def iter_exact_solutions(space: FiniteMetricSpace, s: Sequence[int], D: int,
                         seeds=None, budget: int = DEFAULT_NODE_BUDGET) -> Iterator[SCover]:
    """Enumerate distinct partition-shaped covers; raises BudgetExhaustedError
    when the node budget runs out mid-enumeration."""
    s, D = _validate_problem(space, s, D)
    search = _Search(space, s, D, budget, seeds=seeds)
    try:
        for assignment in search.solutions():
            yield search.witness_from(assignment)
    except _Budget:
        raise BudgetExhaustedError(f"enumeration exceeded {budget} nodes")


@dataclass(frozen=True)
class SeqDimension:
    """Least achievable cover power minus one for a demand prefix."""

    dimension: Optional[int]
    families: Optional[int]
    budget_exhausted: bool
    kcap: int
    witness: Optional[SCover] = None


def seq_dimension(space: FiniteMetricSpace, r: Sequence[int], D: int,
                  mode: str = "exact", kcap: Optional[int] = None,
                  budget: int = DEFAULT_NODE_BUDGET) -> SeqDimension:
    """Scan k = |r|, |r|+1, ... for the least k such that r extended to
    length k by repeating its last entry admits a cover at bound D; the
    reported dimension is that k minus 1."""
    r = tuple(int(x) for x in r)
    if not r:
        raise InvalidInputError("demand prefix must be nonempty")
    if any(b < a for a, b in zip(r, r[1:])):
        raise InvalidInputError("demand prefix must be nondecreasing")
    if kcap is None:
        kcap = len(r) + 8
    for k in range(len(r), kcap + 1):
        s = r + (r[-1],) * (k - len(r))
        res = solve_s_cover(space, s, D, mode=mode, budget=budget)
        if res.status == "SAT":
            return SeqDimension(k - 1, k, False, kcap, res.witness)
        if res.status == "UNKNOWN":
            return SeqDimension(None, None, True, kcap)
        if mode == "heuristic":
            # greedy failure is not evidence of infeasibility; keep probing
            continue
    return SeqDimension(None, None, False, kcap)


@dataclass(frozen=True)
class UniformSolveResult:
    status: str  # "uniform-sat" | "unsat" | "unknown"
    failing_index: Optional[int]
    failing_label: Optional[str]
    results: tuple


def family_solve_uniform(spaces: Sequence[FiniteMetricSpace], s: Sequence[int], D: int,
                         mode: str = "exact",
                         budget: int = DEFAULT_NODE_BUDGET) -> UniformSolveResult:
    """One (s, D) question asked of every space: uniform SAT needs them all."""
    results = []
    for i, sp in enumerate(spaces):
        res = solve_s_cover(sp, s, D, mode=mode, budget=budget)
        results.append(res)
        if res.status == "UNSAT":
            return UniformSolveResult("unsat", i, sp.label, tuple(results))
        if res.status == "UNKNOWN":
            return UniformSolveResult("unknown", i, sp.label, tuple(results))
    return UniformSolveResult("uniform-sat", None, None, tuple(results))
