"""The dimension game: B names nondecreasing demands, A answers with covers.

A plays the canonical maximally defensive policy: the least family count k
(with k >= round number) for which an exact cover exists, the demand
sequence being B's choices so far padded to length k with the current
demand.  A wins the moment k equals the round number; if no k within the
cap works, B wins.  Caps on B's demands (rmax) and A's families (kcap)
keep play finite and are carried in the transcript.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .covers import SCover, check_s_cover
from .errors import BudgetExhaustedError, InvalidInputError
from .solver import DEFAULT_NODE_BUDGET, solve_s_cover
from .spaces import FiniteMetricSpace

ONGOING = "ongoing"
A_WINS = "a-wins"
B_WINS = "b-wins"
ABORTED = "aborted"


@dataclass(frozen=True)
class GameConfig:
    bound: int
    kcap: int
    rmax: int
    mode: str = "exact"
    budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        if self.bound < 1 or self.kcap < 1 or self.rmax < 1:
            raise InvalidInputError("bound, kcap and rmax must all be >= 1")
        if self.mode not in ("exact", "heuristic"):
            raise InvalidInputError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class GameRound:
    r: int
    k: int
    cover: SCover


@dataclass(frozen=True)
class Game:
    """One transcript; every transition returns a fresh value."""

    space: FiniteMetricSpace
    config: GameConfig
    rounds: tuple = ()
    status: str = ONGOING
    pending_r: Optional[int] = None
    failed_r: Optional[int] = None

    @property
    def round_number(self) -> int:
        return len(self.rounds)

    @property
    def demands_so_far(self) -> tuple:
        return tuple(rd.r for rd in self.rounds)

    @property
    def last_r(self) -> Optional[int]:
        if self.pending_r is not None:
            return self.pending_r
        if self.rounds:
            return self.rounds[-1].r
        return None


def new_game(space: FiniteMetricSpace, config: GameConfig) -> Game:
    if space.n_points == 0:
        raise InvalidInputError("the game needs a nonempty space")
    return Game(space=space, config=config)


def b_move(g: Game, r: int) -> Game:
    """B opens a round by naming a demand r (nondecreasing, capped)."""
    if g.status != ONGOING:
        raise InvalidInputError(f"game already ended: {g.status}")
    if g.pending_r is not None:
        raise InvalidInputError("a round is already awaiting A")
    if r < 1:
        raise InvalidInputError("demand must be >= 1")
    if r > g.config.rmax:
        raise InvalidInputError(f"demand {r} exceeds rmax {g.config.rmax}")
    prev = g.rounds[-1].r if g.rounds else None
    if prev is not None and r < prev:
        raise InvalidInputError(f"demand {r} below previous demand {prev}")
    return replace(g, pending_r=r)


def minimal_k(space: FiniteMetricSpace, demands: Sequence[int], bound: int,
              kcap: int, budget: int = DEFAULT_NODE_BUDGET):
    """Least k in [len(demands), kcap] such that the padded sequence is
    coverable; returns (k, witness) or (None, None).  Raises on UNKNOWN."""
    demands = tuple(demands)
    n = len(demands)
    for k in range(n, kcap + 1):
        s = demands + (demands[-1],) * (k - n)
        res = solve_s_cover(space, s, bound, mode="exact", budget=budget)
        if res.status == "UNKNOWN":
            raise BudgetExhaustedError(f"exact verdict for k={k} exceeded the budget")
        if res.status == "SAT":
            return k, res.witness
    return None, None


def a_respond(g: Game) -> Game:
    """A answers the pending round with the least feasible family count."""
    if g.status != ONGOING:
        raise InvalidInputError(f"game already ended: {g.status}")
    if g.pending_r is None:
        raise InvalidInputError("no round awaiting A")
    demands = g.demands_so_far + (g.pending_r,)
    n = len(demands)
    try:
        k, witness = minimal_k(g.space, demands, g.config.bound, g.config.kcap,
                               g.config.budget)
    except BudgetExhaustedError:
        return replace(g, status=ABORTED, pending_r=None, failed_r=g.pending_r)
    if k is None:
        return replace(g, status=B_WINS, pending_r=None, failed_r=g.pending_r)
    rounds = g.rounds + (GameRound(r=g.pending_r, k=k, cover=witness),)
    status = A_WINS if k == n else ONGOING
    return replace(g, rounds=rounds, status=status, pending_r=None)


def play_script(space: FiniteMetricSpace, config: GameConfig,
                script: Sequence[int]) -> Game:
    """Run B's scripted demands until the script or the game ends."""
    g = new_game(space, config)
    for r in script:
        if g.status != ONGOING:
            break
        g = a_respond(b_move(g, r))
    return g


def is_stabilized(g: Game) -> Optional[int]:
    """First recorded round whose answer is invariant over every demand B
    could still name there (swept exactly over [r_n, rmax])."""
    if g.status == ABORTED:
        return None
    cfg = g.config
    for n, rd in enumerate(g.rounds, start=1):
        prefix = tuple(x.r for x in g.rounds[: n - 1])
        ks = set()
        ok = True
        for r in range(rd.r, cfg.rmax + 1):
            k, _ = minimal_k(g.space, prefix + (r,), cfg.bound, cfg.kcap, cfg.budget)
            if k is None:
                ok = False
                break
            ks.add(k)
            if len(ks) > 1:
                ok = False
                break
        if ok and len(ks) == 1:
            return n
    return None


@dataclass(frozen=True)
class TranscriptReport:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_transcript(g: Game) -> TranscriptReport:
    """Re-check every rule the engine is supposed to maintain."""
    demands = g.demands_so_far
    for a, b in zip(demands, demands[1:]):
        if b < a:
            return TranscriptReport(False, f"demands decrease: {a} then {b}")
    if any(r.r > g.config.rmax or r.r < 1 for r in g.rounds):
        return TranscriptReport(False, "a demand leaves [1, rmax]")
    for n, rd in enumerate(g.rounds, start=1):
        if rd.k < n:
            return TranscriptReport(False, f"round {n}: k={rd.k} below round number")
        if rd.k > g.config.kcap:
            return TranscriptReport(False, f"round {n}: k={rd.k} above kcap")
        expected = demands[:n] + (rd.r,) * (rd.k - n)
        if rd.cover.demands != expected:
            return TranscriptReport(
                False, f"round {n}: cover demands {rd.cover.demands} != {expected}"
            )
        if len(rd.cover.families) != rd.k:
            return TranscriptReport(False, f"round {n}: cover has wrong family count")
        if rd.cover.bound != g.config.bound:
            return TranscriptReport(False, f"round {n}: cover bound mismatch")
        rep = check_s_cover(g.space, rd.cover)
        if not rep.ok:
            return TranscriptReport(False, f"round {n}: {rep.violation.detail}")
    if g.status == A_WINS:
        if not g.rounds or g.rounds[-1].k != len(g.rounds):
            return TranscriptReport(False, "a-wins status without k_n = n ending")
    if g.status == B_WINS and g.failed_r is None:
        return TranscriptReport(False, "b-wins status without a failed demand")
    if g.status == ONGOING and g.rounds and g.rounds[-1].k == len(g.rounds):
        return TranscriptReport(False, "game should have ended with a-wins")
    return TranscriptReport(True)
