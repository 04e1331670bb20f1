"""Sweep harness for the stacked-lattice family: minimal cover power over a
grid of two-round demand choices.

The harness reports, per bound, the least family count A could answer with
after rounds (r1, r2), and whether that answer was constant across the r2
sweep (the observational shadow of second-round stabilization).  It makes
no claim beyond the table: cells the exact search cannot settle within the
node budget are reported as unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BudgetExhaustedError, InvalidInputError
from .game import minimal_k
from .solver import DEFAULT_NODE_BUDGET
from .spaces import build_cup_c_space


@dataclass(frozen=True)
class CupcCell:
    bound: int
    r1: int
    r2: int
    k: Optional[int]  # None when the budget ran out


def run_cupc(
    c: Sequence[int],
    box: int,
    depth: int = 1,
    bounds: Sequence[int] = (2, 4, 8),
    r1_values: Sequence[int] = (2, 3, 4),
    deltas: Sequence[int] = (0, 2),
    kcap: int = 6,
    budget: int = DEFAULT_NODE_BUDGET,
) -> dict:
    c = tuple(int(x) for x in c)
    if depth < 1 or depth > len(c):
        raise InvalidInputError("depth must be between 1 and len(c)")
    space = build_cup_c_space(c, depth, box)
    cells = []
    for bound in bounds:
        for r1 in r1_values:
            for delta in deltas:
                r2 = r1 + delta
                try:
                    k, _ = minimal_k(space, (r1, r2), bound, kcap, budget=budget)
                except BudgetExhaustedError:
                    k = None
                cells.append(CupcCell(bound=bound, r1=r1, r2=r2, k=k))

    stability = []
    for bound in bounds:
        for r1 in r1_values:
            ks = [cell.k for cell in cells if cell.bound == bound and cell.r1 == r1]
            if any(k is None for k in ks):
                verdict = None
            else:
                verdict = len(set(ks)) == 1
            stability.append({"bound": bound, "r1": r1, "round2_constant": verdict})

    return {
        "space": space.label,
        "points": space.n_points,
        "c": list(c),
        "depth": depth,
        "box": box,
        "kcap": kcap,
        "cells": [
            {"bound": cell.bound, "r1": cell.r1, "r2": cell.r2, "k": cell.k}
            for cell in cells
        ],
        "round2_stability": stability,
    }


def format_cupc_table(result: dict) -> str:
    lines = [
        f"space {result['space']} ({result['points']} points), kcap {result['kcap']}"
    ]
    bounds = sorted({cell["bound"] for cell in result["cells"]})
    for bound in bounds:
        lines.append(f"bound D={bound}: minimal k by (r1, r2)")
        rows = [c for c in result["cells"] if c["bound"] == bound]
        for cell in rows:
            k = "?" if cell["k"] is None else str(cell["k"])
            lines.append(f"  r1={cell['r1']:2d} r2={cell['r2']:2d}  k={k}")
    for st in result["round2_stability"]:
        verdict = {True: "constant", False: "varies", None: "unknown"}[st["round2_constant"]]
        lines.append(
            f"round-2 sweep at D={st['bound']}, r1={st['r1']}: {verdict}"
        )
    lines.append("(observational report only)")
    return "\n".join(lines)
