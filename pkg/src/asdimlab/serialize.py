"""Canonical JSON for spaces, covers, trees, maps and game transcripts.

Everything is emitted with sorted keys, compact separators and integer
values only, so identical inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .covers import SCover, make_cover
from .errors import InvalidInputError
from .game import Game, GameConfig, GameRound
from .spaces import ControlPair, FiniteMetricSpace, StepFunction
from .trees import EmpiricalTreeConfig, FinTree, tree_from_sequences


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# spaces


def space_to_json(space: FiniteMetricSpace) -> dict:
    out: dict = {"label": space.label, "points": list(space.points)}
    if space.kind == "taxicab":
        out["metric"] = {"kind": "taxicab"}
        out["coords"] = {
            str(p): [int(v) for v in space.coords[i]]
            for i, p in enumerate(space.points)
        }
        if space.is_lattice_box:
            out["lattice"] = {
                "steps": [int(x) for x in space.lattice_steps],
                "box": int(space.lattice_box),
            }
    else:
        out["metric"] = {
            "kind": "matrix",
            "rows": [[int(x) for x in row] for row in (space.rows or ())],
        }
        if space.coords is not None:
            out["coords"] = {
                str(p): [int(v) for v in space.coords[i]]
                for i, p in enumerate(space.points)
            }
    return out


def space_from_json(obj: dict) -> FiniteMetricSpace:
    try:
        label = obj["label"]
        points = tuple(str(p) for p in obj["points"])
        metric = obj["metric"]
        kind = metric["kind"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed space JSON: {exc}")
    if kind == "taxicab":
        coords_map = obj.get("coords")
        if not coords_map:
            raise InvalidInputError("taxicab space JSON needs coords")
        try:
            rows = [coords_map[str(p)] for p in points]
        except KeyError as exc:
            raise InvalidInputError(f"missing coords for point {exc}")
        coords = np.array(rows, dtype=np.int64)
        if coords.ndim != 2:
            raise InvalidInputError("coords must be equal-length integer vectors")
        lattice = obj.get("lattice") or {}
        return FiniteMetricSpace(
            label=label,
            points=points,
            kind="taxicab",
            coords=coords,
            lattice_steps=tuple(lattice["steps"]) if "steps" in lattice else None,
            lattice_box=lattice.get("box"),
        )
    if kind == "matrix":
        rows = tuple(tuple(int(x) for x in row) for row in metric.get("rows", ()))
        if len(rows) != len(points):
            raise InvalidInputError("matrix shape does not match point count")
        coords = None
        if obj.get("coords"):
            coords = np.array([obj["coords"][str(p)] for p in points], dtype=np.int64)
        return FiniteMetricSpace(
            label=label, points=points, kind="matrix", rows=rows, coords=coords
        )
    raise InvalidInputError(f"unknown metric kind {kind!r}")


# ---------------------------------------------------------------------------
# covers


def cover_to_json(cover: SCover) -> dict:
    return {
        "space": cover.space_label,
        "s": [int(x) for x in cover.demands],
        "D": int(cover.bound),
        "families": [
            [sorted(str(p) for p in st) for st in fam.sets] for fam in cover.families
        ],
    }


def cover_from_json(obj: dict) -> SCover:
    try:
        return make_cover(
            obj["space"],
            [int(x) for x in obj["s"]],
            int(obj["D"]),
            [[set(map(str, st)) for st in fam] for fam in obj["families"]],
        )
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed cover JSON: {exc}")


# ---------------------------------------------------------------------------
# trees


def tree_to_json(tree: FinTree, config: Optional[EmpiricalTreeConfig] = None) -> dict:
    out: dict = {"nodes": [list(s) for s in tree.sorted_nodes()]}
    if config is not None:
        out["config"] = {
            "rmax": config.rmax,
            "lmax": config.lmax,
            "bound": config.bound,
            "variant": config.variant,
            "mode": config.mode,
        }
    return out


def tree_from_json(obj: dict) -> FinTree:
    try:
        return tree_from_sequences([tuple(int(x) for x in s) for s in obj["nodes"]])
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed tree JSON: {exc}")


# ---------------------------------------------------------------------------
# control pairs and maps


def step_to_json(fn: StepFunction) -> dict:
    return {"breaks": [[int(t), int(v)] for t, v in fn.breaks],
            "tail_slope": int(fn.tail_slope)}


def step_from_json(obj: dict) -> StepFunction:
    try:
        return StepFunction(
            breaks=tuple((int(t), int(v)) for t, v in obj["breaks"]),
            tail_slope=int(obj.get("tail_slope", 1)),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed step function JSON: {exc}")


def controls_to_json(c: ControlPair) -> dict:
    return {"p1": step_to_json(c.p1), "p2": step_to_json(c.p2), "N": int(c.N)}


def controls_from_json(obj: dict) -> ControlPair:
    try:
        return ControlPair(
            p1=step_from_json(obj["p1"]),
            p2=step_from_json(obj["p2"]),
            N=int(obj.get("N", 0)),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed controls JSON: {exc}")


# ---------------------------------------------------------------------------
# game transcripts


def game_to_json(g: Game, stabilization: Optional[int] = None) -> dict:
    out = {
        "space": g.space.label,
        "config": {
            "bound": g.config.bound,
            "kcap": g.config.kcap,
            "rmax": g.config.rmax,
            "mode": g.config.mode,
        },
        "rounds": [
            {"r": rd.r, "k": rd.k, "cover": cover_to_json(rd.cover)} for rd in g.rounds
        ],
        "status": g.status,
        "pending_r": g.pending_r,
        "failed_r": g.failed_r,
        "stabilization_round": stabilization,
    }
    return out


def game_from_json(obj: dict, space: FiniteMetricSpace) -> Game:
    try:
        cfg = GameConfig(
            bound=int(obj["config"]["bound"]),
            kcap=int(obj["config"]["kcap"]),
            rmax=int(obj["config"]["rmax"]),
            mode=obj["config"].get("mode", "exact"),
        )
        if obj["space"] != space.label:
            raise InvalidInputError("transcript space label mismatch")
        rounds = tuple(
            GameRound(r=int(rd["r"]), k=int(rd["k"]), cover=cover_from_json(rd["cover"]))
            for rd in obj["rounds"]
        )
        return Game(
            space=space,
            config=cfg,
            rounds=rounds,
            status=obj.get("status", "ongoing"),
            pending_r=obj.get("pending_r"),
            failed_r=obj.get("failed_r"),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed transcript JSON: {exc}")
