#!/usr/bin/env python3
"""Regenerate frontend test fixtures from the real service routing core.

Run from the repository root:  python3 scripts/gen_frontend_fixtures.py
"""

import json
from pathlib import Path

import asdimlab as al
from asdimlab import serialize as ser
from asdimlab.covers import brick_cover
from asdimlab.service import Api

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def canonical(obj):
    return json.loads(ser.dumps(obj))


def record(api, calls, method, path, body=None):
    status, payload = api.handle(method, path, body)
    calls.append(
        {
            "method": method,
            "path": path,
            "body": canonical(body) if body is not None else None,
            "status": status,
            "response": canonical(payload),
        }
    )
    return payload


def game_roundtrip():
    api = Api()
    calls = []
    space = al.interval_space(-8, 8)
    record(api, calls, "POST", "/spaces", ser.space_to_json(space))
    record(api, calls, "GET", "/spaces")
    created = record(
        api, calls, "POST", "/games",
        {"space": space.label, "bound": 2, "kcap": 4, "rmax": 6},
    )
    sid = created["id"]
    record(api, calls, "POST", f"/games/{sid}/move", {"r": 2})
    record(api, calls, "POST", f"/games/{sid}/move", {"r": 2})
    record(api, calls, "GET", f"/games/{sid}")
    record(api, calls, "GET", f"/games/{sid}/export")
    record(api, calls, "POST", f"/games/{sid}/move", {"r": 3})  # 409 after the end
    return calls


def trees():
    api = Api()
    calls = []
    line = al.interval_space(-8, 8)
    point = al.from_matrix("pt", ["x"], [[0]])
    record(api, calls, "POST", "/spaces", ser.space_to_json(line))
    record(api, calls, "POST", "/spaces", ser.space_to_json(point))
    record(
        api, calls, "GET",
        "/trees/empirical?space=interval(-8,8)&rmax=2&lmax=2&bound=2&variant=nondecreasing",
    )
    record(
        api, calls, "GET",
        "/trees/empirical?space=pt&rmax=3&lmax=2&bound=1&variant=nondecreasing",
    )
    return calls


def renderer_inputs():
    bc = brick_cover(2, 2, 4)
    line = al.interval_space(-4, 4)
    line_cover = al.solve_s_cover(line, (2, 2), 3).witness
    matrix_space = al.build_asymptotic_sum(
        [al.interval_space(0, 1), al.interval_space(0, 1)], ["0", "0"], [2, 3]
    )
    matrix_cover = al.make_cover(
        matrix_space.label, (2,), 7, [[set(matrix_space.points)]]
    )
    return {
        "square_space": canonical(ser.space_to_json(bc.space)),
        "square_cover": canonical(ser.cover_to_json(bc.cover)),
        "line_space": canonical(ser.space_to_json(line)),
        "line_cover": canonical(ser.cover_to_json(line_cover)),
        "matrix_space": canonical(ser.space_to_json(matrix_space)),
        "matrix_cover": canonical(ser.cover_to_json(matrix_cover)),
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "game_roundtrip.json").write_text(json.dumps(game_roundtrip(), indent=1, sort_keys=True))
    (OUT / "trees.json").write_text(json.dumps(trees(), indent=1, sort_keys=True))
    (OUT / "renderer.json").write_text(json.dumps(renderer_inputs(), indent=1, sort_keys=True))
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
