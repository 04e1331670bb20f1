"""Command-line interface.

Every subcommand reads and writes the canonical JSON formats.  Exit codes:
0 for a completed run (an UNSAT verdict is a successful answer), 1 for a
failed check or suite, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import covers as cv
from . import experiment as xp
from . import oracles as orc
from . import serialize as ser
from . import service as svc
from . import solver as sv
from . import spaces as sp
from . import trees as tr
from .errors import AsdimlabError, InvalidInputError
from .game import GameConfig, a_respond, b_move, is_stabilized, new_game, validate_transcript


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x != "")
    except ValueError:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}")


def _emit(obj, out: str | None) -> None:
    text = ser.dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read JSON from {path}: {exc}")


def _load_space(path: str) -> sp.FiniteMetricSpace:
    return ser.space_from_json(_load_json(path))


# ---------------------------------------------------------------------------
# space


def _cmd_space_grid(args) -> int:
    space = sp.build_grid_space(args.n, args.k, args.box)
    _emit(ser.space_to_json(space), args.out)
    return 0


def _cmd_space_cupc(args) -> int:
    c = _ints(args.c)
    depth = args.n if args.n else len(c)
    space = sp.build_cup_c_space(c, depth, args.box)
    _emit(ser.space_to_json(space), args.out)
    return 0


def _cmd_space_sum(args) -> int:
    parts = [_load_space(p) for p in args.parts]
    basepoints = args.basepoints.split(",") if args.basepoints else [
        p.points[0] for p in parts
    ]
    space = sp.build_asymptotic_sum(parts, basepoints, _ints(args.gaps))
    _emit(ser.space_to_json(space), args.out)
    return 0


def _cmd_space_net(args) -> int:
    space = _load_space(args.space)
    net, witness = sp.greedy_r_net(space, args.r)
    _emit(ser.space_to_json(net), args.out)
    if args.report:
        rep = sp.check_coarse_embedding(witness)
        sys.stdout.write(ser.dumps({"witness_ok": rep.ok, "net_points": net.n_points}))
    return 0


def _cmd_space_check(args) -> int:
    space = _load_space(args.space)
    try:
        sp.validate_metric(space)
    except AsdimlabError as exc:
        sys.stdout.write(ser.dumps({"ok": False, "detail": str(exc)}))
        return 1
    sys.stdout.write(ser.dumps({"ok": True, "points": space.n_points}))
    return 0


def _cmd_space_subspace(args) -> int:
    space = _load_space(args.space)
    sub = sp.subspace(space, args.points.split(","), label=args.label)
    _emit(ser.space_to_json(sub), args.out)
    return 0


# ---------------------------------------------------------------------------
# cover


def _cmd_cover_solve(args) -> int:
    space = _load_space(args.space)
    res = sv.solve_s_cover(space, _ints(args.s), args.bound, mode=args.mode,
                           budget=args.budget_nodes, seed=args.seed)
    payload = {
        "status": res.status,
        "exactness": res.exactness,
        "nodes": res.stats.nodes,
    }
    sys.stdout.write(ser.dumps(payload))
    if res.witness is not None and args.out:
        _emit(ser.cover_to_json(res.witness), args.out)
    return 0


def _cmd_cover_check(args) -> int:
    space = _load_space(args.space)
    cover = ser.cover_from_json(_load_json(args.cover))
    rep = cv.check_s_cover(space, cover)
    if rep.ok:
        sys.stdout.write(ser.dumps({"ok": True}))
        return 0
    sys.stdout.write(ser.dumps({
        "ok": False,
        "kind": rep.violation.kind,
        "family": rep.violation.family,
        "detail": rep.violation.detail,
    }))
    return 1


def _cmd_cover_brick(args) -> int:
    bc = cv.brick_cover(args.n, args.r, args.box)
    sys.stdout.write(ser.dumps({
        "families": len(bc.cover.families),
        "bound": bc.cover.bound,
        "c_constant": bc.c_constant,
        "sets": bc.cover.total_sets(),
    }))
    if args.out:
        _emit(ser.cover_to_json(bc.cover), args.out)
    if args.space_out:
        _emit(ser.space_to_json(bc.space), args.space_out)
    return 0


def _cmd_cover_trace(args) -> int:
    space = _load_space(args.space)
    cover = ser.cover_from_json(_load_json(args.cover))
    sub, traced = cv.trace_cover(space, cover, args.points.split(","), label=args.label)
    _emit(ser.cover_to_json(traced), args.out)
    if args.space_out:
        _emit(ser.space_to_json(sub), args.space_out)
    return 0


def _cmd_cover_transport(args) -> int:
    source = _load_space(args.source)
    target = _load_space(args.target)
    spec = _load_json(args.map)
    controls = ser.controls_from_json(spec["controls"])
    m = sp.CoarseMap(source, target, {str(k): str(v) for k, v in spec["map"].items()},
                     controls)
    cover = ser.cover_from_json(_load_json(args.cover))
    e_bound = args.e if args.e is not None else cover.bound
    res = cv.transport_cover(cover, m, E=e_bound)
    sys.stdout.write(ser.dumps({
        "demands": list(res.cover.demands),
        "bound": res.cover.bound,
        "degenerate": list(res.degenerate),
    }))
    if args.out:
        _emit(ser.cover_to_json(res.cover), args.out)
    return 0


def _cmd_cover_glue(args) -> int:
    space = _load_space(args.space)
    subsets = [[str(p) for p in b] for b in _load_json(args.subsets)]
    covers = [ser.cover_from_json(_load_json(p)) if p != "-" else None
              for p in args.covers]
    s = _ints(args.s) if args.s else None
    res = cv.glue_covers(space, subsets, covers, mode=args.mode, s=s, D=args.bound)
    sys.stdout.write(ser.dumps({
        "ok": res.ok,
        "detail": res.detail,
        "combos_tried": res.combos_tried,
    }))
    if res.ok and args.out:
        _emit(ser.cover_to_json(res.cover), args.out)
    return 0 if res.ok else 1


# ---------------------------------------------------------------------------
# tree


def _cmd_tree_rank(args) -> int:
    tree = ser.tree_from_json(_load_json(args.tree))
    sys.stdout.write(ser.dumps({
        "rank": tr.rank_recursive(tree),
        "rank_levels": tr.rank_levels(tree),
        "nodes": len(tree),
    }))
    return 0


def _cmd_tree_kb_sort(args) -> int:
    tree = ser.tree_from_json(_load_json(args.tree))
    sys.stdout.write(ser.dumps({
        "nodes": [list(s) for s in tr.kb_sorted(tree.nodes)],
    }))
    return 0


def _cmd_tree_empirical(args) -> int:
    space = _load_space(args.space)
    cfg = tr.EmpiricalTreeConfig(rmax=args.rmax, lmax=args.lmax, bound=args.bound,
                                 variant=args.variant)
    tree = tr.empirical_dim_tree(space, cfg)
    payload = ser.tree_to_json(tree, cfg)
    payload["rank"] = tr.rank_recursive(tree)
    _emit(payload, args.out)
    return 0


def _cmd_tree_matrix(args) -> int:
    tree = ser.tree_from_json(_load_json(args.tree))
    out = tr.subtree_matrix(tree, _ints(args.root))
    _emit(ser.tree_to_json(out), args.out)
    return 0


# ---------------------------------------------------------------------------
# game


def _cmd_game_play(args) -> int:
    space = _load_space(args.space)
    cfg = GameConfig(bound=args.bound, kcap=args.kcap, rmax=args.rmax)
    g = new_game(space, cfg)
    if args.interactive:
        while g.status == "ongoing":
            prev = g.rounds[-1].r if g.rounds else 1
            sys.stdout.write(f"round {g.round_number + 1}: choose r >= {prev} (<= {cfg.rmax}): ")
            sys.stdout.flush()
            line = sys.stdin.readline()
            if not line.strip():
                break
            try:
                g = a_respond(b_move(g, int(line.strip())))
            except (ValueError, InvalidInputError) as exc:
                sys.stdout.write(f"rejected: {exc}\n")
                continue
            last = g.rounds[-1] if g.rounds else None
            if last is not None:
                sys.stdout.write(f"A answers k={last.k}; status {g.status}\n")
            else:
                sys.stdout.write(f"status {g.status}\n")
    else:
        if not args.b_script:
            raise InvalidInputError("either --b-script or --interactive is required")
        for r in _ints(args.b_script):
            if g.status != "ongoing":
                break
            g = a_respond(b_move(g, r))
    stab = is_stabilized(g) if g.status != "aborted" else None
    rep = validate_transcript(g)
    payload = ser.game_to_json(g, stabilization=stab)
    payload["transcript_valid"] = rep.ok
    _emit(payload, args.out)
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# oracle / experiment / serve


def _cmd_oracle_run(args) -> int:
    names = orc.SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = [orc.run_suite(name, seed=args.seed, trials=args.trials) for name in names]
    ok = all(r.ok for r in reports)
    payload = {
        "ok": ok,
        "suites": [
            {
                "name": r.name,
                "trials": r.trials,
                "failures": [list(f) for f in r.failures],
                "seed": r.seed,
            }
            for r in reports
        ],
    }
    if args.json:
        sys.stdout.write(ser.dumps(payload))
    else:
        for r in reports:
            sys.stdout.write(f"{r.name}: {'pass' if r.ok else 'FAIL'} ({r.trials} trials)\n")
    return 0 if ok else 1


def _cmd_experiment_cupc(args) -> int:
    result = xp.run_cupc(
        _ints(args.c),
        args.box,
        depth=args.depth,
        bounds=_ints(args.bound),
        r1_values=_ints(args.r1),
        deltas=_ints(args.deltas),
        kcap=args.kcap,
        budget=args.budget_nodes,
    )
    if args.json:
        sys.stdout.write(ser.dumps(result))
    else:
        sys.stdout.write(xp.format_cupc_table(result) + "\n")
    return 0


def _cmd_serve(args) -> int:
    registry = svc.SpaceRegistry()
    if args.spaces:
        for path in sorted(Path(args.spaces).glob("*.json")):
            registry.add(ser.space_from_json(json.loads(path.read_text())))
    svc.serve(args.port, registry)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asdimlab")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("space", help="build and inspect spaces")
    ssub = ps.add_subparsers(dest="subcommand", required=True)
    g = ssub.add_parser("grid")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--box", type=int, required=True)
    g.add_argument("-o", "--out")
    g.set_defaults(func=_cmd_space_grid)
    cc = ssub.add_parser("cupc")
    cc.add_argument("--c", required=True)
    cc.add_argument("--n", type=int, default=None)
    cc.add_argument("--box", type=int, required=True)
    cc.add_argument("-o", "--out")
    cc.set_defaults(func=_cmd_space_cupc)
    sm = ssub.add_parser("sum")
    sm.add_argument("--parts", nargs="+", required=True)
    sm.add_argument("--basepoints", default=None)
    sm.add_argument("--gaps", required=True)
    sm.add_argument("-o", "--out")
    sm.set_defaults(func=_cmd_space_sum)
    nt = ssub.add_parser("net")
    nt.add_argument("--space", required=True)
    nt.add_argument("--r", type=int, required=True)
    nt.add_argument("--report", action="store_true")
    nt.add_argument("-o", "--out")
    nt.set_defaults(func=_cmd_space_net)
    ck = ssub.add_parser("check")
    ck.add_argument("--space", required=True)
    ck.set_defaults(func=_cmd_space_check)
    sb = ssub.add_parser("subspace")
    sb.add_argument("--space", required=True)
    sb.add_argument("--points", required=True)
    sb.add_argument("--label", default=None)
    sb.add_argument("-o", "--out")
    sb.set_defaults(func=_cmd_space_subspace)

    pc = sub.add_parser("cover", help="solve, check and transform covers")
    csub = pc.add_subparsers(dest="subcommand", required=True)
    so = csub.add_parser("solve")
    so.add_argument("--space", required=True)
    so.add_argument("--s", required=True)
    so.add_argument("--bound", type=int, required=True)
    so.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    so.add_argument("--budget-nodes", type=int, default=sv.DEFAULT_NODE_BUDGET)
    so.add_argument("--seed", type=int, default=0)
    so.add_argument("-o", "--out")
    so.set_defaults(func=_cmd_cover_solve)
    ch = csub.add_parser("check")
    ch.add_argument("--space", required=True)
    ch.add_argument("--cover", required=True)
    ch.set_defaults(func=_cmd_cover_check)
    br = csub.add_parser("brick")
    br.add_argument("--n", type=int, required=True)
    br.add_argument("--r", type=int, required=True)
    br.add_argument("--box", type=int, required=True)
    br.add_argument("-o", "--out")
    br.add_argument("--space-out")
    br.set_defaults(func=_cmd_cover_brick)
    tc = csub.add_parser("trace")
    tc.add_argument("--space", required=True)
    tc.add_argument("--cover", required=True)
    tc.add_argument("--points", required=True)
    tc.add_argument("--label", default=None)
    tc.add_argument("--space-out")
    tc.add_argument("-o", "--out")
    tc.set_defaults(func=_cmd_cover_trace)
    tp = csub.add_parser("transport")
    tp.add_argument("--cover", required=True)
    tp.add_argument("--source", required=True)
    tp.add_argument("--target", required=True)
    tp.add_argument("--map", required=True)
    tp.add_argument("--e", type=int, default=None)
    tp.add_argument("-o", "--out")
    tp.set_defaults(func=_cmd_cover_transport)
    gl = csub.add_parser("glue")
    gl.add_argument("--space", required=True)
    gl.add_argument("--subsets", required=True, help="JSON file: list of point-id lists")
    gl.add_argument("--covers", nargs="+", required=True, help="cover files; '-' to search")
    gl.add_argument("--mode", choices=("chain", "finite-sums"), default="chain")
    gl.add_argument("--s", default=None)
    gl.add_argument("--bound", type=int, default=None)
    gl.add_argument("-o", "--out")
    gl.set_defaults(func=_cmd_cover_glue)

    pt = sub.add_parser("tree", help="ranks, KB order, empirical trees")
    tsub = pt.add_subparsers(dest="subcommand", required=True)
    rk = tsub.add_parser("rank")
    rk.add_argument("--tree", required=True)
    rk.set_defaults(func=_cmd_tree_rank)
    kb = tsub.add_parser("kb-sort")
    kb.add_argument("--tree", required=True)
    kb.set_defaults(func=_cmd_tree_kb_sort)
    em = tsub.add_parser("empirical")
    em.add_argument("--space", required=True)
    em.add_argument("--rmax", type=int, required=True)
    em.add_argument("--lmax", type=int, required=True)
    em.add_argument("--bound", type=int, required=True)
    em.add_argument("--variant", choices=("any", "nondecreasing", "strictly-increasing"),
                    default="any")
    em.add_argument("-o", "--out")
    em.set_defaults(func=_cmd_tree_empirical)
    mx = tsub.add_parser("matrix")
    mx.add_argument("--tree", required=True)
    mx.add_argument("--root", required=True)
    mx.add_argument("-o", "--out")
    mx.set_defaults(func=_cmd_tree_matrix)

    pg = sub.add_parser("game", help="play the dimension game")
    gsub = pg.add_subparsers(dest="subcommand", required=True)
    pl = gsub.add_parser("play")
    pl.add_argument("--space", required=True)
    pl.add_argument("--bound", type=int, required=True)
    pl.add_argument("--kcap", type=int, default=4)
    pl.add_argument("--rmax", type=int, default=6)
    pl.add_argument("--b-script", default=None)
    pl.add_argument("--interactive", action="store_true")
    pl.add_argument("-o", "--out")
    pl.set_defaults(func=_cmd_game_play)

    po = sub.add_parser("oracle", help="run verification suites")
    osub = po.add_subparsers(dest="subcommand", required=True)
    orun = osub.add_parser("run")
    orun.add_argument("--suite", default="all")
    orun.add_argument("--seed", type=int, default=7)
    orun.add_argument("--trials", type=int, default=200)
    orun.add_argument("--json", action="store_true")
    orun.set_defaults(func=_cmd_oracle_run)

    px = sub.add_parser("experiment", help="exploration harnesses")
    xsub = px.add_subparsers(dest="subcommand", required=True)
    xc = xsub.add_parser("cupc")
    xc.add_argument("--c", required=True)
    xc.add_argument("--box", type=int, required=True)
    xc.add_argument("--depth", type=int, default=1)
    xc.add_argument("--bound", default="2,4,8")
    xc.add_argument("--r1", default="2,3,4")
    xc.add_argument("--deltas", default="0,2")
    xc.add_argument("--kcap", type=int, default=6)
    xc.add_argument("--budget-nodes", type=int, default=sv.DEFAULT_NODE_BUDGET)
    xc.add_argument("--json", action="store_true")
    xc.set_defaults(func=_cmd_experiment_cupc)

    pv = sub.add_parser("serve", help="run the HTTP session service")
    pv.add_argument("--port", type=int, default=8008)
    pv.add_argument("--spaces", default=None, help="directory of space JSON files")
    pv.set_defaults(func=_cmd_serve)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AsdimlabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
