"""Acceptance gate: one test per release criterion.

Each test prints a PASS/FAIL line (visible with pytest -s and in CI logs)
and enforces the stated runtime where the criterion carries one.
"""

import random
import sys
import time
from contextlib import contextmanager

import pytest

import asdimlab as al
from asdimlab.cli import main as cli_main
from asdimlab.experiment import run_cupc
from asdimlab.oracles import _random_tree


@contextmanager
def criterion(name, limit_seconds=None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        sys.stderr.write(f"FAIL: {name}\n")
        raise
    elapsed = time.perf_counter() - t0
    if limit_seconds is not None and elapsed > limit_seconds:
        sys.stderr.write(f"FAIL: {name} (over budget: {elapsed:.1f}s > {limit_seconds}s)\n")
        raise AssertionError(f"{name}: runtime {elapsed:.1f}s exceeds {limit_seconds}s")
    sys.stderr.write(f"PASS: {name} ({elapsed:.1f}s)\n")


def test_small_cube_obstructions():
    with criterion("small-cube obstruction instances (exact UNSAT + oracle match)", 300):
        line5 = al.interval_space(-2, 2)
        line9 = al.interval_space(-4, 4)
        square = al.build_grid_space(2, 1, 2)
        assert al.solve_s_cover(line5, (2,), 2).status == "UNSAT"
        assert al.solve_s_cover(line9, (2,), 4).status == "UNSAT"
        assert al.solve_s_cover(square, (2, 2), 2).status == "UNSAT"
        assert al.exhaustive_cover_oracle(line5, (2,), 2) == "UNSAT"
        assert al.exhaustive_cover_oracle(line9, (2,), 4) == "UNSAT"


def test_brick_upper_bound():
    with criterion("brick upper bound (n in 1..3, r in {2,4,8}, box=8r)", 60):
        for n in (1, 2, 3):
            for r in (2, 4, 8):
                bc = al.brick_cover(n, r, 8 * r)
                assert len(bc.cover.families) == n + 1
                assert bc.cover.bound <= bc.c_constant * r
                rep = al.check_s_cover(bc.space, bc.cover)
                assert rep.ok, (n, r, rep.violation)


def test_rank_equivalence():
    with criterion("rank equivalence (exhaustive <=4 nodes + 500 random)", 10):
        import itertools

        labels = (1, 2, 3, 4)
        universe = [()]
        for ln in (1, 2, 3):
            universe += list(itertools.product(labels, repeat=ln))
        checked = 0
        for size in range(0, 5):
            for combo in itertools.combinations(universe, size):
                nodes = set(combo)
                if any(s and s[:-1] not in nodes for s in nodes):
                    continue
                t = al.FinTree(frozenset(nodes))
                assert al.rank_recursive(t) == al.rank_levels(t)
                checked += 1
        assert checked >= 100
        rep = al.run_suite("rank-equivalence", seed=7, trials=500)
        assert rep.ok, rep.failures[:3]


def test_ord_vs_ta():
    with criterion("ord vs increasing-sequence tree (200 random systems)", 30):
        rep = al.run_suite("ord-vs-ta", seed=7, trials=200)
        assert rep.ok, rep.failures[:3]


def test_kb_order():
    with criterion("KB order axioms + child-precedes-parent (300 trees)"):
        rep = al.run_suite("kb-order", seed=7, trials=300)
        assert rep.ok, rep.failures[:3]


def test_t_embedding_monotonicity():
    with criterion("canonical embedding is a t-embedding on 100 random trees"):
        rng = random.Random(7)
        done = 0
        while done < 100:
            tree = _random_tree(rng)
            if tree.is_empty:
                continue
            mapping, image = al.embed_tree(tree)
            assert al.check_t_embedding(mapping, tree, image)
            assert al.rank_recursive(tree) <= al.rank_recursive(image)
            done += 1


def test_fraktal_monotonicity():
    with criterion("demand/bound monotonicity of UNSAT (1000 exact solves)"):
        rep = al.run_suite("fraktal-monotone", seed=7, trials=1000)
        assert rep.trials >= 1000
        assert rep.ok, rep.failures[:3]


def test_game_equals_tree():
    with criterion("game prefixes equal the nondecreasing empirical tree", 600):
        rep = al.run_suite("game-equals-tree", seed=7, trials=1)
        assert rep.ok, rep.failures[:3]
        assert rep.trials >= 5 * 19  # five spaces, all nondecreasing sequences


def test_glue_roundtrip():
    with criterion("trace-then-glue round trip (100 chains)"):
        rep = al.run_suite("glue-roundtrip", seed=7, trials=100)
        assert rep.ok, rep.failures[:3]


def test_transport_lemma():
    with criterion("transport declared bounds (200 random coarse maps)"):
        rep = al.run_suite("transport-lemma", seed=7, trials=200)
        assert rep.ok, rep.failures[:3]


def test_uniform_vs_per_space_separation():
    with criterion("per-space SAT vs uniform UNSAT on growing intervals"):
        spaces = [al.interval_space(0, m) for m in range(0, 13)]
        for m, space in enumerate(spaces):
            res = al.solve_s_cover(space, (2,), max(m, 0))
            assert res.status == "SAT", f"[0,{m}] at D={m}"
        uni = al.family_solve_uniform(spaces, (2,), 4)
        assert uni.status == "unsat"
        assert uni.results[uni.failing_index].exactness == "exact"


def test_cupc_harness_smoke(capsys):
    with criterion("stacked-lattice sweep completes with monotone k"):
        code = cli_main(["experiment", "cupc", "--c", "1,2,4", "--box", "16", "--json"])
        assert code == 0
        capsys.readouterr()
        result = run_cupc((1, 2, 4), 16)
        cells = {(c["bound"], c["r1"], c["r2"]): c["k"] for c in result["cells"]}
        assert all(k is not None for k in cells.values())
        bounds = sorted({b for b, _, _ in cells})
        r1s = sorted({r1 for _, r1, _ in cells})
        # nonincreasing as D grows
        for (b, r1, r2), k in cells.items():
            for b2 in bounds:
                if b2 > b and (b2, r1, r2) in cells:
                    assert cells[(b2, r1, r2)] <= k
        # nondecreasing as r1 grows (matched r2 offset)
        for (b, r1, r2), k in cells.items():
            delta = r2 - r1
            for r1b in r1s:
                if r1b > r1 and (b, r1b, r1b + delta) in cells:
                    assert cells[(b, r1b, r1b + delta)] >= k
