import itertools

import pytest

import asdimlab as al
from asdimlab.errors import (
    HullCoverageError,
    InvalidInputError,
    SpaceMismatchError,
)


def interval_cover(space, demands, bound, families):
    return al.make_cover(space.label, demands, bound, families)


def test_empty_space_empty_families_ok():
    sp = al.from_matrix("empty", [], [])
    cover = interval_cover(sp, (2, 2), 3, [[], []])
    assert al.check_s_cover(sp, cover).ok


def test_gap_two_fails_strict_disjointness():
    # families separated by exactly their demand are not far enough apart
    sp = al.interval_space(-4, 4)
    cover = interval_cover(
        sp, (2, 2), 3,
        [[{"-4", "-3", "-2", "-1"}, {"1", "2", "3", "4"}], [{"0"}]],
    )
    rep = al.check_s_cover(sp, cover)
    assert not rep.ok
    assert rep.violation.kind == "disjointness"
    assert rep.violation.family == 0


def test_separated_families_pass():
    sp = al.interval_space(-4, 4)
    cover = interval_cover(
        sp, (2, 2), 3,
        [[{"-4", "-3", "-2"}, {"2", "3", "4"}], [{"-1", "0", "1"}]],
    )
    assert al.check_s_cover(sp, cover).ok


def test_diameter_violation_flagged():
    sp = al.interval_space(-4, 4)
    cover = interval_cover(
        sp, (2, 2), 3,
        [[{"-4", "-3", "-2", "-1", "0"}, {"1", "2", "3", "4"}], []],
    )
    rep = al.check_s_cover(sp, cover)
    assert not rep.ok
    assert rep.violation.kind == "diameter"


def test_coverage_violation():
    sp = al.interval_space(0, 3)
    cover = interval_cover(sp, (1,), 3, [[{"0", "1"}]])
    rep = al.check_s_cover(sp, cover)
    assert not rep.ok
    assert rep.violation.kind == "coverage"


def test_label_mismatch_raises():
    sp = al.interval_space(0, 3)
    cover = al.make_cover("other", (1,), 3, [[set(sp.points)]])
    with pytest.raises(SpaceMismatchError):
        al.check_s_cover(sp, cover)


def test_declaration_mismatch():
    sp = al.interval_space(0, 1)
    fam = al.SetFamily((frozenset(sp.points),), 3, 1)
    cover = al.SCover(sp.label, (2,), 1, (fam,))
    rep = al.check_s_cover(sp, cover)
    assert rep.violation.kind == "declaration"


def test_lattice_fast_path_agrees_with_pairwise():
    # same verdicts from the label-propagation path and the pairwise path
    from asdimlab.covers import _lattice_disjointness

    sp = al.build_grid_space(2, 1, 4)
    good = al.brick_cover(2, 2, 4)
    idx_sets = [sp.indices(s) for s in good.cover.families[0].sets]
    ok, _ = _lattice_disjointness(sp, idx_sets, 2)
    assert ok
    near = [sp.indices({"0,0"}), sp.indices({"1,1"})]
    ok, pair = _lattice_disjointness(sp, near, 2)
    assert not ok and pair == (0, 1)
    ok, _ = _lattice_disjointness(sp, near, 1)
    assert ok  # distance 2 > 1


# ---------------------------------------------------------------------------
# solving


def test_solve_small_interval_unsat():
    sp = al.interval_space(-2, 2)
    assert al.solve_s_cover(sp, (2,), 2).status == "UNSAT"


def test_solve_two_families_sat_with_witness():
    sp = al.interval_space(-4, 4)
    res = al.solve_s_cover(sp, (2, 2), 3)
    assert res.status == "SAT"
    assert al.check_s_cover(sp, res.witness).ok


def test_solve_one_point_bound_zero():
    sp = al.from_matrix("pt", ["x"], [[0]])
    res = al.solve_s_cover(sp, (9,), 0)
    assert res.status == "SAT"
    assert res.witness.families[0].sets == (frozenset({"x"}),)


def test_heuristic_never_unsat():
    sp = al.interval_space(-2, 2)
    res = al.solve_s_cover(sp, (2,), 2, mode="heuristic", budget=500)
    assert res.status == "UNKNOWN"


def test_budget_exhaustion_unknown():
    sp = al.build_grid_space(2, 1, 3)
    res = al.solve_s_cover(sp, (2, 2), 4, budget=5)
    assert res.status == "UNKNOWN"
    assert res.stats.nodes >= 5


def test_solver_rejects_bad_demands():
    sp = al.interval_space(0, 1)
    with pytest.raises(InvalidInputError):
        al.solve_s_cover(sp, (), 2)
    with pytest.raises(InvalidInputError):
        al.solve_s_cover(sp, (0,), 2)


def test_seq_dimension_line():
    sp = al.interval_space(-8, 8)
    d = al.seq_dimension(sp, (2,), 2)
    assert d.families == 2 and d.dimension == 1


def test_seq_dimension_point():
    sp = al.from_matrix("pt", ["x"], [[0]])
    d = al.seq_dimension(sp, (5,), 0)
    assert d.dimension == 0


def test_seq_dimension_plane():
    sp = al.build_grid_space(2, 1, 3)
    d = al.seq_dimension(sp, (2,), 3, kcap=4)
    assert d.dimension == 2


def test_seq_dimension_none_when_capped():
    sp = al.interval_space(-2, 2)
    d = al.seq_dimension(sp, (2,), 0, kcap=1)
    assert d.dimension is None and not d.budget_exhausted


def test_solutions_enumeration_matches_oracle_verdict():
    sp = al.interval_space(0, 4)
    sols = list(al.iter_exact_solutions(sp, (2,), 4))
    assert sols  # whole interval in one set is feasible
    for cover in sols[:5]:
        assert al.check_s_cover(sp, cover).ok


# ---------------------------------------------------------------------------
# brick


@pytest.mark.parametrize("n,r,box,fams", [(1, 2, 8, 2), (1, 1, 1, 2), (2, 2, 8, 3)])
def test_brick_examples(n, r, box, fams):
    bc = al.brick_cover(n, r, box)
    assert len(bc.cover.families) == fams
    assert bc.cover.bound <= bc.c_constant * r
    assert al.check_s_cover(bc.space, bc.cover).ok


def test_brick_1d_bound_small():
    bc = al.brick_cover(1, 2, 8)
    assert bc.cover.bound <= 4


# ---------------------------------------------------------------------------
# trace


def test_trace_full_subset_identity():
    sp = al.interval_space(-4, 4)
    res = al.solve_s_cover(sp, (2, 2), 3)
    sub, traced = al.trace_cover(sp, res.witness, sp.points)
    assert al.covers_equal(traced, res.witness)
    assert al.check_s_cover(sub, traced).ok


def test_trace_singleton():
    sp = al.interval_space(-4, 4)
    res = al.solve_s_cover(sp, (2, 2), 3)
    sub, traced = al.trace_cover(sp, res.witness, ["0"])
    total = [st for fam in traced.families for st in fam.sets]
    assert total == [frozenset({"0"})]
    assert al.check_s_cover(sub, traced).ok


def test_trace_keeps_validity():
    sp = al.build_grid_space(1, 1, 8)
    res = al.solve_s_cover(sp, (2, 2), 4)
    assert res.sat
    subset = [str(v) for v in range(-3, 4)]
    sub, traced = al.trace_cover(sp, res.witness, subset)
    assert al.check_s_cover(sub, traced).ok
    assert traced.demands == res.witness.demands
    assert traced.bound == res.witness.bound


# ---------------------------------------------------------------------------
# transport


def _identity_map(sp):
    return al.CoarseMap(
        sp, sp, {p: p for p in sp.points},
        al.ControlPair(al.StepFunction.identity(), al.StepFunction.identity(), 0),
    )


def test_transport_identity_is_identity():
    sp = al.interval_space(-4, 4)
    res = al.solve_s_cover(sp, (2, 2), 3)
    out = al.transport_cover(res.witness, _identity_map(sp), E=3)
    assert al.covers_equal(out.cover, res.witness)
    assert not out.degenerate


def test_transport_doubling():
    src = al.interval_space(0, 6)
    tgt = al.subspace(al.interval_space(0, 12), [str(2 * i) for i in range(7)], label="2Z12")
    m = al.CoarseMap(src, tgt, {p: str(2 * int(p)) for p in src.points},
                     al.ControlPair(al.StepFunction.scale(2), al.StepFunction.scale(2), 0))
    full = al.make_cover(src.label, (3, 3), 2,
                         [[{"0", "1", "2"}, {"6"}], [{"3", "4", "5"}]])
    assert al.check_s_cover(src, full).ok
    out = al.transport_cover(full, m, E=2)
    assert out.cover.demands == (6, 6)
    assert out.cover.bound == 2 * 2 + 0
    assert al.check_s_cover(tgt, out.cover).ok


def test_transport_codense_inclusion():
    tgt = al.interval_space(-4, 4)
    src = al.subspace(tgt, [str(v) for v in (-4, -2, 0, 2, 4)], label="2Z4")
    m = al.CoarseMap(src, tgt, {p: p for p in src.points},
                     al.ControlPair(al.StepFunction.identity(), al.StepFunction.identity(), 1))
    cover = al.make_cover(src.label, (4, 4), 2,
                          [[{"-4", "-2"}, {"4"}], [{"0", "2"}]])
    assert al.check_s_cover(src, cover).ok
    out = al.transport_cover(cover, m, E=2)
    assert out.cover.demands == (4 - 2, 4 - 2)
    assert al.check_s_cover(tgt, out.cover).ok


def test_transport_hull_violation():
    src = al.interval_space(0, 1)
    tgt = al.interval_space(0, 5)
    m = al.CoarseMap(src, tgt, {p: p for p in src.points},
                     al.ControlPair(al.StepFunction.identity(), al.StepFunction.identity(), 1))
    cover = al.make_cover(src.label, (1,), 1, [[{"0", "1"}]])
    with pytest.raises(HullCoverageError):
        al.transport_cover(cover, m, E=1)


def test_transport_degenerate_flagged():
    sp = al.interval_space(0, 8)
    m = al.CoarseMap(sp, sp, {p: p for p in sp.points},
                     al.ControlPair(al.StepFunction.identity(), al.StepFunction.identity(), 2))
    cover = al.make_cover(sp.label, (1, 1), 8,
                          [[set(sp.points)], [set(sp.points)]])
    out = al.transport_cover(cover, m, E=8)
    assert out.cover.demands == (0, 0)
    assert out.degenerate == (0, 1)


# ---------------------------------------------------------------------------
# finite sums


def test_finite_sum_single_part():
    sp = al.interval_space(-2, 2)
    res = al.solve_s_cover(sp, (2, 2), 2)
    space, cover = al.finite_sum_cover([(sp, res.witness)], separation=10)
    assert space is sp and cover is res.witness


def test_finite_sum_two_parts():
    sp = al.interval_space(-2, 2)
    res = al.solve_s_cover(sp, (2, 2), 3)
    space, merged = al.finite_sum_cover([(sp, res.witness), (sp, res.witness)],
                                        separation=10)
    assert al.check_s_cover(space, merged).ok
    al.validate_metric(space)


def test_finite_sum_separation_too_small():
    sp = al.interval_space(-2, 2)
    res = al.solve_s_cover(sp, (2, 2), 3)
    with pytest.raises(InvalidInputError):
        al.finite_sum_cover([(sp, res.witness), (sp, res.witness)], separation=1)
    with pytest.raises(InvalidInputError):
        # boundary case: strict disjointness needs separation > max demand
        al.finite_sum_cover([(sp, res.witness), (sp, res.witness)], separation=2)


# ---------------------------------------------------------------------------
# fiber composition


def test_fiber_single_point_base():
    X = al.interval_space(0, 3)
    Y = al.from_matrix("pt", ["y"], [[0]])
    m = al.CoarseMap(
        X, Y, {p: "y" for p in X.points},
        al.ControlPair(al.StepFunction(breaks=((0, 0), (100, 0))), al.StepFunction.identity(), 0),
    )
    base = al.make_cover(Y.label, (9,), 0, [[{"y"}]])
    fib = al.solve_s_cover(al.subspace(X, X.points, label="fib"), (2, 2), 1).witness
    out = al.fiber_compose(m, base, [[fib]])
    assert al.check_s_cover(X, out).ok
    assert out.demands == fib.demands


def test_fiber_projection_product():
    X = al.build_grid_space(2, 1, 2)
    Y = al.interval_space(-2, 2, label="base")
    mapping = {p: p.split(",")[0] for p in X.points}
    m = al.CoarseMap(
        X, Y, mapping,
        al.ControlPair(al.StepFunction(breaks=((0, 0), (100, 0))), al.StepFunction.identity(), 0),
    )
    base = al.solve_s_cover(Y, (3, 3), 2).witness
    fibers = []
    for fam in base.families:
        row = []
        for B in fam.sets:
            pre = [p for p in X.points if mapping[p] in B]
            sub = al.subspace(X, pre, label=f"pre{sorted(B)}")
            fres = al.solve_s_cover(sub, (1, 1), 1)
            assert fres.sat
            row.append(fres.witness)
        fibers.append(row)
    out = al.fiber_compose(m, base, fibers)
    assert al.check_s_cover(X, out).ok
    assert len(out.demands) == 4


def test_fiber_control_violation():
    X = al.interval_space(0, 3)
    Y = al.from_matrix("pt", ["y"], [[0]])
    m = al.CoarseMap(
        X, Y, {p: "y" for p in X.points},
        al.ControlPair(al.StepFunction(breaks=((0, 0), (100, 0))), al.StepFunction.identity(), 0),
    )
    base = al.make_cover(Y.label, (1,), 0, [[{"y"}]])  # S_j = 1 <= p2(R_j)
    fib = al.solve_s_cover(al.subspace(X, X.points, label="f"), (2,), 3).witness
    with pytest.raises(InvalidInputError):
        al.fiber_compose(m, base, [[fib]])


# ---------------------------------------------------------------------------
# gluing


def test_glue_single_set_chain():
    sp = al.interval_space(-2, 2)
    res = al.solve_s_cover(sp, (2, 2), 2)
    out = al.glue_covers(sp, [sp.points], [res.witness], mode="chain")
    assert out.ok
    assert al.covers_equal(out.cover, res.witness)


def test_glue_roundtrip_chain():
    sp = al.interval_space(-2, 2)
    res = al.solve_s_cover(sp, (2, 2), 2)
    b1, b2, b3 = ["0"], ["-1", "0", "1"], list(sp.points)
    provided = [al.trace_cover(sp, res.witness, b)[1] for b in (b1, b2, b3)]
    out = al.glue_covers(sp, [b1, b2, b3], provided, mode="chain")
    assert out.ok
    for b, want in zip((b1, b2, b3), provided):
        _, got = al.trace_cover(out.space, out.cover, b)
        assert al.covers_equal(got, want)


def test_glue_failure_when_no_consistent_cover_exists():
    sp = al.interval_space(-2, 2)
    b1 = ["0"]
    cands = [al.make_cover("x", (2,), 2, [[{"0"}]])]
    out = al.glue_covers(sp, [b1, sp.points], [cands, None], s=(2,), D=2, mode="chain")
    assert not out.ok  # the full interval admits no (2),2-cover at all


def test_glue_chain_must_ascend():
    sp = al.interval_space(0, 3)
    with pytest.raises(InvalidInputError):
        al.glue_covers(sp, [["0", "1"], ["2"]], [None, None], s=(1,), D=3, mode="chain")


def test_glue_finite_sums_mode():
    sp = al.interval_space(0, 5)
    res = al.solve_s_cover(sp, (1,), 5)
    b1 = ["0", "1", "2", "3"]
    b2 = ["2", "3", "4", "5"]
    provided = [al.trace_cover(sp, res.witness, b)[1] for b in (b1, b2)]
    out = al.glue_covers(sp, [b1, b2], provided, mode="finite-sums")
    assert out.ok
    assert al.check_s_cover(out.space, out.cover).ok


# ---------------------------------------------------------------------------
# uniform family solving


def test_uniform_family_generous_bound():
    spaces = [al.interval_space(0, m) for m in range(0, 13)]
    res = al.family_solve_uniform(spaces, (2,), 20)
    assert res.status == "uniform-sat"


def test_uniform_family_unsat_at_small_bound():
    spaces = [al.interval_space(0, m) for m in range(0, 13)]
    res = al.family_solve_uniform(spaces, (2,), 4)
    assert res.status == "unsat"
    # the first interval that fails: [0,5] already has no 1-family cover at
    # bound 4 (verified against the enumeration oracle)
    assert res.failing_index == 5
    assert al.exhaustive_cover_oracle(al.interval_space(0, 5), (2,), 4) == "UNSAT"
    assert al.exhaustive_cover_oracle(al.interval_space(0, 4), (2,), 4) == "SAT"


def test_uniform_family_empty_vacuous():
    res = al.family_solve_uniform([], (2,), 0)
    assert res.status == "uniform-sat"


# ---------------------------------------------------------------------------
# demand monotonicity spot checks


def test_unsat_monotone_in_demands_and_bound():
    sp = al.interval_space(-4, 4)
    assert al.solve_s_cover(sp, (2,), 4).status == "UNSAT"
    assert al.solve_s_cover(sp, (3,), 4).status == "UNSAT"
    assert al.solve_s_cover(sp, (2,), 2).status == "UNSAT"
    assert al.solve_s_cover(sp, (2,), 8).status == "SAT"
