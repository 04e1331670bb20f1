import itertools

import numpy as np
import pytest

import asdimlab as al
from asdimlab.errors import InvalidInputError, MetricError, ResourceLimitError


def test_grid_1d_basic():
    sp = al.build_grid_space(1, 1, 2)
    assert sp.points == ("-2", "-1", "0", "1", "2")
    assert sp.dist("-2", "2") == 4
    al.validate_metric(sp)


def test_grid_2d_taxicab():
    sp = al.build_grid_space(2, 1, 1)
    assert sp.n_points == 9
    assert sp.dist("1,1", "-1,-1") == 4
    al.validate_metric(sp)


def test_grid_coarse_lattice():
    sp = al.build_grid_space(1, 2, 4)
    assert sp.points == ("-4", "-2", "0", "2", "4")
    # 2-separated: every distinct pair is at distance >= 2
    for a, b in itertools.combinations(sp.points, 2):
        assert sp.dist(a, b) >= 2


def test_grid_point_cap():
    with pytest.raises(ResourceLimitError):
        al.build_grid_space(3, 1, 50, cap=1000)


def test_grid_bad_args():
    with pytest.raises(InvalidInputError):
        al.build_grid_space(0, 1, 2)


def test_asymptotic_sum_two_singletons():
    a = al.from_matrix("a", ["p"], [[0]])
    b = al.from_matrix("b", ["q"], [[0]])
    s = al.build_asymptotic_sum([a, b], ["p", "q"], [1, 2])
    assert s.dist("0:p", "1:q") == 3


def test_asymptotic_sum_single_part_unchanged():
    a = al.interval_space(0, 3)
    s = al.build_asymptotic_sum([a], ["0"], [1, 2])
    assert s is a


def test_asymptotic_sum_three_copies():
    part = al.interval_space(0, 1)
    s = al.build_asymptotic_sum([part] * 3, ["0", "0", "0"], [2, 3, 5])
    assert s.dist("0:1", "2:1") == 1 + (2 + 3 + 5) + 1
    al.validate_metric(s)  # exhaustive triple check


def test_asymptotic_sum_gaps_must_increase():
    part = al.interval_space(0, 1)
    with pytest.raises(InvalidInputError):
        al.build_asymptotic_sum([part, part], ["0", "0"], [3, 3])


def test_cup_c_membership():
    sp = al.build_cup_c_space((1, 2), 2, 2)
    assert "0,2" in sp.points
    assert "0,1" not in sp.points
    # all of Z x {0} within range
    for x in range(-2, 3):
        assert f"{x},0" in sp.points


def test_cup_c_1d():
    sp = al.build_cup_c_space((2, 3), 1, 4)
    assert sp.points == ("-4", "-2", "0", "2", "4")


def test_cup_c_count_matches_enumeration():
    c, n, box = (1, 2, 4), 3, 4
    sp = al.build_cup_c_space(c, n, box)
    # independent set-comprehension oracle for the defining union
    expected = set()
    for m in range(1, n + 1):
        axes = []
        for i in range(m):
            axes.append([v for v in range(-box, box + 1) if v % c[i] == 0])
        axes += [[0]] * (n - m)
        expected.update(itertools.product(*axes))
    assert sp.n_points == len(expected)


def test_cup_c_needs_enough_entries():
    with pytest.raises(InvalidInputError):
        al.build_cup_c_space((1, 2), 3, 2)


def test_greedy_net_line():
    sp = al.interval_space(0, 5)
    net, witness = al.greedy_r_net(sp, 2)
    assert net.points == ("0", "2", "4")
    assert al.check_coarse_embedding(witness).ok


def test_greedy_net_r1_identity():
    sp = al.build_grid_space(2, 1, 1)
    net, _ = al.greedy_r_net(sp, 1)
    assert net.points == sp.points


def test_greedy_net_density_and_separation():
    sp = al.build_grid_space(2, 1, 2)
    r = 3
    net, witness = al.greedy_r_net(sp, r)
    for a, b in itertools.combinations(net.points, 2):
        assert sp.dist(a, b) >= r
    for p in sp.points:
        assert min(sp.dist(p, q) for q in net.points) < r
    assert al.check_coarse_embedding(witness).ok


def test_greedy_net_idempotent():
    sp = al.build_grid_space(1, 1, 7)
    net, _ = al.greedy_r_net(sp, 3)
    net2, _ = al.greedy_r_net(net, 3)
    assert net2.points == net.points


def test_check_embedding_identity():
    sp = al.interval_space(0, 4)
    m = al.CoarseMap(sp, sp, {p: p for p in sp.points},
                     al.ControlPair(al.StepFunction.identity(), al.StepFunction.identity()))
    assert al.check_coarse_embedding(m).ok


def test_check_embedding_doubling():
    src = al.interval_space(0, 4)
    tgt = al.subspace(al.interval_space(0, 8), [str(2 * i) for i in range(5)], label="2Z")
    m = al.CoarseMap(src, tgt, {p: str(2 * int(p)) for p in src.points},
                     al.ControlPair(al.StepFunction.scale(2), al.StepFunction.scale(2)))
    assert al.check_coarse_embedding(m).ok


def test_check_embedding_constant_map_violates():
    src = al.interval_space(0, 4)
    tgt = al.interval_space(0, 4)
    m = al.CoarseMap(src, tgt, {p: "0" for p in src.points},
                     al.ControlPair(al.StepFunction.identity(), al.StepFunction.identity()))
    rep = al.check_coarse_embedding(m)
    assert not rep.ok
    assert rep.side == "lower"
    assert rep.pair == ("0", "1")


def test_subspace_full_is_same():
    sp = al.build_grid_space(1, 1, 3)
    sub = al.subspace(sp, sp.points)
    assert sub.points == sp.points
    assert sub.dist("-3", "3") == 6


def test_subspace_singleton():
    sp = al.interval_space(-2, 2)
    sub = al.subspace(sp, ["0"])
    assert sub.n_points == 1


def test_subspace_preserves_distance():
    sp = al.interval_space(-2, 2)
    sub = al.subspace(sp, ["-2", "0", "2"])
    assert sub.dist("-2", "2") == 4


def test_subspace_empty_rejected():
    sp = al.interval_space(0, 1)
    with pytest.raises(InvalidInputError):
        al.subspace(sp, [])


def test_subspace_composition():
    sp = al.build_grid_space(1, 1, 5)
    a = ["-4", "-2", "0", "2", "4"]
    b = ["-2", "2"]
    via = al.subspace(al.subspace(sp, a), b, label="x")
    direct = al.subspace(sp, b, label="x")
    assert via.points == direct.points
    assert via.dist("-2", "2") == direct.dist("-2", "2")


def test_matrix_space_validation():
    bad = al.from_matrix("bad", ["a", "b", "c"], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(MetricError):
        al.validate_metric(bad)


def test_step_function_shapes():
    f = al.StepFunction.delayed(4)
    assert [f(t) for t in range(7)] == [0, 0, 0, 0, 0, 1, 2]
    g = al.StepFunction.plus(3)
    assert g(0) == 3 and g(5) == 8
    h = al.StepFunction.scale(2)
    assert h(7) == 14
    with pytest.raises(InvalidInputError):
        al.StepFunction(breaks=((0, 2), (3, 1)))


def test_control_pair_ordering_enforced():
    with pytest.raises(InvalidInputError):
        al.ControlPair(al.StepFunction.plus(5), al.StepFunction.identity())


def test_constructions_pass_validator():
    for sp in (
        al.build_grid_space(2, 2, 4),
        al.build_cup_c_space((1, 3), 2, 3),
        al.build_asymptotic_sum(
            [al.interval_space(0, 2), al.interval_space(0, 1)], ["0", "0"], [2, 5]
        ),
    ):
        al.validate_metric(sp)
