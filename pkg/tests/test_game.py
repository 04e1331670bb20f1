import pytest

import asdimlab as al
from asdimlab.errors import InvalidInputError
from asdimlab.game import A_WINS, ABORTED, B_WINS, ONGOING


def cfg(**kw):
    base = dict(bound=2, kcap=4, rmax=6)
    base.update(kw)
    return al.GameConfig(**base)


def test_new_game_fresh():
    g = al.new_game(al.interval_space(-2, 2), cfg())
    assert g.status == ONGOING and g.round_number == 0


def test_invalid_config_rejected():
    with pytest.raises(InvalidInputError):
        al.GameConfig(bound=2, kcap=0, rmax=3)


def test_independent_transcripts():
    sp = al.interval_space(-2, 2)
    g1 = al.new_game(sp, cfg())
    g2 = al.new_game(sp, cfg())
    g1b = al.b_move(g1, 2)
    assert g2.pending_r is None and g1b.pending_r == 2
    assert g1.pending_r is None  # transitions return new values


def test_b_move_monotonicity():
    sp = al.interval_space(-8, 8)
    g = al.play_script(sp, cfg(), [4])
    with pytest.raises(InvalidInputError):
        al.b_move(g, 2)
    g2 = al.b_move(g, 4)
    assert g2.pending_r == 4


def test_b_move_rmax_cap():
    g = al.new_game(al.interval_space(-2, 2), cfg(rmax=3))
    with pytest.raises(InvalidInputError):
        al.b_move(g, 4)


def test_moves_rejected_after_end():
    sp = al.from_matrix("pt", ["x"], [[0]])
    g = al.play_script(sp, cfg(bound=1), [2])
    assert g.status == A_WINS
    with pytest.raises(InvalidInputError):
        al.b_move(g, 3)


def test_one_point_space_immediate_win():
    sp = al.from_matrix("pt", ["x"], [[0]])
    g = al.play_script(sp, cfg(bound=1), [5])
    assert g.status == A_WINS
    assert g.rounds[0].k == 1


def test_line_first_round_two_families():
    sp = al.interval_space(-8, 8)
    g = al.play_script(sp, cfg(bound=2), [2])
    assert g.rounds[0].k == 2
    assert g.status == ONGOING
    assert al.solve_s_cover(sp, (2,), 2).status == "UNSAT"
    assert al.solve_s_cover(sp, (2, 2), 2).status == "SAT"


def test_b_wins_when_kcap_one():
    sp = al.interval_space(-2, 2)
    g = al.play_script(sp, cfg(bound=2, kcap=1), [2])
    assert g.status == B_WINS
    assert g.failed_r == 2


def test_aborted_on_tiny_budget():
    sp = al.build_grid_space(2, 1, 3)
    g = al.play_script(sp, cfg(bound=4, kcap=3, budget=5), [2])
    assert g.status == ABORTED


def test_stabilization_one_point():
    sp = al.from_matrix("pt", ["x"], [[0]])
    g = al.play_script(sp, cfg(bound=1, rmax=4), [2])
    assert al.is_stabilized(g) == 1


def test_stabilization_line():
    # at rmax=3 A's answer in round 1 is 2 for every legal demand, so the
    # first round is already stable; at rmax=4 the sweep sees k jump to 3
    sp = al.interval_space(-8, 8)
    g = al.play_script(sp, cfg(bound=2, rmax=3, kcap=5), [2, 2])
    n = al.is_stabilized(g)
    assert n == 1
    ks = {al.minimal_k(sp, (r,), 2, 5)[0] for r in range(2, 4)}
    assert len(ks) == 1

    g4 = al.play_script(sp, cfg(bound=2, rmax=4, kcap=5), [2, 2])
    assert al.is_stabilized(g4) is None
    assert al.minimal_k(sp, (4,), 2, 5)[0] == 3


def test_stabilization_absent_after_abort():
    sp = al.build_grid_space(2, 1, 3)
    g = al.play_script(sp, cfg(bound=4, kcap=3, budget=5), [2])
    assert al.is_stabilized(g) is None


def test_stabilized_round_future_proof():
    sp = al.interval_space(-6, 6)
    c = cfg(bound=2, rmax=3, kcap=5)
    g = al.play_script(sp, c, [2])
    n = al.is_stabilized(g)
    if n is None:
        pytest.skip("no stabilization at these caps")
    k_at_n = g.rounds[n - 1].k

    def continuations(prefix, depth):
        if depth == 0:
            yield prefix
            return
        for r in range(prefix[-1], c.rmax + 1):
            yield from continuations(prefix + (r,), depth - 1)

    base = tuple(rd.r for rd in g.rounds)
    # B can never force A above the stabilized power within the sweep domain
    for cont in continuations(base, 2):
        gg = al.play_script(sp, c, cont)
        for rd in gg.rounds[n - 1:]:
            assert rd.k <= k_at_n


def test_validate_engine_transcripts():
    sp = al.interval_space(-8, 8)
    g = al.play_script(sp, cfg(bound=2, kcap=5), [2, 3, 4])
    assert al.validate_transcript(g).ok


def test_validate_flags_k_mismatch():
    sp = al.interval_space(-8, 8)
    g = al.play_script(sp, cfg(bound=2, kcap=5), [2])
    from dataclasses import replace

    bad_round = replace(g.rounds[0], k=g.rounds[0].k + 1)
    bad = replace(g, rounds=(bad_round,))
    assert not al.validate_transcript(bad).ok


def test_validate_flags_decreasing_r():
    sp = al.interval_space(-8, 8)
    g = al.play_script(sp, cfg(bound=2, kcap=5), [3, 3])
    from dataclasses import replace

    r0 = replace(g.rounds[0], r=5)
    bad = replace(g, rounds=(r0,) + g.rounds[1:])
    rep = al.validate_transcript(bad)
    assert not rep.ok
