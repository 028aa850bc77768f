"""Isotopy moves: discovery, application, invariance, and plat normalization."""

import pytest

from legfront.front import (
    Event,
    classical_signature,
    front,
    random_front,
    thurston_bennequin,
    trace_components,
)
from legfront.moves import (
    Move,
    applicable_moves,
    apply_move,
    is_simple,
    make_simple,
    random_isotopy,
    simulate_window,
)
from tests.test_front import DOUBLE, TREFOIL, UNKNOT, ZIGZAG


def test_commute_discovers_both_height_shifts():
    # circle death next to a circle birth: the birth can land below or above
    d = front([("L", 1), ("R", 1), ("L", 1), ("R", 1)])
    cands = [m for m in applicable_moves(d, {"commute"}) if m.position == 1]
    results = {apply_move(d, m).events for m in cands}
    assert front([("L", 1), ("L", 1), ("R", 3), ("R", 1)]).events in results
    assert front([("L", 1), ("L", 3), ("R", 1), ("R", 1)]).events in results


def test_commute_rejects_interacting_heights():
    # crossings on overlapping strand pairs must not commute
    assert not [m for m in applicable_moves(TREFOIL, {"commute"})
                if 2 <= m.position <= 3]


def test_triple_point_move_round_trip():
    d = front([("L", 1)] * 3 + [("X", 2), ("X", 3), ("X", 2)] + [("R", 1)] * 3)
    (m,) = applicable_moves(d, {"iii"})
    d2 = apply_move(d, m)
    assert [e.height for e in d2.events[3:6]] == [3, 2, 3]
    (back,) = applicable_moves(d2, {"iii"})
    assert apply_move(d2, back) == d


def test_trefoil_has_no_triple_point_move():
    assert not applicable_moves(TREFOIL, {"iii"})


def test_cusp_tangency_moves_round_trip():
    s = make_simple(ZIGZAG)
    expansions = [m for m in applicable_moves(s, {"ii_right", "ii_left"})
                  if len(m.after) == 3]
    assert expansions
    for m in expansions:
        bigger = apply_move(s, m)  # internal invariant assertions do the checking
        contractions = [x for x in applicable_moves(bigger, {"ii_right", "ii_left"})
                        if x.position == m.position and len(x.after) == 1]
        assert any(apply_move(bigger, x) == s for x in contractions)


def test_kink_insert_and_delete_round_trip():
    moves = [m for m in applicable_moves(UNKNOT, {"i_insert"}) if m.position == 1]
    assert len(moves) == 4  # two strands, up and down kinks
    for m in moves:
        d2 = apply_move(UNKNOT, m)
        assert len(d2) == 5
        dels = [x for x in applicable_moves(d2, {"i_delete"}) if x.position == 1]
        assert dels and apply_move(d2, dels[0]) == UNKNOT


def test_apply_move_requires_matching_window():
    kink = (Event("L", 2), Event("X", 1), Event("R", 2))
    with pytest.raises(ValueError):
        apply_move(UNKNOT, Move("i_delete", 0, kink, ()))


def test_simulation_distinguishes_slide_from_commute():
    # a crossing adjacent to a right cusp: same connectivity, different crossings
    base = simulate_window((Event("X", 2), Event("R", 1)), 4)
    slid = simulate_window((Event("X", 1), Event("R", 2)), 4)
    assert base is not None and slid is not None
    assert base[0] == slid[0] and base[1] == slid[1] and base[2] != slid[2]
    assert simulate_window((Event("X", 5), Event("R", 1)), 4) is None


def test_random_isotopy_is_deterministic_and_safe():
    a1, moves1 = random_isotopy(TREFOIL, seed=5, steps=25)
    a2, moves2 = random_isotopy(TREFOIL, seed=5, steps=25)
    assert a1 == a2 and moves1 == moves2
    b, _ = random_isotopy(TREFOIL, seed=6, steps=25)
    assert thurston_bennequin(b) == 1
    assert trace_components(b).rotation == (0,)


def test_make_simple_fixes_zigzag_and_is_idempotent():
    assert make_simple(ZIGZAG).events == front(
        [("L", 1), ("L", 1), ("X", 3), ("X", 2), ("R", 3), ("R", 1)]
    ).events
    for d in (UNKNOT, TREFOIL, DOUBLE):
        assert make_simple(d) == d
    s = make_simple(ZIGZAG)
    assert make_simple(s) == s


def test_make_simple_on_random_fronts():
    for seed in range(40):
        d = random_front(seed)
        s = make_simple(d)
        assert is_simple(s)
        assert classical_signature(s) == classical_signature(d)


def test_make_simple_after_isotopy():
    for seed in range(8):
        d, _ = random_isotopy(TREFOIL, seed=seed, steps=12)
        s = make_simple(d)
        assert is_simple(s)
        assert thurston_bennequin(s) == 1
