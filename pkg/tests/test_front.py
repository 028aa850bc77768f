"""Front encoding, validation, component tracing, and classical invariants.

Expected values below were computed by hand from the event definitions:
strand stacks were simulated on paper, components traced arc by arc, and
cusp up/down counts tallied to get rotation numbers.
"""

import pytest

from legfront.front import (
    FrontDiagram,
    arcs_of,
    check,
    format_front,
    front,
    parse_front,
    rotation_number,
    thurston_bennequin,
    trace_components,
    validate,
    vertex_table,
)

UNKNOT = front([("L", 1), ("R", 1)])
TREFOIL = front([("L", 1), ("L", 1), ("X", 2), ("X", 2), ("X", 2), ("R", 1), ("R", 1)])
ZIGZAG = front([("L", 1), ("L", 1), ("R", 2), ("R", 1)])
DOUBLE = front([("L", 1), ("L", 3), ("X", 2), ("X", 2), ("R", 1), ("R", 1)])


def test_parse_and_format_round_trip():
    text = "L 1\n# a comment\nL 3\n\nX 2  # trailing\nX 2\nR 1\nR 1\n"
    d = parse_front(text)
    assert d == DOUBLE
    assert parse_front(format_front(d)) == d
    assert format_front(FrontDiagram(())) == ""


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        parse_front("L 1\nQ 3\n")
    with pytest.raises(ValueError, match="line 1.*integer"):
        parse_front("L one\n")


def test_validate_catches_bad_heights_and_open_fronts():
    assert validate(UNKNOT) == []
    assert validate(TREFOIL) == []
    # a lone crossing has no strands to act on
    msgs = validate(front([("X", 1)]))
    assert any("leaves no pair" in m for m in msgs)
    assert any("left and one right cusp" in m for m in msgs)
    # heights out of range
    assert validate(front([("L", 3), ("R", 1)]))
    assert validate(front([("L", 1), ("X", 2), ("R", 1)]))
    # unbalanced cusps leave strands open
    msgs = validate(front([("L", 1), ("L", 1)]))
    assert any("final strand count" in m for m in msgs)
    with pytest.raises(ValueError):
        check(front([("X", 1)]))


def test_arc_decomposition_counts():
    arcs = arcs_of(UNKNOT)
    assert arcs.count == 2
    # trefoil: 2 arcs per left cusp + 2 per crossing
    assert arcs_of(TREFOIL).count == 10
    assert arcs_of(DOUBLE).count == 8


def test_unknot_classical_invariants():
    cm = trace_components(UNKNOT)
    assert cm.count == 1
    assert cm.rotation == (0,)
    assert thurston_bennequin(UNKNOT) == -1
    arcs = arcs_of(UNKNOT)
    # the marked arc is the upper branch, the one traversed left to right
    base = cm.base_arc[0]
    assert arcs.arc_start[base] == (0, "out_up")


def test_trefoil_classical_invariants():
    cm = trace_components(TREFOIL)
    assert cm.count == 1
    assert cm.rotation == (0,)
    assert thurston_bennequin(TREFOIL) == 1


def test_zigzag_rotation_flips_with_orientation():
    cm = trace_components(ZIGZAG)
    assert cm.count == 1
    assert cm.rotation == (-1,)
    assert rotation_number(ZIGZAG, 1) == -1
    assert rotation_number(ZIGZAG, 1, orientation_overrides={1: True}) == 1
    assert thurston_bennequin(ZIGZAG) == -2
    # reversing orientation does not change the crossing/cusp count
    assert thurston_bennequin(ZIGZAG, orientation_overrides={1: True}) == -2
    with pytest.raises(ValueError):
        rotation_number(ZIGZAG, 2)


def test_double_components_and_invariants():
    cm = trace_components(DOUBLE)
    assert cm.count == 2
    assert cm.rotation == (0, 0)
    # two antiparallel crossings (-1 each) and two right cusps
    assert thurston_bennequin(DOUBLE) == -4
    arcs = arcs_of(DOUBLE)
    # component 1 owns the bottom-left cusp, component 2 the other one
    assert cm.arc_component[arcs.at(0, "out_lo")] == 1
    assert cm.arc_component[arcs.at(1, "out_lo")] == 2


def test_vertex_table_names_and_strand_labels():
    vt = vertex_table(TREFOIL)
    assert [v.name for v in vt] == ["a1", "a2", "a3", "a4", "a5"]
    assert [v.kind for v in vt] == ["crossing"] * 3 + ["cusp"] * 2
    assert all(v.sign == 1 for v in vt[:3])
    assert all(v.sign == -1 for v in vt[3:])
    # the double's crossings see one strand from each component
    vt2 = vertex_table(DOUBLE)
    assert [(v.upper, v.lower) for v in vt2 if v.kind == "crossing"] == [(2, 1), (1, 2)]
    # each right cusp belongs to a single component
    assert all(v.upper == v.lower for v in vt2 if v.kind == "cusp")


def test_vertex_table_cusp_traversal_direction():
    # under the canonical orientation the unknot's right cusp is swept downward
    (v,) = vertex_table(UNKNOT)
    assert v.kind == "cusp" and not v.upward
    # flipping the component flips the sweep
    cm = trace_components(UNKNOT, orientation_overrides={1: True})
    arcs = arcs_of(UNKNOT)
    vt = vertex_table(UNKNOT, arcs, cm)
    assert vt[0].upward


def test_tb_sign_matches_degree_parity_hook():
    # crossing sign bookkeeping: signs of the zigzag's double's crossings stay
    # antiparallel after flipping one component, cusp count is unchanged
    cm = trace_components(DOUBLE, orientation_overrides={2: True})
    assert cm.count == 2
    assert thurston_bennequin(DOUBLE, orientation_overrides={2: True}) == 0
