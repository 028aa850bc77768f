"""Gradings, disk counts, and differentials of plat-form fronts."""

import pytest

from legfront.algebra import AlgebraElement, ModeError, Universe, parse_element
from legfront.dga import (
    DGA,
    check_composability,
    dumps,
    front_dga,
    from_json,
    loads,
    mod2_t1,
    n_copy,
    permute_components,
    rescale_generators,
    split_differential,
    validate_dga,
    with_rho,
)
from legfront.front import front, random_front, trace_components, vertex_table
from legfront.moves import make_simple

from tests.test_front import DOUBLE, TREFOIL, UNKNOT, ZIGZAG


def images(p):
    return {name: p.diff[name] for name in p.names}


def test_unknot_differential():
    p = front_dga(UNKNOT)
    assert p.mode == "knot"
    assert p.degree("a1") == 1
    assert p.diff["a1"] == parse_element(p.universe, "t^-1 + 1")

    q = front_dga(UNKNOT, mode="link")
    assert q.diff["a1"] == parse_element(q.universe, "1 + t")


def test_trefoil_differential():
    p = front_dga(TREFOIL)
    assert [p.degree(n) for n in p.names] == [0, 0, 0, 1, 1]
    u = p.universe
    assert p.diff["a1"].is_zero()
    assert p.diff["a2"].is_zero()
    assert p.diff["a3"].is_zero()
    assert p.diff["a4"] == parse_element(u, "1 - a1 - a3 - t a3a2a1")
    assert p.diff["a5"] == parse_element(u, "t^-1 + a1 + a3 + t a1a2a3")

    q = mod2_t1(p)
    cusp_images = {q.diff["a4"], q.diff["a5"]}
    expect = {parse_element(q.universe, "1 + a1 + a3 + a3a2a1"),
              parse_element(q.universe, "1 + a1 + a3 + a1a2a3")}
    assert cusp_images == expect


def test_requires_plat_form():
    with pytest.raises(ValueError, match="plat"):
        front_dga(ZIGZAG)


def test_stabilized_unknot_dga():
    p = front_dga(make_simple(ZIGZAG))
    u = p.universe
    assert u.t_degrees == (-2,)
    assert [p.degree(n) for n in p.names] == [1, 2, 1, 3]
    assert p.diff["a1"] == AlgebraElement.one(u)   # kills every augmentation
    assert p.diff["a2"].is_zero()
    assert p.diff["a3"] == AlgebraElement.one(u)
    assert p.diff["a4"] == parse_element(u, "t^-1 - a2")


def test_double_link_dga():
    p = front_dga(DOUBLE, mode="link")
    assert p.mode == "link" and p.components == 2
    assert list(zip(p.names, p.u, p.l)) == [
        ("a1", 2, 1), ("a2", 1, 2), ("a3", 1, 1), ("a4", 2, 2)]
    assert [p.degree(n) for n in p.names] == [-1, 1, 1, 1]
    u = p.universe
    assert p.diff["a1"].is_zero() and p.diff["a2"].is_zero()
    assert p.diff["a3"] == parse_element(u, "1 + t1 + t1a2a1")
    assert p.diff["a4"] == parse_element(u, "1 + t2 + t2a1a2")
    assert check_composability(p) == []

    with pytest.raises(ModeError):
        front_dga(DOUBLE, mode="knot")


def test_crossing_sign_matches_degree_parity():
    for d in [TREFOIL, make_simple(ZIGZAG)] + [
            make_simple(random_front(seed)) for seed in range(20)]:
        if trace_components(d).count != 1:
            continue
        p = front_dga(d)
        for v in vertex_table(d):
            if v.kind == "crossing":
                assert v.sign == (-1) ** p.degree(v.name)


def test_differential_checks_on_random_fronts():
    # construction already asserts degree drop and d^2 = 0 over the integers
    for seed in range(40):
        d = make_simple(random_front(seed))
        k = trace_components(d).count
        for mode in (["knot"] if k == 1 else []) + ["link"]:
            p = front_dga(d, mode=mode)
            validate_dga(p)
            validate_dga(mod2_t1(p))
            assert check_composability(p) == []


def test_composability_reports_bad_chains():
    u = Universe(char=2, t_vars=0, names=("a", "b"), degrees=(1, 0),
                 t_collapsed=True)
    bad = DGA(u, {"a": AlgebraElement.generator(u, "b"),
                  "b": AlgebraElement.zero(u)},
              components=2, twice_rho=(0, 0), u=(1, 2), l=(1, 2))
    problems = check_composability(bad)
    assert len(problems) == 2


def test_two_copy_of_unknot_is_the_double():
    assert n_copy(UNKNOT, 2) == DOUBLE


def test_three_copy_of_unknot():
    d = n_copy(UNKNOT, 3)
    assert [(e.kind, e.height) for e in d.events] == [
        ("L", 1), ("L", 3), ("L", 5), ("X", 2), ("X", 4), ("X", 3),
        ("X", 3), ("X", 4), ("X", 2), ("R", 1), ("R", 1), ("R", 1)]
    p = front_dga(d, mode="link")
    assert len(p.names) == 9
    assert p.components == 3
    assert [p.degree(n) for n in p.names] == [-1, -1, -1, 1, 1, 1, 1, 1, 1]
    u = p.universe
    assert p.diff["a7"] == parse_element(u, "1 + t1 + t1a4a3 + t1a6a1")
    assert p.diff["a8"] == parse_element(u, "1 + t2 + t2a1a6 + t2a5a2")
    assert p.diff["a9"] == parse_element(u, "1 + t3 + t3a2a5 + t3a3a4")
    assert p.diff["a3"] == parse_element(u, "t2a2a1")
    assert p.diff["a5"] == parse_element(u, "t2a1a4")
    assert p.diff["a6"] == parse_element(u, "t2a4a2")
    for n in ("a1", "a2", "a4"):
        assert p.diff[n].is_zero()


def test_ncopy_requires_a_knot():
    with pytest.raises(ValueError, match="one-component"):
        n_copy(DOUBLE, 2)


def test_mod2_collapse_grading():
    p = mod2_t1(front_dga(make_simple(ZIGZAG)))
    u = p.universe
    assert (u.char, u.t_vars, u.t_collapsed, u.modulus) == (2, 0, True, 2)
    assert [p.degree(n) for n in p.names] == [1, 0, 1, 1]
    assert p.diff["a4"] == parse_element(u, "1 + a2")
    assert mod2_t1(p) is p


def test_knot_mode_is_a_rescaled_link_mode():
    # generator-wise t-rescale by capping-path passes over the base point
    for d, kappa in [(UNKNOT, {"a1": 1}),
                     (TREFOIL, {"a1": 0, "a2": 1, "a3": 0, "a4": 0, "a5": 1}),
                     (make_simple(ZIGZAG),
                      {"a1": 1, "a2": 1, "a3": 0, "a4": 1})]:
        link = front_dga(d, mode="link")
        knot = front_dga(d, mode="knot")
        resc = rescale_generators(link, {n: -k for n, k in kappa.items()})
        assert resc.universe == knot.universe
        assert images(resc) == images(knot)


def test_permute_components():
    p = front_dga(DOUBLE, mode="link")
    q = permute_components(p, (2, 1))
    assert (q.u, q.l) == ((1, 2, 2, 1), (2, 1, 2, 1))
    assert q.diff["a3"] == parse_element(q.universe, "1 + t2 + t2a2a1")
    assert q.diff["a4"] == parse_element(q.universe, "1 + t1 + t1a1a2")
    back = permute_components(q, (2, 1))
    assert images(back) == images(p) and back.universe == p.universe


def test_regrading_shifts_mixed_generators_only():
    p = front_dga(DOUBLE, mode="link")
    q = with_rho(p, (2, 0))
    assert [q.degree(n) for n in q.names] == [-3, 3, 1, 1]
    validate_dga(q)
    r = with_rho(q, (0, 0))
    assert [r.degree(n) for n in r.names] == [p.degree(n) for n in p.names]


def test_split_differential_routes_constants():
    p = front_dga(DOUBLE, mode="link")
    s = split_differential(p)
    assert s.names == ("a1", "a2", "a3", "a4", "e1", "e2")
    u = s.universe
    assert s.diff["a3"] == parse_element(u, "e1 + t1e1 + t1a2a1")
    assert s.diff["a4"] == parse_element(u, "e2 + t2e2 + t2a1a2")
    assert s.diff["e1"].is_zero() and s.diff["e2"].is_zero()
    assert s.degree("e1") == 0


def test_json_round_trip():
    for p in (front_dga(UNKNOT),
              front_dga(DOUBLE, mode="link"),
              mod2_t1(front_dga(make_simple(ZIGZAG)))):
        assert loads(dumps(p)) == p


def test_json_rejects_unknown_format():
    with pytest.raises(ValueError, match="format"):
        from_json({"format": 2})
