"""Acceptance battery: nine end-to-end criteria, each with a pinned budget.

Every test prints one ``ACCEPTANCE <n> PASS`` line (visible under ``-s``)
and fails outright if its wall-clock budget is exceeded.
"""

import itertools
import time

from test_invariants import random_dga

from legfront import corpus
from legfront.algebra import parse_element
from legfront.charalg import (
    characteristic_presentation,
    compare_knots,
    complete_rewriting,
    graded_unit_pairing,
    ideal_member,
    mirror_presentation,
    normal_form,
    one_sided_invertibility,
    one_sided_only_unit,
    presentation,
    probe_quotient,
    stabilize_dga,
    tietze_simplify,
)
from legfront.dga import (
    front_dga,
    mod2_t1,
    n_copy,
    permute_components,
    validate_dga,
)
from legfront.front import (
    classical_signature,
    random_front,
    rotation_number,
    thurston_bennequin,
    trace_components,
)
from legfront.invariants import (
    LaurentPoly,
    find_augmentations,
    match_gradings,
    poincare_polynomial,
    poincare_set,
    second_order_via_lemmas,
    split_polynomials,
)
from legfront.moves import make_simple, random_isotopy


def _finish(n: int, budget: float, started: float, summary: str) -> None:
    elapsed = time.monotonic() - started
    assert elapsed < budget, \
        f"criterion {n} took {elapsed:.1f}s, budget {budget}s"
    print(f"ACCEPTANCE {n} PASS {summary} [{elapsed:.2f}s < {budget:g}s]")


def _dga_of(name: str):
    d = make_simple(corpus.front_of(name))
    mode = "knot" if trace_components(d).count == 1 else "link"
    return front_dga(d, mode=mode)


def _pset(p) -> tuple[str, ...]:
    return tuple(sorted(str(x) for x in poincare_set(mod2_t1(p))))


def _split_family(p) -> frozenset:
    return frozenset(split_polynomials(p, eps)
                     for eps in find_augmentations(p))


def test_criterion_1_classical_invariants():
    t0 = time.monotonic()
    u = corpus.front_of("unknot")
    t = corpus.front_of("trefoil")
    s = corpus.front_of("zigzag")
    assert (thurston_bennequin(u), rotation_number(u)) == (-1, 0)
    assert (thurston_bennequin(t), rotation_number(t)) == (1, 0)
    assert thurston_bennequin(s) == -2 and abs(rotation_number(s)) == 1
    _finish(1, 1.0, t0, "classical invariants of the three reference fronts")


def test_criterion_2_differential_soundness():
    t0 = time.monotonic()
    checked = 0
    for name in corpus.names():
        if corpus.entry(name).kind == "front":
            d = make_simple(corpus.front_of(name))
            mode = "knot" if trace_components(d).count == 1 else "link"
            p = front_dga(d, mode=mode, checked=True)
            assert p.universe.char == 0 and p.universe.t_vars >= 1
        else:
            validate_dga(corpus.dga(name))
        checked += 1
    for seed in range(200):
        d = make_simple(random_front(seed, max_events=12))
        mode = "knot" if trace_components(d).count == 1 else "link"
        front_dga(d, mode=mode, checked=True)  # degree drop and d*d == 0
        checked += 1
    _finish(2, 60.0, t0,
            f"degree-1 drop and square-zero over Z[t,1/t] on {checked} inputs")


def test_criterion_3_trefoil_suite():
    t0 = time.monotonic()
    p = corpus.dga("trefoil")
    augs = find_augmentations(p)
    assert len(augs) == 5
    expected = LaurentPoly.from_dict({0: 2, 1: 1})
    assert all(poincare_polynomial(p, eps, 1) == expected for eps in augs)
    q = mod2_t1(p)
    cusps = [n for n in q.names if q.degree(n) == 1]
    assert {q.d(n) for n in cusps} == {
        parse_element(q.universe, "1 + a1 + a3 + a1 a2 a3"),
        parse_element(q.universe, "1 + a1 + a3 + a3 a2 a1"),
    }
    _finish(3, 1.0, t0,
            "five augmentations, constant polynomial, cusp boundaries")


def test_criterion_4_isotopy_invariance():
    t0 = time.monotonic()
    runs = 0
    for name in ("unknot", "trefoil", "double"):
        d0 = corpus.front_of(name)
        comps = trace_components(d0).count
        mode = "knot" if comps == 1 else "link"
        p0 = front_dga(make_simple(d0), mode=mode)
        base_pset = _pset(p0)
        base_family = _split_family(p0) if comps > 1 else None
        base_classes = sorted(classical_signature(d0)[1])
        for seed in range(20):
            d1, _ = random_isotopy(d0, seed=seed, steps=25)
            assert trace_components(d1).count == comps
            assert thurston_bennequin(d1) == thurston_bennequin(d0)
            assert sorted(classical_signature(d1)[1]) == base_classes
            if comps == 1:
                assert rotation_number(d1) == rotation_number(d0)
            p1 = front_dga(make_simple(d1), mode=mode)
            assert _pset(p1) == base_pset
            if base_family is not None:
                assert match_gradings(base_family,
                                      _split_family(p1)) is not None
            runs += 1
    _finish(4, 120.0, t0, f"{runs} random isotopy runs preserve invariants")


def test_criterion_5_k62_battery():
    t0 = time.monotonic()
    c = characteristic_presentation(corpus.dga("k62"))
    rs = complete_rewriting(c)
    rules = dict(rs.rules)
    assert rules[("a8",)] == ()
    assert rules[("a10", "a5", "a5")] == (("a11",),)
    for relation in ("1 + a10 a5 a3", "1 + a3 a10 a5", "1 + a10 a10 a5 a5",
                     "1 + a10 a5 + a6 a10 + a10 a5 a5 a7"):
        assert ideal_member(rs, relation) == "yes"
    simplified = tietze_simplify(c)
    v = graded_unit_pairing(simplified, 1)
    assert v.status == "exists"
    assert (v.v, v.w) == (("a10",), ("a5", "a3"))
    mirrored = tietze_simplify(mirror_presentation(c))
    vm = graded_unit_pairing(mirrored, 1)
    assert vm.status == "none"
    assert vm.certificate["kind"] == "toeplitz-probe"
    verdict = compare_knots(corpus.dga("k62"), corpus.dga("k62_mirror"))
    assert verdict.status == "DISTINGUISHED"
    assert verdict.property == "graded unit pairing in degree 1"
    _finish(5, 30.0, t0,
            "k62 quotient facts and mirror distinction reproduced")


def test_criterion_6_k74_battery():
    t0 = time.monotonic()
    c2 = characteristic_presentation(corpus.dga("k74b"))
    rs2 = complete_rewriting(c2)
    assert normal_form(rs2, "1 + a13 a12").is_zero()

    sigma = {"a3": 1, "a7": "a13", "a8": "a12"}
    sigma.update({n: 0 for n in
                  ("a1", "a2", "a4", "a5", "a6", "a9", "a10", "a11")})
    q = probe_quotient(c2, sigma)
    assert q.names == ("a12", "a13") and q.degrees == (2, -2)
    assert q.relations == ((((), ("a13", "a12")),))

    t2 = tietze_simplify(c2)
    sides = one_sided_invertibility(t2, "a13")
    assert sides["right"].status == "yes"
    assert sides["left"].status == "no"
    assert sides["left"].certificate["kind"] == "toeplitz-probe"

    t1 = tietze_simplify(characteristic_presentation(corpus.dga("k74a")))
    assert t1.names == ("a1", "a2", "a3", "a4", "a5", "a8", "a9", "a10",
                        "a13")
    reference = presentation(
        t1.names, t1.degrees,
        ["1 + a3 a8 a13", "a3 a8 + a8 a3", "a3 a13 + a13 a3",
         "a8 a13 + a13 a8"])
    rs_mine = complete_rewriting(t1)
    rs_ref = complete_rewriting(reference)
    assert all(ideal_member(rs_ref, x) == "yes"
               for x in t1.relation_elements())
    assert all(ideal_member(rs_mine, x) == "yes"
               for x in reference.relation_elements())

    verdict = compare_knots(corpus.dga("k74a"), corpus.dga("k74b"))
    assert verdict.status == "DISTINGUISHED"
    assert verdict.property == "one-sided invertible element"
    _finish(6, 60.0, t0,
            "k74 pair: probe, one-sided unit, commuting form, distinction")


def test_criterion_7_triple_copy_table():
    t0 = time.monotonic()
    tripled = make_simple(n_copy(corpus.front_of("unknot"), 3))
    p = front_dga(tripled, mode="link")
    assert len(p.names) == 9  # crossings plus right cusps

    # components here are numbered in trace order; the reference table
    # numbers them the opposite way, so relabel before comparing
    relabeled = permute_components(p, (3, 2, 1))
    lam = lambda e: LaurentPoly.from_dict({e: 1})
    for r1, r2 in itertools.product((-1, 0, 1), repeat=2):
        expected = (
            (lam(1), lam(-1 + 2 * r1 - 2 * r2), lam(-1 + 2 * r1)),
            (lam(1 + 2 * r2 - 2 * r1), lam(1), lam(-1 + 2 * r2)),
            (lam(1 - 2 * r1), lam(1 - 2 * r2), lam(1)),
        )
        got = split_polynomials(relabeled, twice_rho=(2 * r1, 2 * r2, 0))
        assert got == expected, (r1, r2)

    fam = lambda rho: split_polynomials(p, twice_rho=rho)
    swapped = permute_components(p, (2, 1, 3))
    fam_swapped = lambda rho: split_polynomials(swapped, twice_rho=rho)
    assert match_gradings(fam, fam, bound=1) is not None
    assert match_gradings(fam, fam_swapped, bound=1) is None
    _finish(7, 60.0, t0,
            "triple-copy table over nine gradings; swapped family unmatched")


def test_criterion_8_second_order_routes():
    t0 = time.monotonic()
    pairs = 0
    for name in corpus.names():
        p = corpus.dga(name)
        for eps in find_augmentations(p):
            assert poincare_polynomial(p, eps, 2) \
                == second_order_via_lemmas(p, eps)
            pairs += 1
    for seed in range(50):
        p = random_dga(seed)
        for eps in find_augmentations(p):
            assert poincare_polynomial(p, eps, 2) \
                == second_order_via_lemmas(p, eps)
            pairs += 1
    u = corpus.dga("unknot")
    eps = find_augmentations(u)[0]
    assert poincare_polynomial(u, eps, 2) \
        == LaurentPoly.from_dict({1: 1, 2: 1})
    _finish(8, 60.0, t0,
            f"direct and lemma-route order-2 polynomials agree ({pairs} maps)")


def test_criterion_9_stabilization_robustness():
    t0 = time.monotonic()
    for name in corpus.names():
        p = corpus.dga(name)
        base_pset = _pset(p)
        base_split = split_polynomials(p) if p.components > 1 else None
        for d in range(-2, 4):
            s = stabilize_dga(p, d)
            validate_dga(s)
            assert _pset(s) == base_pset, (name, d)
            if base_split is not None:
                assert split_polynomials(s) == base_split, (name, d)

    k62 = corpus.dga("k62")
    base = graded_unit_pairing(
        tietze_simplify(characteristic_presentation(k62)), 1)
    unknot = corpus.dga("unknot")
    for d in range(-2, 4):
        v = graded_unit_pairing(tietze_simplify(
            characteristic_presentation(stabilize_dga(k62, d))), 1)
        assert (v.status, v.v, v.w) == ("exists", base.v, base.w), d
        status, cert = one_sided_only_unit(
            characteristic_presentation(stabilize_dga(unknot, d)))
        assert (status, cert["kind"]) == ("none", "constants-unreachable"), d
    _finish(9, 60.0, t0,
            "stabilization changes no polynomial set and no verdict")
