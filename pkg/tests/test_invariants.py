"""Augmentations, truncated homology, and split polynomial matrices."""

import itertools
import random

import pytest

from legfront.algebra import AlgebraElement, LaurentPoly, ModeError, Universe
from legfront.dga import DGA, front_dga, mod2_t1, permute_components, validate_dga, with_rho
from legfront.front import front
from legfront.invariants import (
    conjugate,
    degree_distribution,
    elementary_automorphism,
    find_augmentations,
    linearize,
    match_gradings,
    poincare_polynomial,
    poincare_set,
    second_order_via_lemmas,
    shift_matrix,
    split_polynomials,
    standard_form,
)
from legfront.moves import make_simple, random_isotopy

from tests.test_front import DOUBLE, TREFOIL, UNKNOT, ZIGZAG


def poly(d, modulus=0):
    return LaurentPoly.from_dict(d, modulus)


def bits(eps, names):
    return tuple(eps[n] for n in names)


# -- helpers shared with the acceptance suite ---------------------------------

def random_dga(seed):
    """A small scrambled mod-2 presentation with known paired structure.

    Starts from sources mapping onto their partners plus inert extras,
    then applies a batch of elementary automorphisms with homogeneous
    one- or two-letter shifts, skipping any that would grow the
    presentation past a small size budget.  With exponent modulus 2 the
    shifts are kept quadratic so the linear part stays loop-free.
    """
    rng = random.Random(seed)
    npairs = rng.randint(1, 3)
    nsingles = rng.randint(0, 3)
    modulus = rng.choice([0, 0, 0, 2, 4])
    pdegs = [rng.randrange(-2, 3) for _ in range(npairs)]
    sdegs = [rng.randrange(-2, 3) for _ in range(nsingles)]
    names = tuple([f"u{i + 1}" for i in range(npairs)]
                  + [f"v{i + 1}" for i in range(npairs)]
                  + [f"w{i + 1}" for i in range(nsingles)])
    degrees = tuple([d + 1 for d in pdegs] + pdegs + sdegs)
    uni = Universe(char=2, t_vars=0, names=names, degrees=degrees,
                   modulus=modulus, t_collapsed=True)
    diff = {n: AlgebraElement.zero(uni) for n in names}
    for i in range(npairs):
        diff[f"u{i + 1}"] = AlgebraElement.generator(uni, f"v{i + 1}")
    n = len(names)
    p = DGA(uni, diff, 1, (0,), (1,) * n, (1,) * n)
    validate_dga(p)
    red = uni.reduce_degree
    for _ in range(2 * n):
        g = rng.choice(names)
        target = red(uni.degrees[uni.index(g)])
        others = [x for x in names if x != g]
        words = [(x, y) for x in others for y in others
                 if red(uni.degrees[uni.index(x)]
                        + uni.degrees[uni.index(y)]) == target]
        if modulus != 2:
            words += [(x,) for x in others
                      if red(uni.degrees[uni.index(x)]) == target]
        if not words:
            continue
        w = rng.choice(sorted(words))
        shift = AlgebraElement.monomial(uni, tuple(uni.index(x) for x in w))
        q = elementary_automorphism(p, g, shift, checked=False)
        if sum(len(q.diff[x].terms) for x in q.names) <= 80:
            p = q
    validate_dga(p)
    return p


def brute_force_augmentations(p, graded=True):
    """Independent check by plain enumeration (single-component only)."""
    q = mod2_t1(p)
    names = q.names
    red = q.universe.reduce_degree
    cands = [n for n in names if not graded or red(q.degree(n)) == 0]
    out = []
    for choice in itertools.product((0, 1), repeat=len(cands)):
        eps = dict.fromkeys(names, 0)
        eps.update(zip(cands, choice))
        ok = True
        for g in names:
            parity = 0
            for word, _t, coeff in q.diff[g].iter_terms():
                if coeff % 2 and all(eps[names[i]] for i in word):
                    parity ^= 1
            if parity:
                ok = False
                break
        if ok:
            out.append(eps)
    out.sort(key=lambda e: bits(e, names))
    return out


# -- degree distributions and augmentation search -----------------------------

def test_degree_distributions():
    assert degree_distribution(front_dga(UNKNOT)) == {1: 1}
    assert degree_distribution(front_dga(TREFOIL)) == {0: 3, 1: 2}


def test_unknot_has_exactly_the_zero_augmentation():
    p = front_dga(UNKNOT)
    augs = find_augmentations(p)
    assert len(augs) == 1 and set(augs[0].values()) == {0}


def test_trefoil_has_exactly_five_augmentations():
    p = front_dga(TREFOIL)
    augs = find_augmentations(p)
    assert [bits(e, ("a1", "a2", "a3")) for e in augs] == [
        (0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert all(e["a4"] == e["a5"] == 0 for e in augs)
    assert augs == brute_force_augmentations(p)


def test_ungraded_augmentations_of_the_trefoil():
    p = front_dga(TREFOIL)
    augs = find_augmentations(p, graded=False)
    assert len(augs) == 20
    assert augs == brute_force_augmentations(p, graded=False)


def test_stabilized_unknot_has_no_augmentations():
    p = front_dga(make_simple(ZIGZAG))
    assert find_augmentations(p) == []
    assert poincare_set(p) == ()


def test_search_cap_is_enforced():
    with pytest.raises(ModeError, match="cap"):
        find_augmentations(front_dga(TREFOIL), cap=4)


def test_conjugate_rejects_non_augmentations():
    p = front_dga(TREFOIL)
    with pytest.raises(ModeError, match="constant"):
        conjugate(p, {})  # the zero map misses 1 + a1 + a3 + ...


# -- first-order complexes ----------------------------------------------------

def test_unknot_first_and_second_order_polynomials():
    p = front_dga(UNKNOT)
    eps = find_augmentations(p)[0]
    assert poincare_polynomial(p, eps, 1) == poly({1: 1})
    assert poincare_polynomial(p, eps, 2) == poly({1: 1, 2: 1})
    assert second_order_via_lemmas(p, eps) == poly({1: 1, 2: 1})


def test_trefoil_first_order_polynomial_is_constant_across_augmentations():
    p = front_dga(TREFOIL)
    for eps in find_augmentations(p):
        assert poincare_polynomial(p, eps, 1) == poly({0: 2, 1: 1})
    assert poincare_set(p) == (poly({0: 2, 1: 1}),)


def test_trefoil_linearization_sends_both_top_generators_to_the_same_cycle():
    p = front_dga(TREFOIL)
    eps = dict.fromkeys(p.names, 0)
    eps["a3"] = 1
    cx = linearize(p, eps, 1)
    assert cx.basis[1] == (("a4",), ("a5",))
    assert cx.basis[0] == (("a1",), ("a2",), ("a3",))
    # rows follow basis[0]; both columns hit a1 + a3
    assert cx.boundary[1] == ((1, 1), (0, 0), (1, 1))
    assert cx.homology() == {0: 2, 1: 1}


def test_linearize_rejects_unsupported_orders():
    p = front_dga(UNKNOT)
    eps = find_augmentations(p)[0]
    with pytest.raises(ModeError, match="orders"):
        linearize(p, eps, 3)


# -- paired normal form -------------------------------------------------------

def test_trefoil_standard_form_trace():
    p = front_dga(TREFOIL)
    eps = dict.fromkeys(p.names, 0)
    eps["a3"] = 1
    sf = standard_form(p, eps)
    assert sf.pairs == (("a4", "a1"),)
    assert sf.singles == ("a2", "a3", "a5")
    assert sf.changes == (("a1", "a3"), ("a5", "a4"))
    assert sf.dga.diff["a4"].word_length_part(1) == sf.dga.generator("a1")
    assert sf.dga.diff["a5"].word_length_part(1).is_zero()


def test_single_pair_presentation_normalizes_without_changes():
    uni = Universe(char=2, t_vars=0, names=("x", "y"), degrees=(1, 0),
                   t_collapsed=True)
    p = DGA(uni, {"x": AlgebraElement.generator(uni, "y"),
                  "y": AlgebraElement.zero(uni)}, 1, (0,), (1, 1), (1, 1))
    sf = standard_form(p)
    assert sf.pairs == (("x", "y"),) and sf.singles == () and sf.changes == ()
    assert poincare_polynomial(p, {}, 1) == LaurentPoly.zero()
    assert poincare_polynomial(p, {}, 2) == LaurentPoly.zero()
    assert second_order_via_lemmas(p, {}) == LaurentPoly.zero()


def test_standard_form_fails_loudly_on_linear_cycles():
    uni = Universe(char=2, t_vars=0, names=("x", "y"), degrees=(0, 0),
                   modulus=1, t_collapsed=True)
    xy = AlgebraElement.generator(uni, "x") + AlgebraElement.generator(uni, "y")
    p = DGA(uni, {"x": xy, "y": xy}, 1, (0,), (1, 1), (1, 1))
    validate_dga(p)
    with pytest.raises(ModeError, match="cyclic"):
        standard_form(p)


def test_elementary_automorphism_rejects_self_reference():
    p = front_dga(TREFOIL)
    with pytest.raises(ModeError, match="involve"):
        elementary_automorphism(p, "a1", p.generator("a1"))


def test_elementary_automorphism_checks_degrees():
    p = mod2_t1(front_dga(TREFOIL))
    with pytest.raises(ModeError, match="degree"):
        elementary_automorphism(p, "a4", p.generator("a1"))


# -- second-order polynomials -------------------------------------------------

def test_trefoil_second_order_polynomial():
    p = front_dga(TREFOIL)
    eps = dict.fromkeys(p.names, 0)
    eps["a1"] = 1
    expected = poly({0: 5, 1: 4, 2: 1})
    assert poincare_polynomial(p, eps, 2) == expected
    assert second_order_via_lemmas(p, eps) == expected


def test_trefoil_second_order_routes_agree_for_every_augmentation():
    p = front_dga(TREFOIL)
    for eps in find_augmentations(p):
        assert second_order_via_lemmas(p, eps) == poincare_polynomial(p, eps, 2)


def test_zero_differential_second_order_counts_words():
    uni = Universe(char=2, t_vars=0, names=("x", "y"), degrees=(1, 1),
                   t_collapsed=True)
    zero = AlgebraElement.zero(uni)
    p = DGA(uni, {"x": zero, "y": zero}, 1, (0,), (1, 1), (1, 1))
    assert poincare_polynomial(p, {}, 2) == poly({1: 2, 2: 4})
    assert second_order_via_lemmas(p, {}) == poly({1: 2, 2: 4})


def test_second_order_routes_agree_on_scrambled_presentations():
    for seed in range(50):
        p = random_dga(seed)
        augs = find_augmentations(p)
        assert augs == brute_force_augmentations(p)
        for eps in augs:
            direct = poincare_polynomial(p, eps, 2)
            assert second_order_via_lemmas(p, eps) == direct


# -- split polynomials and grading alignment ----------------------------------

def test_double_split_matrix():
    p = front_dga(DOUBLE, mode="link")
    one_up = poly({1: 1})
    assert split_polynomials(p) == ((one_up, one_up), (poly({-1: 1}), one_up))


def test_single_component_split_matrix_is_the_ordinary_polynomial():
    p = front_dga(TREFOIL)
    for eps in find_augmentations(p):
        assert split_polynomials(p, eps) == ((poincare_polynomial(p, eps, 1),),)


def test_split_polynomials_reject_nonzero_rotation():
    p = front_dga(make_simple(ZIGZAG))
    with pytest.raises(ModeError, match="rotation"):
        split_polynomials(p)
    with pytest.raises(ModeError, match="rotation"):
        split_polynomials(mod2_t1(p))


def test_split_regrading_obeys_the_shift_law():
    p = front_dga(DOUBLE, mode="link")
    base = split_polynomials(p)
    assert split_polynomials(p, twice_rho=(2, 0)) == shift_matrix(base, (2, 0))
    assert split_polynomials(with_rho(p, (2, 0))) == shift_matrix(base, (2, 0))
    assert shift_matrix(base, (1, 1)) == base


def test_match_gradings_for_the_swapped_double():
    p = front_dga(DOUBLE, mode="link")
    q = permute_components(p, (2, 1))
    a, b = split_polynomials(p), split_polynomials(q)
    assert match_gradings(a, a) == ((0, 0), (0, 0))
    assert match_gradings(a, b) == ((-2, 0), (0, 0))
    assert shift_matrix(a, (-2, 0)) == b


def test_match_gradings_callable_families():
    p = front_dga(DOUBLE, mode="link")
    q = permute_components(p, (2, 1))
    fam_p = lambda rho: split_polynomials(p, twice_rho=rho)
    fam_q = lambda rho: split_polynomials(q, twice_rho=rho)
    assert match_gradings(fam_p, fam_q, bound=1) == ((-2, 0), (0, 0))


def test_match_gradings_rejects_non_affine_families():
    m = split_polynomials(front_dga(DOUBLE, mode="link"))
    with pytest.raises(ModeError, match="affine"):
        match_gradings(lambda rho: shift_matrix(m, (abs(rho[0]), 0)), m,
                       bound=1)


def test_triple_against_its_component_swap_has_no_matching():
    triple = front([("L", 1), ("L", 3), ("L", 5), ("X", 2), ("X", 4),
                    ("X", 3), ("X", 3), ("X", 4), ("X", 2),
                    ("R", 1), ("R", 1), ("R", 1)])
    p = front_dga(triple, mode="link")
    q = permute_components(p, (2, 1, 3))
    assert match_gradings(split_polynomials(p), split_polynomials(q)) is None
    assert match_gradings(split_polynomials(p), split_polynomials(p)) \
        == ((0, 0, 0), (0, 0, 0))


def test_mismatched_moduli_are_a_hard_error():
    a = ((poly({0: 1}, 2),),)
    b = ((poly({0: 1}, 4),),)
    with pytest.raises(ModeError, match="moduli"):
        match_gradings(a, b)


# -- invariance smoke test ----------------------------------------------------

def test_random_isotopy_preserves_counts_and_polynomials():
    base = front_dga(TREFOIL)
    baseline = poincare_set(base)
    moved, _log = random_isotopy(TREFOIL, seed=11, steps=25)
    p = front_dga(make_simple(moved))
    # the raw count may grow through contractible pairs; the set may not
    assert poincare_set(p) == baseline

    dbase = front_dga(DOUBLE, mode="link")
    fam_base = {split_polynomials(dbase, e) for e in find_augmentations(dbase)}
    moved2, _log2 = random_isotopy(DOUBLE, seed=7, steps=25)
    q = front_dga(make_simple(moved2), mode="link")
    fam_moved = {split_polynomials(q, e) for e in find_augmentations(q)}
    assert match_gradings(fam_moved, fam_base) is not None
