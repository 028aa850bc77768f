"""Homology-level invariants of a crossing algebra.

Everything in this module works over GF(2) with all unit variables set
to 1; presentations in richer coefficient modes are collapsed on entry
(see :func:`legfront.dga.mod2_t1`).  That setting is what makes
exhaustive augmentation search and plain rank counting tractable, and
it is where the downstream comparison tooling operates.

Contents:

* augmentation search (:func:`find_augmentations`) -- exhaustive with
  pruning, running per diagonal component block for links;
* truncated chain complexes (:func:`linearize`) and their Poincare
  polynomials at orders one and two (:func:`poincare_polynomial`);
* a paired normal form of the linear differential
  (:func:`standard_form`) and the shortcut evaluation of the order-two
  polynomial it affords (:func:`second_order_via_lemmas`);
* component-indexed polynomial matrices for links whose rotation
  numbers vanish (:func:`split_polynomials`) plus the grading-shift
  matcher used to compare them (:func:`match_gradings`).
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass

from .algebra import (AlgebraElement, LaurentPoly, ModeError,
                      render_element)
from .dga import DGA, mod2_t1, validate_dga, with_rho

__all__ = [
    "Augmentation",
    "Matrix",
    "LinearizedComplex",
    "StandardForm",
    "conjugate",
    "degree_distribution",
    "elementary_automorphism",
    "find_augmentations",
    "linearize",
    "match_gradings",
    "poincare_polynomial",
    "poincare_set",
    "second_order_via_lemmas",
    "shift_matrix",
    "split_polynomials",
    "standard_form",
]

Augmentation = dict[str, int]
Matrix = tuple[tuple[LaurentPoly, ...], ...]

_DEFAULT_CAP = 1 << 24


def degree_distribution(p: DGA) -> dict[int, int]:
    """Tally generators by reduced degree."""
    red = p.universe.reduce_degree
    counts = Counter(red(p.degree(n)) for n in p.names)
    return dict(sorted(counts.items()))


# -- augmentations ------------------------------------------------------------

def _eps_value(q: DGA, eps: Mapping[str, int], x: AlgebraElement) -> int:
    """Evaluate the multiplicative extension of ``eps`` on ``x`` over GF(2)."""
    names = q.names
    total = 0
    for word, _texp, coeff in x.iter_terms():
        if coeff % 2 == 0:
            continue
        if all(eps.get(names[i], 0) % 2 for i in word):
            total ^= 1
    return total


def _block_equations(q: DGA, sources: Sequence[str],
                     var: Mapping[str, int]) -> list[tuple[int, tuple[frozenset[int], ...]]]:
    """Reduce each requirement eps(d g) = 0 to a GF(2) equation.

    Letters outside ``var`` evaluate to 0 and kill their word; repeated
    letters inside a word collapse because squares are idempotent on
    {0,1}.  Each equation is (constant parity, odd-multiplicity
    monomials over variable indices).
    """
    names = q.names
    equations = []
    for g in sources:
        const = 0
        monomials: Counter[frozenset[int]] = Counter()
        for word, _texp, coeff in q.diff[g].iter_terms():
            if coeff % 2 == 0:
                continue
            letters = [names[i] for i in word]
            if any(n not in var for n in letters):
                continue
            key = frozenset(var[n] for n in letters)
            if key:
                monomials[key] += 1
            else:
                const ^= 1
        odd = tuple(sorted((m for m, k in monomials.items() if k % 2),
                           key=sorted))
        if const or odd:
            equations.append((const, odd))
    return equations


def _solve_equations(nvars: int,
                     equations: list[tuple[int, tuple[frozenset[int], ...]]]
                     ) -> list[tuple[int, ...]]:
    """All GF(2) points satisfying every equation, by pruned backtracking."""
    freq: Counter[int] = Counter(v for _c, monos in equations
                                 for m in monos for v in m)
    order = sorted(range(nvars), key=lambda v: (-freq[v], v))
    solutions: list[tuple[int, ...]] = []

    def search(assign: list[int]) -> None:
        # propagate forced values until stable
        while True:
            forced: dict[int, int] = {}
            for const, monos in equations:
                c = const
                pending: Counter[frozenset[int]] = Counter()
                for mono in monos:
                    if any(assign[v] == 0 for v in mono):
                        continue
                    unknown = frozenset(v for v in mono if assign[v] == -1)
                    if unknown:
                        pending[unknown] += 1
                    else:
                        c ^= 1
                live = [m for m, k in pending.items() if k % 2]
                if not live:
                    if c:
                        return
                    continue
                if len(live) == 1:
                    if c == 1:
                        # the single live product must evaluate to 1
                        for v in live[0]:
                            if forced.setdefault(v, 1) != 1:
                                return
                    elif len(live[0]) == 1:
                        (v,) = live[0]
                        if forced.setdefault(v, 0) != 0:
                            return
            if not forced:
                break
            for v, b in forced.items():
                if assign[v] not in (-1, b):
                    return
                assign[v] = b
        branch = next((v for v in order if assign[v] == -1), None)
        if branch is None:
            solutions.append(tuple(assign))
            return
        for b in (0, 1):
            child = assign.copy()
            child[branch] = b
            search(child)

    search([-1] * nvars)
    return sorted(set(solutions))


def find_augmentations(p: DGA, graded: bool = True,
                       cap: int = _DEFAULT_CAP) -> list[Augmentation]:
    """All unital algebra maps to GF(2) annihilating the differential.

    In graded mode only generators of reduced degree zero may take the
    value 1; ungraded mode searches every generator.  For links the
    search runs independently inside each diagonal component block and
    every mixed generator is sent to 0; the assembled map is then
    re-checked against the full differential.  Raises when the search
    space would exceed ``cap`` assignments.
    """
    q = mod2_t1(p)
    names = q.names
    red = q.universe.reduce_degree
    per_component: list[tuple[list[str], list[tuple[int, ...]]]] = []
    for j in range(1, q.components + 1):
        block = [n for n in names if q.u_of(n) == j and q.l_of(n) == j]
        candidates = [n for n in block
                      if not graded or red(q.degree(n)) == 0]
        if 1 << len(candidates) > cap:
            raise ModeError(
                f"augmentation search space 2^{len(candidates)} exceeds the "
                f"cap of {cap} assignments")
        var = {n: i for i, n in enumerate(candidates)}
        sols = _solve_equations(len(candidates),
                                _block_equations(q, block, var))
        if not sols:
            return []
        per_component.append((candidates, sols))

    total = 1
    for _c, sols in per_component:
        total *= len(sols)
    if total > cap:
        raise ModeError(f"{total} assembled augmentations exceed the cap")

    out: list[Augmentation] = []
    for combo in itertools.product(*(sols for _c, sols in per_component)):
        eps = dict.fromkeys(names, 0)
        for (candidates, _sols), bits in zip(per_component, combo):
            for n, b in zip(candidates, bits):
                eps[n] = b
        for g in names:  # independent re-assertion on the full differential
            if _eps_value(q, eps, q.diff[g]):
                raise AssertionError(
                    f"search produced a map that misses d({g})")
        out.append(eps)
    out.sort(key=lambda e: tuple(e[n] for n in names))
    return out


def conjugate(p: DGA, eps: Mapping[str, int]) -> DGA:
    """Shift coordinates g -> g + eps(g) so the differential loses constants."""
    q = mod2_t1(p)
    uni = q.universe
    one = AlgebraElement.one(uni)
    images = {i: AlgebraElement.generator(uni, i)
              + (eps.get(uni.names[i], 0) % 2) * one
              for i in range(len(uni.names))}
    diff = {g: q.diff[g].substitute(images) for g in uni.names}
    for g in uni.names:
        if not diff[g].constant_part().is_zero():
            raise ModeError(
                f"the map is not an augmentation: d({g}) keeps a constant")
    return DGA(uni, diff, q.components, q.twice_rho, q.u, q.l)


# -- truncated complexes ------------------------------------------------------

def _rank_gf2(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            high = row.bit_length() - 1
            if high in pivots:
                row ^= pivots[high]
            else:
                pivots[high] = row
                rank += 1
                break
    return rank


@dataclass(frozen=True)
class LinearizedComplex:
    """Chain data of the differential truncated to short words.

    ``basis[d]`` lists the words (tuples of generator names) spanning
    the degree-d chain group and ``boundary[d]`` is the GF(2) matrix
    from coordinates in ``basis[d]`` to coordinates in ``basis[d-1]``
    (degrees reduced modulo ``modulus`` when nonzero); rows are indexed
    by the target basis, columns by the source.
    """

    modulus: int
    order: int
    basis: dict[int, tuple[tuple[str, ...], ...]]
    boundary: dict[int, tuple[tuple[int, ...], ...]]

    def ranks(self) -> dict[int, int]:
        out = {}
        for d, matrix in self.boundary.items():
            rows = [sum(bit << c for c, bit in enumerate(row))
                    for row in matrix]
            out[d] = _rank_gf2(rows)
        return out

    def homology(self) -> dict[int, int]:
        red = (lambda x: x % self.modulus) if self.modulus else (lambda x: x)
        ranks = self.ranks()
        out = {}
        for d, words in sorted(self.basis.items()):
            h = len(words) - ranks.get(d, 0) - ranks.get(red(d + 1), 0)
            if h < 0:
                raise AssertionError("negative homology rank")
            if h:
                out[d] = h
        return out

    def poincare(self) -> LaurentPoly:
        return LaurentPoly.from_dict(self.homology(), self.modulus)


def linearize(p: DGA, eps: Mapping[str, int], order: int = 1) -> LinearizedComplex:
    """Quotient complex spanned by words of length at most ``order``."""
    if order not in (1, 2):
        raise ModeError("only orders 1 and 2 are supported")
    q = conjugate(p, eps)
    uni = q.universe
    red = uni.reduce_degree
    n = len(uni.names)
    deg1 = [red(uni.degrees[i]) for i in range(n)]

    words: list[tuple[int, ...]] = [(i,) for i in range(n)]
    if order == 2:
        words += [(i, j) for i in range(n) for j in range(n)]
    wdeg = {w: red(sum(deg1[i] for i in w)) for w in words}
    by_degree: dict[int, list[tuple[int, ...]]] = {}
    for w in words:
        by_degree.setdefault(wdeg[w], []).append(w)
    pos = {w: c for d in by_degree for c, w in enumerate(by_degree[d])}

    linear: list[list[int]] = []
    quadratic: list[list[tuple[int, int]]] = []
    for i in range(n):
        img = q.diff[uni.names[i]]
        linear.append([w[0] for w, _t, c in
                       img.word_length_part(1).iter_terms() if c % 2])
        if order == 2:
            quadratic.append([(w[0], w[1]) for w, _t, c in
                              img.word_length_part(2).iter_terms() if c % 2])

    def boundary_of(w: tuple[int, ...]) -> Counter[tuple[int, ...]]:
        hits: Counter[tuple[int, ...]] = Counter()
        if len(w) == 1:
            for x in linear[w[0]]:
                hits[(x,)] += 1
            if order == 2:
                for ab in quadratic[w[0]]:
                    hits[ab] += 1
        else:
            i, j = w
            for x in linear[i]:
                hits[(x, j)] += 1
            for y in linear[j]:
                hits[(i, y)] += 1
        return hits

    cols: dict[int, list[int]] = {}
    for d, ws in by_degree.items():
        target = red(d - 1)
        vecs = []
        for w in ws:
            vec = 0
            for hit, k in boundary_of(w).items():
                if k % 2 == 0:
                    continue
                if wdeg[hit] != target:
                    raise AssertionError("boundary does not drop degree by one")
                vec ^= 1 << pos[hit]
            vecs.append(vec)
        cols[d] = vecs

    for d, vecs in cols.items():  # consecutive boundaries compose to zero
        deeper = cols.get(red(d - 1))
        if deeper is None:
            if any(vecs):
                raise AssertionError("boundary hits an empty degree")
            continue
        for vec in vecs:
            image = 0
            r = vec
            while r:
                low = (r & -r).bit_length() - 1
                image ^= deeper[low]
                r &= r - 1
            if image:
                raise AssertionError("boundary does not square to zero")

    basis = {d: tuple(tuple(uni.names[i] for i in w) for w in ws)
             for d, ws in by_degree.items()}
    boundary = {}
    for d, vecs in cols.items():
        nrows = len(by_degree.get(red(d - 1), ()))
        boundary[d] = tuple(tuple((vec >> r) & 1 for vec in vecs)
                            for r in range(nrows))
    return LinearizedComplex(uni.modulus, order, basis, boundary)


def poincare_polynomial(p: DGA, eps: Mapping[str, int],
                        order: int = 1) -> LaurentPoly:
    """Homology dimensions per degree of the order-``order`` complex."""
    return linearize(p, eps, order).poincare()


def poincare_set(p: DGA, order: int = 1) -> tuple[LaurentPoly, ...]:
    """Sorted set of Poincare polynomials over all graded augmentations."""
    values = {poincare_polynomial(p, eps, order)
              for eps in find_augmentations(p)}
    return tuple(sorted(values, key=lambda pl: pl.coeffs))


# -- paired normal form -------------------------------------------------------

def elementary_automorphism(p: DGA, name: str, shift: AlgebraElement,
                            checked: bool = True) -> DGA:
    """Replace ``name`` by ``name + shift`` (a tame change of coordinates).

    ``shift`` must not involve the generator being replaced; over GF(2)
    the substitution is its own inverse.  In checked mode the shift must
    be homogeneous of the generator's degree and the result is
    re-validated.
    """
    uni = p.universe
    gi = uni.index(name)
    if gi in shift.letters():
        raise ModeError("the shift may not involve the changed generator")
    if checked and not shift.is_zero() \
            and shift.degree() != uni.reduce_degree(uni.degrees[gi]):
        raise ModeError("the shift must match the generator's degree")
    images = {i: AlgebraElement.generator(uni, i)
              for i in range(len(uni.names))}
    images[gi] = images[gi] + shift
    d_shift = p.d(shift)
    diff = {nm: p.diff[nm].substitute(images) for nm in uni.names}
    diff[name] = (p.diff[name] + d_shift).substitute(images)
    out = DGA(uni, diff, p.components, p.twice_rho, p.u, p.l)
    if checked:
        validate_dga(out)
    return out


def _linear_letters(x: AlgebraElement) -> set[int]:
    return {w[0] for w, _t, c in x.word_length_part(1).iter_terms() if c % 2}


def _dependency_order(q: DGA) -> list[int]:
    """Sort generators so differentials reference only earlier ones.

    The full differential is tried first; if its reference graph is
    cyclic, the linear part alone is used, and a cycle there is a hard
    error.
    """
    n = len(q.names)

    def kahn(deps: list[set[int]]) -> list[int] | None:
        remaining = {i: set(deps[i]) for i in range(n)}
        order: list[int] = []
        placed: set[int] = set()
        while remaining:
            ready = sorted(i for i, need in remaining.items()
                           if need <= placed)
            if not ready:
                return None
            for i in ready:
                order.append(i)
                placed.add(i)
                del remaining[i]
        return order

    full = [set(q.diff[nm].letters()) - {i}
            for i, nm in enumerate(q.names)]
    order = kahn(full)
    if order is not None:
        return order
    linear = [_linear_letters(q.diff[nm]) - {i}
              for i, nm in enumerate(q.names)]
    order = kahn(linear)
    if order is None:
        raise ModeError(
            "the linear part of the differential has cyclic dependencies")
    return order


@dataclass(frozen=True)
class StandardForm:
    """A presentation whose linear differential pairs generators exactly.

    ``pairs`` lists (source, partner) with d(source) = partner + higher
    order; ``singles`` are the generators whose linear image vanishes;
    ``changes`` records the elementary automorphisms applied, in order,
    as (generator, added shift) rendered strings.
    """

    dga: DGA
    pairs: tuple[tuple[str, str], ...]
    singles: tuple[str, ...]
    changes: tuple[tuple[str, str], ...]


def standard_form(p: DGA, eps: Mapping[str, int] | None = None) -> StandardForm:
    """Normalize the linear differential onto paired generators.

    After shifting by ``eps``, tame coordinate changes arrange that each
    paired source maps linearly onto exactly its partner and every other
    linear term vanishes.  Sources are eliminated in dependency order;
    the partner chosen for a source is the lowest-index letter of its
    linear image.
    """
    current = conjugate(p, eps or {})
    uni = current.universe
    names = uni.names
    order = _dependency_order(current)
    changes: list[tuple[str, str]] = []

    def change(name: str, shift: AlgebraElement) -> None:
        nonlocal current
        current = elementary_automorphism(current, name, shift, checked=False)
        changes.append((name, render_element(shift)))

    taken: set[int] = set()
    pairs: list[tuple[str, str]] = []
    while True:
        g = next((i for i in order if i not in taken
                  and _linear_letters(current.diff[names[i]]) - {i}), None)
        if g is None:
            break
        letters = sorted(_linear_letters(current.diff[names[g]]) - {g})
        y = letters[0]
        if y in taken:
            raise AssertionError("a linear image touched a paired generator")
        residue = (current.diff[names[g]].word_length_part(1)
                   + current.generator(names[y]))
        if not residue.is_zero():
            change(names[y], residue)
        while True:
            h = next((k for k in range(len(names)) if k != g and
                      y in _linear_letters(current.diff[names[k]])), None)
            if h is None:
                break
            if h in taken or h == y:
                raise AssertionError("pair cleanup reached a finished generator")
            change(names[h], current.generator(names[g]))
        taken.update((g, y))
        pairs.append((names[g], names[y]))

    singles = tuple(names[i] for i in range(len(names)) if i not in taken)
    for a, b in pairs:
        if current.diff[a].word_length_part(1) != current.generator(b):
            raise AssertionError("pairing left a stray linear term")
        if _linear_letters(current.diff[b]):
            raise AssertionError("a partner kept a linear image")
    for c in singles:
        if _linear_letters(current.diff[c]):
            raise AssertionError("an unpaired generator kept a linear image")
    validate_dga(current)
    return StandardForm(current, tuple(pairs), singles, tuple(changes))


def second_order_via_lemmas(p: DGA,
                            eps: Mapping[str, int] | None = None) -> LaurentPoly:
    """Order-two Poincare polynomial without the length-two chain complex.

    In the paired normal form the order-two boundary rank per degree is
    the partner count plus the rank of an explicit quadratic family; a
    second route through the two-sided-ideal filtration yields the same
    number after a convolution correction.  Both routes are evaluated
    and must agree before the polynomial is assembled.
    """
    sf = standard_form(p, eps)
    q = sf.dga
    uni = q.universe
    red = uni.reduce_degree
    m = uni.modulus
    gen = {nm: q.generator(nm) for nm in uni.names}
    a_s = [a for a, _b in sf.pairs]
    b_s = [b for _a, b in sf.pairs]
    c_s = list(sf.singles)
    deg = {nm: red(q.degree(nm)) for nm in uni.names}
    gamma = Counter(deg.values())
    delta1 = Counter(deg[b] for b in b_s)

    def quad(x: AlgebraElement) -> AlgebraElement:
        return x.word_length_part(2)

    npairs = len(sf.pairs)
    shared = ([quad(q.diff[b]) for b in b_s]
              + [quad(q.diff[c]) for c in c_s]
              + [gen[b1] * gen[b2] for b1 in b_s for b2 in b_s]
              + [gen[b] * gen[c] for b in b_s for c in c_s]
              + [gen[c] * gen[b] for b in b_s for c in c_s])
    beta_family = shared + [gen[a_s[i]] * gen[b_s[j]]
                            + gen[b_s[i]] * gen[a_s[j]]
                            for i in range(npairs) for j in range(npairs)]
    delta_family = (shared + [gen[a] * gen[b] for a in a_s for b in b_s]
                    + [gen[b] * gen[a] for a in a_s for b in b_s])

    def graded_rank(family: list[AlgebraElement]) -> Counter[int]:
        index: dict[tuple[int, int], int] = {}
        rows: dict[int, list[int]] = {}
        for x in family:
            if x.is_zero():
                continue
            d = x.degree()
            if d is None:
                raise AssertionError("quadratic family member not homogeneous")
            vec = 0
            for word, _t, c in x.iter_terms():
                if c % 2 == 0:
                    continue
                if len(word) != 2:
                    raise AssertionError("quadratic family member has a "
                                         "word of the wrong length")
                key = (word[0], word[1])
                vec ^= 1 << index.setdefault(key, len(index))
            if vec:
                rows.setdefault(red(d), []).append(vec)
        return Counter({d: _rank_gf2(r) for d, r in rows.items()})

    rank_beta = graded_rank(beta_family)
    rank_delta = graded_rank(delta_family)

    dims2: Counter[int] = Counter(gamma)
    for l1, c1 in gamma.items():
        for l2, c2 in gamma.items():
            dims2[red(l1 + l2)] += c1 * c2

    degrees = set(dims2) | set(delta1) | set(rank_beta) | set(rank_delta)
    beta2, delta2 = {}, {}
    for ell in degrees:
        beta2[ell] = delta1.get(ell, 0) + rank_beta.get(ell, 0)
        delta2[ell] = delta1.get(ell, 0) + rank_delta.get(ell, 0)
    for ell in degrees:
        correction = sum(delta1[l1] * delta1.get(red(ell - l1 - 1), 0)
                         for l1 in delta1)
        if beta2[ell] != delta2[ell] - correction:
            raise AssertionError(
                "the two boundary-rank routes disagree in degree "
                f"{ell}: {beta2[ell]} vs {delta2[ell]} - {correction}")

    coeffs = {}
    for ell, dim in dims2.items():
        h = dim - beta2.get(ell, 0) - beta2.get(red(ell - 1), 0)
        if h < 0:
            raise AssertionError("negative homology rank")
        if h:
            coeffs[ell] = h
    return LaurentPoly.from_dict(coeffs, m)


# -- link split polynomials ---------------------------------------------------

def split_polynomials(p: DGA, eps: Mapping[str, int] | None = None,
                      twice_rho: tuple[int, ...] | None = None) -> Matrix:
    """First-order Poincare data refined by component blocks.

    Requires every rotation number to vanish so the entries live over
    plain integer exponents.  ``twice_rho`` regrades the components by
    doubled offsets (half-integer offsets stay exact); omitted, the
    presentation's stored offsets are kept.  Entry (j1, j2) of the
    result covers the generators whose upper strand lies on component
    j1 and lower strand on component j2.
    """
    if p.universe.t_collapsed:
        if p.universe.modulus:
            raise ModeError("split polynomials need vanishing rotation numbers")
    elif any(td != 0 for td in p.universe.t_degrees):
        raise ModeError("split polynomials need vanishing rotation numbers")
    q0 = p if twice_rho is None else with_rho(p, tuple(twice_rho))
    q = conjugate(q0, eps or {})
    uni = q.universe
    red = uni.reduce_degree
    k = q.components

    dims: dict[tuple[int, int], Counter[int]] = {}
    rows: dict[tuple[tuple[int, int], int], list[int]] = {}
    for i, nm in enumerate(uni.names):
        block = (q.u[i], q.l[i])
        d = red(uni.degrees[i])
        dims.setdefault(block, Counter())[d] += 1
        vec = 0
        for word, _t, c in q.diff[nm].word_length_part(1).iter_terms():
            if c % 2 == 0:
                continue
            x = word[0]
            if (q.u[x], q.l[x]) != block:
                raise ModeError("the linear differential leaves its block")
            vec ^= 1 << x
        if vec:
            rows.setdefault((block, d), []).append(vec)
    ranks = {key: _rank_gf2(r) for key, r in rows.items()}

    matrix = []
    for j1 in range(1, k + 1):
        line = []
        for j2 in range(1, k + 1):
            block = (j1, j2)
            coeffs = {}
            for d, dim in dims.get(block, Counter()).items():
                h = (dim - ranks.get((block, d), 0)
                     - ranks.get((block, red(d + 1)), 0))
                if h < 0:
                    raise AssertionError("negative homology rank")
                if h:
                    coeffs[d] = h
            line.append(LaurentPoly.from_dict(coeffs, uni.modulus))
        matrix.append(tuple(line))
    return tuple(matrix)


# -- grading alignment --------------------------------------------------------

def shift_matrix(matrix: Matrix, delta: Sequence[int]) -> Matrix:
    """Regrade a block matrix: entry (i, j) shifts by delta[i] - delta[j]."""
    k = len(matrix)
    return tuple(tuple(matrix[i][j].shift(delta[i] - delta[j])
                       for j in range(k)) for i in range(k))


def _matrix_key(matrix: Matrix):
    return tuple((pl.modulus, pl.coeffs) for row in matrix for pl in row)


def _shift_between(first: Matrix, second: Matrix) -> tuple[int, ...] | None:
    """The unique per-component shift mapping one matrix onto another."""
    k = len(first)
    constraints: list[tuple[int, int, int]] = []
    for i in range(k):
        for j in range(k):
            a, b = first[i][j], second[i][j]
            if a.modulus != b.modulus:
                raise ModeError(
                    "cannot align polynomials with different exponent moduli")
            if a.is_zero() and b.is_zero():
                continue
            if a.is_zero() != b.is_zero():
                return None
            s = b.coeffs[0][0] - a.coeffs[0][0]
            if a.shift(s) != b:
                return None
            constraints.append((i, j, s))

    delta: list[int | None] = [None] * k
    delta[k - 1] = 0
    while True:
        changed = False
        for i, j, s in constraints:
            di, dj = delta[i], delta[j]
            if di is None and dj is not None:
                delta[i] = dj + s
                changed = True
            elif dj is None and di is not None:
                delta[j] = di - s
                changed = True
            elif di is not None and dj is not None and di - dj != s:
                return None
        if all(d is not None for d in delta):
            break
        if not changed:
            delta[next(i for i, d in enumerate(delta) if d is None)] = 0
    result = tuple(delta)  # type: ignore[arg-type]
    return result if shift_matrix(first, result) == second else None


Family = (Matrix | Iterable[Matrix]
          | Callable[[tuple[int, ...]], "Matrix | Iterable[Matrix]"])


def _as_matrix_set(value: "Matrix | Iterable[Matrix]") -> frozenset[Matrix]:
    if isinstance(value, tuple) and value and isinstance(value[0], tuple) \
            and all(isinstance(pl, LaurentPoly) for pl in value[0]):
        return frozenset([value])
    return frozenset(value)


def match_gradings(fam_a: Family, fam_b: Family,
                   bound: int = 2) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Align two families of split matrices by per-component regrading.

    Each family is a matrix, a collection of matrices, or a callable
    sending doubled grading offsets to either of those.  The exponent of
    every entry is affine in the offsets, so matching reduces to an
    exact linear solve on the base matrices; callables are additionally
    cross-checked against that affine law on the grid of doubled offsets
    with absolute value at most ``2 * bound`` (half-integer offsets).

    Returns doubled offset tuples (for the first and second family) at
    which the families coincide as sets, or None when no regrading
    works.
    """
    def normalize(fam: Family) -> frozenset[Matrix]:
        if not callable(fam):
            return _as_matrix_set(fam)
        base = None
        for arity in range(1, 17):  # probe the component count
            try:
                base = _as_matrix_set(fam((0,) * arity))
            except (ValueError, IndexError, TypeError, ModeError):
                continue
            break
        if base is None:
            raise ModeError("could not determine a family's component count")
        k = len(next(iter(base)))
        grid = range(-2 * bound, 2 * bound + 1)
        for offsets in itertools.product(grid, repeat=k):
            sampled = _as_matrix_set(fam(tuple(offsets)))
            expected = frozenset(shift_matrix(mx, offsets) for mx in base)
            if sampled != expected:
                raise ModeError(
                    "family entries are not affine in the grading offsets")
        return base

    base_a = normalize(fam_a)
    base_b = normalize(fam_b)
    if not base_a or not base_b:
        return ((), ()) if base_a == base_b else None
    k = len(next(iter(base_a)))
    if k != len(next(iter(base_b))) or len(base_a) != len(base_b):
        return None

    anchor = min(base_a, key=_matrix_key)
    candidates = set()
    for target in base_b:
        delta = _shift_between(anchor, target)
        if delta is not None:
            candidates.add(delta)
    for delta in sorted(candidates):
        if frozenset(shift_matrix(mx, delta) for mx in base_a) == base_b:
            return delta, (0,) * k
    return None
