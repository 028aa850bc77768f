"""Exact arithmetic in free noncommutative algebras with central unit variables.

An element is a finite sum of terms ``c * t1^e1 .. tk^ek * g_{i1} .. g_{im}``
where the ``g``'s are letters from a fixed generator alphabet (noncommuting)
and the ``t``'s are invertible central variables.  Scalars are integers or
GF(2) depending on the universe's characteristic.  Degrees of generators and
of the ``t`` variables are tracked, optionally modulo a fixed integer.

The module also provides one-variable Laurent polynomials used to report
graded dimension counts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

Word = tuple[int, ...]
TExp = tuple[int, ...]
Term = tuple[Word, TExp]


class ModeError(ValueError):
    """Raised when elements from different coefficient modes are combined."""


@dataclass(frozen=True)
class Universe:
    """Coefficient mode and generator alphabet shared by algebra elements.

    char:        0 for integer scalars, 2 for GF(2).
    t_vars:      number of central unit variables t1..tk (0 when collapsed).
    names:       generator names, index order fixed.
    degrees:     integer degree of each generator.
    t_degrees:   degree carried by each t variable.
    modulus:     degrees live in Z/modulus (0 means Z).
    t_collapsed: True when the t variables have been set to 1.
    """

    char: int
    t_vars: int
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    t_degrees: tuple[int, ...] = ()
    modulus: int = 0
    t_collapsed: bool = False

    def __post_init__(self) -> None:
        if self.char not in (0, 2):
            raise ValueError(f"unsupported characteristic {self.char}")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(self.degrees))
        t_deg = tuple(self.t_degrees) if self.t_degrees else (0,) * self.t_vars
        object.__setattr__(self, "t_degrees", t_deg)
        if len(self.degrees) != len(self.names):
            raise ValueError("one degree per generator required")
        if len(self.t_degrees) != self.t_vars:
            raise ValueError("one degree per t variable required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        if self.t_collapsed and self.t_vars:
            raise ValueError("collapsed mode carries no t variables")
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    # -- lookups ---------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def reduce_degree(self, d: int) -> int:
        return d % self.modulus if self.modulus else d

    def t_name(self, j: int) -> str:
        return "t" if self.t_vars == 1 else f"t{j + 1}"

    @property
    def zero_t(self) -> TExp:
        return (0,) * self.t_vars

    def __len__(self) -> int:
        return len(self.names)


def _same_universe(a: "AlgebraElement", b: "AlgebraElement") -> None:
    if a.universe != b.universe:
        raise ModeError("cannot combine elements from different universes")


class AlgebraElement:
    """Immutable sum of scalar-weighted (t-monomial, word) terms."""

    __slots__ = ("universe", "terms", "_hash")

    def __init__(self, universe: Universe, terms: Mapping[Term, int]):
        normalized: dict[Term, int] = {}
        for key, c in terms.items():
            c = c % 2 if universe.char == 2 else c
            if c:
                normalized[key] = normalized.get(key, 0) + c
                if not normalized[key]:
                    del normalized[key]
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "terms", normalized)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a) -> None:  # pragma: no cover - guard
        raise AttributeError("AlgebraElement is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, u: Universe) -> "AlgebraElement":
        return cls(u, {})

    @classmethod
    def monomial(cls, u: Universe, word: Iterable[int] = (), texp: TExp | None = None,
                 coeff: int = 1) -> "AlgebraElement":
        word = tuple(word)
        for i in word:
            if not 0 <= i < len(u.names):
                raise KeyError(f"generator index {i} out of range")
        t = u.zero_t if texp is None else tuple(texp)
        if len(t) != u.t_vars:
            raise ValueError("t exponent arity mismatch")
        return cls(u, {(word, t): coeff})

    @classmethod
    def one(cls, u: Universe) -> "AlgebraElement":
        return cls.monomial(u)

    @classmethod
    def generator(cls, u: Universe, i: int | str) -> "AlgebraElement":
        if isinstance(i, str):
            i = u.index(i)
        return cls.monomial(u, (i,))

    @classmethod
    def t_power(cls, u: Universe, exps: Iterable[int]) -> "AlgebraElement":
        return cls.monomial(u, (), tuple(exps))

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def iter_terms(self) -> Iterator[tuple[Word, TExp, int]]:
        for (word, texp), c in sorted(self.terms.items(),
                                      key=lambda kv: (len(kv[0][0]), kv[0][0], kv[0][1])):
            yield word, texp, c

    def words(self) -> set[Word]:
        return {w for (w, _t) in self.terms}

    def letters(self) -> set[int]:
        return {g for (w, _t) in self.terms for g in w}

    def coefficient(self, word: Iterable[int], texp: TExp | None = None) -> int:
        t = self.universe.zero_t if texp is None else tuple(texp)
        return self.terms.get((tuple(word), t), 0)

    def constant_part(self) -> "AlgebraElement":
        u = self.universe
        return AlgebraElement(u, {k: c for k, c in self.terms.items() if not k[0]})

    def word_length_part(self, length: int) -> "AlgebraElement":
        u = self.universe
        return AlgebraElement(u, {k: c for k, c in self.terms.items()
                                  if len(k[0]) == length})

    def truncate_length(self, max_len: int) -> "AlgebraElement":
        u = self.universe
        return AlgebraElement(u, {k: c for k, c in self.terms.items()
                                  if len(k[0]) <= max_len})

    def max_word(self) -> Word | None:
        """Largest word under length-then-lexicographic order, or None."""
        if not self.terms:
            return None
        return max((w for (w, _t) in self.terms), key=lambda w: (len(w), w))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_universe(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return AlgebraElement(self.universe, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.universe, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, int):
            return AlgebraElement(self.universe,
                                  {k: c * other for k, c in self.terms.items()})
        _same_universe(self, other)
        out: dict[Term, int] = {}
        for (w1, t1), c1 in self.terms.items():
            for (w2, t2), c2 in other.terms.items():
                key = (w1 + w2, tuple(a + b for a, b in zip(t1, t2)))
                out[key] = out.get(key, 0) + c1 * c2
        return AlgebraElement(self.universe, out)

    def __rmul__(self, other) -> "AlgebraElement":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = AlgebraElement.one(self.universe)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement)
                and self.universe == other.universe and self.terms == other.terms)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.universe, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"<{render_element(self)}>"

    # -- grading ---------------------------------------------------------

    def term_degree(self, word: Word, texp: TExp) -> int:
        u = self.universe
        d = sum(u.degrees[g] for g in word)
        d += sum(e * td for e, td in zip(texp, u.t_degrees))
        return u.reduce_degree(d)

    def degree(self) -> int | None:
        """Common degree of all terms; None for zero; error if mixed."""
        degs = {self.term_degree(w, t) for (w, t) in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.term_degree(w, t) for (w, t) in self.terms}) <= 1

    # -- transformations -------------------------------------------------

    def substitute(self, images: Mapping[int, "AlgebraElement"],
                   target: Universe | None = None) -> "AlgebraElement":
        """Apply the algebra map sending generator i to images[i].

        Every generator occurring in the element must be mapped.  The t
        monomials are carried over unchanged, so the target universe must
        have the same t arity and characteristic.
        """
        u = self.universe
        tgt = target if target is not None else (
            next(iter(images.values())).universe if images else u)
        if tgt.t_vars != u.t_vars or tgt.char != u.char:
            raise ModeError("substitution cannot change coefficient mode")
        out = AlgebraElement.zero(tgt)
        for (word, texp), c in self.terms.items():
            factor = AlgebraElement.monomial(tgt, (), texp, c)
            for g in word:
                if g not in images:
                    raise KeyError(f"no image for generator {u.names[g]!r}")
                factor = factor * images[g]
            out = out + factor
        return out

    def rename(self, target: Universe,
               index_map: Mapping[int, int] | None = None) -> "AlgebraElement":
        """Transport to a universe with the same mode, relabelling indices."""
        if target.t_vars != self.universe.t_vars or target.char != self.universe.char:
            raise ModeError("rename cannot change coefficient mode")
        out: dict[Term, int] = {}
        for (word, texp), c in self.terms.items():
            if index_map is None:
                new = tuple(target.index(self.universe.names[g]) for g in word)
            else:
                new = tuple(index_map[g] for g in word)
            key = (new, texp)
            out[key] = out.get(key, 0) + c
        return AlgebraElement(target, out)

    def permute_t(self, perm: tuple[int, ...], target: Universe) -> "AlgebraElement":
        """Reindex t variables: new exponent j = old exponent perm.index(j)."""
        out: dict[Term, int] = {}
        for (word, texp), c in self.terms.items():
            new_t = tuple(texp[perm.index(j)] for j in range(len(texp)))
            out[(word, new_t)] = out.get((word, new_t), 0) + c
        return AlgebraElement(target, out)

    def reverse(self) -> "AlgebraElement":
        return AlgebraElement(self.universe,
                              {(w[::-1], t): c for (w, t), c in self.terms.items()})

    def drop_t(self, target: Universe) -> "AlgebraElement":
        """Set every t variable to 1 and reduce into the target universe."""
        if target.t_vars != 0:
            raise ModeError("drop_t target must be t-free")
        out: dict[Term, int] = {}
        for (word, _texp), c in self.terms.items():
            key = (word, ())
            out[key] = out.get(key, 0) + c
        return AlgebraElement(target, out)


def leibniz_extend(u: Universe,
                   images: Mapping[int, AlgebraElement]) -> Callable[[AlgebraElement], AlgebraElement]:
    """Signed derivation: d(vw) = (dv) w + (-1)^{deg v} v (dw).

    ``images`` maps each generator index to its value under the derivation.
    Signs use the generator degrees of ``u``; they are immaterial in
    characteristic two.  The t variables are treated as constants (their
    degrees are even in every supported mode, so they carry no sign).
    """
    def derive(x: AlgebraElement) -> AlgebraElement:
        if x.universe != u:
            raise ModeError("derivation applied outside its universe")
        out = AlgebraElement.zero(u)
        for (word, texp), c in x.terms.items():
            sign = 1
            for s, g in enumerate(word):
                img = images.get(g)
                if img is None:
                    raise KeyError(f"no derivative for generator {u.names[g]!r}")
                piece = AlgebraElement.monomial(u, word[:s], texp, c * sign)
                piece = piece * img
                if word[s + 1:]:
                    piece = piece * AlgebraElement.monomial(u, word[s + 1:])
                out = out + piece
                if u.char != 2 and u.degrees[g] % 2:
                    sign = -sign
        return out

    return derive


# -- text form -------------------------------------------------------------

def render_element(x: AlgebraElement) -> str:
    u = x.universe
    if x.is_zero():
        return "0"
    pieces: list[str] = []
    for word, texp, c in x.iter_terms():
        body = ""
        for j, e in enumerate(texp):
            if e == 0:
                continue
            body += u.t_name(j) + (f"^{e}" if e != 1 else "")
        body += "".join(u.names[g] for g in word)
        mag = abs(c)
        if mag != 1 or not body:
            body = str(mag) + body
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


def parse_element(u: Universe, text: str) -> AlgebraElement:
    """Parse the output of :func:`render_element` (whitespace and * ignored)."""
    s = text.replace("*", "").replace(" ", "")
    if not s:
        raise ValueError("empty element text")
    if s == "0":
        return AlgebraElement.zero(u)
    tokens = sorted(u.names, key=len, reverse=True)
    t_names = sorted((u.t_name(j) for j in range(u.t_vars)), key=len, reverse=True)
    out = AlgebraElement.zero(u)
    pos = 0
    n = len(s)
    while pos < n:
        sign = 1
        while pos < n and s[pos] in "+-":
            if s[pos] == "-":
                sign = -sign
            pos += 1
        if pos >= n:
            raise ValueError("dangling sign in element text")
        coeff = 1
        m = re.match(r"\d+", s[pos:])
        if m:
            coeff = int(m.group(0))
            pos += m.end()
        word: list[int] = []
        texp = [0] * u.t_vars
        matched = True
        while pos < n and s[pos] not in "+-" and matched:
            matched = False
            for tn in t_names:
                if s.startswith(tn, pos) and not _is_generator_prefix(u, s, pos, tn):
                    pos += len(tn)
                    e = 1
                    m = re.match(r"\^(-?\d+)", s[pos:])
                    if m:
                        e = int(m.group(1))
                        pos += m.end()
                    j = 0 if u.t_vars == 1 else int(tn[1:]) - 1
                    texp[j] += e
                    matched = True
                    break
            if matched:
                continue
            for name in tokens:
                if s.startswith(name, pos):
                    word.append(u.index(name))
                    pos += len(name)
                    matched = True
                    break
        if not matched and pos < n and s[pos] not in "+-":
            raise ValueError(f"cannot parse element text at ...{s[pos:pos+12]!r}")
        out = out + AlgebraElement.monomial(u, tuple(word), tuple(texp), sign * coeff)
    return out


def _is_generator_prefix(u: Universe, s: str, pos: int, tn: str) -> bool:
    """True when a longer generator name shadows the t token at this spot."""
    for name in u.names:
        if len(name) > len(tn) and s.startswith(name, pos):
            return True
    return False


# -- Laurent polynomials ----------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """One-variable Laurent polynomial with exponents modulo an optional m."""

    modulus: int
    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient)

    @classmethod
    def from_dict(cls, d: Mapping[int, int], modulus: int = 0) -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e, c in d.items():
            e = e % modulus if modulus else e
            acc[e] = acc.get(e, 0) + c
        return cls(modulus, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def zero(cls, modulus: int = 0) -> "LaurentPoly":
        return cls(modulus, ())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.modulus != other.modulus:
            raise ModeError("cannot add polynomials with different exponent moduli")
        acc = dict(self.coeffs)
        for e, c in other.coeffs:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(acc, self.modulus)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly.from_dict({e + k: c for e, c in self.coeffs}, self.modulus)

    def coefficient(self, e: int) -> int:
        e = e % self.modulus if self.modulus else e
        return dict(self.coeffs).get(e, 0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs:
            if e == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else str(c))
                parts.append(f"{head}L" + (f"^{e}" if e != 1 else ""))
        return " + ".join(parts).replace("+ -", "- ")
