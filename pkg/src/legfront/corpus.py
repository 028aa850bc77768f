"""A small bundled collection of fronts and differential algebras.

The front-backed entries rebuild their algebra from the event list on
every request, so callers can mutate the result freely.  The remaining
entries carry explicitly tabulated differentials over GF(2) with t
collapsed; they are validated (degree drop and squared boundary) when
constructed.  Annotations record classical data used by tests and the
command line without recomputing it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, Universe
from .dga import DGA, front_dga, validate_dga
from .front import FrontDiagram, front, trace_components
from .moves import make_simple

__all__ = ["CorpusEntry", "annotations", "dga", "entry", "front_of", "names"]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str                      # "front" | "dga"
    events: tuple[tuple[str, int], ...] | None
    components: int
    annotations: dict


_FRONTS: dict[str, tuple[tuple[str, int], ...]] = {
    # one left cusp, one right cusp: the simplest closed front.
    "unknot": (("L", 1), ("R", 1)),
    # two cusp pairs with three crossings between the inner strands.
    "trefoil": (("L", 1), ("L", 1), ("X", 2), ("X", 2), ("X", 2),
                ("R", 1), ("R", 1)),
    # a two-cusp-pair front whose rotation number is odd; it has no
    # augmentations at all.
    "zigzag": (("L", 1), ("L", 1), ("R", 2), ("R", 1)),
    # two nested circles crossed twice: a two-component split-free link.
    "double": (("L", 1), ("L", 3), ("X", 2), ("X", 2), ("R", 1), ("R", 1)),
    # three nested circles, pairwise crossed: the 3-copy of the unknot.
    "triple": (("L", 1), ("L", 3), ("L", 5), ("X", 2), ("X", 4), ("X", 3),
               ("X", 3), ("X", 4), ("X", 2), ("R", 1), ("R", 1), ("R", 1)),
}

_FRONT_NOTES: dict[str, dict] = {
    "unknot": {"tb": -1, "rot": 0},
    "trefoil": {"tb": 1, "rot": 0},
    "zigzag": {"tb": -2, "rot": -1},
    "double": {"tb": -4},
    "triple": {"tb": -9},
}


def _mod2_universe(n: int, degrees: tuple[int, ...]) -> Universe:
    return Universe(char=2, t_vars=0,
                    names=tuple(f"a{i}" for i in range(1, n + 1)),
                    degrees=degrees, modulus=0, t_collapsed=True)


def _element(u: Universe, words: list[list[int]]) -> AlgebraElement:
    """Sum of words given by 1-based generator numbers; [] is the unit."""
    terms: dict = {}
    for word in words:
        key = (tuple(i - 1 for i in word), ())
        terms[key] = terms.get(key, 0) + 1
    return AlgebraElement(u, {k: v % 2 for k, v in terms.items()})


def _bundled_dga(degrees: tuple[int, ...],
                 table: dict[int, list[list[int]]]) -> DGA:
    n = len(degrees)
    u = _mod2_universe(n, degrees)
    diff = {}
    for i in range(1, n + 1):
        diff[f"a{i}"] = _element(u, table.get(i, []))
    out = DGA(u, diff, components=1, twice_rho=(0,),
              u=(1,) * n, l=(1,) * n)
    validate_dga(out)
    return out


# A nine-crossing front whose algebra has eleven generators.  The words
# use 1-based generator numbers; [] denotes the unit.
_K62_DEGREES = (1, 1, 0, 0, -1, -1, 1, -1, 1, 1, -1)
_K62_TABLE: dict[int, list[list[int]]] = {
    1: [[], [10, 5, 3]],
    2: [[], [3], [3, 6, 10], [3, 11, 7]],
    4: [[11], [5], [6, 10, 5], [11, 7, 5]],
    6: [[11, 8]],
    7: [[8, 10]],
    9: [[], [10, 11]],
}

# Two thirteen-generator algebras of fronts with the same classical data
# and the same linearized polynomials; only the multiplicative structure
# of their boundary quotients tells them apart.
_K74A_DEGREES = (1, 1, 0, 0, -1, -1, -2, 2, 0, 1, 1, 2, -2)
_K74A_TABLE: dict[int, list[list[int]]] = {
    1: [[], [8, 13, 3]],
    2: [[], [3, 13, 8]],
    4: [[5, 8, 13], [13, 8, 6]],
    5: [[13], [13, 8, 7]],
    6: [[13], [7, 8, 13]],
    9: [[13, 11], [10, 13]],
    10: [[], [13, 12]],
    11: [[], [12, 13]],
}

_K74B_DEGREES = (1, 1, 0, 0, -1, -1, -2, 2, -2, -1, 1, 2, -2)
_K74B_TABLE: dict[int, list[list[int]]] = {
    1: [[], [3], [8, 9, 3], [8, 13, 3], [12, 13, 3],
        [8, 9, 12, 13, 3], [8, 10, 11, 13, 3]],
    2: [[], [3, 13, 8]],
    4: [[13, 8, 6], [11, 13], [5], [5, 8, 9], [5, 8, 13], [5, 12, 13],
        [5, 8, 9, 12, 13], [5, 8, 10, 11, 13]],
    5: [[13], [13, 8, 7]],
    6: [[7], [7, 12, 13], [9], [13], [9, 12, 13], [10, 11, 13],
        [7, 8, 9], [7, 8, 13], [7, 8, 9, 12, 13], [7, 8, 10, 11, 13]],
    9: [[10, 13]],
    11: [[], [13, 12]],
}

_BUNDLED: dict[str, tuple[tuple[int, ...], dict[int, list[list[int]]], dict]] = {
    "k62": (_K62_DEGREES, _K62_TABLE, {"tb": -7, "rot": 0}),
    "k74a": (_K74A_DEGREES, _K74A_TABLE, {"tb": 1, "rot": 0}),
    "k74b": (_K74B_DEGREES, _K74B_TABLE, {"tb": 1, "rot": 0}),
}


def names() -> tuple[str, ...]:
    return tuple(_FRONTS) + tuple(_BUNDLED) + ("k62_mirror",)


def entry(name: str) -> CorpusEntry:
    if name in _FRONTS:
        events = _FRONTS[name]
        comps = trace_components(front(events)).count
        return CorpusEntry(name, "front", events, comps,
                           dict(_FRONT_NOTES[name]))
    if name in _BUNDLED or name == "k62_mirror":
        key = "k62" if name == "k62_mirror" else name
        notes = dict(_BUNDLED[key][2])
        if name == "k62_mirror":
            notes["mirror_of"] = "k62"
        return CorpusEntry(name, "dga", None, 1, notes)
    raise ValueError(f"unknown corpus entry {name!r}")


def front_of(name: str) -> FrontDiagram:
    if name not in _FRONTS:
        raise ValueError(f"corpus entry {name!r} has no front")
    return front(_FRONTS[name])


def dga(name: str) -> DGA:
    """A fresh algebra for the entry; mutating it cannot affect later calls."""
    if name in _FRONTS:
        d = make_simple(front_of(name))
        comps = trace_components(d).count
        return front_dga(d, mode="knot" if comps == 1 else "link")
    if name in _BUNDLED:
        degrees, table, _ = _BUNDLED[name]
        return _bundled_dga(degrees, table)
    if name == "k62_mirror":
        base = dga("k62")
        flipped = {g: img.reverse() for g, img in base.diff.items()}
        out = DGA(base.universe, flipped, base.components, base.twice_rho,
                  base.u, base.l)
        validate_dga(out)
        return out
    raise ValueError(f"unknown corpus entry {name!r}")


def annotations(name: str) -> dict:
    return entry(name).annotations
