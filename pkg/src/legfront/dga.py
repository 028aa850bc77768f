"""The differential graded algebra of a Legendrian front.

Generators are the crossings and right cusps of a plat-form front, named
``a1, a2, ...`` left to right.  Coefficients live in a Laurent ring with one
invertible variable per component (``link`` mode) or a single variable for a
knot (``knot`` mode, the classical normalization).  The differential counts
immersed disks: each disk is found by sweeping leftward from its rightmost
vertex, carrying the interval of strands the disk occupies, and contributes
a monomial ``sign * t^(-n) * word`` where ``word`` lists the disk's convex
corners counterclockwise and ``n`` measures passes over per-component base
points.

Degrees come from counting cusps along paths from the base points; gradings
of mixed generators can be shifted by per-component offsets (``twice_rho``,
stored doubled so half-integer shifts stay exact).

The construction self-checks: the differential must drop degree by exactly
one and square to zero over the integers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .algebra import AlgebraElement, ModeError, Universe, leibniz_extend
from .front import (
    L2R,
    Arcs,
    ComponentMap,
    Event,
    FrontDiagram,
    arcs_of,
    check,
    trace_components,
    vertex_table,
)
from .moves import is_simple

# A convex corner contributes -sign(crossing) to a disk's sign when the disk
# lies below it.  With boundary words read counterclockwise, those are the
# corners on the disk's upper boundary: the alternative reading (lower
# boundary) fails d^2 = 0 over the integers on small random fronts.
_DOWNWARD_CORNERS = "upper"


@dataclass
class DGA:
    """A finitely generated semifree DGA with component bookkeeping."""

    universe: Universe
    diff: dict[str, AlgebraElement]
    components: int
    twice_rho: tuple[int, ...]
    u: tuple[int, ...]
    l: tuple[int, ...]

    def degree(self, name: str) -> int:
        return self.universe.degrees[self.universe.index(name)]

    def generator(self, name: str) -> AlgebraElement:
        return AlgebraElement.generator(self.universe, name)

    def d(self, x: AlgebraElement | str) -> AlgebraElement:
        if isinstance(x, str):
            x = self.generator(x)
        images = {i: self.diff[n] for i, n in enumerate(self.universe.names)}
        return leibniz_extend(self.universe, images)(x)

    @property
    def names(self) -> tuple[str, ...]:
        return self.universe.names

    @property
    def mode(self) -> str:
        if self.universe.t_collapsed:
            return "mod2"
        return "knot" if self.universe.t_vars == 1 and self.components == 1 else "link"

    def u_of(self, name: str) -> int:
        return self.u[self.universe.index(name)]

    def l_of(self, name: str) -> int:
        return self.l[self.universe.index(name)]


def validate_dga(p: DGA) -> None:
    """Assert the differential drops degree by one and squares to zero."""
    uni = p.universe
    for name in uni.names:
        target = uni.reduce_degree(p.degree(name) - 1)
        img = p.diff[name]
        for word, texp in img.terms:
            if img.term_degree(word, texp) != target:
                raise AssertionError(
                    f"d({name}) is not homogeneous of degree {target}")
        if not p.d(img).is_zero():
            raise AssertionError(f"d^2({name}) != 0")


# -- geometry shared by degrees and t-powers ---------------------------------


class _Geometry:
    """Per-component cycles rotated to the base arc, with cusp counts."""

    def __init__(self, d: FrontDiagram, arcs: Arcs, cm: ComponentMap):
        from .front import _step

        self.cm = cm
        self.position: dict[int, int] = {}
        self.c_before: dict[int, int] = {}
        self.cycle_len: list[int] = []
        self.total_c: list[int] = []
        for j in range(cm.count):
            cycle = list(cm.cycles[j])
            shift = cycle.index(cm.base_arc[j])
            cycle = cycle[shift:] + cycle[:shift]
            c = 0
            for pos, arc in enumerate(cycle):
                self.position[arc] = pos
                self.c_before[arc] = c
                _nxt, _nd, ev, role = _step(d, arcs, arc, cm.arc_direction[arc])
                if d.events[ev].kind in ("L", "R"):
                    c += 1 if role.endswith("lo") else -1
            self.cycle_len.append(len(cycle))
            self.total_c.append(c)

    def walk(self, start_arc: int, end_arc: int) -> tuple[int, int]:
        """Cusp count and base-point passes along start..end (forward)."""
        j = self.cm.arc_component[start_arc] - 1
        s, t = self.position[start_arc], self.position[end_arc]
        c = self.c_before[end_arc] - self.c_before[start_arc]
        if s > t:
            c += self.total_c[j]
        passes = 1 if (s > t or s == 0) else 0
        return c, passes


def _crossing_ends(arcs: Arcs, cm: ComponentMap, event: int) -> dict[str, int]:
    """Arrival/departure arcs of the two strands through a crossing."""
    in_lo, in_up = arcs.at(event, "in_lo"), arcs.at(event, "in_up")
    out_lo, out_up = arcs.at(event, "out_lo"), arcs.at(event, "out_up")
    asc_fwd = cm.arc_direction[in_lo] == L2R
    desc_fwd = cm.arc_direction[in_up] == L2R
    return {
        "asc_arrive": in_lo if asc_fwd else out_up,
        "asc_leave": out_up if asc_fwd else in_lo,
        "desc_arrive": in_up if desc_fwd else out_lo,
    }


# -- disk enumeration ---------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    upper_corners: tuple[int, ...]   # event indices, rightmost first
    lower_corners: tuple[int, ...]
    upper_arcs: tuple[int, ...]      # boundary arcs, rightmost first
    lower_arcs: tuple[int, ...]


def _disks(d: FrontDiagram, arcs: Arcs, root: int) -> list[Disk]:
    """Sweep leftward from the vertex at event ``root``.

    The state holds the strand interval [lo, hi] the disk occupies, the arcs
    currently forming its boundary (asserted against the front at every
    step), and the corners collected so far.
    """
    evs = d.events
    start = (root - 1, evs[root].height, evs[root].height + 1,
             arcs.at(root, "in_lo"), arcs.at(root, "in_up"),
             (), (), (arcs.at(root, "in_up"),), (arcs.at(root, "in_lo"),))
    out: list[Disk] = []
    stack = [start]
    while stack:
        pos, lo, hi, low, up, uc, lc, ua, la = stack.pop()
        assert pos >= 0, "disk sweep ran off the left edge"
        e = evs[pos]
        h = e.height
        npos = pos - 1
        if e.kind == "X":
            if h + 1 < lo or h > hi:
                stack.append((npos, lo, hi, low, up, uc, lc, ua, la))
            elif h == lo - 1:
                assert low == arcs.at(pos, "out_up")
                stack.append((npos, lo - 1, hi, arcs.at(pos, "in_lo"), up,
                              uc, lc, ua, la + (arcs.at(pos, "in_lo"),)))
                stack.append((npos, lo, hi, arcs.at(pos, "in_up"), up,
                              uc, lc + (pos,), ua, la + (arcs.at(pos, "in_up"),)))
            elif h == hi:
                assert up == arcs.at(pos, "out_lo")
                stack.append((npos, lo, hi + 1, low, arcs.at(pos, "in_up"),
                              uc, lc, ua + (arcs.at(pos, "in_up"),), la))
                stack.append((npos, lo, hi, low, arcs.at(pos, "in_lo"),
                              uc + (pos,), lc, ua + (arcs.at(pos, "in_lo"),), la))
            elif h == lo and h + 1 == hi:
                continue  # boundary strands cross: the disk pinches off
            elif h == lo:
                assert low == arcs.at(pos, "out_lo")
                stack.append((npos, lo + 1, hi, arcs.at(pos, "in_up"), up,
                              uc, lc, ua, la + (arcs.at(pos, "in_up"),)))
            elif h + 1 == hi:
                assert up == arcs.at(pos, "out_up")
                stack.append((npos, lo, hi - 1, low, arcs.at(pos, "in_lo"),
                              uc, lc, ua + (arcs.at(pos, "in_lo"),), la))
            else:
                stack.append((npos, lo, hi, low, up, uc, lc, ua, la))
        elif e.kind == "L":
            if (h, h + 1) == (lo, hi):
                assert low == arcs.at(pos, "out_lo") and up == arcs.at(pos, "out_up")
                out.append(Disk(uc, lc, ua, la))
            elif h + 1 < lo:
                stack.append((npos, lo - 2, hi - 2, low, up, uc, lc, ua, la))
            elif h > hi:
                stack.append((npos, lo, hi, low, up, uc, lc, ua, la))
            elif lo < h and h + 1 < hi:
                stack.append((npos, lo, hi - 2, low, up, uc, lc, ua, la))
            # any other contact with the boundary breaks monotonicity: drop
        else:  # right cusp swept through mid-disk: strand indices reindex
            if h <= lo:
                stack.append((npos, lo + 2, hi + 2, low, up, uc, lc, ua, la))
            elif h <= hi:
                stack.append((npos, lo, hi + 2, low, up, uc, lc, ua, la))
            else:
                stack.append((npos, lo, hi, low, up, uc, lc, ua, la))
    return out


# -- the DGA of a front -------------------------------------------------------


def front_dga(d: FrontDiagram, mode: str = "knot",
              twice_rho: tuple[int, ...] | None = None,
              checked: bool = True) -> DGA:
    """Build the DGA of a plat-form front.

    ``knot`` mode uses a single Laurent variable and capping-path
    normalization; ``link`` mode uses one variable per component and raw
    base-point counts.  The two agree for one component up to rescaling
    generators by powers of t.
    """
    check(d)
    if not is_simple(d):
        raise ValueError("front is not in plat form; apply make_simple first")
    arcs = arcs_of(d)
    cm = trace_components(d, arcs)
    vt = vertex_table(d, arcs, cm)
    k = cm.count
    if mode == "knot":
        if k != 1:
            raise ModeError("knot mode needs a one-component front")
        t_vars = 1
        t_degrees = (2 * cm.rotation[0],)
    elif mode == "link":
        t_vars = k
        t_degrees = tuple(2 * r for r in cm.rotation)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rho2 = tuple(twice_rho) if twice_rho is not None else (0,) * k
    if len(rho2) != k:
        raise ValueError("twice_rho needs one entry per component")

    geom = _Geometry(d, arcs, cm)
    by_event = {v.event: v for v in vt}

    degrees = []
    passes_of: dict[int, int] = {}  # event -> base passes of its capping path
    for v in vt:
        if v.kind == "cusp":
            passes_of[v.event] = 0 if v.upward else 1
            if mode == "knot":
                degrees.append(1 if v.upward else 1 - 2 * cm.rotation[0])
            else:
                degrees.append(1)
        else:
            ends = _crossing_ends(arcs, cm, v.event)
            if mode == "knot":
                c, passes = geom.walk(ends["asc_leave"], ends["desc_arrive"])
                degrees.append(c)
                passes_of[v.event] = passes
            else:
                degrees.append(geom.c_before[ends["desc_arrive"]]
                               - geom.c_before[ends["asc_arrive"]]
                               + rho2[v.upper - 1] - rho2[v.lower - 1])

    uni = Universe(char=0, t_vars=t_vars, names=tuple(v.name for v in vt),
                   degrees=tuple(degrees), t_degrees=t_degrees)
    base_arcs = cm.base_arc
    diff: dict[str, AlgebraElement] = {}
    for v in vt:
        terms: dict[tuple, int] = {}
        if v.kind == "cusp":
            if mode == "knot":
                texp = (-passes_of[v.event],)
            else:
                texp = (0,) * k
            terms[((), texp)] = 1
        for disk in _disks(d, arcs, v.event):
            word = tuple(uni.index(by_event[ev].name)
                         for ev in disk.upper_corners + disk.lower_corners[::-1])
            corners = (disk.upper_corners if _DOWNWARD_CORNERS == "upper"
                       else disk.lower_corners)
            sign = 1
            for ev in corners:
                sign *= -by_event[ev].sign
            n = [sum(1 for a in disk.lower_arcs if a == base_arcs[j])
                 - sum(1 for a in disk.upper_arcs if a == base_arcs[j])
                 for j in range(k)]
            if mode == "knot":
                n0 = (n[0] + passes_of[v.event]
                      - sum(passes_of[ev] for ev in
                            disk.upper_corners + disk.lower_corners
                            if by_event[ev].kind == "crossing"))
                texp = (-n0,)
            else:
                texp = tuple(-x for x in n)
            key = (word, texp)
            terms[key] = terms.get(key, 0) + sign
        diff[v.name] = AlgebraElement(uni, terms)

    p = DGA(uni, diff, k, rho2,
            tuple(v.upper for v in vt), tuple(v.lower for v in vt))
    if checked:
        validate_dga(p)
    return p


# -- derived views and operations ---------------------------------------------


def mod2_t1(p: DGA) -> DGA:
    """Collapse to Z/2 coefficients with all t variables set to 1.

    The integer grading survives modulo the gcd of the t degrees.
    """
    if p.universe.t_collapsed:
        return p
    modulus = p.universe.modulus
    for td in p.universe.t_degrees:
        modulus = math.gcd(modulus, td)
    uni = Universe(char=2, t_vars=0, names=p.universe.names,
                   degrees=tuple(x % modulus if modulus else x
                                 for x in p.universe.degrees),
                   t_degrees=(), modulus=modulus, t_collapsed=True)
    diff = {name: img.drop_t(uni) for name, img in p.diff.items()}
    return DGA(uni, diff, p.components, p.twice_rho, p.u, p.l)


def n_copy(d: FrontDiagram, n: int) -> FrontDiagram:
    """Replace a knot front by n vertically stacked parallel copies."""
    if n < 1:
        raise ValueError("need n >= 1")
    if trace_components(d).count != 1:
        raise ValueError("n_copy expects a one-component front")

    def ladder(base: int) -> list[Event]:
        arr = [(branch, i) for i in range(n) for branch in ("a", "b")]
        order = {"a": 0, "b": 1}
        moves = []
        while True:
            kk = next((kk for kk in range(len(arr) - 1)
                       if (order[arr[kk][0]], arr[kk][1])
                       > (order[arr[kk + 1][0]], arr[kk + 1][1])), None)
            if kk is None:
                return moves
            arr[kk], arr[kk + 1] = arr[kk + 1], arr[kk]
            moves.append(Event("X", base + kk + 1))

    out: list[Event] = []
    for e in d.events:
        base = n * (e.height - 1)
        if e.kind == "L":
            out += [Event("L", base + 2 * i + 1) for i in range(n)]
            out += ladder(base)
        elif e.kind == "R":
            out += ladder(base)[::-1]
            out += [Event("R", base + 1)] * n
        else:
            out += [Event("X", base + i + j - 1)
                    for j in range(1, n + 1) for i in range(n, 0, -1)]
    return check(FrontDiagram(tuple(out)))


def permute_components(p: DGA, perm: tuple[int, ...]) -> DGA:
    """Renumber components by ``perm`` (new label of old j is perm[j-1])."""
    if sorted(perm) != list(range(1, p.components + 1)):
        raise ValueError("perm must list 1..k")
    inv = [0] * p.components
    for old, new in enumerate(perm, start=1):
        inv[new - 1] = old
    uni = p.universe
    new_uni = replace(uni, t_degrees=tuple(uni.t_degrees[inv[j] - 1]
                                           for j in range(p.components)))
    pperm = tuple(x - 1 for x in perm)
    diff = {name: img.permute_t(pperm, new_uni) for name, img in p.diff.items()}
    rho = tuple(p.twice_rho[inv[j] - 1] for j in range(p.components))
    return DGA(new_uni, diff, p.components, rho,
               tuple(perm[x - 1] for x in p.u), tuple(perm[x - 1] for x in p.l))


def with_rho(p: DGA, twice_rho: tuple[int, ...]) -> DGA:
    """Regrade mixed generators with new per-component shifts."""
    if len(twice_rho) != p.components:
        raise ValueError("twice_rho needs one entry per component")
    old, new = p.twice_rho, tuple(twice_rho)
    degrees = tuple(deg - old[u - 1] + old[l - 1] + new[u - 1] - new[l - 1]
                    for deg, u, l in zip(p.universe.degrees, p.u, p.l))
    uni = replace(p.universe, degrees=degrees)
    diff = {name: img.rename(uni) for name, img in p.diff.items()}
    return DGA(uni, diff, p.components, new, p.u, p.l)


def rescale_generators(p: DGA, exponents: dict[str, tuple[int, ...] | int]) -> DGA:
    """Apply the automorphism a -> t^e(a) * a and return the new DGA."""
    uni = p.universe

    def as_tuple(e) -> tuple[int, ...]:
        return (e,) if isinstance(e, int) else tuple(e)

    exp = {name: as_tuple(exponents.get(name, (0,) * uni.t_vars))
           for name in uni.names}
    degrees = tuple(uni.degrees[i]
                    + sum(e * td for e, td in zip(exp[n], uni.t_degrees))
                    for i, n in enumerate(uni.names))
    new_uni = replace(uni, degrees=degrees)
    images = {i: AlgebraElement.monomial(new_uni, (i,),
                                         tuple(-e for e in exp[n]))
              for i, n in enumerate(uni.names)}
    diff = {}
    for name, img in p.diff.items():
        phi = img.substitute(images, target=new_uni)
        diff[name] = AlgebraElement.t_power(new_uni, exp[name]) * phi
    return DGA(new_uni, diff, p.components, p.twice_rho, p.u, p.l)


def check_composability(p: DGA) -> list[str]:
    """Verify every word in the differential is a composable strand chain."""
    problems = []
    uni = p.universe
    for name, img in p.diff.items():
        gu, gl = p.u_of(name), p.l_of(name)
        for word, _texp in img.terms:
            if not word:
                if gu != gl:
                    problems.append(f"d({name}): constant term on mixed generator")
                continue
            chain = [uni.names[i] for i in word]
            if p.u_of(chain[0]) != gu:
                problems.append(f"d({name}): word {chain} starts off-component")
            if p.l_of(chain[-1]) != gl:
                problems.append(f"d({name}): word {chain} ends off-component")
            for x, y in zip(chain, chain[1:]):
                if p.l_of(x) != p.u_of(y):
                    problems.append(f"d({name}): {x}*{y} is not composable")
    return problems


def split_differential(p: DGA) -> DGA:
    """Route constant terms through per-component idempotent markers.

    Appends degree-0 closed generators e1..ek and replaces each constant
    c in d(a) by c * e_{u(a)}, exposing the splitting of the differential
    over pairs of components.
    """
    k = p.components
    uni = p.universe
    markers = tuple(f"e{j}" for j in range(1, k + 1))
    if set(markers) & set(uni.names):
        raise ValueError("generator names collide with idempotent markers")
    new_uni = replace(uni, names=uni.names + markers,
                      degrees=uni.degrees + (0,) * k)
    diff: dict[str, AlgebraElement] = {}
    for i, name in enumerate(uni.names):
        img = p.diff[name].rename(new_uni)
        marker = AlgebraElement.generator(new_uni, f"e{p.u[i]}")
        diff[name] = img - img.constant_part() + img.constant_part() * marker
    for m in markers:
        diff[m] = AlgebraElement.zero(new_uni)
    return DGA(new_uni, diff, k, p.twice_rho,
               p.u + tuple(range(1, k + 1)), p.l + tuple(range(1, k + 1)))


# -- serialization ------------------------------------------------------------


def to_json(p: DGA) -> dict:
    uni = p.universe
    return {
        "format": 1,
        "components": p.components,
        "modulus": uni.modulus,
        "mode": {"char": uni.char, "t_vars": uni.t_vars,
                 "t_collapsed": uni.t_collapsed},
        "rho": list(p.twice_rho),
        "t_degrees": list(uni.t_degrees),
        "generators": [
            {"name": n, "degree": uni.degrees[i], "u": p.u[i], "l": p.l[i]}
            for i, n in enumerate(uni.names)
        ],
        "differential": {
            name: [
                {"coeff": c, "t": list(texp), "word": [uni.names[i] for i in word]}
                for word, texp, c in img.iter_terms()
            ]
            for name, img in p.diff.items()
        },
    }


def from_json(data: dict) -> DGA:
    if data.get("format") != 1:
        raise ValueError("unsupported format")
    gens = data["generators"]
    uni = Universe(char=data["mode"]["char"], t_vars=data["mode"]["t_vars"],
                   names=tuple(g["name"] for g in gens),
                   degrees=tuple(g["degree"] for g in gens),
                   t_degrees=tuple(data["t_degrees"]),
                   modulus=data["modulus"],
                   t_collapsed=data["mode"]["t_collapsed"])
    diff = {}
    for name in uni.names:
        terms = {}
        for t in data["differential"].get(name, []):
            word = tuple(uni.index(w) for w in t["word"])
            key = (word, tuple(t["t"]))
            terms[key] = terms.get(key, 0) + t["coeff"]
        diff[name] = AlgebraElement(uni, terms)
    return DGA(uni, diff, data["components"], tuple(data["rho"]),
               tuple(g["u"] for g in gens), tuple(g["l"] for g in gens))


def dumps(p: DGA) -> str:
    return json.dumps(to_json(p), indent=1, sort_keys=True)


def loads(text: str) -> DGA:
    return from_json(json.loads(text))
