"""Event encodings of Legendrian front diagrams and their classical data.

A front is a left-to-right sequence of events acting on a stack of strands
numbered from 1 at the bottom:

* ``L h`` -- left cusp: two new strands appear at heights ``h`` and ``h+1``;
* ``R h`` -- right cusp: the strands at heights ``h`` and ``h+1`` merge;
* ``X h`` -- crossing: the strands at heights ``h`` and ``h+1`` swap.

The module validates encodings, decomposes a front into maximal smooth arcs
(broken at crossings and cusps), traces oriented components, and computes
rotation numbers, the Thurston-Bennequin number, and the labelled table of
crossings and right cusps used by the algebra layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

EventKind = str  # "L" | "R" | "X"

L2R = "lr"
R2L = "rl"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    height: int

    def __str__(self) -> str:
        return f"{self.kind} {self.height}"


@dataclass(frozen=True)
class FrontDiagram:
    events: tuple[Event, ...]

    def __len__(self) -> int:
        return len(self.events)

    def __str__(self) -> str:
        return format_front(self)


def front(spec: Iterable[tuple[str, int] | Event]) -> FrontDiagram:
    """Build a diagram from ``(kind, height)`` pairs."""
    evs = tuple(e if isinstance(e, Event) else Event(e[0], e[1]) for e in spec)
    return FrontDiagram(evs)


def parse_front(text: str) -> FrontDiagram:
    """Parse the plain-text event format (one event per line, # comments)."""
    events: list[Event] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("L", "R", "X"):
            raise ValueError(f"line {lineno}: expected 'L|R|X <height>', got {raw!r}")
        try:
            h = int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: height must be an integer") from None
        events.append(Event(parts[0], h))
    return FrontDiagram(tuple(events))


def format_front(d: FrontDiagram) -> str:
    return "\n".join(str(e) for e in d.events) + ("\n" if d.events else "")


def strand_counts(d: FrontDiagram) -> list[int]:
    """counts[i] = number of strands entering event i; a final entry of 0."""
    counts = [0]
    n = 0
    for e in d.events:
        if e.kind == "L":
            n += 2
        elif e.kind == "R":
            n -= 2
        counts.append(n)
    return counts


def validate(d: FrontDiagram) -> list[str]:
    """Return human-readable defects; an empty list means the front closes up."""
    problems: list[str] = []
    n = 0
    for i, e in enumerate(d.events):
        if e.kind == "L":
            if not 1 <= e.height <= n + 1:
                problems.append(f"event {i} ({e}): height out of range 1..{n + 1}")
            n += 2
        elif e.kind in ("R", "X"):
            if not 1 <= e.height <= n - 1:
                problems.append(f"event {i} ({e}): strand count {n} at height {e.height}"
                                " leaves no pair to act on")
            if e.kind == "R":
                n -= 2
                if n < 0:
                    problems.append(f"event {i} ({e}): strand count went negative")
                    n = 0
        else:  # pragma: no cover - parse prevents this
            problems.append(f"event {i}: unknown kind {e.kind!r}")
    if n != 0:
        problems.append(f"final strand count {n} nonzero")
    if d.events:
        kinds = {e.kind for e in d.events}
        if "L" not in kinds or "R" not in kinds:
            problems.append("a nonempty front needs at least one left and one right cusp")
    return problems


def check(d: FrontDiagram) -> FrontDiagram:
    problems = validate(d)
    if problems:
        raise ValueError("; ".join(problems))
    return d


# -- arc decomposition ------------------------------------------------------

_PARTNER = {
    ("L", "out_lo"): "out_up", ("L", "out_up"): "out_lo",
    ("R", "in_lo"): "in_up", ("R", "in_up"): "in_lo",
    ("X", "in_lo"): "out_up", ("X", "out_up"): "in_lo",
    ("X", "in_up"): "out_lo", ("X", "out_lo"): "in_up",
}


@dataclass(frozen=True)
class Arcs:
    """Maximal smooth segments between consecutive crossings/cusps."""

    count: int
    plugs: dict[tuple[int, str], int]        # (event index, role) -> arc id
    arc_start: tuple[tuple[int, str], ...]   # arc id -> (event, role)
    arc_end: tuple[tuple[int, str], ...]
    birth_height: tuple[int, ...]            # height at which the arc is born

    def at(self, event: int, role: str) -> int:
        return self.plugs[(event, role)]


def arcs_of(d: FrontDiagram) -> Arcs:
    check(d)
    plugs: dict[tuple[int, str], int] = {}
    start: list[tuple[int, str]] = []
    end: list[tuple[int, str] | None] = []
    birth: list[int] = []
    stack: list[int] = []

    def born(i: int, role: str, height: int) -> int:
        a = len(start)
        start.append((i, role))
        end.append(None)
        birth.append(height)
        plugs[(i, role)] = a
        return a

    for i, e in enumerate(d.events):
        h = e.height
        if e.kind == "L":
            lo = born(i, "out_lo", h)
            up = born(i, "out_up", h + 1)
            stack[h - 1:h - 1] = [lo, up]
        elif e.kind == "R":
            lo, up = stack[h - 1], stack[h]
            end[lo] = (i, "in_lo")
            end[up] = (i, "in_up")
            plugs[(i, "in_lo")] = lo
            plugs[(i, "in_up")] = up
            del stack[h - 1:h + 1]
        else:
            lo, up = stack[h - 1], stack[h]
            end[lo] = (i, "in_lo")
            end[up] = (i, "in_up")
            plugs[(i, "in_lo")] = lo
            plugs[(i, "in_up")] = up
            stack[h - 1] = born(i, "out_lo", h)
            stack[h] = born(i, "out_up", h + 1)
    assert not stack
    return Arcs(len(start), plugs, tuple(start), tuple(end),  # type: ignore[arg-type]
                tuple(birth))


# -- component tracing ------------------------------------------------------

@dataclass(frozen=True)
class ComponentMap:
    """Oriented component structure of a front.

    Components are numbered 1..count in order of their leftmost left cusp.
    ``cycles[j-1]`` lists the arcs of component j in traversal order starting
    just above that cusp (or in the reversed order when the orientation of
    the component was overridden).
    """

    count: int
    arc_component: tuple[int, ...]
    arc_direction: tuple[str, ...]           # traversal direction per arc
    cycles: tuple[tuple[int, ...], ...]
    rotation: tuple[int, ...]                # rotation number per component
    base_arc: tuple[int, ...]                # marked left-to-right arc per component

    def component_of_event(self, d: FrontDiagram, arcs: Arcs, i: int) -> int:
        e = d.events[i]
        role = "out_lo" if e.kind == "L" else "in_lo"
        return self.arc_component[arcs.at(i, role)]


def _step(d: FrontDiagram, arcs: Arcs, arc: int, direction: str):
    """Follow the strand through the event ahead; returns (arc, dir, event, role)."""
    ev, role = (arcs.arc_end[arc] if direction == L2R else arcs.arc_start[arc])
    kind = d.events[ev].kind
    partner = _PARTNER[(kind, role)]
    nxt = arcs.at(ev, partner)
    ndir = L2R if partner.startswith("out") else R2L
    return nxt, ndir, ev, role


def trace_components(d: FrontDiagram, arcs: Arcs | None = None,
                     orientation_overrides: Mapping[int, bool] | None = None) -> ComponentMap:
    arcs = arcs or arcs_of(d)
    overrides = dict(orientation_overrides or {})

    seen: set[int] = set()
    raw_cycles: list[list[int]] = []
    for a0 in range(arcs.count):
        if a0 in seen:
            continue
        cycle = []
        arc, direction = a0, L2R
        while True:
            cycle.append(arc)
            seen.add(arc)
            arc, direction, _ev, _role = _step(d, arcs, arc, direction)
            if arc == a0:
                break
        raw_cycles.append(cycle)

    # order components by leftmost left cusp
    def leftmost_cusp(cycle: list[int]) -> int:
        return min(arcs.arc_start[a][0] for a in cycle
                   if d.events[arcs.arc_start[a][0]].kind == "L")

    raw_cycles.sort(key=leftmost_cusp)
    count = len(raw_cycles)

    arc_component = [0] * arcs.count
    arc_direction = [""] * arcs.count
    cycles: list[tuple[int, ...]] = []
    rotation: list[int] = []
    base: list[int] = []
    for j, cycle in enumerate(raw_cycles, start=1):
        cusp_event = leftmost_cusp(cycle)
        start_arc = arcs.at(cusp_event, "out_up")
        ordered: list[tuple[int, str]] = []
        ups = downs = 0
        arc, direction = start_arc, L2R
        while True:
            ordered.append((arc, direction))
            arc, direction, ev, role = _step(d, arcs, arc, direction)
            if d.events[ev].kind in ("L", "R"):
                if role.endswith("lo"):
                    ups += 1
                else:
                    downs += 1
            if arc == start_arc and direction == L2R:
                break
        if overrides.get(j):
            ordered = [(a, (R2L if dr == L2R else L2R)) for a, dr in reversed(ordered)]
            ups, downs = downs, ups
        c = ups - downs
        if c % 2:
            raise AssertionError("cusp traversal count must be even")
        rotation.append(-c // 2)
        cycles.append(tuple(a for a, _dr in ordered))
        for a, dr in ordered:
            arc_component[a] = j
            arc_direction[a] = dr
        lr_arcs = [a for a, dr in ordered if dr == L2R]
        if not lr_arcs:
            raise AssertionError("every component has a left-to-right arc")
        base.append(min(lr_arcs, key=lambda a: (arcs.arc_start[a][0], arcs.birth_height[a])))

    return ComponentMap(count, tuple(arc_component), tuple(arc_direction),
                        tuple(cycles), tuple(rotation), tuple(base))


def rotation_number(d: FrontDiagram, j: int = 1,
                    orientation_overrides: Mapping[int, bool] | None = None) -> int:
    cm = trace_components(d, orientation_overrides=orientation_overrides)
    if not 1 <= j <= cm.count:
        raise ValueError(f"component {j} out of range 1..{cm.count}")
    return cm.rotation[j - 1]


def crossing_sign(d: FrontDiagram, arcs: Arcs, cm: ComponentMap, i: int) -> int:
    """+1 when the two strands of crossing i point the same way, else -1."""
    asc = arcs.at(i, "in_lo")
    desc = arcs.at(i, "in_up")
    return 1 if cm.arc_direction[asc] == cm.arc_direction[desc] else -1


def thurston_bennequin(d: FrontDiagram,
                       orientation_overrides: Mapping[int, bool] | None = None) -> int:
    arcs = arcs_of(d)
    cm = trace_components(d, arcs, orientation_overrides)
    tb = 0
    for i, e in enumerate(d.events):
        if e.kind == "R":
            tb -= 1
        elif e.kind == "X":
            tb += crossing_sign(d, arcs, cm, i)
    return tb


def classical_signature(d: FrontDiagram) -> tuple:
    """Orientation-independent classical data of a front.

    Rotation numbers flip sign and mixed crossing signs flip when a single
    component is reoriented, so the honest unoriented invariant is the orbit
    of (tb, sorted rotations) over all per-component orientation choices.
    """
    arcs = arcs_of(d)
    cm = trace_components(d, arcs)
    k = cm.count
    crossings = [
        (cm.arc_component[arcs.at(i, "in_lo")], cm.arc_component[arcs.at(i, "in_up")],
         crossing_sign(d, arcs, cm, i))
        for i, e in enumerate(d.events) if e.kind == "X"
    ]
    n_cusps = sum(1 for e in d.events if e.kind == "R")
    orbit = set()
    for mask in range(1 << k):
        o = [-1 if (mask >> j) & 1 else 1 for j in range(k)]
        tb = -n_cusps + sum(s * o[c1 - 1] * o[c2 - 1] for c1, c2, s in crossings)
        rr = tuple(sorted(o[j] * cm.rotation[j] for j in range(k)))
        orbit.add((tb, rr))
    return k, tuple(sorted(orbit))


def random_front(seed: int, max_events: int = 12) -> FrontDiagram:
    """Generate a small valid front, deterministically from ``seed``."""
    import random

    rng = random.Random(seed)
    evs: list[Event] = []
    count = 0
    while len(evs) < max_events:
        room = max_events - len(evs)
        if count == 0:
            if evs and rng.random() < 0.4:
                break
            if room < 2:
                break
            evs.append(Event("L", 1))
            count = 2
            continue
        kinds = ["R"]
        if room >= count // 2 + 2:
            kinds += ["L"] * 2
        if room >= count // 2 + 1:
            kinds += ["X"] * 3
        kind = rng.choice(kinds)
        if kind == "L":
            evs.append(Event("L", rng.randint(1, count + 1)))
            count += 2
        elif kind == "X":
            evs.append(Event("X", rng.randint(1, count - 1)))
        else:
            evs.append(Event("R", rng.randint(1, count - 1)))
            count -= 2
    while count:
        evs.append(Event("R", rng.randint(1, count - 1)))
        count -= 2
    if not evs:
        evs = [Event("L", 1), Event("R", 1)]
    return check(FrontDiagram(tuple(evs)))


# -- labelled vertices -------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    """A crossing or right cusp, named in left-to-right order."""

    name: str
    event: int
    kind: str                 # "crossing" | "cusp"
    upper: int                # component owning the strand of smaller slope
    lower: int                # component owning the strand of larger slope
    sign: int                 # contribution to the Thurston-Bennequin count
    upward: bool              # for cusps: traversed from lower to upper branch


def vertex_table(d: FrontDiagram, arcs: Arcs | None = None,
                 cm: ComponentMap | None = None) -> tuple[Vertex, ...]:
    arcs = arcs or arcs_of(d)
    cm = cm or trace_components(d, arcs)
    out: list[Vertex] = []
    n = 0
    for i, e in enumerate(d.events):
        if e.kind == "L":
            continue
        n += 1
        name = f"a{n}"
        if e.kind == "X":
            asc = arcs.at(i, "in_lo")    # strand of larger slope
            desc = arcs.at(i, "in_up")   # strand of smaller slope
            out.append(Vertex(name, i, "crossing",
                              cm.arc_component[desc], cm.arc_component[asc],
                              crossing_sign(d, arcs, cm, i), False))
        else:
            lo = arcs.at(i, "in_lo")
            comp = cm.arc_component[lo]
            upward = cm.arc_direction[lo] == L2R
            out.append(Vertex(name, i, "cusp", comp, comp, -1, upward))
    return tuple(out)
