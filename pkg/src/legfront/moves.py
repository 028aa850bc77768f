"""Local isotopy moves on front diagrams and plat normalization.

Moves come in six classes:

* ``commute``   -- two adjacent events at non-interacting heights trade places
  (heights may shift by 2 to account for reindexing across cusps);
* ``ii_left``   -- a crossing slides through the adjacent left cusp;
* ``ii_right``  -- a crossing slides through the adjacent right cusp;
* ``iii``       -- a triple-point move on three alternating crossings;
* ``i_insert``  -- a strand grows a kink (two cusps and one crossing);
* ``i_delete``  -- such a kink is removed.

Commutations are discovered, not hand-listed: a candidate swap is accepted
when pushing labelled tokens through both windows produces the same output
strands, the same merged pairs, and the same crossed pairs.  Every applied
move re-validates the diagram and asserts that the component count and the
orientation-independent classical invariants survive.

``make_simple`` rewrites any front into an equivalent one whose right cusps
form a terminal, nested block (all cusp heights odd), the shape the disk
enumeration downstream requires.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .front import Event, FrontDiagram, check, classical_signature

Token = tuple
SimResult = tuple[tuple, frozenset, "Counter[frozenset]"]


def simulate_window(events: tuple[Event, ...], n_in: int,
                    tags: tuple[int, ...] | None = None) -> SimResult | None:
    """Push labelled tokens through a window of events.

    Ambient strands are labelled ("amb", k); a left cusp tagged ``t`` births
    ("new", t, 0) and ("new", t, 1).  Returns the outgoing token order, the
    set of merged pairs, and the multiset of crossed pairs, or None when some
    event height is out of range.
    """
    tags = tags or tuple(range(len(events)))
    tokens: list[Token] = [("amb", k) for k in range(n_in)]
    joined: set[frozenset] = set()
    crossed: Counter = Counter()
    for e, tag in zip(events, tags):
        h = e.height
        if e.kind == "L":
            if not 1 <= h <= len(tokens) + 1:
                return None
            tokens[h - 1:h - 1] = [("new", tag, 0), ("new", tag, 1)]
        elif e.kind == "R":
            if not 1 <= h <= len(tokens) - 1:
                return None
            joined.add(frozenset(tokens[h - 1:h + 1]))
            del tokens[h - 1:h + 1]
        else:
            if not 1 <= h <= len(tokens) - 1:
                return None
            crossed[frozenset(tokens[h - 1:h + 1])] += 1
            tokens[h - 1], tokens[h] = tokens[h], tokens[h - 1]
    return tuple(tokens), frozenset(joined), crossed


@dataclass(frozen=True)
class Move:
    kind: str
    position: int
    before: tuple[Event, ...]
    after: tuple[Event, ...]

    def __str__(self) -> str:
        b = ", ".join(map(str, self.before)) or "-"
        a = ", ".join(map(str, self.after)) or "-"
        return f"{self.kind}@{self.position}: [{b}] -> [{a}]"


def _counts_before(d: FrontDiagram) -> list[int]:
    counts = [0]
    for e in d.events:
        counts.append(counts[-1] + (2 if e.kind == "L" else -2 if e.kind == "R" else 0))
    return counts


def _commute_afters(e1: Event, e2: Event, n_in: int) -> list[tuple[Event, Event]]:
    base = simulate_window((e1, e2), n_in, tags=(0, 1))
    if base is None:
        return []
    out = []
    for h2 in (e2.height - 2, e2.height, e2.height + 2):
        for h1 in (e1.height - 2, e1.height, e1.height + 2):
            if h1 < 1 or h2 < 1:
                continue
            cand = (Event(e2.kind, h2), Event(e1.kind, h1))
            if cand == (e1, e2):
                continue
            if simulate_window(cand, n_in, tags=(1, 0)) == base:
                out.append(cand)
    return out


def applicable_moves(d: FrontDiagram, kinds: set[str] | None = None) -> list[Move]:
    counts = _counts_before(d)
    evs = d.events
    moves: list[Move] = []

    def want(k: str) -> bool:
        return kinds is None or k in kinds

    if want("commute"):
        for i in range(len(evs) - 1):
            for after in _commute_afters(evs[i], evs[i + 1], counts[i]):
                moves.append(Move("commute", i, evs[i:i + 2], after))

    # tangency moves: a strand slides past a cusp point, gaining or losing a
    # crossing with each cusp branch
    if want("ii_left"):
        for i, e in enumerate(evs):
            if e.kind != "L":
                continue
            a = e.height
            if a <= counts[i]:  # a strand sits just under the new pair
                moves.append(Move("ii_left", i, evs[i:i + 1],
                                  (Event("L", a + 1), Event("X", a), Event("X", a + 1))))
            if a >= 2:
                moves.append(Move("ii_left", i, evs[i:i + 1],
                                  (Event("L", a - 1), Event("X", a), Event("X", a - 1))))
        for i in range(len(evs) - 2):
            l, x1, x2 = evs[i:i + 3]
            if (l.kind, x1.kind, x2.kind) != ("L", "X", "X"):
                continue
            p = l.height
            if (x1.height, x2.height) == (p - 1, p):
                moves.append(Move("ii_left", i, evs[i:i + 3], (Event("L", p - 1),)))
            elif (x1.height, x2.height) == (p + 1, p):
                moves.append(Move("ii_left", i, evs[i:i + 3], (Event("L", p + 1),)))
    if want("ii_right"):
        for i, e in enumerate(evs):
            if e.kind != "R":
                continue
            a = e.height
            if a >= 2:
                moves.append(Move("ii_right", i, evs[i:i + 1],
                                  (Event("X", a - 1), Event("X", a), Event("R", a - 1))))
            if a + 2 <= counts[i]:
                moves.append(Move("ii_right", i, evs[i:i + 1],
                                  (Event("X", a + 1), Event("X", a), Event("R", a + 1))))
        for i in range(len(evs) - 2):
            x1, x2, r = evs[i:i + 3]
            if (x1.kind, x2.kind, r.kind) != ("X", "X", "R"):
                continue
            s = r.height
            if (x1.height, x2.height) == (s, s + 1):
                moves.append(Move("ii_right", i, evs[i:i + 3], (Event("R", s + 1),)))
            elif (x1.height, x2.height) == (s, s - 1):
                moves.append(Move("ii_right", i, evs[i:i + 3], (Event("R", s - 1),)))

    if want("iii"):
        for i in range(len(evs) - 2):
            window = evs[i:i + 3]
            if any(e.kind != "X" for e in window):
                continue
            h0, h1, h2 = (e.height for e in window)
            if h0 == h2 and h1 == h0 + 1:
                moves.append(Move("iii", i, window,
                                  (Event("X", h1), Event("X", h0), Event("X", h1))))
            elif h0 == h2 and h1 == h0 - 1:
                moves.append(Move("iii", i, window,
                                  (Event("X", h1), Event("X", h0), Event("X", h1))))

    if want("i_delete"):
        for i in range(len(evs) - 2):
            l, x, r = evs[i:i + 3]
            if (l.kind, x.kind, r.kind) != ("L", "X", "R"):
                continue
            h = x.height
            if (l.height, r.height) == (h + 1, h + 1) or (l.height, r.height) == (h - 1, h - 1):
                moves.append(Move("i_delete", i, evs[i:i + 3], ()))

    if want("i_insert"):
        for p in range(len(evs) + 1):
            for h in range(1, counts[p] + 1):
                down = (Event("L", h + 1), Event("X", h), Event("R", h + 1))
                up = (Event("L", h), Event("X", h + 1), Event("R", h))
                moves.append(Move("i_insert", p, (), down))
                moves.append(Move("i_insert", p, (), up))
    return moves


def apply_move(d: FrontDiagram, move: Move) -> FrontDiagram:
    evs = d.events
    window = evs[move.position:move.position + len(move.before)]
    if window != move.before:
        raise ValueError(f"move does not match diagram at position {move.position}")
    new = FrontDiagram(evs[:move.position] + move.after
                       + evs[move.position + len(move.before):])
    check(new)
    assert classical_signature(new) == classical_signature(d), move
    return new


_CLASS_WEIGHTS = {"commute": 3, "ii_left": 2, "ii_right": 2, "iii": 2,
                  "i_insert": 1, "i_delete": 2}


def random_isotopy(d: FrontDiagram, seed: int, steps: int = 25) -> tuple[FrontDiagram, list[Move]]:
    """Apply ``steps`` random legal moves; deterministic in ``seed``."""
    rng = random.Random(seed)
    base_size = max(len(d), 2)
    applied: list[Move] = []
    for _ in range(steps):
        moves = applicable_moves(d)
        if len(d) > 3 * base_size:
            shrinking = [m for m in moves if len(m.after) <= len(m.before)]
            moves = shrinking or moves
        if not moves:
            break
        by_class: dict[str, list[Move]] = {}
        for m in moves:
            by_class.setdefault(m.kind, []).append(m)
        classes = sorted(by_class)
        picked = rng.choices(classes, [_CLASS_WEIGHTS.get(k, 1) for k in classes])[0]
        move = rng.choice(by_class[picked])
        d = apply_move(d, move)
        applied.append(move)
    return d, applied


# -- plat normalization -------------------------------------------------------


def is_simple(d: FrontDiagram) -> bool:
    """True when right cusps form a terminal block with odd heights only."""
    seen_r = False
    for e in d.events:
        if e.kind == "R":
            seen_r = True
            if e.height % 2 == 0:
                return False
        elif seen_r:
            return False
    return True


def _rewrite(evs: tuple[Event, ...], i: int, width: int,
             replacement: tuple[Event, ...], counts: list[int],
             tags_after: tuple[int, ...]) -> tuple[Event, ...]:
    """Splice a rewrite rule in, asserting strand bookkeeping is preserved."""
    old = simulate_window(evs[i:i + width], counts[i], tags=tuple(range(width)))
    new = simulate_window(replacement, counts[i], tags=tags_after)
    assert old is not None and new is not None, (evs[i:i + width], replacement)
    assert new[0] == old[0] and new[1] == old[1], (evs[i:i + width], replacement)
    assert old[2] <= new[2], (evs[i:i + width], replacement)
    return evs[:i] + replacement + evs[i + width:]


def make_simple(d: FrontDiagram, fuel: int = 100_000) -> FrontDiagram:
    """Rewrite a front into an equivalent plat: terminal nested right cusps.

    Alternates two phases: push every right cusp to the end of the event
    list (commuting or sliding it through whatever follows), then repair the
    terminal block so that each cusp closes an adjacent strand pair (odd
    heights).  Each rewrite is a composite of legal moves and is re-checked
    by token simulation; classical invariants are asserted at the end.
    """
    check(d)
    original = d
    evs = d.events
    while fuel > 0:
        fuel -= 1
        counts = _counts_before(FrontDiagram(evs))

        # push phase: rightmost right cusp followed by anything else
        idx = next((k for k in range(len(evs) - 2, -1, -1)
                    if evs[k].kind == "R" and evs[k + 1].kind != "R"), None)
        if idx is not None:
            i, e2 = evs[idx].height, evs[idx + 1]
            j = e2.height
            if e2.kind == "X":
                if j <= i - 2:
                    rep: tuple[Event, ...] = (Event("X", j), Event("R", i))
                elif j >= i:
                    rep = (Event("X", j + 2), Event("R", i))
                else:  # the crossing hangs on the cusp's surviving strand
                    rep = (Event("X", i - 1), Event("X", i), Event("X", i + 1),
                           Event("R", i - 1))
            else:
                rep = ((Event("L", j), Event("R", i + 2)) if j <= i
                       else (Event("L", j + 2), Event("R", i)))
            tags = (1, 0) if len(rep) == 2 else (1, 2, 3, 0)
            evs = _rewrite(evs, idx, 2, rep, counts, tags)
            continue

        # unnest phase: make every terminal-block cusp height odd; working on
        # the rightmost even cusp keeps everything to its right odd, so the
        # commutes below push it monotonically toward its partner
        block = len(evs)
        while block > 0 and evs[block - 1].kind == "R":
            block -= 1
        k = next((k for k in range(len(evs) - 1, block - 1, -1)
                  if evs[k].height % 2 == 0), None)
        if k is None:
            break
        h = evs[k].height
        if evs[k + 1].height == h - 1:
            rep = (Event("X", h + 1), Event("X", h), Event("R", h + 1), Event("R", h - 1))
            evs = _rewrite(evs, k, 2, rep, counts, (2, 3, 0, 1))
        else:
            j = evs[k + 1].height
            rep = ((Event("R", j), Event("R", h - 2)) if j <= h - 2
                   else (Event("R", j + 2), Event("R", h)))
            evs = _rewrite(evs, k, 2, rep, counts, (1, 0))
    else:
        raise RuntimeError("plat normalization exceeded its rewrite budget")

    out = check(FrontDiagram(evs))
    assert is_simple(out)
    if original.events:
        assert classical_signature(out) == classical_signature(original)
    return out
