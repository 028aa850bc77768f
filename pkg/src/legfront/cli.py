"""Command-line front end for the front-diagram toolkit.

Inputs name either a bundled entry (``corpus:trefoil``), a file (front
text or DGA JSON, decided by content), or an inline front such as
``"L1 L1 R2 R1"``.  Every command accepts ``--json`` and prints a
versioned document (``format: 1``) on standard output; diagnostics go to
standard error.  Exit codes: 0 success, 2 invalid input, 3 a bound or
cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import corpus
from .algebra import ModeError
from .charalg import (
    characteristic_presentation,
    compare_knots,
    complete_rewriting,
    probe_quotient,
    tietze_simplify,
)
from .dga import (
    front_dga,
    mod2_t1,
    n_copy,
    to_json as dga_json,
    validate_dga,
    with_rho,
)
from .front import (
    FrontDiagram,
    classical_signature,
    format_front,
    front,
    parse_front,
    random_front,
    rotation_number,
    thurston_bennequin,
    trace_components,
    validate,
)
from .invariants import (
    find_augmentations,
    poincare_polynomial,
    poincare_set,
    split_polynomials,
)
from .moves import make_simple, random_isotopy

_INLINE_EVENT = re.compile(r"^([LRXlrx])\s*(\d+)$")


def _parse_inline(text: str) -> FrontDiagram:
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    events: list[tuple[str, int]] = []
    i = 0
    while i < len(tokens):
        m = _INLINE_EVENT.match(tokens[i])
        if m:
            events.append((m.group(1).upper(), int(m.group(2))))
            i += 1
        elif tokens[i].upper() in "LRX" and i + 1 < len(tokens) \
                and tokens[i + 1].isdigit():
            events.append((tokens[i].upper(), int(tokens[i + 1])))
            i += 2
        else:
            raise ValueError(f"cannot read event {tokens[i]!r}; expected "
                             "something like L1, X2 or R1")
    if not events:
        raise ValueError("empty front description")
    return front(events)


def _missing(source: str) -> None:
    if os.sep in source or source.endswith((".front", ".json")):
        raise FileNotFoundError(f"no such file: {source}")


def _load_front(source: str) -> FrontDiagram:
    if source.startswith("corpus:"):
        return corpus.front_of(source[len("corpus:"):])
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_front(fh.read())
    _missing(source)
    return _parse_inline(source)


def _front_to_dga(d: FrontDiagram):
    d = make_simple(d)
    mode = "knot" if trace_components(d).count == 1 else "link"
    return front_dga(d, mode=mode)


def _load_dga(source: str, rho: tuple[int, ...] | None = None):
    if source.startswith("corpus:"):
        p = corpus.dga(source[len("corpus:"):])
    elif os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            from .dga import loads
            p = loads(text)
        else:
            p = _front_to_dga(parse_front(text))
    else:
        _missing(source)
        p = _front_to_dga(_parse_inline(source))
    return p if rho is None else with_rho(p, rho)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        payload = {"format": 1, "command": args.command, **payload}
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def _element_text(x) -> str:
    s = str(x)
    return s[1:-1] if s.startswith("<") and s.endswith(">") else s


def _rho_option(value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    parts = [p for p in re.split(r"[,\s]+", value.strip()) if p]
    return tuple(int(p) for p in parts)


# -- commands -------------------------------------------------------------------


def _cmd_validate(args) -> int:
    try:
        d = _load_front(args.source)
    except ValueError as bad:
        print(f"invalid front: {bad}", file=sys.stderr)
        _emit(args, {"ok": False, "diagnostics": [str(bad)]}, "")
        return 2
    problems = validate(d)
    _emit(args, {"ok": not problems, "events": len(d.events),
                 "diagnostics": problems},
          "ok" if not problems else "")
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 2
    return 0


def _cmd_invariants(args) -> int:
    d = _load_front(args.source)
    count = trace_components(d).count
    if count == 1:
        tb, r = thurston_bennequin(d), rotation_number(d)
        _emit(args, {"components": 1, "tb": tb, "r": r},
              f"components 1\ntb {tb}\nr {r}")
        return 0
    total, classes = classical_signature(d)
    lines = [f"components {total}"]
    data = []
    for tb, rots in classes:
        lines.append(f"class tb {tb} r {' '.join(map(str, rots))}")
        data.append({"tb": tb, "r": list(rots)})
    _emit(args, {"components": total, "classes": data}, "\n".join(lines))
    return 0


def _cmd_dga(args) -> int:
    p = _load_dga(args.source, _rho_option(args.rho))
    if args.mod2:
        p = mod2_t1(p)
    lines = [f"mode {p.mode}", f"components {p.components}"]
    lines.append("generators " + " ".join(
        f"{n}:{p.degree(n)}" for n in p.names))
    for n in p.names:
        lines.append(f"d {n} = {_element_text(p.diff[n])}")
    _emit(args, {"dga": dga_json(p)}, "\n".join(lines))
    return 0


def _cmd_normalize(args) -> int:
    d = make_simple(_load_front(args.source))
    _emit(args, {"events": [list(e) for e in ((ev.kind, ev.height)
                                              for ev in d.events)]},
          format_front(d).rstrip("\n"))
    return 0


def _cmd_perturb(args) -> int:
    d = _load_front(args.source)
    out, moves = random_isotopy(d, seed=args.seed, steps=args.steps)
    text = (f"seed {args.seed}\nsteps {len(moves)}\n"
            + format_front(out).rstrip("\n"))
    _emit(args, {"seed": args.seed, "steps": len(moves),
                 "events": [[e.kind, e.height] for e in out.events]}, text)
    return 0


def _cmd_augs(args) -> int:
    p = _load_dga(args.source)
    augs = find_augmentations(mod2_t1(p), graded=not args.ungraded)
    lines = [f"{len(augs)} augmentations"]
    data = []
    for eps in augs:
        assignment = {n: eps[n] for n in sorted(eps)}
        data.append(assignment)
        lines.append(" ".join(f"{n}={v}" for n, v in assignment.items()))
    _emit(args, {"count": len(augs), "augmentations": data},
          "\n".join(lines))
    return 0


def _cmd_poly(args) -> int:
    rho = _rho_option(args.rho)
    p = _load_dga(args.source, rho)
    if args.split:
        matrix = split_polynomials(p)
        lines = [" | ".join(str(entry) for entry in row) for row in matrix]
        _emit(args, {"matrix": [[str(e) for e in row] for row in matrix]},
              "\n".join(lines))
        return 0
    q = mod2_t1(p)
    augs = find_augmentations(q)
    polys = [str(poincare_polynomial(q, eps, args.order)) for eps in augs]
    _emit(args, {"order": args.order, "count": len(polys),
                 "polynomials": polys,
                 "set": sorted({str(x) for x in poincare_set(q, args.order)})},
          "\n".join(polys) if polys else "no augmentations")
    return 0


def _cmd_charalg(args) -> int:
    p = _load_dga(args.source)
    c = characteristic_presentation(p)
    if args.probe:
        with open(args.probe, encoding="utf-8") as fh:
            raw = json.load(fh)
        sigma = {}
        for name, value in raw.items():
            sigma[name] = value if isinstance(value, str) and not \
                value.isdigit() else int(value)
        c = probe_quotient(c, sigma)
    elif args.simplify:
        c = tietze_simplify(c, effort=args.effort)
    _emit(args, {"presentation": c.to_json()}, c.to_text())
    return 0


def _cmd_compare(args) -> int:
    pa = _load_dga(args.a)
    pb = _load_dga(args.b)
    if pa.components != 1 or pb.components != 1:
        print("compare needs single-component inputs", file=sys.stderr)
        return 2
    v = compare_knots(pa, pb)
    lines = [v.status]
    if v.property:
        lines.append(f"property: {v.property}")
        lines.append(f"certificate: {json.dumps(v.certificate, sort_keys=True)}")
    lines.extend(f"log: {entry}" for entry in v.log)
    _emit(args, {"status": v.status, "property": v.property,
                 "certificate": v.certificate, "log": list(v.log)},
          "\n".join(lines))
    return 0


def _cmd_ncopy(args) -> int:
    d = _load_front(args.source)
    out = n_copy(d, args.n)
    p = _front_to_dga(out)
    text = (f"components {trace_components(out).count}\n"
            f"generators {len(p.names)}\n" + format_front(out).rstrip("\n"))
    _emit(args, {"components": trace_components(out).count,
                 "generators": len(p.names),
                 "events": [[e.kind, e.height] for e in out.events]}, text)
    return 0


def _cmd_selftest(args) -> int:
    checks: list[tuple[str, bool]] = []

    def check(name: str, ok: bool) -> None:
        checks.append((name, bool(ok)))

    for name in corpus.names():
        entry = corpus.entry(name)
        notes = corpus.annotations(name)
        if entry.kind == "front":
            d = corpus.front_of(name)
            check(f"{name}: well-formed front", not validate(d))
            if "tb" in notes:
                check(f"{name}: tb", thurston_bennequin(d) == notes["tb"])
            if "rot" in notes:
                check(f"{name}: r", rotation_number(d) == notes["rot"])
            s = make_simple(d)
            check(f"{name}: normalization keeps invariants",
                  trace_components(s).count == trace_components(d).count
                  and thurston_bennequin(s) == thurston_bennequin(d))
        p = corpus.dga(name)
        try:
            validate_dga(p)
            check(f"{name}: differential validates", True)
        except AssertionError:
            check(f"{name}: differential validates", False)

    t = mod2_t1(corpus.dga("trefoil"))
    augs = find_augmentations(t)
    check("trefoil: five augmentations", len(augs) == 5)
    check("trefoil: first-order polynomial",
          {str(poincare_polynomial(t, eps, 1)) for eps in augs} == {"2 + L"})
    rules = dict(complete_rewriting(
        characteristic_presentation(corpus.dga("k62"))).rules)
    check("k62: completion finds the vanishing generator",
          rules.get(("a8",)) == ())
    for seed in range(20):
        d = make_simple(random_front(seed))
        mode = "knot" if trace_components(d).count == 1 else "link"
        try:
            front_dga(d, mode=mode, checked=True)
            check(f"random front {seed}: boundary checks", True)
        except AssertionError:
            check(f"random front {seed}: boundary checks", False)

    failed = [name for name, ok in checks if not ok]
    lines = [f"{'ok' if ok else 'FAIL'} {name}" for name, ok in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    _emit(args, {"passed": len(checks) - len(failed), "total": len(checks),
                 "failures": failed}, "\n".join(lines))
    return 0 if not failed else 1


# -- parser ---------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legfront",
        description="invariants of Legendrian front diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.set_defaults(handler=handler)
        return p

    p = add("validate", _cmd_validate, "check a front description")
    p.add_argument("source")

    p = add("invariants", _cmd_invariants, "classical invariants")
    p.add_argument("source")

    p = add("dga", _cmd_dga, "print the differential algebra")
    p.add_argument("source")
    p.add_argument("--mod2", action="store_true",
                   help="collapse to the mod-2, t=1 view")
    p.add_argument("--rho", help="half-integer grading shifts, doubled")

    p = add("normalize", _cmd_normalize, "move all right cusps to one slice")
    p.add_argument("source")

    p = add("perturb", _cmd_perturb, "apply random diagram moves")
    p.add_argument("source")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--steps", type=int, default=25)

    p = add("augs", _cmd_augs, "augmentations of the mod-2 algebra")
    p.add_argument("source")
    p.add_argument("--ungraded", action="store_true")

    p = add("poly", _cmd_poly, "homology polynomials per augmentation")
    p.add_argument("source")
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--split", action="store_true",
                   help="matrix of polynomials for links")
    p.add_argument("--rho", help="half-integer grading shifts, doubled")

    p = add("charalg", _cmd_charalg, "boundary quotient presentation")
    p.add_argument("source")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--effort", type=int, default=2)
    p.add_argument("--probe", help="JSON file of generator substitutions")

    p = add("compare", _cmd_compare, "try to distinguish two knots")
    p.add_argument("a")
    p.add_argument("b")

    p = add("ncopy", _cmd_ncopy, "parallel copies of a front")
    p.add_argument("source")
    p.add_argument("--n", type=int, required=True)

    add("selftest", _cmd_selftest, "run the bundled consistency suite")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ModeError as bound:
        print(f"bound exceeded: {bound}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as bad:
        print(f"invalid input: {bad}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
