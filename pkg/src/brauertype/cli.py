"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import canonical as cn
from . import diagrams as dg
from . import enumeration as en
from . import presentations as pr
from .diagrams import MonoidFamily
from .errors import (BrauerError, CanonicalDuplicated, CanonicalMissing, CapExceeded,
                     FormulaMismatch)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

TARGET_FAMILY = {
    pr.PresentationName.BRAUER: MonoidFamily.B,
    pr.PresentationName.FACTORIZABLE_IT: MonoidFamily.IT,
    pr.PresentationName.PARTIAL_BRAUER: MonoidFamily.PB,
    pr.PresentationName.SYMMETRIC_INVERSE: MonoidFamily.IS,
}

_COMMON_DEFAULTS = {"json": False, "seed": 0, "cap": None, "depth": 20, "width": 2_000_000,
                    "threads": 1}


class _Usage(Exception):
    pass


def _common_options():
    # SUPPRESS lets the options appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    common.add_argument("--json", action="store_true", default=s, help="emit JSON")
    common.add_argument("--seed", type=int, default=s, help="seed for random sampling (default 0)")
    common.add_argument("--cap", type=int, default=s, help="element or class cap")
    common.add_argument("--depth", type=int, default=s, help="derive: maximum proof length (default 20)")
    common.add_argument("--width", type=int, default=s, help="derive: maximum words held (default 2000000)")
    common.add_argument("--threads", type=int, default=s,
                        help="accepted for compatibility; work is single-threaded")
    return common


def _family(text):
    try:
        return MonoidFamily.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_presentation_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--name", help="builtin presentation: brauer, it, pb or is")
    src.add_argument("--file", help="presentation file")
    p.add_argument("--n", type=int, help="degree (required with --name)")
    p.add_argument("--drop-relation", type=int, metavar="K", help="remove relation K (0-based)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="brauertype", parents=[common],
                                     description="Diagram monoids: multiplication, enumeration, "
                                                 "presentations and canonical forms.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("multiply", parents=[common], help="multiply two diagrams")
    p.add_argument("--n", type=int)
    p.add_argument("--star", action="store_true", help="use the star product instead")
    p.add_argument("left")
    p.add_argument("right")

    for name, text in (("enumerate", "list the elements of a family"),
                       ("census", "count a family by rank and type, checking the formulas"),
                       ("orbits", "S_n x S_n orbits with their canonical elements")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--family", type=_family, required=True)
        p.add_argument("--n", type=int, required=True)
        if name == "enumerate":
            p.add_argument("--list", action="store_true", help="print every element")
        p.add_argument("--time-limit", type=float)

    p = sub.add_parser("verify-presentation", parents=[common],
                       help="check every relation among diagrams")
    _add_presentation_source(p)
    p.add_argument("--samples", type=int, default=200,
                   help="random word pairs for the homomorphism check")

    p = sub.add_parser("derive", parents=[common], help="search for a rewriting proof")
    _add_presentation_source(p)
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--relation", help="a named derived relation")
    p.add_argument("--max-length", type=int)

    p = sub.add_parser("enumerate-presented", parents=[common],
                       help="size of a presented monoid by congruence enumeration")
    _add_presentation_source(p)
    p.add_argument("--normal-forms", action="store_true")
    p.add_argument("--time-limit", type=float)

    p = sub.add_parser("factor", parents=[common], help="write x = u * canonical * v")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("diagram")

    p = sub.add_parser("render", parents=[common], help="draw a diagram in ASCII")
    p.add_argument("--n", type=int)
    p.add_argument("diagram")
    return parser


def _emit(args, text_lines, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _load_presentation(args) -> pr.Presentation:
    if args.name:
        if args.n is None:
            raise _Usage("--n is required with --name")
        pres = pr.builtin_presentation(pr.PresentationName.parse(args.name), args.n)
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                pres = pr.parse_presentation(fh.read())
        except OSError as exc:
            raise _Usage(f"cannot read {args.file}: {exc.strerror}") from None
        if args.n is not None and args.n != pres.n:
            raise _Usage(f"--n {args.n} disagrees with the file's degree {pres.n}")
    if args.drop_relation is not None:
        try:
            pres = pres.without(args.drop_relation)
        except IndexError as exc:
            raise _Usage(str(exc)) from None
    return pres


def cmd_multiply(args):
    a = dg.parse(args.left, args.n)
    b = dg.parse(args.right, a.n)
    if args.star:
        prod = dg.star_multiply(a, b)
        _emit(args, [dg.format_text(prod)], {"product": dg.format_text(prod)})
    else:
        res = dg.multiply(a, b)
        _emit(args, [dg.format_text(res.product), f"circles: {res.circles}"],
              {"product": dg.format_text(res.product), "circles": res.circles})
    return EXIT_OK


def _cap(args):
    return en.DEFAULT_CAP if args.cap is None else args.cap


def cmd_enumerate(args):
    elements = en.enumerate_family(args.family, args.n, _cap(args), args.time_limit)
    lines = [f"{args.family.value}_{args.n}: {len(elements)} elements"]
    payload = {"family": args.family.value, "n": args.n, "total": str(len(elements))}
    if args.list:
        texts = [dg.format_text(x) for x in elements]
        lines += texts
        payload["elements"] = texts
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_census(args):
    try:
        c = en.census(args.family, args.n, _cap(args), args.time_limit)
    except FormulaMismatch as exc:
        print(f"formula mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    lines = [f"{c.family.value}_{c.n}: {c.total} elements, all counts match the formulas",
             "rank  count"]
    lines += [f"{k:>4}  {v}" for k, v in c.by_rank.items()]
    if c.by_type is not None:
        lines.append("type  count")
        lines += [f"{','.join(map(str, k))}  {v}" for k, v in c.by_type.items()]
    _emit(args, lines, c.to_json())
    return EXIT_OK


def cmd_orbits(args):
    try:
        reports = en.orbits(args.family, args.n, cap=_cap(args), time_limit=args.time_limit)
    except (CanonicalMissing, CanonicalDuplicated) as exc:
        print(f"orbit check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    group = reports[0].group_order
    total = sum(r.orbit_size for r in reports)
    lines = [f"{args.family.value}_{args.n}: {len(reports)} orbits, {total} elements, group order {group}",
             "spec  size  stabilizer  bound  representative"]
    ok = True
    for r in reports:
        flag = "" if r.attains_bound and r.orbit_size * r.stabilizer_size == group else "  MISMATCH"
        ok = ok and not flag
        lines.append(f"{','.join(map(str, r.spec.params))}  {r.orbit_size}  {r.stabilizer_size}  "
                     f"{r.bound}  {dg.format_text(r.representative)}{flag}")
    payload = {"family": args.family.value, "n": args.n, "total": str(total),
               "group_order": str(group), "orbits": [r.to_json() for r in reports]}
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FAIL


def _random_word(rng, gens, max_len):
    return tuple(rng.choice(gens) for _ in range(rng.randint(0, max_len)))


def cmd_verify_presentation(args):
    pres = _load_presentation(args)
    report = pr.check_soundness(pres)
    rng = random.Random(args.seed)
    gens = list(pres.generators)
    bad_hom = 0
    for _ in range(args.samples if gens else 0):
        u, v = _random_word(rng, gens, 8), _random_word(rng, gens, 8)
        lhs = pr.evaluate(u + v, pres.n)
        rhs = dg.multiply(pr.evaluate(u, pres.n), pr.evaluate(v, pres.n)).product
        bad_hom += lhs != rhs
    lines = []
    for f in report.failures:
        lines.append(f"relation {f.index}: {pr.format_word(f.lhs)} = {pr.format_word(f.rhs)} FAILS "
                     f"({dg.format_text(f.lhs_image)} vs {dg.format_text(f.rhs_image)})")
    if report.ok:
        lines.append(f"all {report.checked} relations hold ({pres.label}, n={pres.n})")
    else:
        lines.append(f"{len(report.failures)} of {report.checked} relations fail ({pres.label}, n={pres.n})")
    lines.append(f"homomorphism check: {args.samples - bad_hom if gens else 0} of "
                 f"{args.samples if gens else 0} random pairs agree")
    payload = {"presentation": pres.label, "n": pres.n, "checked": report.checked,
               "failures": [{"index": f.index, "lhs": pr.format_word(f.lhs), "rhs": pr.format_word(f.rhs),
                             "lhs_image": dg.format_text(f.lhs_image),
                             "rhs_image": dg.format_text(f.rhs_image)} for f in report.failures],
               "homomorphism_failures": bad_hom}
    _emit(args, lines, payload)
    return EXIT_OK if report.ok and not bad_hom else EXIT_FAIL


def cmd_derive(args):
    pres = _load_presentation(args)
    if args.relation:
        named = pr.derived_relations(pres.n)
        if args.relation not in named:
            raise _Usage(f"unknown relation {args.relation!r} for n={pres.n}; "
                         f"known: {', '.join(named) or 'none'}")
        target = named[args.relation]
    elif args.lhs is not None and args.rhs is not None:
        target = (pr.parse_word(args.lhs), pr.parse_word(args.rhs))
    else:
        raise _Usage("give --relation, or both --lhs and --rhs")
    for g in target[0] + target[1]:
        if g not in pres.generators:
            raise _Usage(f"{g} is not a generator of the presentation")
    result = pr.derive(pres, target, depth_cap=args.depth, width_cap=args.width,
                       max_length=args.max_length)
    lines = [f"{result.status.value}: {pr.format_word(result.source)} = {pr.format_word(result.target)}"]
    if result.proved:
        lines.append(f"  {pr.format_word(result.source)}")
        for st in result.steps:
            arrow = "->" if st.forward else "<-"
            lines.append(f"= {pr.format_word(st.after)}    [relation {st.relation} {arrow} at {st.position}]")
        lines.append(f"{len(result.steps)} steps, {result.visited} words visited, "
                     f"replay {'ok' if pr.replay(pres, result) else 'FAILED'}")
    elif result.reason:
        lines.append(result.reason)
    payload = {"status": result.status.value, "lhs": pr.format_word(result.source),
               "rhs": pr.format_word(result.target), "visited": result.visited,
               "steps": [{"relation": st.relation, "position": st.position, "forward": st.forward,
                          "before": pr.format_word(st.before), "after": pr.format_word(st.after)}
                         for st in result.steps]}
    _emit(args, lines, payload)
    if result.proved:
        return EXIT_OK if pr.replay(pres, result) else EXIT_FAIL
    return EXIT_FAIL if result.status is pr.DeriveStatus.REFUTED else EXIT_CAP


def cmd_enumerate_presented(args):
    pres = _load_presentation(args)
    cap = 1_000_000 if args.cap is None else args.cap
    start = time.monotonic()
    result = pr.enumerate_presented(pres, cap=cap, time_limit=args.time_limit)
    elapsed = time.monotonic() - start
    payload = {"presentation": pres.label, "n": pres.n, "status": result.status.value,
               "size": None if result.size is None else str(result.size)}
    if not result.complete:
        _emit(args, [f"cap exceeded after {result.defined} classes ({elapsed:.2f}s)"], payload)
        return EXIT_CAP
    lines = [f"{pres.label}, n={pres.n}: {result.size} classes"]
    code = EXIT_OK
    family = TARGET_FAMILY.get(pres.name)
    if family is not None:
        target = len(en.enumerate_family(family, pres.n))
        payload["target"] = str(target)
        verdict = "matches" if target == result.size else "DIFFERS FROM"
        lines.append(f"{verdict} |{family.value}_{pres.n}| = {target}")
        code = EXIT_OK if target == result.size else EXIT_FAIL
    if args.normal_forms:
        forms = [pr.format_word(w) for w in result.normal_forms]
        lines += forms
        payload["normal_forms"] = forms
    _emit(args, lines, payload)
    return code


def cmd_factor(args):
    x = dg.parse(args.diagram, args.n)
    f = cn.factorize(x, args.family)
    triple = {"u": dg.format_text(f.u), "spec": {"family": f.core.family.value,
                                                 "params": list(f.core.params)},
              "v": dg.format_text(f.v)}
    lines = [f"u: {triple['u']}", f"spec: {f.core}",
             f"canonical: {dg.format_text(cn.canonical(f.core, x.n))}", f"v: {triple['v']}",
             json.dumps(triple, sort_keys=True)]
    _emit(args, lines, triple)
    return EXIT_OK if f.product() == x else EXIT_FAIL


def cmd_render(args):
    x = dg.parse(args.diagram, args.n)
    art = dg.render_ascii(x).rstrip("\n")
    # the normalized text line comes first so the output parses back
    _emit(args, [dg.format_text(x), art], {"diagram": dg.format_text(x), "ascii": art.split("\n")})
    return EXIT_OK


COMMANDS = {
    "multiply": cmd_multiply,
    "enumerate": cmd_enumerate,
    "census": cmd_census,
    "orbits": cmd_orbits,
    "verify-presentation": cmd_verify_presentation,
    "derive": cmd_derive,
    "enumerate-presented": cmd_enumerate_presented,
    "factor": cmd_factor,
    "render": cmd_render,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    for key, value in _COMMON_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return COMMANDS[args.command](args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BrauerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
