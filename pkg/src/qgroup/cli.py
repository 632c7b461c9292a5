"""Command line entry point: ``qgroup <command> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import nsub, permgrp, scenarios, tc, unitary
from .coxeter import catalog, catalog_names, read_presentation
from .words import ParseError, parse_word


def _write(text: str, path: str) -> None:
    if path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _subgroup(text: str | None) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()] if text else []


def cmd_verify(args) -> int:
    opts = scenarios.Options(max_cosets=args.max_cosets, strategy=args.strategy, variant=args.variant)
    if args.scenario == "all":
        reports = scenarios.run_all(opts, parallel=args.parallel)
    else:
        try:
            reports = [scenarios.run_scenario(args.scenario, opts)]
        except scenarios.UnknownScenario:
            print(f"unknown scenario {args.scenario!r}; known: {', '.join(scenarios.scenario_names())}",
                  file=sys.stderr)
            return 2
    for rep in reports:
        print(rep.summary(), file=sys.stderr)
    if args.report:
        _write(scenarios.dump_reports(reports, args.timings), args.report)
    if any(rep.error for rep in reports):
        return 3
    return 0 if all(rep.passed for rep in reports) else 1


def _presentation(args):
    if args.presentation:
        return read_presentation(args.presentation)
    return catalog(args.catalog).presentation


def cmd_enumerate(args) -> int:
    p = _presentation(args)
    limits = tc.EnumerationLimits(max_cosets=args.max_cosets, strategy=args.strategy)
    try:
        t = tc.enumerate_cosets(p, _subgroup(args.subgroup), limits)
    except tc.LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 3
    print(f"index: {t.index}")
    print(f"cosets defined: {t.defined_total}")
    print(f"coincidences: {t.collapsed_total}")
    if args.out:
        tc.write_table(t, args.out)
    return 0


def cmd_order(args) -> int:
    t = tc.read_table(args.table)
    print(permgrp.group_order(t.perm_images()))
    return 0


def cmd_check_word(args) -> int:
    t = tc.read_table(args.table)
    defs = catalog(args.catalog).macros() if args.catalog else None
    try:
        w = parse_word(args.word, t.alphabet, defs)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    gens = t.perm_images()
    p = permgrp.evaluate(w, gens)
    print(f"order: {p.order()}")
    print(f"central: {'yes' if all(p.commutes(g) for g in gens) else 'no'}")
    return 0


COMPLETIONS = {"eo": scenarios.EO_CONSTRAINTS}


def _constraints(text: str):
    out = []
    for item in text.split(","):
        label, m = item.split(":")
        out.append((label.strip(), int(m)))
    return out


def cmd_u6(args) -> int:
    space = unitary.default_space(args.convention)
    gens = unitary.standard_assignment(space, args.e_form)
    status = 0
    if args.check_assignment:
        for name, m in gens.items():
            print(f"{name}:")
            print(m)
        for c in unitary.check_relators(catalog("K").presentation.relators, gens):
            extra = f" ({scenarios.gf4_symbol(c.scalar)} I)" if c.status == "scalar" else ""
            print(f"{c.status:9s} {c.relator}{extra}")
            status |= c.status == "violation"
    if args.complete_diagram:
        cons = _constraints(args.constraints) if args.constraints else COMPLETIONS[args.complete_diagram]
        found = unitary.complete_diagram(space, gens, cons)
        for v in found:
            print(unitary.format_vector(v))
        print(f"{len(found)} class(es)")
    if args.order:
        mats = list(gens.values())
        print(f"order on nonzero vectors: {unitary.matrix_group_order(mats)}")
        print(f"order on projective points: {unitary.matrix_group_order(mats, projective=True)}")
    return int(status)


def cmd_nsub(args) -> int:
    opts = scenarios.Options(variant=args.variant)
    rep = scenarios.run_scenario("nsub-verify", opts)
    print(rep.summary(), file=sys.stderr)
    if args.report:
        _write(scenarios.dump_reports([rep]), args.report)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgroup")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named scenario or all of them")
    v.add_argument("scenario", help="scenario name or 'all'")
    v.add_argument("--report", help="write the YAML report here ('-' for stdout)")
    v.add_argument("--parallel", action="store_true")
    v.add_argument("--max-cosets", type=int, default=scenarios.Options.max_cosets)
    v.add_argument("--strategy", choices=sorted(tc.STRATEGIES), default="hlt")
    v.add_argument("--variant", choices=nsub.VARIANTS)
    v.add_argument("--timings", action="store_true", help="include wall-clock times in the report")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="Todd-Coxeter coset enumeration")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--presentation", help="presentation file")
    src.add_argument("--catalog", choices=catalog_names())
    e.add_argument("--subgroup", help='comma-separated generators, e.g. "a,b,c"')
    e.add_argument("--max-cosets", type=int, default=tc.EnumerationLimits.max_cosets)
    e.add_argument("--strategy", choices=sorted(tc.STRATEGIES), default="hlt")
    e.add_argument("--out", help="write the standardized table (.npz)")
    e.set_defaults(func=cmd_enumerate)

    o = sub.add_parser("order", help="order of the permutation group of a coset table")
    o.add_argument("--table", required=True)
    o.set_defaults(func=cmd_order)

    c = sub.add_parser("check-word", help="order and centrality of a word in a coset table")
    c.add_argument("--table", required=True)
    c.add_argument("--word", required=True)
    c.add_argument("--catalog", help="catalog entry whose named words may be used")
    c.set_defaults(func=cmd_check_word)

    u = sub.add_parser("u6", help="the transvection model over GF(4)")
    u.add_argument("--check-assignment", action="store_true")
    u.add_argument("--complete-diagram", choices=sorted(COMPLETIONS))
    u.add_argument("--constraints", help='override, e.g. "e:3,a:2,b:2"')
    u.add_argument("--order", action="store_true")
    u.add_argument("--e-form", choices=("corrected", "printed", "printed-simplified"), default="corrected")
    u.add_argument("--convention", choices=("second", "first"), default="second")
    u.set_defaults(func=cmd_u6)

    n = sub.add_parser("nsub", help="the normal 2-subgroup N")
    nsub_sub = n.add_subparsers(dest="action", required=True)
    nv = nsub_sub.add_parser("verify")
    nv.add_argument("--variant", choices=nsub.VARIANTS, default="rel3")
    nv.add_argument("--report")
    nv.set_defaults(func=cmd_nsub)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
