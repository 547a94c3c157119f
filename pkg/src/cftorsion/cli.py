"""Command-line interface: ``cftorsion <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .arith import parse_rational
from .catalog import SearchConfig, digest, run_search
from .errors import CFTorsionError
from .families import FLYNN, FLYNN_TRIVIAL_FACTORS, G_FAMILY
from .igusa import Family, distinguish_families, igusa
from .laurent import DEFAULT_MAX_STEPS, cf_expand, verify_period_form
from .multipoly import parse_multipoly, parse_poly
from .partitions import PartitionSpec, enumerate_partitions
from .symbolic import EliminationTrace, instantiate, solve_partition
from .torsion import degree_constraint_check, degree_vector, torsion_order

BUILTIN_FAMILIES = {"flynn": FLYNN, "g": G_FAMILY}


def _deltas(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(" ", "").split(",") if t)


def _assignment(text: str) -> dict[str, Fraction]:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        name, _, value = item.partition("=")
        if not value:
            raise argparse.ArgumentTypeError(f"expected var=value, got {item!r}")
        out[name.strip()] = parse_rational(value.strip())
    return out


def _family(text: str) -> Family:
    if text in BUILTIN_FAMILIES:
        return BUILTIN_FAMILIES[text]
    p = parse_multipoly(text)
    params = sorted(p.variables() - {"x"})
    if len(params) != 1:
        raise argparse.ArgumentTypeError("a family needs exactly one parameter besides x")
    return Family.from_multipoly(text, p, params[0])


def cmd_expand(args) -> int:
    f = parse_poly(args.f)
    e = cf_expand(f, args.max_steps)
    print(e.to_text())
    if e.is_periodic:
        print(verify_period_form(e).to_text())
    return 0


def cmd_order(args) -> int:
    f = parse_poly(args.f)
    e = cf_expand(f, args.max_steps)
    if not e.is_periodic:
        print("BudgetExceeded")
        return 1
    print(torsion_order(e, args.genus))
    if args.verbose:
        print(degree_constraint_check(degree_vector(e)).to_text())
    return 0


def cmd_partitions(args) -> int:
    for spec in enumerate_partitions(args.genus, args.order):
        print(f"m={spec.m} ({','.join(map(str, spec.deltas))})")
    return 0


def cmd_solve(args) -> int:
    spec = PartitionSpec(args.genus, args.order, len(args.partition) + 1, args.partition)
    pivots = tuple(args.pivots.split(",")) if args.pivots else None
    trace = solve_partition(spec, pivots)
    print(trace.to_text(short=not args.canonical))
    if args.save:
        Path(args.save).write_text(trace.to_json())
    return 0


def cmd_instantiate(args) -> int:
    trace = EliminationTrace.from_json(Path(args.trace).read_text())
    rt = instantiate(trace, args.assign)
    print(rt.to_text())
    return 0


def cmd_igusa(args) -> int:
    print(igusa(parse_poly(args.f)).to_text())
    return 0


def cmd_distinguish(args) -> int:
    F, G = _family(args.F), _family(args.G)
    trivial = FLYNN_TRIVIAL_FACTORS if F is FLYNN else ()
    if args.trivial:
        trivial = tuple(parse_poly(t, F.param) for t in args.trivial)
    rep = distinguish_families(F, G, trivial, full_symbolic=args.full_symbolic)
    print(rep.to_text())
    return 0


def cmd_search(args) -> int:
    cfg = SearchConfig.from_dict(json.loads(Path(args.config).read_text()))
    catalog = args.catalog or f"catalog_g{cfg.g}_N{cfg.N}.jsonl"
    records = run_search(cfg, catalog)
    for r in records:
        extra = r.f.to_expr() if r.f is not None else r.elimination.get("verdict", "")
        print(f"{r.kind:10s} m={r.m} ({','.join(map(str, r.partition.deltas))}) {extra}")
    print(f"digest {digest(records)}")
    print(f"catalog {catalog}")
    return 0


def cmd_fixtures(args) -> int:
    from .fixtures import run_fixtures

    results = run_fixtures()
    for r in results:
        print(r.line())
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cftorsion", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", help="continued fraction of sqrt(f)")
    s.add_argument("f", help="expression like 'x^2+1' or ascending list '[1,0,1]'")
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("order", help="torsion order of the divisor at infinity")
    s.add_argument("f")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("partitions", help="admissible degree partitions")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("solve", help="symbolic elimination for one partition")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--partition", type=_deltas, required=True, help="delta_1,...,delta_{m-1}")
    s.add_argument("--pivots", help="comma-separated canonical variable names to prefer")
    s.add_argument("--canonical", action="store_true", help="print canonical variable names")
    s.add_argument("--save", help="write the trace as JSON to this file")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("instantiate", help="concrete curve from a saved trace")
    s.add_argument("--trace", required=True)
    s.add_argument("--assign", type=_assignment, required=True, help="var=value,...")
    s.set_defaults(func=cmd_instantiate)

    s = sub.add_parser("igusa", help="Igusa invariants of a sextic")
    s.add_argument("f")
    s.set_defaults(func=cmd_igusa)

    s = sub.add_parser("distinguish", help="compare two one-parameter families")
    s.add_argument("F", help="'flynn', 'g', or an expression in x and one parameter")
    s.add_argument("G")
    s.add_argument("--trivial", action="append", help="trivial factor in F's parameter (repeatable)")
    s.add_argument("--full-symbolic", action="store_true", help="bivariate resultants (slow)")
    s.set_defaults(func=cmd_distinguish)

    s = sub.add_parser("search", help="run the search pipeline and write a catalog")
    s.add_argument("--config", required=True, help="JSON file with SearchConfig fields")
    s.add_argument("--catalog", help="catalog path (JSON lines)")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("fixtures", help="run the built-in fixture suite")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # non-periodic expansions grow huge exact coefficients
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except CFTorsionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
