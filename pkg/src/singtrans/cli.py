"""Command-line front end.

Exit codes: 0 on success, 1 on domain errors (non-singular input,
invariant violations, exhausted budgets), 2 on parse/schema errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema

from .families import (
    DeformationVector,
    adjacency_table,
    build_deformed,
    deformation_type_at,
    locus_membership,
    make_family,
    rational_critical_points,
)
from .germ import NonIsolated, NotSingular, classify_simple
from .groebner import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Ideal,
    buchberger,
    mora_standard_basis,
    quotient_dimension,
)
from .poly import LEX, LOCAL_DEGREVLEX, DEGREVLEX, ParseError, TermOrder, parse_poly, scan_variables
from .transition import TransitionDataError, load_descriptor, report_from_descriptor

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2


def _read_expression(arg: str) -> str:
    path = Path(arg)
    if path.is_file():
        return path.read_text().strip()
    return arg


def _split_vars(spec: str | None, text: str):
    if spec:
        return tuple(v.strip() for v in spec.split(",") if v.strip())
    return scan_variables(text)


def _emit(payload: dict, as_json: bool):
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def cmd_analyze(args) -> int:
    texts = []
    if args.batch:
        folder = Path(args.batch)
        if not folder.is_dir():
            print(f"error: {args.batch} is not a directory", file=sys.stderr)
            return EXIT_INPUT
        inputs = sorted(folder.glob("*.txt"))
        texts = [(p, p.read_text().strip()) for p in inputs]
    else:
        texts = [(None, _read_expression(args.expression))]
    status = EXIT_OK
    for source, text in texts:
        try:
            variables = _split_vars(args.vars, text)
            poly = parse_poly(text, variables)
        except (ParseError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        try:
            report = classify_simple(poly)
        except BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        payload = report.to_json_dict()
        payload["germ"] = str(poly)
        payload["variables"] = list(variables)
        if source is not None:
            out = source.with_suffix(".report.json")
            out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
            print(f"{source} -> {out}")
        else:
            _emit(payload, args.json)
        if report.type.kind in ("NotSingular", "NonIsolated"):
            status = EXIT_DOMAIN
    return status


def cmd_transition(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        descriptor = load_descriptor(text)
    except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        payload = report_from_descriptor(descriptor, recompute=not args.no_recompute)
    except (TransitionDataError, NotSingular, NonIsolated, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(payload, args.json)
    return EXIT_OK


def _parse_family(args) -> "object":
    kind = args.family.upper()
    if kind in ("E6", "E7", "E8"):
        return make_family(kind)
    if args.index is None:
        raise ValueError(f"family {kind} needs an index")
    return make_family(kind, args.index)


def cmd_adjacency(args) -> int:
    try:
        family = _parse_family(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rows = adjacency_table(family, seed=args.seed, samples_per_row=args.samples)
    payload = [r.to_json_dict() for r in rows]
    if args.json:
        print(json.dumps({"family": family.label, "rows": payload}, indent=2, sort_keys=True))
    else:
        print(f"family {family.label} (seed {args.seed})")
        for r in rows:
            verdict = "agree" if r.agree else ("observed" if r.predicted is None else "DISAGREE")
            observed = r.observed or "no sample"
            print(
                f"  {' & '.join(r.constraints):34s} predicted={str(r.predicted):6s} "
                f"observed={observed:6s} [{verdict}]"
            )
    disagreements = [r for r in rows if r.agree is False]
    return EXIT_DOMAIN if disagreements else EXIT_OK


def cmd_deform(args) -> int:
    try:
        family = _parse_family(args)
        values = [Fraction(v.strip()) for v in args.coeffs.split(",")] if args.coeffs else []
        if len(values) != family.dim_t1:
            raise ValueError(
                f"{family.label} needs {family.dim_t1} coordinates "
                f"({', '.join(family.lambda_names)})"
            )
        lam = DeformationVector(family, tuple(values))
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    deformed = build_deformed(family, lam)
    try:
        points, irrational = rational_critical_points(family, lam)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    rows = []
    for p in points:
        full = p.full_coordinates(family)
        membership = locus_membership(family, lam, p.coordinates)
        entry = {
            "point": [str(c) for c in full],
            "on_hypersurface": membership.in_L,
        }
        if membership.in_L:
            entry["type"] = deformation_type_at(family, lam, p.coordinates).label
        rows.append(entry)
    payload = {
        "family": family.label,
        "deformed": str(deformed),
        "critical_points": rows,
        "has_irrational_critical_points": irrational,
    }
    _emit(payload, args.json) if not args.json else print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


_ORDER_NAMES = {
    "degrevlex": DEGREVLEX,
    "lex": LEX,
    "local": LOCAL_DEGREVLEX,
}


def cmd_groebner(args) -> int:
    try:
        lines = [l.strip() for l in Path(args.file).read_text().splitlines()]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines:
        print("error: no generators in file", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.vars:
            variables = tuple(v.strip() for v in args.vars.split(","))
        else:
            seen = []
            for l in lines:
                for v in scan_variables(l):
                    if v not in seen:
                        seen.append(v)
            variables = tuple(seen)
        gens = [parse_poly(l, variables) for l in lines]
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    local = args.local or args.order == "local"
    order = LOCAL_DEGREVLEX if local else _ORDER_NAMES[args.order]
    ideal = Ideal(variables, gens)
    try:
        if local:
            basis = mora_standard_basis(ideal, order, budget=args.budget)
        else:
            basis = buchberger(ideal, order, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    for g in basis.basis:
        print(g)
    if args.dim:
        dim = quotient_dimension(basis)
        print(f"dimension: {'Infinite' if dim is None else dim}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singtrans",
        description=(
            "Exact invariants of isolated threefold hypersurface germs and "
            "topological bookkeeping of geometric transitions"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Milnor/Tyurina numbers and ADE type of a germ")
    p.add_argument("expression", nargs="?", help="polynomial text or a file containing it")
    p.add_argument("--vars", help="comma-separated variables (default: order of appearance)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--batch", help="analyze every .txt file in a directory")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("transition", help="evaluate a transition descriptor file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument(
        "--no-recompute",
        action="store_true",
        help="skip re-deriving mu/tau/least index from local equations",
    )
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("adjacency", help="deformation table of a simple threefold family")
    p.add_argument("family", help="A, D, E6, E7 or E8")
    p.add_argument("index", nargs="?", type=int, help="index for A/D families")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_adjacency)

    p = sub.add_parser("deform", help="classify the singular points of a deformed family germ")
    p.add_argument("family", help="A, D, E6, E7 or E8")
    p.add_argument("index", nargs="?", type=int)
    p.add_argument("--coeffs", required=True, help="comma-separated deformation coordinates")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("groebner", help="reduced Groebner / local standard basis of an ideal")
    p.add_argument("file", help="one generator per line; '#' comments allowed")
    p.add_argument("--order", choices=sorted(_ORDER_NAMES), default="degrevlex")
    p.add_argument("--local", action="store_true", help="use the local order (Mora)")
    p.add_argument("--vars", help="comma-separated variables")
    p.add_argument("--dim", action="store_true", help="print the quotient dimension")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_groebner)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze" and not args.expression and not args.batch:
        print("error: an expression or --batch directory is required", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
