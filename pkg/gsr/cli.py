"""
Command-line front end for the GSR engine.

Instances are given as interchange JSON files or as builder specs such as
`minmax:k=5;g=3`, `zmod:n=8;gamma=0,2,4,6` or `matrix:p=2;rows=1;cols=2`.
Output is collected and written once at the end of the command; engine
errors go to stderr with their code.

Exit codes: 0 success, 1 a verified statement failed, 2 usage or input error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import structlog

from gsr.census.report import census_report, write_census
from gsr.config.settings import get_settings, use_config
from gsr.core.builders import build_matrix, build_minmax, build_zmod
from gsr.core.interchange import (
    dump_instance,
    dumps_instance,
    instance_to_dict,
    parse_instance,
    read_document,
    validate_document,
)
from gsr.core.semiring import GammaSemiring
from gsr.errors import AxiomViolationError, BadBoundsError, GsrError
from gsr.ideals.constructions import generated_gen_bi
from gsr.ideals.kinds import IdealKind
from gsr.monitoring.logging import configure_logging
from gsr.monitoring.metrics import get_metrics
from gsr.setalg.element_set import ElementSet
from gsr.setalg.operations import additive_closure
from gsr.structure.harness import summary_document, verify_many
from gsr.structure.lattice import gb_simple_within, is_gb_simple, is_minimal, lattice_summary
from gsr.structure.statements import Budget

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

BUILDERS = ("minmax", "zmod", "matrix")


class Output:
    """Buffered stdout, flushed once."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: List[str] = []

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def document(self, doc: Any) -> None:
        self.lines.append(json.dumps(doc, indent=2, ensure_ascii=False))

    def flush(self) -> None:
        if self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")
            sys.stdout.flush()


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def build_from_spec(spec: str) -> GammaSemiring:
    """Build an instance from `family:key=value;key=value`.

    Raises:
        BadBoundsError: unknown family, missing or non-integer parameters
    """
    family, _, body = spec.partition(":")
    params: Dict[str, str] = {}
    for item in body.split(";"):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise BadBoundsError(f"Builder parameter {item!r} is not key=value")
        params[key.strip()] = value.strip()
    try:
        return _build(family.strip(), params)
    except KeyError as exc:
        raise BadBoundsError(f"Builder {family} needs parameter {exc.args[0]}") from None
    except ValueError as exc:
        if isinstance(exc, GsrError):
            raise
        raise BadBoundsError(f"Bad builder parameters in {spec!r}: {exc}") from None


def _build(family: str, params: Dict[str, str]) -> GammaSemiring:
    if family == "minmax":
        return build_minmax(int(params["k"]), int(params["g"]))
    if family == "zmod":
        return build_zmod(int(params["n"]), _int_list(params["gamma"]), name=params.get("name"))
    if family == "matrix":
        return build_matrix(int(params["p"]), int(params["rows"]), int(params["cols"]))
    raise BadBoundsError(f"Unknown builder {family!r}; expected one of {', '.join(BUILDERS)}")


def load_source(source: str) -> GammaSemiring:
    """Instance from a file path, or from a builder spec when no such file exists."""
    family = source.partition(":")[0]
    if not Path(source).exists() and family in BUILDERS:
        return build_from_spec(source)
    return parse_instance(source)


def _render_table(rows: Any, row_labels: Sequence[str], col_labels: Sequence[str], values: Sequence[str]) -> List[str]:
    width = max(len(x) for x in list(row_labels) + list(col_labels) + list(values)) + 1
    lines = [" " * width + "|" + "".join(c.rjust(width) for c in col_labels)]
    lines.append("-" * width + "+" + "-" * (width * len(col_labels)))
    for label, row in zip(row_labels, rows):
        lines.append(label.rjust(width) + "|" + "".join(values[int(x)].rjust(width) for x in row))
    return lines


def cmd_validate(args: argparse.Namespace, out: Output) -> int:
    if not Path(args.source).exists() and args.source.partition(":")[0] in BUILDERS:
        result: Any = build_from_spec(args.source)
    else:
        result = validate_document(read_document(args.source))
    if isinstance(result, GammaSemiring):
        if out.as_json:
            out.document({"instance": result.name, "valid": True, "n": result.n, "g": result.g, "violations": []})
        else:
            out.line(f"valid: {result.name} (|M|={result.n}, |Gamma|={result.g})")
        return EXIT_OK
    if out.as_json:
        out.document({"instance": args.source, "valid": False, "violations": [v.to_dict() for v in result]})
    for violation in result:
        sys.stderr.write(f"AXIOM_VIOLATION {violation.describe()}\n")
    return EXIT_ERROR


def cmd_gen(args: argparse.Namespace, out: Output) -> int:
    if args.family == "minmax":
        if args.k is None or args.g is None:
            raise BadBoundsError("gen minmax needs --k and --g")
        instance = build_minmax(args.k, args.g)
    elif args.family == "zmod":
        if args.n is None or args.gamma is None:
            raise BadBoundsError("gen zmod needs --n and --gamma")
        instance = build_zmod(args.n, _int_list(args.gamma), name=args.name)
    else:
        if args.p is None or args.rows is None or args.cols is None:
            raise BadBoundsError("gen matrix needs --p, --rows and --cols")
        instance = build_matrix(args.p, args.rows, args.cols)
    if args.out:
        path = dump_instance(instance, args.out)
        if out.as_json:
            out.document({"instance": instance.name, "path": str(path)})
        else:
            out.line(f"wrote {instance.name} to {path}")
    else:
        out.line(dumps_instance(instance).rstrip("\n"))
    return EXIT_OK


def cmd_show(args: argparse.Namespace, out: Output) -> int:
    instance = load_source(args.source)
    if out.as_json:
        out.document(instance_to_dict(instance))
        return EXIT_OK
    m, g = instance.m_elems, instance.g_elems
    out.line(f"{instance.name}: |M|={instance.n}, |Gamma|={instance.g}")
    out.line(f"M = {{{','.join(m)}}}")
    out.line(f"Gamma = {{{','.join(g)}}}")
    out.line()
    out.line("add_M")
    out.lines.extend(_render_table(instance.add_m, m, m, m))
    out.line()
    out.line("add_Gamma")
    out.lines.extend(_render_table(instance.add_g, g, g, g))
    for alpha in range(instance.g):
        out.line()
        out.line(f"prod(a, {g[alpha]}, b)")
        out.lines.extend(_render_table(instance.prod[:, alpha, :], m, m, m))
    return EXIT_OK


def cmd_closure(args: argparse.Namespace, out: Output) -> int:
    instance = load_source(args.source)
    s = ElementSet.parse(instance, args.set)
    if args.generated:
        label, result = "generated", generated_gen_bi(instance, s)
    else:
        label, result = "closure", additive_closure(s)
    if out.as_json:
        out.document({"instance": instance.name, "set": s.render(), label: result.render()})
    elif args.generated:
        out.line(f"({s.render()}) = {result.render()}")
    else:
        out.line(f"closure {s.render()} = {result.render()}")
    return EXIT_OK


def cmd_ideals(args: argparse.Namespace, out: Output) -> int:
    instance = load_source(args.source)
    kind = IdealKind.parse(args.kind)
    summary = lattice_summary(instance, kind, hasse=args.hasse)
    if out.as_json:
        doc = summary.to_dict()
        if not args.hasse:
            doc.pop("hasse")
        out.document(doc)
        return EXIT_OK
    out.line(f"{instance.name}: {len(summary.ideals)} {kind.value} sets")
    for s in summary.sets(summary.ideals):
        out.line(f"  {s.render()}")
    out.line("minimal: " + ", ".join(s.render() for s in summary.sets(summary.minimal)))
    if args.hasse:
        out.line("hasse:")
        for lower, upper in summary.edges:
            lo, hi = summary.sets([lower, upper])
            out.line(f"  {lo.render()} < {hi.render()}")
    return EXIT_OK


def cmd_simple(args: argparse.Namespace, out: Output) -> int:
    instance = load_source(args.source)
    proper: Optional[ElementSet] = None
    if args.within:
        carrier = ElementSet.parse(instance, args.within)
        instance, verdict, proper = gb_simple_within(instance, carrier)
    else:
        verdict = is_gb_simple(instance)
    doc = verdict.to_dict(instance)
    if proper is not None:
        doc["proper_ideal"] = proper.render()
    if out.as_json:
        out.document(doc)
        return EXIT_OK
    if args.within:
        out.line(f"restricted to {instance.name}")
    out.line(f"GB-simple: {'yes' if verdict.simple else 'no'}")
    if doc["sandwich_witness"]:
        w = doc["sandwich_witness"]
        out.line(f"  {w['a']}ΓMΓ{w['a']} = {w['set']}")
    if doc["proper_ideal"]:
        out.line(f"  proper generalized bi-Gamma-ideal: {doc['proper_ideal']}")
    return EXIT_OK


def cmd_minimal(args: argparse.Namespace, out: Output) -> int:
    instance = load_source(args.source)
    kind = IdealKind.parse(args.kind)
    s = ElementSet.parse(instance, args.set)
    minimal = is_minimal(instance, s, kind)
    if out.as_json:
        out.document({"instance": instance.name, "set": s.render(), "kind": kind.value, "minimal": minimal})
    else:
        out.line(f"{s.render()} minimal {kind.value}: {'yes' if minimal else 'no'}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    instance = load_source(args.source)
    budget = Budget.parse(args.budget)
    requested = [
        part.strip() for item in args.statement or ["ALL"] for part in item.split(",") if part.strip()
    ]
    reports = verify_many(instance, requested, budget=budget, workers=args.workers)
    if out.as_json:
        out.document(summary_document(instance, reports))
    else:
        out.line(f"instance: {instance.name}")
        for report in reports:
            out.line(report.render_line())
    return EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK


def cmd_census(args: argparse.Namespace, out: Output) -> int:
    report = census_report(max_n=args.max_n, max_g=args.max_g, workers=args.workers)
    if args.out:
        write_census(report, args.out)
    summary = report.summary()
    if out.as_json:
        out.document(summary)
        return EXIT_OK
    out.line(f"census up to n={report.max_n}, g={report.max_g}: {summary['total_classes']} classes")
    for order, count in summary["classes_per_order"].items():
        out.line(f"  {order}: {count}")
    out.line(f"GB-simple classes: {len(summary['gb_simple_classes'])}")
    for statement_id, count in summary["failing_classes_per_statement"].items():
        out.line(f"  {statement_id} fails on {count} classes")
    if args.out:
        out.line(f"wrote {args.out}")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "gen": cmd_gen,
    "show": cmd_show,
    "closure": cmd_closure,
    "ideals": cmd_ideals,
    "simple": cmd_simple,
    "minimal": cmd_minimal,
    "verify": cmd_verify,
    "census": cmd_census,
}


def build_parser() -> argparse.ArgumentParser:
    kinds = [k.value for k in IdealKind]
    parser = argparse.ArgumentParser(
        prog="gsr",
        description="Finite Gamma-semiring engine",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Write the minmax(5,3) instance and list its generalized bi-Gamma-ideals
  gsr gen minmax --k 5 --g 3 --out minmax5.json
  gsr ideals --kind gen-bi minmax5.json

  # Builder specs work wherever a file is expected
  gsr verify --statement ALL "zmod:n=8;gamma=0,2,4,6;name=z8v"

  # GB-simplicity and the generated set of {2}
  gsr simple "minmax:k=1;g=1"
  gsr closure --generated minmax5.json 2

  # Census of all classes with n <= 3, g <= 2
  gsr census --max-n 3 --max-g 2 --out census/
        """,
    )

    parser.add_argument("--json", action="store_true", help="Machine-readable output")
    parser.add_argument("--config", type=Path, help="Settings YAML (default configs/settings.yaml)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    parser.add_argument("--metrics-out", type=Path, help="Write Prometheus metrics to this file")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    validate_parser = subparsers.add_parser("validate", help="Check an instance file against the axioms")
    validate_parser.add_argument("source", help="Instance file or builder spec")

    gen_parser = subparsers.add_parser("gen", help="Build a reference instance")
    gen_parser.add_argument("family", choices=BUILDERS)
    gen_parser.add_argument("--k", type=int, help="minmax: chain length")
    gen_parser.add_argument("--g", type=int, help="minmax: Gamma chain length")
    gen_parser.add_argument("--n", type=int, help="zmod: modulus")
    gen_parser.add_argument("--gamma", help="zmod: comma-separated Gamma residues")
    gen_parser.add_argument("--name", help="zmod: instance name")
    gen_parser.add_argument("--p", type=int, help="matrix: prime")
    gen_parser.add_argument("--rows", type=int, help="matrix: rows of M")
    gen_parser.add_argument("--cols", type=int, help="matrix: columns of M")
    gen_parser.add_argument("--out", type=Path, help="Write the instance here instead of stdout")

    show_parser = subparsers.add_parser("show", help="Print the operation tables")
    show_parser.add_argument("source")

    closure_parser = subparsers.add_parser("closure", help="Additive closure or generated set of a subset")
    closure_parser.add_argument("source")
    closure_parser.add_argument("set", help="Comma-separated element labels, e.g. 1,2")
    closure_parser.add_argument("--generated", action="store_true",
                                help="Smallest generalized bi-Gamma-ideal containing the set")

    ideals_parser = subparsers.add_parser("ideals", help="Enumerate ideals of one kind")
    ideals_parser.add_argument("source")
    ideals_parser.add_argument("--kind", default="gen-bi", choices=kinds)
    ideals_parser.add_argument("--hasse", action="store_true", help="Also print inclusion covers")

    simple_parser = subparsers.add_parser("simple", help="Decide GB-simplicity")
    simple_parser.add_argument("source")
    simple_parser.add_argument("--within", help="Decide for the restriction to this sub-Gamma-semiring")

    minimal_parser = subparsers.add_parser("minimal", help="Decide minimality of a set")
    minimal_parser.add_argument("source")
    minimal_parser.add_argument("set")
    minimal_parser.add_argument("--kind", default="gen-bi", choices=kinds)

    verify_parser = subparsers.add_parser("verify", help="Check registered statements")
    verify_parser.add_argument("source")
    verify_parser.add_argument("--statement", action="append",
                               help="Statement id, comma-separated ids or ALL (repeatable; default ALL)")
    verify_parser.add_argument("--budget", help="'full' or the number of assignments to sample")
    verify_parser.add_argument("--workers", type=int)

    census_parser = subparsers.add_parser("census", help="Enumerate small Gamma-semirings")
    census_parser.add_argument("--max-n", type=int)
    census_parser.add_argument("--max-g", type=int)
    census_parser.add_argument("--workers", type=int)
    census_parser.add_argument("--out", type=Path, help="Output directory")

    return parser


def _report_error(exc: GsrError) -> None:
    sys.stderr.write(f"{exc}\n")
    if isinstance(exc, AxiomViolationError):
        for violation in exc.violations:
            sys.stderr.write(f"  {violation.describe()}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR

    if not args.command:
        parser.print_help()
        return EXIT_ERROR

    out = Output(args.json)
    try:
        settings = use_config(args.config) if args.config else get_settings()
        configure_logging(
            "DEBUG" if args.verbose else settings.logging.level,
            settings.logging.json_output,
        )
        code = COMMANDS[args.command](args, out)
    except GsrError as exc:
        out.flush()
        _report_error(exc)
        return EXIT_ERROR
    except ValueError as exc:
        out.flush()
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    except KeyboardInterrupt:
        sys.stderr.write("Operation cancelled by user\n")
        return EXIT_ERROR

    out.flush()
    if args.metrics_out:
        get_metrics().write(args.metrics_out)
    logger.debug("command_done", command=args.command, exit_code=code)
    return code


if __name__ == "__main__":
    sys.exit(main())
