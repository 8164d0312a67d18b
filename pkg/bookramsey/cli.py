"""Command Line Interface for bookramsey."""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog
from pydantic import ValidationError as PydanticValidationError

from . import __version__
from .circulant import format_spec_text, parse_spec_text
from .config import EnvConfig, LogFormat, LogLevel, create_logging_config, create_logging_manager
from .field import paley_book_graph, paley_book_report
from .graphs import Graph, from_graph6, parse_adjacency_text, to_graph6
from .ipenc import encode_block_circulant_ip, read_solution, resolve_pins, solution_to_spec, write_lp
from .satenc import encode_books, encode_naive, write_dimacs, write_varmap
from .search import enumerate_ramsey_graphs, ramsey_number_smallcase
from .types.exceptions import BookRamseyError, BudgetExceededError, ConfigurationError, ValidationError
from .types.models import BookParams, BoundKind, BoundRecord, IpOptions, RunConfig, WitnessRef
from .witness import BoundsRegistry, load_appendix, verify_appendix, verify_graph, verify_spec

logger = structlog.get_logger(__name__)

USAGE_ERROR = 2


def _to_dict(payload: Any) -> Dict[str, Any]:
    """Normalize a Pydantic model or dict into a plain dict for JSON dump."""
    if payload is None:
        return {}
    if hasattr(payload, "model_dump"):
        return payload.model_dump(mode="json")
    if isinstance(payload, dict):
        return payload
    return {"value": payload}


def _print_result(summary: str, payload: Any, as_json: bool, ok: bool = True) -> None:
    """Print the summary; with ``--json`` follow it with ``--- JSON ---`` and an envelope."""
    print(summary)
    if as_json:
        envelope = {"status": "success" if ok else "failure", "data": _to_dict(payload)}
        print("\n--- JSON ---")
        print(json.dumps(envelope, indent=2, default=str))


def _print_error(message: str, *, suggestion: Optional[str] = None, details: Optional[Dict[str, Any]] = None) -> None:
    envelope: Dict[str, Any] = {"status": "error", "error_description": message}
    if suggestion:
        envelope["suggestion"] = suggestion
    if details:
        envelope["details"] = details
    print(message, file=sys.stderr)
    print("\n--- JSON ---")
    print(json.dumps(envelope, indent=2, default=str))


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


def _read_graph(path: str) -> Graph:
    """Adjacency-matrix text, or a single graph6 line."""
    text = Path(path).read_text(encoding="utf-8")
    first = next((line.strip() for line in text.splitlines() if line.strip()), "")
    if first and set(first) <= set("01[], \t"):
        return parse_adjacency_text(text)
    return from_graph6(first)


def _book_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=int, required=True, help="Forbidden book size in the graph")
    p.add_argument("--s", type=int, required=True, help="Forbidden book size in the complement")


def _ip_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--complement-ansatz", action="store_true", help="Force D22 = complement of D11")
    p.add_argument("--d11-eq-d12", action="store_true", help="Force D11 = D12")
    p.add_argument("--pin", default=None, help="Elements forced into D11: '1,2,3' or a preset (consecutive, squares)")


def create_parser() -> argparse.ArgumentParser:
    """Create the top-level CLI parser with subcommands."""
    parser = argparse.ArgumentParser(prog="bookramsey", description="Book Ramsey graph toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--env-file", type=str, default=None, help="Path to .env file")
    parser.add_argument(
        "--log-level",
        choices=[level.value for level in LogLevel],
        default=None,
        help="Override BOOKRAMSEY_LOG_LEVEL",
    )
    subparsers = parser.add_subparsers(dest="command")

    p_paley = subparsers.add_parser("paley", help="Paley-type witness for R(B_{n-1},B_n) >= 4n-1")
    p_paley.add_argument("--q", type=int, required=True, help="Prime power q = 1 mod 4 (n = (q+1)/2)")
    p_paley.add_argument("--json", action="store_true", help="Output JSON")

    p_check = subparsers.add_parser("check", help="Check a graph for B_r and complement B_s")
    p_check.add_argument("--graph", required=True, help="Adjacency-matrix text or graph6 file")
    _book_args(p_check)
    p_check.add_argument("--bound", type=int, default=None, help="Claimed lower bound (default: n + 1)")
    p_check.add_argument("--json", action="store_true", help="Output JSON")

    p_spec = subparsers.add_parser("spec-check", help="Check a 2-block circulant spec")
    p_spec.add_argument("--spec", required=True, help="File with 'm; D11={..}; D12={..}[; D22={..}]'")
    _book_args(p_spec)
    p_spec.add_argument("--json", action="store_true", help="Output JSON")

    p_sat = subparsers.add_parser("encode-sat", help="Write a DIMACS CNF for Ramsey (B_r,B_s,n) graphs")
    p_sat.add_argument("--n", type=int, required=True, help="Number of vertices")
    _book_args(p_sat)
    p_sat.add_argument("--symmetry", action="store_true", help="Add lex-leader symmetry-breaking clauses")
    p_sat.add_argument("--naive", action="store_true", help="Use the subset encoding instead of totalizers")
    p_sat.add_argument("--out", required=True, help="Output CNF file ('-' for stdout)")
    p_sat.add_argument("--map", default=None, help="Write the variable map to this file")

    p_ip = subparsers.add_parser("encode-ip", help="Write an LP model for 2-block circulant witnesses")
    p_ip.add_argument("--m", type=int, required=True, help="Block size (2m vertices)")
    _book_args(p_ip)
    _ip_args(p_ip)
    p_ip.add_argument("--out", required=True, help="Output LP file ('-' for stdout)")

    p_dec = subparsers.add_parser("decode-ip", help="Turn an IP solver solution into a spec")
    p_dec.add_argument("--m", type=int, required=True, help="Block size")
    p_dec.add_argument("--solution", required=True, help="Solver output with 'name value' lines")
    _ip_args(p_dec)
    p_dec.add_argument("--r", type=int, default=None, help="Verify the decoded spec against B_r")
    p_dec.add_argument("--s", type=int, default=None, help="Verify the decoded spec against B_s")
    p_dec.add_argument("--json", action="store_true", help="Output JSON")

    p_enum = subparsers.add_parser("enumerate", help="Enumerate Ramsey (B_r,B_s,n) graphs up to isomorphism")
    p_enum.add_argument("--n", type=int, required=True, help="Number of vertices")
    _book_args(p_enum)
    p_enum.add_argument("--budget", type=float, default=None, help="Wall-clock budget in seconds")
    p_enum.add_argument("--workers", type=int, default=None, help="Worker processes")

    p_ramsey = subparsers.add_parser("ramsey", help="Compute a small R(B_r,B_s) by enumeration")
    _book_args(p_ramsey)
    p_ramsey.add_argument("--n-cap", type=int, required=True, help="Largest vertex count to try")
    p_ramsey.add_argument("--budget", type=float, default=None, help="Wall-clock budget in seconds")
    p_ramsey.add_argument("--workers", type=int, default=None, help="Worker processes")
    p_ramsey.add_argument("--json", action="store_true", help="Output JSON")

    p_bounds = subparsers.add_parser("bounds", help="Query and update the bounds registry")
    p_bounds.add_argument("--registry", default=None, help="User registry file (default: BOOKRAMSEY_REGISTRY_PATH)")
    bounds_sub = p_bounds.add_subparsers(dest="bounds_command")
    p_show = bounds_sub.add_parser("show", help="Best known interval for R(B_r,B_s)")
    p_show.add_argument("r", type=int)
    p_show.add_argument("s", type=int)
    p_show.add_argument("--json", action="store_true", help="Output JSON")
    p_vall = bounds_sub.add_parser("verify-all", help="Verify every registry witness")
    p_vall.add_argument("--json", action="store_true", help="Output JSON")
    p_list = bounds_sub.add_parser("list", help="List registry records")
    p_list.add_argument("--r", type=int, default=None)
    p_list.add_argument("--s", type=int, default=None)
    p_list.add_argument("--json", action="store_true", help="Output JSON")
    p_put = bounds_sub.add_parser("put", help="Add a record (witnesses are verified first)")
    _book_args(p_put)
    p_put.add_argument("--kind", choices=[k.value for k in BoundKind], required=True)
    p_put.add_argument("--value", type=int, required=True)
    p_put.add_argument("--witness", default=None, help="kind:ref, e.g. construction:paley:13")
    p_put.add_argument("--provenance", default="", help="Free-text citation")

    p_app = subparsers.add_parser("verify-appendix", help="Verify every bundled witness")
    p_app.add_argument("--json", action="store_true", help="Output JSON")

    p_config = subparsers.add_parser("config", help="Configuration utilities")
    config_sub = p_config.add_subparsers(dest="config_command")
    config_sub.add_parser("show", help="Show effective configuration")
    config_sub.add_parser("validate", help="Validate configuration")
    p_tmpl = config_sub.add_parser("template", help="Write .env template")
    p_tmpl.add_argument("--output", required=True)

    return parser


def _params(args: argparse.Namespace) -> BookParams:
    return BookParams.of(args.r, args.s)


def _run_config(args: argparse.Namespace) -> RunConfig:
    config = getattr(args, "run_config", None)
    if config is None:
        config = EnvConfig.create_run_config(env_file=Path(args.env_file) if getattr(args, "env_file", None) else None)
    return config


def cmd_paley(args: argparse.Namespace) -> int:
    q = args.q
    n = (q + 1) // 2
    params = BookParams.of(n - 1, n)
    g = paley_book_graph(q)
    report = verify_graph(g, params, 2 * q + 1, label=f"paley_book:{q}")
    conditions = paley_book_report(q)
    summary = "\n".join(
        [
            to_graph6(g),
            report.summary(),
            f"conditions {conditions.summary()}",
        ]
    )
    payload = {"graph6": report.graph6, "report": _to_dict(report), "conditions": _to_dict(conditions)}
    _print_result(summary, payload, args.json, ok=report.passed)
    return 0 if report.passed and conditions.passed else 1


def cmd_check(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    bound = args.bound if args.bound is not None else g.n + 1
    report = verify_graph(g, _params(args), bound, label=Path(args.graph).name)
    _print_result(report.summary(), report, args.json, ok=report.passed)
    return 0 if report.passed else 1


def cmd_spec_check(args: argparse.Namespace) -> int:
    spec = parse_spec_text(Path(args.spec).read_text(encoding="utf-8"))
    report = verify_spec(spec, _params(args))
    assert report.conditions is not None
    summary = f"{report.summary()}\nconditions {report.conditions.summary()}"
    _print_result(summary, report, args.json, ok=report.passed)
    return 0 if report.passed else 1


def cmd_encode_sat(args: argparse.Namespace) -> int:
    config = _run_config(args)
    params = _params(args)
    if args.naive:
        if args.map:
            _print_error("--map is only available for the totalizer encoding")
            return 1
        formula = encode_naive(args.n, params, max_n=config.naive_max_n)
    else:
        formula, vm = encode_books(args.n, params, symmetry_breaking=args.symmetry, max_n=config.books_max_n)
        if args.map:
            Path(args.map).write_text(write_varmap(vm), encoding="utf-8")
    _write_output(write_dimacs(formula), args.out)
    if args.out != "-":
        print(f"p cnf {formula.num_vars} {len(formula.clauses)} written to {args.out}")
    return 0


def _ip_options(args: argparse.Namespace) -> IpOptions:
    try:
        return IpOptions(
            complement_ansatz=args.complement_ansatz,
            d11_eq_d12=args.d11_eq_d12,
            pinned=resolve_pins(args.pin),
        )
    except PydanticValidationError as exc:
        raise ValidationError(f"Invalid IP options: {exc.errors()[0]['msg']}") from exc


def cmd_encode_ip(args: argparse.Namespace) -> int:
    model = encode_block_circulant_ip(args.m, _params(args), _ip_options(args))
    _write_output(write_lp(model), args.out)
    if args.out != "-":
        print(f"{len(model.variables)} variables, {len(model.constraints)} constraints written to {args.out}")
    return 0


def cmd_decode_ip(args: argparse.Namespace) -> int:
    assignment = read_solution(Path(args.solution).read_text(encoding="utf-8"))
    spec = solution_to_spec(args.m, assignment, _ip_options(args))
    text = format_spec_text(spec, explicit_d22=not spec.uses_complement_convention)
    if args.r is None or args.s is None:
        _print_result(text, {"spec": text}, args.json)
        return 0
    report = verify_spec(spec, BookParams.of(args.r, args.s))
    _print_result(f"{text}\n{report.summary()}", {"spec": text, "report": _to_dict(report)}, args.json,
                  ok=report.passed)
    return 0 if report.passed else 1


def _check_search_size(n: int, config: RunConfig) -> None:
    if n > config.canonical_max_n:
        raise ValidationError(
            f"Search on {n} vertices exceeds BOOKRAMSEY_CANONICAL_MAX_N={config.canonical_max_n}",
            {"n": n, "limit": config.canonical_max_n},
        )


def cmd_enumerate(args: argparse.Namespace) -> int:
    config = _run_config(args)
    _check_search_size(args.n, config)
    budget = args.budget if args.budget is not None else config.budget
    workers = args.workers if args.workers is not None else config.workers
    try:
        result = enumerate_ramsey_graphs(
            args.n, _params(args), budget=budget, workers=workers, checkpoint_every=config.checkpoint_every
        )
    except BudgetExceededError as exc:
        _print_error(exc.message, details={"progress": exc.progress})
        return 1
    for graph6 in result.graphs:
        print(graph6)
    summary = {"n": result.n, "r": result.r, "s": result.s, "count": result.count, **result.stats.model_dump()}
    print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_ramsey(args: argparse.Namespace) -> int:
    config = _run_config(args)
    _check_search_size(args.n_cap, config)
    budget = args.budget if args.budget is not None else config.budget
    workers = args.workers if args.workers is not None else config.workers
    result = ramsey_number_smallcase(_params(args), args.n_cap, budget=budget, workers=workers)
    summary = (
        f"R(B_{result.r},B_{result.s}) = {result.value} with {result.critical_count} critical graph(s) "
        f"on {result.value - 1} vertices"
    )
    _print_result(summary, result, args.json)
    return 0


def _registry(args: argparse.Namespace) -> BoundsRegistry:
    path = args.registry if args.registry is not None else _run_config(args).registry_path
    return BoundsRegistry(Path(path))


def cmd_bounds_show(args: argparse.Namespace) -> int:
    interval = _registry(args).query(args.r, args.s)
    lines = [interval.format()]
    if interval.lower_provenance:
        lines.append(f"  lower: {interval.lower_provenance}")
    if interval.upper_provenance:
        lines.append(f"  upper: {interval.upper_provenance}")
    _print_result("\n".join(lines), interval, args.json)
    return 0


def cmd_bounds_list(args: argparse.Namespace) -> int:
    registry = _registry(args)
    records = registry.records
    if args.r is not None and args.s is not None:
        records = registry.records_for(args.r, args.s)
    lines = []
    for rec in records:
        witness = f" [{rec.witness.label()}]" if rec.witness else ""
        lines.append(f"R(B_{rec.r},B_{rec.s}) {rec.kind.value} {rec.value}{witness}")
    _print_result("\n".join(lines), {"records": [_to_dict(rec) for rec in records]}, args.json)
    return 0


def cmd_bounds_verify_all(args: argparse.Namespace) -> int:
    results = _registry(args).verify_all()
    failed = [report for _, report in results if not report.passed]
    lines = [report.summary() for _, report in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} witnesses verified")
    _print_result("\n".join(lines), {"reports": [_to_dict(r) for _, r in results]}, args.json, ok=not failed)
    return 0 if not failed else 1


def cmd_bounds_put(args: argparse.Namespace) -> int:
    try:
        witness = WitnessRef.parse(args.witness) if args.witness else None
        rec = BoundRecord(
            r=args.r, s=args.s, kind=BoundKind(args.kind), value=args.value, witness=witness, provenance=args.provenance
        )
    except ValueError as exc:
        _print_error(f"Invalid record: {exc}")
        return 1
    stored = _registry(args).put(rec)
    print(f"Stored R(B_{stored.r},B_{stored.s}) {stored.kind.value} {stored.value}")
    return 0


def cmd_verify_appendix(args: argparse.Namespace) -> int:
    reports = verify_appendix(load_appendix())
    failed = [report for report in reports if not report.passed]
    lines = [report.summary() for report in reports]
    lines.append(f"{len(reports) - len(failed)}/{len(reports)} entries verified")
    _print_result("\n".join(lines), {"reports": [_to_dict(r) for r in reports]}, args.json, ok=not failed)
    return 0 if not failed else 1


def cmd_config_show(args: argparse.Namespace) -> int:
    config = _run_config(args)
    for key, value in config.model_dump().items():
        print(f"{key}: {value}")
    return 0


def cmd_config_validate(args: argparse.Namespace) -> int:
    try:
        EnvConfig.validate_config(_run_config(args))
        print("Configuration valid")
        return 0
    except ConfigurationError as e:
        print(f"Configuration invalid: {e}")
        return 1


def cmd_config_template(args: argparse.Namespace) -> int:
    out = EnvConfig.create_env_template(Path(args.output))
    print(f"Template written to {out}")
    return 0


_COMMANDS = {
    "paley": cmd_paley,
    "check": cmd_check,
    "spec-check": cmd_spec_check,
    "encode-sat": cmd_encode_sat,
    "encode-ip": cmd_encode_ip,
    "decode-ip": cmd_decode_ip,
    "enumerate": cmd_enumerate,
    "ramsey": cmd_ramsey,
    "verify-appendix": cmd_verify_appendix,
}

_BOUNDS_COMMANDS = {
    "show": cmd_bounds_show,
    "list": cmd_bounds_list,
    "verify-all": cmd_bounds_verify_all,
    "put": cmd_bounds_put,
}

_CONFIG_COMMANDS = {
    "show": cmd_config_show,
    "validate": cmd_config_validate,
    "template": cmd_config_template,
}


def _setup_logging(config: RunConfig) -> None:
    create_logging_manager(
        create_logging_config(level=LogLevel(config.log_level), format=LogFormat(config.log_format))
    )


def _handler(args: argparse.Namespace):
    if args.command == "bounds":
        return _BOUNDS_COMMANDS.get(args.bounds_command)
    if args.command == "config":
        return _CONFIG_COMMANDS.get(args.config_command)
    return _COMMANDS.get(args.command)


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 after --help/--version
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    handler = _handler(args) if args.command else None
    if handler is None:
        parser.print_help()
        return USAGE_ERROR
    try:
        config = EnvConfig.create_run_config(env_file=Path(args.env_file) if args.env_file else None)
        if args.log_level:
            config = config.model_copy(update={"log_level": args.log_level})
        args.run_config = config
        _setup_logging(config)
        return handler(args)
    except BookRamseyError as exc:
        _print_error(str(exc))
        return 1
    except OSError as exc:
        _print_error(f"I/O error: {exc}")
        return 1


run = main


if __name__ == "__main__":
    sys.exit(main())
