"""Command-line front end.  Exit status: 0 success, 2 parse error,
3 contract violation, 4 disagreement between the program and the oracle."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .blowups import BlowupSpec, ExplicitFactor, blowup
from .constructions import CASES, RECIPES, build_h_star, lower_bound_construction, template_witness
from .errors import Contradiction, ContractViolation
from .graph import ParseError, parse_colored_edge_list, parse_edge_list
from .oracle import (bruteforce_is_template, discrepancy_multiset, lp_oracle_agreement,
                     verify_factor)
from .report import dumps, summary
from .templates import Frame, delta0, is_template, parse_frame_spec
from .threshold import delta_star

EXIT_OK, EXIT_PARSE, EXIT_CONTRACT, EXIT_CONTRADICTION = 0, 2, 3, 4


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str):
    return parse_edge_list(_read(path))


def _frame(value: str) -> Frame:
    if value.endswith(".cel") or Path(value).is_file():
        return Frame(parse_colored_edge_list(_read(value)), Path(value).name)
    return parse_frame_spec(value)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ParseError(f"sizes must be comma-separated integers: {text!r}") from None


def _factor(path: str) -> ExplicitFactor:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno) from None
    copies = data.get("copies") if isinstance(data, dict) else data
    if not isinstance(copies, list) or not all(
            isinstance(c, list) and all(isinstance(v, int) for v in c) for c in copies):
        raise ParseError(f"{path}: expected a list of copies, each a list of host vertices")
    return ExplicitFactor(tuple(tuple(c) for c in copies))


def _h(args):
    path = args.h or args.input
    if not path:
        raise ContractViolation("an input graph is required (--input or --h)")
    return _graph(path)


def _host(args):
    if args.host:
        return parse_colored_edge_list(_read(args.host))
    if args.frame and args.sizes:
        return blowup(BlowupSpec(_frame(args.frame), _sizes(args.sizes)))
    raise ContractViolation("a host is required (--host, or --frame with --sizes)")


# --------------------------------------------------------------------------
# subcommands

def cmd_analyze(args):
    return delta_star(_h(args))


def cmd_delta0(args):
    return delta0(_h(args))


def cmd_template(args):
    if not args.frame:
        raise ContractViolation("--frame is required")
    return is_template(_frame(args.frame), _h(args))


def cmd_witness(args):
    if not args.frame or not args.recipe:
        raise ContractViolation("--frame and --recipe are required")
    return template_witness(args.recipe, _h(args), _frame(args.frame))


def cmd_lowerbound(args):
    if not args.case or args.m is None:
        raise ContractViolation("--case and --m are required")
    return lower_bound_construction(_h(args), args.case, args.m, k=args.k,
                                    check=not args.posed, kind=args.kind)


def cmd_hstar(args):
    if args.eta is None:
        raise ContractViolation("--eta is required")
    eta = _rational(args.eta)
    d0 = _rational(args.delta0) if args.delta0 else None
    return build_h_star(_h(args), eta, d0)


def cmd_oracle(args):
    h = _h(args)
    if args.action == "verify":
        if not args.factor:
            raise ContractViolation("--factor is required")
        chk = verify_factor(h, _host(args), _factor(args.factor))
        return {"valid": chk.valid, "discrepancy": chk.discrepancy, "reason": chk.reason}
    if args.action == "factors":
        return discrepancy_multiset(h, _host(args), args.budget)
    if args.action == "template":
        if not args.frame or args.max_total is None:
            raise ContractViolation("--frame and --max-total are required")
        return bruteforce_is_template(_frame(args.frame), h, args.max_total, args.budget)
    if args.action == "agree":
        if not args.frame or args.max_total is None:
            raise ContractViolation("--frame and --max-total are required")
        res = lp_oracle_agreement(_frame(args.frame), h, args.max_total)
        return {"lp_template": res.lp_template, "oracle_template": res.oracle_template,
                "bound": res.bound, "agree": res.agree}
    raise ContractViolation(f"unknown oracle action {args.action!r}")


COMMANDS = {
    "analyze": cmd_analyze, "delta0": cmd_delta0, "template": cmd_template,
    "witness": cmd_witness, "lowerbound": cmd_lowerbound, "hstar": cmd_hstar,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="graph H as an edge list (.el)")
    common.add_argument("--h", help="alias of --input")
    common.add_argument("--frame", help="frame NAME[:PARAMS] or a colored edge list (.cel)")
    common.add_argument("--sizes", help="blowup sizes a,b,c,...")
    common.add_argument("--eta", help="rational P/Q")
    common.add_argument("--budget", type=int, default=10 ** 6, help="search node budget")
    common.add_argument("-o", "--output", help="output path (default stdout)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="summary", action="store_false", help="JSON report (default)")
    fmt.add_argument("--summary", dest="summary", action="store_true", help="human-readable one-pager")
    common.set_defaults(summary=False)

    parser = argparse.ArgumentParser(prog="hdisc", description="Discrepancy thresholds for H-factors.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="threshold with trace")
    sub.add_parser("delta0", parents=[common], help="zero-discrepancy degree value")
    sub.add_parser("template", parents=[common], help="is the frame a template for H")
    w = sub.add_parser("witness", parents=[common], help="explicit template witness")
    w.add_argument("--recipe", choices=RECIPES)
    lb = sub.add_parser("lowerbound", parents=[common], help="lower-bound construction")
    lb.add_argument("--case", choices=CASES)
    lb.add_argument("--m", type=int, help="scale")
    lb.add_argument("--k", type=int, help="clique size for the circulant cases")
    lb.add_argument("--kind", type=int, choices=(1, 2, 3), help="butterfly type")
    lb.add_argument("--posed", action="store_true", help="skip the hypothesis on H")
    hs = sub.add_parser("hstar", parents=[common], help="auxiliary complete multipartite graph")
    hs.add_argument("--delta0", help="use this value instead of computing it")
    o = sub.add_parser("oracle", parents=[common], help="exhaustive checks on explicit hosts")
    o.add_argument("action", choices=("verify", "factors", "template", "agree"))
    o.add_argument("--host", help="colored host (.cel)")
    o.add_argument("--factor", help="factor as JSON list of copies")
    o.add_argument("--max-total", type=int, help="largest blowup order searched")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=stderr)
        return EXIT_CONTRACT
    except Contradiction as exc:
        print(f"contradiction: {exc}", file=stderr)
        return EXIT_CONTRADICTION
    text = summary(result, args.command) if args.summary else dumps(result)
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())
