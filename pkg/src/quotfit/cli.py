"""Command line front end (``quotfit`` or ``python -m quotfit``).

Exit status: 0 success or true, 1 certified false, 2 usage or parse error,
3 computation budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ParseError, ResourceError
from .goldens import EXAMPLES, verify_example
from .grobner import DEFAULT_BUDGET, Ideal, ideal_equal, radical_member
from .macaulay import macaulay_growth, macaulay_rep
from .quotcore import (
    GrassmannChart,
    QuotProblem,
    chart_report,
    cumulative_equations,
    dumps_report,
    render_report,
    stabilization_offset,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _pivots(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"pivots must be comma separated indices, got {text!r}"
        ) from None


def _add_problem_flags(sp):
    sp.add_argument("--p", type=_positive, required=True, help="rank of the free sheaf O^p")
    sp.add_argument("--r", type=_positive, required=True, help="dimension of P^r")
    sp.add_argument("--n", type=_positive, required=True, help="length of the quotients")
    sp.add_argument("--d", type=_positive, required=True, help="Grassmannian degree (d >= n)")
    sp.add_argument("--s-max", type=_positive, default=3, help="largest offset s (default 3)")
    group = sp.add_mutually_exclusive_group()
    group.add_argument(
        "--pivots",
        type=_pivots,
        help="comma separated indices into the F_d basis (default: the first n)",
    )
    group.add_argument("--all-charts", action="store_true", help="run every standard chart")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--threads", type=_positive, default=1)
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="Groebner reduction budget")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="quotfit",
        description="Equations of Quot schemes on Grassmannian charts, plus ideal utilities.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("quot-equations", help="Fitting strata and cumulative ideal of a chart")
    _add_problem_flags(sp)
    sp.add_argument("--homogenize", action="store_true", help="homogenize (n = 1 only)")

    sp = sub.add_parser("quot-stabilize", help="stabilization offset of a chart")
    _add_problem_flags(sp)

    sp = sub.add_parser("quot-verify", help="recompute a classical example")
    sp.add_argument("example", help=f"one of: {', '.join(EXAMPLES)}")
    sp.add_argument("--threads", type=_positive, default=1)
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    for name, helptext in (
        ("macaulay-rep", "d-th Macaulay representation of N"),
        ("macaulay-growth", "the growth bound N^<d>"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("N", type=_nonnegative)
        sp.add_argument("D", type=_positive)
        sp.add_argument("--format", choices=("json", "text"), default="text")

    sp = sub.add_parser("ideal-gb", help="reduced Groebner basis of an ideal file")
    sp.add_argument("ideal", help="ideal JSON file")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    sp = sub.add_parser("ideal-equal", help="decide equality of two ideals")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    for name, helptext in (
        ("ideal-member", "decide f in I"),
        ("ideal-radical-member", "decide f in rad(I)"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--ideal", required=True, help="ideal JSON file")
        sp.add_argument("--poly", required=True, help="polynomial text, or a file containing it")
        sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    return parser


def _read_ideal(path: str) -> Ideal:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return Ideal.from_json(data)


def _read_poly(ideal: Ideal, source: str):
    p = Path(source)
    text = source
    try:
        if p.is_file():
            text = p.read_text(encoding="utf-8")
    except OSError:
        pass
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc
        from .polyring import polynomial_from_json

        return polynomial_from_json(data, ideal.ring)
    return ideal.ring.parse(text)


def _problem(args, parser) -> QuotProblem:
    if args.d < args.n:
        parser.error(f"--d must be at least --n (got d={args.d}, n={args.n})")
    return QuotProblem(args.p, args.r, args.n, args.d)


def _charts(problem, args, parser):
    if args.all_charts:
        return GrassmannChart.all_charts(problem)
    try:
        return [GrassmannChart(problem, args.pivots)]
    except ValueError as exc:
        parser.error(str(exc))


def _emit_reports(reports, fmt, out):
    if fmt == "json":
        payload = reports[0] if len(reports) == 1 else {"charts": reports}
        out.write(dumps_report(payload))
    else:
        out.write("\n".join(render_report(r) for r in reports))


def _cmd_quot_equations(args, parser, out) -> int:
    problem = _problem(args, parser)
    if args.homogenize and problem.n != 1:
        parser.error("--homogenize requires --n 1")
    charts = _charts(problem, args, parser)
    reports = [
        chart_report(problem, ch, args.s_max, args.homogenize, args.threads, args.budget)
        for ch in charts
    ]
    _emit_reports(reports, args.format, out)
    return EXIT_OK


def _cmd_quot_stabilize(args, parser, out) -> int:
    problem = _problem(args, parser)
    if args.s_max < 2:
        parser.error("--s-max must be at least 2 to detect stabilization")
    rows = []
    for ch in _charts(problem, args, parser):
        res = cumulative_equations(problem, ch, args.s_max, args.threads, args.budget)
        offset = stabilization_offset(problem, ch, args.s_max, args.budget, res)
        rows.append(
            {
                "pivots": list(ch.pivots),
                "pivot_labels": ch.pivot_labels(),
                "contributed": res.contributed,
                "stabilization_offset": offset,
            }
        )
    if args.format == "json":
        out.write(dumps_report({"problem": problem.to_json(), "s_max": args.s_max, "charts": rows}))
    else:
        for row in rows:
            out.write(
                f"chart [{', '.join(row['pivot_labels'])}]: offset {row['stabilization_offset']}"
                f"  (new generators per stratum {row['contributed']})\n"
            )
    return EXIT_OK


def _cmd_verify(args, parser, out) -> int:
    if args.example not in EXAMPLES:
        parser.error(f"unknown example {args.example!r}; choose from {', '.join(EXAMPLES)}")
    lines = verify_example(args.example, args.budget)
    for line in lines:
        out.write(str(line) + "\n")
    return EXIT_OK if all(l.passed for l in lines) else EXIT_FALSE


def _cmd_macaulay(args, parser, out) -> int:
    rep = macaulay_rep(args.N, args.D)
    if args.command == "macaulay-growth":
        value = macaulay_growth(args.N, args.D)
        if args.format == "json":
            out.write(json.dumps({"n": args.N, "d": args.D, "growth": value}) + "\n")
        else:
            out.write(f"{value}\n")
        return EXIT_OK
    if args.format == "json":
        out.write(
            json.dumps({"n": args.N, "d": args.D, "terms": [list(t) for t in rep.terms()]}) + "\n"
        )
    else:
        body = " + ".join(f"C({m},{i})" for m, i in rep.terms()) or "0"
        out.write(f"{args.N} = {body}\n")
    return EXIT_OK


def _cmd_ideal(args, parser, out) -> int:
    cmd = args.command
    if cmd == "ideal-gb":
        ideal = _read_ideal(args.ideal)
        gb = Ideal(ideal.ring, ideal.groebner_basis(args.budget))
        if args.format == "json":
            out.write(json.dumps(gb.to_json(), sort_keys=True) + "\n")
        else:
            for g in gb.generators:
                out.write(f"{g}\n")
        return EXIT_OK
    if cmd == "ideal-equal":
        verdict = ideal_equal(_read_ideal(args.first), _read_ideal(args.second), args.budget)
    else:
        ideal = _read_ideal(args.ideal)
        f = _read_poly(ideal, args.poly)
        if cmd == "ideal-member":
            verdict = ideal.contains(f, args.budget)
        else:
            verdict = radical_member(f, ideal, args.budget)
    out.write("true\n" if verdict else "false\n")
    return EXIT_OK if verdict else EXIT_FALSE


_COMMANDS = {
    "quot-equations": _cmd_quot_equations,
    "quot-stabilize": _cmd_quot_stabilize,
    "quot-verify": _cmd_verify,
    "macaulay-rep": _cmd_macaulay,
    "macaulay-growth": _cmd_macaulay,
    "ideal-gb": _cmd_ideal,
    "ideal-equal": _cmd_ideal,
    "ideal-member": _cmd_ideal,
    "ideal-radical-member": _cmd_ideal,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser, out)
    except ResourceError as exc:
        print(f"quotfit: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, ValueError) as exc:
        print(f"quotfit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
