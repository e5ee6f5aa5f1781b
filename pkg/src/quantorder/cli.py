"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 parse error,
3 internal consistency failure (oracle disagreement).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import oracle
from .angular import OrderingShiftError, conjecture_scan, ordering_shift
from .parser import ParseError, expression_words, parse_observable
from .phase_space import ClassicalPolynomial, moyal_star, poisson_bracket, star_commutator
from .quantize import (
    DiracDefectError,
    QuantizationScheme,
    dirac_defect,
    ordering_words,
    parse_scheme,
    quantize,
    weyl_quantize,
    weyl_symbol,
)
from .scalars import I, Coefficient
from .weyl_algebra import OperatorPolynomial

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _scheme_arg(text: str) -> QuantizationScheme:
    try:
        return parse_scheme(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="quantorder",
        description="Exact operator-ordering calculations on polynomial observables.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--verify", action="store_true",
                        help="cross-check the printed identity in the wavefunction representation")

    def scheme_flags(p, default=None):
        p.add_argument("--scheme", type=_scheme_arg, default=default, required=default is None,
                       help="weyl | bj | shubin:<num>/<den> | shubin:sym")
        p.add_argument("--form", choices=["one_S", "one_S2"], default="one_S",
                       help="Shubin expansion to use (default one_S)")
        p.add_argument("--bj-mode", choices=["direct", "integral"], default="direct",
                       help="Born-Jordan route (default direct)")

    p = sub.add_parser("quantize", parents=[common], help="quantize a classical polynomial")
    scheme_flags(p)
    p.add_argument("expr", help='classical expression, e.g. "x1^2*p1^2"')

    p = sub.add_parser("normal-order", parents=[common], help="normal-order an operator expression")
    p.add_argument("expr", help='operator expression, e.g. "P1*X1"')

    p = sub.add_parser("star", parents=[common], help="Moyal product of two symbols")
    p.add_argument("--truncate", type=int, default=None, help="keep orders j <= N")
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("bracket", parents=[common], help="Poisson bracket of two symbols")
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("defect", parents=[common], help="Q({f,g}) - [Q(f),Q(g)]/(i hbar)")
    scheme_flags(p)
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("symbol", parents=[common], help="Weyl symbol of an operator expression")
    p.add_argument("expr")

    p = sub.add_parser("shift", parents=[common], help="ordering shift of l^2 on R^n")
    scheme_flags(p)
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("scan", parents=[common], help="ordering shifts over a range of dimensions")
    scheme_flags(p)
    p.add_argument("--min-dim", type=int, required=True)
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--workers", type=int, default=None, help="evaluate dimensions in parallel")
    return parser


def _full_scheme(args) -> QuantizationScheme:
    s = args.scheme
    return QuantizationScheme(s.variant, s.tau, form=args.form, bj_mode=args.bj_mode)


def _classical(text: str) -> ClassicalPolynomial:
    return parse_observable(text, "classical").parsed


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise VerificationFailed(f"oracle disagreement: {what}")


def _negate(words):
    return [(-c, w) for c, w in words]


def _times(words_a, words_b):
    return [(ca * cb, wa + wb) for ca, wa in words_a for cb, wb in words_b]


def _render(result, mode: str, as_json: bool) -> str:
    if as_json:
        return json.dumps(result.to_json(mode))
    return result.to_text()


def _cmd_quantize(args) -> str:
    scheme = _full_scheme(args)
    f = _classical(args.expr)
    result = quantize(scheme, f)
    if args.verify:
        _require(oracle.words_agree(ordering_words(scheme, f), result), "quantize")
    return _render(result, "operator", args.json)


def _cmd_normal_order(args) -> str:
    expr = parse_observable(args.expr, "operator")
    if args.verify:
        _require(oracle.words_agree(expression_words(expr), expr.parsed), "normal-order")
    return _render(expr.parsed, "operator", args.json)


def _cmd_star(args) -> str:
    if args.truncate is not None and args.truncate < 0:
        raise UsageError("--truncate must be non-negative")
    f, g = _classical(args.f), _classical(args.g)
    result = moyal_star(f, g, args.truncate)
    if args.verify:
        if args.truncate is not None:
            raise UsageError("--verify checks Op_W(f*g) = Op_W(f) Op_W(g); it needs an untruncated product")
        weyl = QuantizationScheme.weyl()
        product_words = _times(ordering_words(weyl, f), ordering_words(weyl, g))
        _require(oracle.words_agree(product_words, weyl_quantize(result)), "star")
    return _render(result, "classical", args.json)


def _cmd_bracket(args) -> str:
    f, g = _classical(args.f), _classical(args.g)
    result = poisson_bracket(f, g)
    if args.verify:
        # hbar^1 part of the star commutator is i * {f, g}
        linear = star_commutator(f, g).map_coefficients(
            lambda c: Coefficient({k: v for k, v in c.terms.items() if k[0] == 1})
        )
        expected = result.scale(Coefficient.monomial(I.constant(), hbar=1))
        if linear != expected:
            raise VerificationFailed("star commutator does not reproduce i*hbar*{f,g}")
    return _render(result, "classical", args.json)


def _cmd_defect(args) -> str:
    scheme = _full_scheme(args)
    f, g = _classical(args.f), _classical(args.g)
    result = dirac_defect(scheme, f, g)
    if args.verify:
        wf, wg = ordering_words(scheme, f), ordering_words(scheme, g)
        comm = _times(wf, wg) + _negate(_times(wg, wf))
        i_hbar = Coefficient.monomial(I.constant(), hbar=1)
        # [Q f, Q g] = i hbar (Q({f,g}) - defect)
        rhs = (quantize(scheme, poisson_bracket(f, g)) - result).scale(i_hbar)
        _require(oracle.words_agree(comm, rhs), "defect")
    return _render(result, "operator", args.json)


def _cmd_symbol(args) -> str:
    expr = parse_observable(args.expr, "operator")
    result = weyl_symbol(expr.parsed)
    if args.verify:
        words = expression_words(expr) + _negate(ordering_words(QuantizationScheme.weyl(), result))
        _require(oracle.words_agree(words, OperatorPolynomial.zero()), "symbol")
    return _render(result, "classical", args.json)


def _cmd_shift(args) -> str:
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    report = ordering_shift(_full_scheme(args), args.dim, verify=args.verify)
    if args.verify:
        _require(bool(report.verified), f"shift in dimension {args.dim}")
    if args.json:
        return json.dumps(report.to_json())
    return report.shift.to_text()


def format_scan_table(reports) -> str:
    header = ("n", "scheme", "shift", "2(n-2)hbar^2", "match", "2(n-3)hbar^2")
    rows = [header]
    for r in reports:
        rows.append(
            (
                str(r.dimension),
                str(r.scheme),
                r.shift.to_text(),
                r.conjecture_value.to_text(),
                "yes" if r.matches_conjecture else "no",
                r.sphere_conjecture_value.to_text(),
            )
        )
    widths = [max(len(row[k]) for row in rows) for k in range(len(header))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)


def _cmd_scan(args) -> str:
    if not 2 <= args.min_dim <= args.max_dim:
        raise UsageError("need 2 <= --min-dim <= --max-dim")
    reports = conjecture_scan(
        _full_scheme(args), args.min_dim, args.max_dim, verify=args.verify, workers=args.workers
    )
    if args.verify:
        for r in reports:
            _require(bool(r.verified), f"shift in dimension {r.dimension}")
    if args.json:
        return json.dumps([r.to_json() for r in reports])
    return format_scan_table(reports)


COMMANDS = {
    "quantize": _cmd_quantize,
    "normal-order": _cmd_normal_order,
    "star": _cmd_star,
    "bracket": _cmd_bracket,
    "defect": _cmd_defect,
    "symbol": _cmd_symbol,
    "shift": _cmd_shift,
    "scan": _cmd_scan,
}


def run_command(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        output = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=stderr)
        if exc.source:
            print(exc.caret(), file=stderr)
        return EXIT_PARSE
    except (VerificationFailed, DiracDefectError) as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (OrderingShiftError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    print(output, file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
