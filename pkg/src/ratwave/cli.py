"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 verification failure,
3 internal error.  Errors are reported as one JSON object on stderr.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import io as rio
from .bank import Signal, analyze, check_linear, check_quadratic, from_param, linear_residual, moments, synthesize, to_param
from .daubechies import DaubechiesSpec, generate
from .errors import NotParaunitary, RatwaveError, RoundTripMismatch
from .params import coprod, prod
from .rationalize import ApproxStrategy, rationalize_bank, screen
from .scalars import DEFAULT_TOL, FIELDS, RATIONAL, decimal_string, format_scalar, to_json_scalar
from .tables import TABLES, regenerate

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _global_options():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", choices=FIELDS, help="interpret input scalars in this field")
    p.add_argument("--output", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOL, help="float-mode tolerance")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return p


def build_parser():
    common = _global_options()
    parser = _Parser(prog="ratwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="Daubechies bank of genus N")
    p.add_argument("genus", type=int)
    p.add_argument("--precision", type=int, default=40, help="decimal digits for root finding")

    p = sub.add_parser("phi", parents=[common], help="parameter phi of a bank")
    p.add_argument("bankfile")

    p = sub.add_parser("lift", parents=[common], help="canonical pair and bank from phi")
    p.add_argument("phifile")

    p = sub.add_parser("rationalize", parents=[common], help="exact rational bank near a bank")
    p.add_argument("bankfile")
    p.add_argument("--strategy", required=True, help="dyadic:K | best:EPS | maxden:Q | screen:EPS,DMAX")

    p = sub.add_parser("screen", parents=[common], help="small-denominator rational banks")
    p.add_argument("bankfile")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--max-candidates", type=int, default=100_000)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="quadratic and linear residuals")
    p.add_argument("bankfile")

    p = sub.add_parser("moments", parents=[common], help="moments M_0..M_P of h1")
    p.add_argument("bankfile")
    p.add_argument("--pmax", type=int, required=True)

    p = sub.add_parser("pr-test", parents=[common], help="perfect reconstruction on random signals")
    p.add_argument("bankfile")
    p.add_argument("--len", dest="length", type=int, default=128)
    p.add_argument("--trials", type=int, default=1)

    sub.add_parser("tables", parents=[common], help="regenerate the genus-2 and genus-3 tables")
    return parser


def _emit_rows(out, rows, fmt):
    out.write(rio.to_csv(rows) if fmt == "csv" else rio.to_plain(rows))


def _load_bank(args):
    return rio.load_bank(rio.read_json(args.bankfile), args.field)


def _report(out, args, payload, rows):
    if args.output == "json":
        out.write(rio.dumps(payload) + "\n")
    else:
        _emit_rows(out, rows, args.output)


def cmd_gen(args, out):
    bank = generate(DaubechiesSpec(args.genus, working_precision=args.precision))
    if args.field == RATIONAL:
        bank = bank.to_field(RATIONAL)
    if args.output == "json":
        out.write(rio.dumps(bank.to_json()) + "\n")
    else:
        _emit_rows(out, rio.bank_rows(bank), args.output)
    return EXIT_OK


def cmd_phi(args, out):
    bank = _load_bank(args)
    phi = prod(to_param(bank, args.tolerance), bank.genus - 1)
    rows = [["k", "gamma", "decimal"]] + [
        [str(k), format_scalar(g), decimal_string(g)] for k, g in enumerate(phi.gammas, 1)
    ]
    _report(out, args, phi.to_json(), rows)
    return EXIT_OK


def cmd_lift(args, out):
    phi = rio.load_phi(rio.read_json(args.phifile), args.field)
    pair = coprod(phi)
    bank = from_param(pair, phi.n + 1)
    payload = dict(bank.to_json(), pair=pair.to_json(), phi=phi.to_json())
    if args.output == "json":
        out.write(rio.dumps(payload) + "\n")
    else:
        _emit_rows(out, rio.bank_rows(bank), args.output)
    return EXIT_OK


def cmd_rationalize(args, out):
    bank = _load_bank(args)
    result = rationalize_bank(bank, ApproxStrategy.parse(args.strategy))
    if args.output == "json":
        out.write(rio.dumps(result.to_json()) + "\n")
    else:
        _emit_rows(out, rio.bank_rows(result.bank, max(bank.genus - 1, 0)), args.output)
    return EXIT_OK


def cmd_screen(args, out):
    bank = _load_bank(args)
    results = screen(bank, args.epsilon, args.dmax, max_candidates=args.max_candidates, workers=args.jobs)
    if args.output == "json":
        for r in results:
            out.write(rio.dumps(r.to_json()) + "\n")
        return EXIT_OK
    header = ["rank", "max_tap_denominator", "phi_q", "input_distance"] + [
        f"M{p}" for p in range(1, max(bank.genus, 2))
    ]
    rows = [header]
    for i, r in enumerate(results):
        rows.append(
            [str(i), str(r.max_tap_denominator), " ".join(format_scalar(g) for g in r.phi_q.gammas), f"{r.input_distance:.6g}"]
            + [decimal_string(m, 6) for m in r.moment_report.values[1:]]
        )
    _emit_rows(out, rows, args.output)
    return EXIT_OK


def cmd_verify(args, out):
    bank = _load_bank(args)
    q = check_quadratic(bank)
    h0_1, h1_1 = check_linear(bank)
    lin = linear_residual(bank)
    if bank.field == RATIONAL:
        ok = q.is_exact() and lin == 0
    else:
        ok = q.within(args.tolerance) and lin <= args.tolerance
    payload = {
        "field": bank.field,
        "genus": bank.genus,
        "quadratic": {
            "shift": to_json_scalar(q.shift),
            "polyphase": to_json_scalar(q.polyphase),
            "modulation": to_json_scalar(q.modulation),
        },
        "linear": {"h0(1)": to_json_scalar(h0_1), "h1(1)": to_json_scalar(h1_1)},
        "tolerance": None if bank.field == RATIONAL else args.tolerance,
        "ok": ok,
    }
    rows = [["check", "residual", "decimal"]]
    for name, v in (("shift", q.shift), ("polyphase", q.polyphase), ("modulation", q.modulation), ("linear", lin)):
        rows.append([name, format_scalar(v), decimal_string(v)])
    rows.append(["ok", str(ok).lower(), ""])
    _report(out, args, payload, rows)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_moments(args, out):
    bank = _load_bank(args)
    report = moments(bank, args.pmax)
    rows = [["p", "M_p", "decimal"]] + [
        [str(p), format_scalar(m), decimal_string(m)] for p, m in enumerate(report.values)
    ]
    payload = {"pmax": args.pmax, "moments": [to_json_scalar(m) for m in report.values]}
    _report(out, args, payload, rows)
    return EXIT_OK


def cmd_pr_test(args, out):
    bank = _load_bank(args)
    rng = random.Random(args.seed)
    worst = Fraction(0) if bank.field == RATIONAL else 0.0
    for _ in range(args.trials):
        samples = [rng.randint(-1000, 1000) for _ in range(args.length)]
        f = Signal(samples, 0)
        back = synthesize(analyze(bank, f))
        worst = max(worst, (back - f).max_abs())
    ok = worst == 0 if bank.field == RATIONAL else worst <= args.tolerance
    payload = {
        "seed": args.seed,
        "trials": args.trials,
        "length": args.length,
        "field": bank.field,
        "max_error": to_json_scalar(worst),
        "exact": worst == 0,
        "ok": ok,
    }
    if args.output == "json":
        out.write(rio.dumps(payload) + "\n")
    else:
        out.write(f"# seed={args.seed}\n")
        rows = [["trials", "length", "max_error", "ok"], [str(args.trials), str(args.length), format_scalar(worst), str(ok).lower()]]
        _emit_rows(out, rows, args.output)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_tables(args, out):
    regenerated = [regenerate(t) for t in TABLES]
    if args.output == "json":
        for t, r in zip(TABLES, regenerated):
            payload = {
                "genus": t.genus,
                "daubechies": [to_json_scalar(c) for c in r.daubechies.h0],
                "columns": [res.to_json() for res in r.results],
                "matches_published": r.matches,
            }
            out.write(rio.dumps(payload) + "\n")
    else:
        for i, (t, r) in enumerate(zip(TABLES, regenerated)):
            if i:
                out.write("\n")
            if args.output == "plain":
                out.write(f"Table {i + 1}. N={t.genus}\n")
            _emit_rows(out, r.rows(), args.output)
    return EXIT_OK if all(r.matches for r in regenerated) else EXIT_VERIFY


COMMANDS = {
    "gen": cmd_gen,
    "phi": cmd_phi,
    "lift": cmd_lift,
    "rationalize": cmd_rationalize,
    "screen": cmd_screen,
    "verify": cmd_verify,
    "moments": cmd_moments,
    "pr-test": cmd_pr_test,
    "tables": cmd_tables,
}


def _fail(err, code, exc):
    err.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit": code}, sort_keys=True) + "\n")
    return code


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        return _fail(err, EXIT_INPUT, exc)
    try:
        return COMMANDS[args.command](args, out)
    except (NotParaunitary, RoundTripMismatch) as exc:
        return _fail(err, EXIT_VERIFY, exc)
    except (InputError, OSError, ValueError, KeyError, TypeError, json.JSONDecodeError, RatwaveError) as exc:
        return _fail(err, EXIT_INPUT, exc)
    except Exception as exc:  # noqa: BLE001
        return _fail(err, EXIT_INTERNAL, exc)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
