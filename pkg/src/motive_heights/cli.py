"""Command-line front end.

Subcommands: zeta, const, tables, count-lemma, euler-sum, ratio, theorem1,
theorem2, theorem3, report.  Data subcommands emit CSV or JSON (plus a plain
text mode for scalar values); `report` additionally renders convergence
figures next to the delimited output.

Exit codes: 0 success, 2 argument/config parse error, 3 model validation
error, 4 numeric failure.  Failures print a single line
`error: <category>: <message>` to stderr.  Identical invocations produce
byte-identical output.  Exact rationals serialize as "num/den" strings;
floating values carry an explicit precision field in JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import mpmath as mp

from . import counting, ktheory, motive_counts, special_values
from .modelfile import ModelFileError, ModelValidationError, load_model_config

__all__ = ["main", "parse_schedule", "ScheduleError"]

_OUTPUT_DIR_ENV = "MOTIVE_HEIGHTS_OUTPUT_DIR"
_FLOAT_PRECISION = 53


class ScheduleError(ValueError):
    """The schedule specification cannot be expanded to increasing bounds."""


def parse_schedule(spec: str, minimum: float | None = None) -> list[float]:
    """Expand a schedule spec: "geometric:start,stop,steps",
    "linear:start,stop,steps", or a comma list of bounds."""
    kind, _, rest = spec.partition(":")
    try:
        if rest:
            parts = rest.split(",")
            if len(parts) != 3:
                raise ValueError(f"expected start,stop,steps after '{kind}:'")
            start, stop = float(parts[0]), float(parts[1])
            steps = int(parts[2])
            if steps < 1:
                raise ValueError(f"steps must be >= 1, got {steps}")
            if steps == 1:
                values = [start]
            elif kind == "geometric":
                if start <= 0 or stop <= 0:
                    raise ValueError("geometric schedules need positive endpoints")
                ratio = (stop / start) ** (1.0 / (steps - 1))
                values = [start * ratio**i for i in range(steps)]
            elif kind == "linear":
                step = (stop - start) / (steps - 1)
                values = [start + step * i for i in range(steps)]
            else:
                raise ValueError(f"unknown schedule kind {kind!r}")
        else:
            values = [float(v) for v in spec.split(",") if v.strip()]
    except ValueError as exc:
        raise ScheduleError(f"bad schedule {spec!r}: {exc}") from exc
    if not values:
        raise ScheduleError(f"bad schedule {spec!r}: empty")
    if any(b2 <= b1 for b1, b2 in zip(values, values[1:])):
        raise ScheduleError(f"bad schedule {spec!r}: bounds must be strictly increasing")
    if minimum is not None and values[0] < minimum:
        raise ScheduleError(f"bad schedule {spec!r}: bounds must be >= {minimum}")
    return values


# --------------------------------------------------------------------------
# value formatting
# --------------------------------------------------------------------------

def _fmt_fraction(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _fmt_bound(x: float) -> str:
    return format(float(x), "g")


def _real_json(x, precision: int = _FLOAT_PRECISION) -> dict:
    if isinstance(x, mp.mpf):
        digits = max(17, int(math.ceil(precision * 0.30103)) + 2)
        return {"value": mp.nstr(x, digits), "precision": precision}
    return {"value": _fmt_float(x), "precision": _FLOAT_PRECISION}


def _mpf_str(x: mp.mpf, precision: int) -> str:
    digits = max(17, int(math.ceil(precision * 0.30103)) + 2)
    return mp.nstr(x, digits)


class Output:
    """One command's result in all three shapes (text, CSV, JSON)."""

    def __init__(
        self,
        command: str,
        parameters: dict,
        rows: list[dict],
        *,
        csv_header: list[str] | None = None,
        csv_lines: list[list[str]] | None = None,
        text_lines: list[str] | None = None,
        summary: dict | None = None,
    ) -> None:
        self.command = command
        self.parameters = parameters
        self.rows = rows
        self.csv_header = csv_header
        self.csv_lines = csv_lines
        self.text_lines = text_lines
        self.summary = summary

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"command": self.command, "parameters": self.parameters, "results": self.rows}
            if self.summary is not None:
                doc["summary"] = self.summary
            return json.dumps(doc, indent=2) + "\n"
        if fmt == "csv":
            if self.csv_header is None:
                raise ValueError(f"{self.command} has no CSV shape; use json")
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.csv_header)
            writer.writerows(self.csv_lines or [])
            return buf.getvalue()
        if fmt == "text":
            if self.text_lines is None:
                return self.render("json")
            return "".join(line + "\n" for line in self.text_lines)
        raise ValueError(f"unknown format {fmt!r}")


# --------------------------------------------------------------------------
# command handlers
# --------------------------------------------------------------------------

def _cmd_zeta(args) -> Output:
    if args.neg is not None:
        value = special_values.zeta_neg_odd(args.neg)
        return Output(
            "zeta",
            {"argument": args.neg, "kind": "negative-odd"},
            [{"argument": args.neg, "zeta": _fmt_fraction(value)}],
            text_lines=[_fmt_fraction(value)],
        )
    value = special_values.zeta_pos_odd(args.pos, args.precision)
    return Output(
        "zeta",
        {"argument": args.pos, "kind": "positive-odd", "precision": args.precision},
        [{"argument": args.pos, "zeta": _real_json(value, args.precision)}],
        text_lines=[_mpf_str(value, args.precision)],
    )


def _cmd_const(args) -> Output:
    name = args.name
    values = args.args

    def need(k: int) -> list[int]:
        if len(values) != k:
            raise ValueError(f"const {name} takes {k} integer argument(s), got {len(values)}")
        return values

    if name == "bernoulli":
        (k,) = need(1)
        result = special_values.bernoulli(k)
        params = {"name": name, "k": k}
    elif name == "binomial":
        a, b = need(2)
        result = Fraction(special_values.binomial(a, b))
        params = {"name": name, "a": a, "b": b}
    elif name == "div-density":
        (p,) = need(1)
        result = counting.divisibility_density(p)
        params = {"name": name, "p": p}
    elif name == "mw-torsion":
        m, sha_m = need(2)
        result = ktheory.mazur_wiles_torsion_order(m, sha_m, strict=not args.lenient)
        params = {"name": name, "m": m, "sha_m": sha_m}
    elif name == "sha-d":
        sha_m, sha_n, delta = need(3)
        params_obj = ktheory.MotiveTateParams(
            m=args.m, n=args.n, sha_m=sha_m, sha_n=sha_n, delta_order=delta
        )
        result = ktheory.extension_sha_order(params_obj, strict=not args.lenient)
        params = {"name": name, "m": args.m, "n": args.n, "sha_m": sha_m,
                  "sha_n": sha_n, "delta_order": delta}
    else:  # pragma: no cover - argparse choices guard this
        raise ValueError(f"unknown constant {name!r}")
    return Output(
        "const",
        params,
        [{"name": name, "value": _fmt_fraction(result),
          "integral": Fraction(result).denominator == 1}],
        text_lines=[_fmt_fraction(result)],
    )


def _cmd_tables(args) -> Output:
    rows = []
    for n in args.n:
        try:
            shape = ktheory.k_group_shape(n)
            rows.append(
                {
                    "n": n,
                    "free_rank": shape.free_rank,
                    "torsion": [list(t) for t in shape.torsion],
                    "modeled_only": shape.modeled_only,
                }
            )
        except ktheory.OutOfTable:
            rows.append({"n": n, "out_of_table": True})
    return Output(
        "tables",
        {"n": list(args.n)},
        rows,
        text_lines=[json.dumps(r) for r in rows],
    )


def _cmd_count_lemma(args) -> Output:
    exact = counting.pair_count_exact(args.s, args.t, args.a, args.b, args.X)
    asym = counting.pair_count_leading(args.s, args.t, args.a, args.b, args.X)
    result = counting.CountResult(bound=args.X, exact_count=exact, asymptotic=asym)
    return Output(
        "count-lemma",
        {"s": args.s, "t": args.t, "a": args.a, "b": args.b, "X": args.X},
        [
            {
                "bound": _real_json(result.bound),
                "exact": result.exact_count,
                "asymptotic": _real_json(result.asymptotic),
                "ratio": _real_json(result.ratio),
            }
        ],
        csv_header=["bound", "exact", "asymptotic", "ratio"],
        csv_lines=[
            [
                _fmt_bound(result.bound),
                str(result.exact_count),
                _fmt_float(result.asymptotic),
                _fmt_float(result.ratio),
            ]
        ],
    )


def _parse_poly(spec: str) -> list[float]:
    try:
        coeffs = [float(c) for c in spec.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad polynomial coefficients {spec!r}: {exc}") from exc
    if not coeffs:
        raise ValueError("polynomial needs at least one coefficient")
    return coeffs


def _cmd_euler_sum(args) -> Output:
    coeffs = _parse_poly(args.poly)

    def f(u: float) -> float:
        return sum(c * u**k for k, c in enumerate(coeffs))

    def f_prime(u: float) -> float:
        return sum(k * c * u ** (k - 1) for k, c in enumerate(coeffs) if k)

    value = counting.euler_summation(f, f_prime, args.lower, args.upper, tol=args.tol)
    direct = float(
        sum(f(float(n)) for n in range(math.floor(args.lower) + 1, math.floor(args.upper) + 1))
    )
    abs_err = abs(value - direct)
    return Output(
        "euler-sum",
        {"poly": coeffs, "lower": args.lower, "upper": args.upper, "tol": args.tol},
        [
            {
                "lower": _real_json(args.lower),
                "upper": _real_json(args.upper),
                "euler_sum": _real_json(value),
                "direct_sum": _real_json(direct),
                "abs_error": _real_json(abs_err),
            }
        ],
        csv_header=["lower", "upper", "euler_sum", "direct_sum", "abs_error"],
        csv_lines=[
            [
                _fmt_bound(args.lower),
                _fmt_bound(args.upper),
                _fmt_float(value),
                _fmt_float(direct),
                _fmt_float(abs_err),
            ]
        ],
    )


def _ratio_rows_output(command: str, parameters: dict, series) -> Output:
    rows = [
        {
            "bound": _real_json(r.bound),
            "count": _real_json(r.count),
            "volume": _real_json(r.volume),
            "ratio": _real_json(r.ratio),
        }
        for r in series.rows
    ]
    lines = [
        [_fmt_bound(r.bound), _fmt_float(r.count), _fmt_float(r.volume), _fmt_float(r.ratio)]
        for r in series.rows
    ]
    return Output(
        command,
        parameters,
        rows,
        csv_header=["bound", "count", "volume", "ratio"],
        csv_lines=lines,
    )


def _cmd_ratio(args) -> Output:
    schedule = parse_schedule(args.schedule)
    f1 = counting.power_fn(args.rank1, args.degree, args.coeff1)
    f2 = counting.power_fn(args.rank2, args.degree, args.coeff2)
    series = counting.ratio_experiment(f1, f2, schedule)
    return _ratio_rows_output(
        "ratio",
        {
            "degree": args.degree,
            "rank1": args.rank1,
            "rank2": args.rank2,
            "coeff1": args.coeff1,
            "coeff2": args.coeff2,
            "schedule": schedule,
        },
        series,
    )


def _load_kind(path: str, expected: str):
    model = load_model_config(path)
    kinds = {
        "height-model": "HeightModel",
        "two-quotient": "TwoQuotientModel",
        "three-quotient": "ThreeQuotientModel",
    }
    if type(model).__name__ != kinds[expected]:
        raise ModelValidationError(
            f"config {path} has kind for {type(model).__name__}, expected {expected}"
        )
    return model


def _cmd_theorem1(args) -> Output:
    model = _load_kind(args.config, "height-model")
    schedule = parse_schedule(args.schedule, minimum=1.0)
    series = motive_counts.tamagawa_ratio_series(model, schedule)
    rows = [
        {
            "bound": _real_json(r.bound),
            "lattice_count": r.lattice_count,
            "region_mass": _real_json(r.region_mass),
            "c1": _real_json(r.c1),
            "c2": _real_json(r.c2),
            "ratio": _real_json(r.ratio),
            "normalized_ratio": _real_json(r.normalized_ratio),
        }
        for r in series.rows
    ]
    lines = [
        [
            _fmt_bound(r.bound),
            str(r.lattice_count),
            _fmt_float(r.region_mass),
            _fmt_float(r.c1),
            _fmt_float(r.c2),
            _fmt_float(r.ratio),
            _fmt_float(r.normalized_ratio),
        ]
        for r in series.rows
    ]
    return Output(
        "theorem1",
        {"config": str(args.config), "schedule": schedule},
        rows,
        csv_header=[
            "bound",
            "lattice_count",
            "region_mass",
            "c1",
            "c2",
            "ratio",
            "normalized_ratio",
        ],
        csv_lines=lines,
        summary={
            "scalar_limit": _real_json(series.scalar_limit),
            "tamagawa_prediction": _real_json(series.tamagawa_prediction),
        },
    )


def _coefficient_json(form: motive_counts.CoefficientForm) -> dict:
    return {
        "rational": _fmt_fraction(form.rational),
        "two_power": form.two_power,
        "zeta_args": list(form.zeta_args),
        "numeric": _real_json(form.numeric(), form.precision),
    }


def _count_rows_output(command: str, parameters: dict, results, summary: dict) -> Output:
    rows = []
    lines = []
    for bound, exact, asym, extra in results:
        ratio = exact / asym if asym else math.nan
        row = {
            "bound": _real_json(bound),
            "exact": exact,
            "asymptotic": _real_json(asym),
            "ratio": _real_json(ratio),
        }
        row.update(extra)
        rows.append(row)
        lines.append(
            [_fmt_bound(bound), str(exact), _fmt_float(asym), _fmt_float(ratio)]
        )
    return Output(
        command,
        parameters,
        rows,
        csv_header=["bound", "exact", "asymptotic", "ratio"],
        csv_lines=lines,
        summary=summary,
    )


def _cmd_theorem2(args) -> Output:
    model = _load_kind(args.config, "two-quotient")
    schedule = parse_schedule(args.schedule, minimum=1.0)
    results = []
    for bound in schedule:
        exact = motive_counts.two_quotient_exact(model, bound)
        asym = motive_counts.two_quotient_leading(model, bound)
        results.append((bound, exact, asym, {}))
    form_a, form_b = motive_counts.two_quotient_display_forms(model.params)
    summary = {
        "coefficient": _coefficient_json(motive_counts.two_quotient_coefficient(model)),
        "display_forms": {
            "per_regulator_rational": _fmt_fraction(form_a),
            "per_zeta_rational": _fmt_fraction(form_b),
            "quotient": _fmt_fraction(form_a / form_b),
        },
        "torsion": model.torsion,
        "u": model.u,
    }
    return _count_rows_output(
        "theorem2", {"config": str(args.config), "schedule": schedule}, results, summary
    )


def _cmd_theorem3(args) -> Output:
    model = _load_kind(args.config, "three-quotient")
    schedule = parse_schedule(args.schedule, minimum=1.0)
    results = []
    for bound in schedule:
        counts = motive_counts.three_quotient_counts(model, bound)
        exact = motive_counts.three_quotient_exact(model, bound)
        asym = motive_counts.three_quotient_leading(model, bound)
        extra = {
            "s1": counts.s1,
            "s2": counts.s2,
            "s_both": counts.s_both,
            "direct": counts.direct,
            "inclusion_exclusion": counts.inclusion_exclusion,
        }
        results.append((bound, exact, asym, extra))
    summary = {
        "coefficient": _coefficient_json(motive_counts.three_quotient_coefficient(model)),
        "exceptional_prime": model.exceptional_prime,
        "torsion": model.torsion,
    }
    return _count_rows_output(
        "theorem3", {"config": str(args.config), "schedule": schedule}, results, summary
    )


def _cmd_report(args) -> Output:
    from .report import render_ratio_figure

    kind = args.kind
    if kind == "ratio":
        inner = _cmd_ratio(args)
        ratios = [float(r["ratio"]["value"]) for r in inner.rows]
        bounds = [float(r["bound"]["value"]) for r in inner.rows]
        reference = 1.0
    elif kind == "theorem1":
        inner = _cmd_theorem1(args)
        ratios = [float(r["normalized_ratio"]["value"]) for r in inner.rows]
        bounds = [float(r["bound"]["value"]) for r in inner.rows]
        reference = 1.0
    elif kind in ("theorem2", "theorem3"):
        inner = _cmd_theorem2(args) if kind == "theorem2" else _cmd_theorem3(args)
        ratios = [float(r["ratio"]["value"]) for r in inner.rows]
        bounds = [float(r["bound"]["value"]) for r in inner.rows]
        reference = 1.0
    else:  # pragma: no cover - argparse choices guard this
        raise ValueError(f"unknown report kind {kind!r}")

    outdir = Path(args.outdir)
    base = os.environ.get(_OUTPUT_DIR_ENV)
    if base and not outdir.is_absolute():
        outdir = Path(base) / outdir
    outdir.mkdir(parents=True, exist_ok=True)

    csv_path = outdir / f"{kind}.csv"
    json_path = outdir / f"{kind}.json"
    png_path = outdir / f"{kind}.png"
    csv_path.write_text(inner.render("csv"))
    json_path.write_text(inner.render("json"))
    render_ratio_figure(
        bounds,
        ratios,
        png_path,
        reference=reference,
        title=f"{kind}: exact/asymptotic convergence",
    )
    written = [str(csv_path), str(json_path), str(png_path)]
    return Output(
        "report",
        {"kind": kind, "outdir": str(outdir)},
        [{"written": written}],
        text_lines=written,
    )


# --------------------------------------------------------------------------
# parser and entry point
# --------------------------------------------------------------------------

def _add_format(parser, default: str) -> None:
    parser.add_argument(
        "--format", choices=("text", "csv", "json"), default=default,
        help=f"output format (default {default})",
    )


def _add_schedule(parser) -> None:
    parser.add_argument(
        "--schedule", required=True,
        help="bounds: 'geometric:start,stop,steps', 'linear:start,stop,steps', "
        "or a comma list",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motive-heights",
        description="Height-counting experiments: exact constants, K-group "
        "tables, lattice counts, and asymptotic ratio studies.",
    )
    parser.add_argument("--output", help="write results to this file instead of stdout")
    parser.add_argument("--seed", type=int, help="reserved; no randomized paths")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", help="zeta special values (exact at negative odd "
                       "integers, high-precision at positive odd integers)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--neg", type=int, help="negative odd argument, e.g. -11")
    group.add_argument("--pos", type=int, help="positive odd argument >= 3")
    p.add_argument("--precision", type=int, default=special_values.DEFAULT_PRECISION,
                   help="working precision in bits for --pos")
    _add_format(p, "text")
    p.set_defaults(handler=_cmd_zeta)

    p = sub.add_parser("const", help="exact arithmetic constants")
    p.add_argument("name", choices=("bernoulli", "binomial", "div-density",
                                    "mw-torsion", "sha-d"))
    p.add_argument("args", type=int, nargs="*", help="integer arguments")
    p.add_argument("--m", type=int, default=12, help="twist m for sha-d")
    p.add_argument("--n", type=int, default=3, help="twist n for sha-d")
    p.add_argument("--lenient", action="store_true",
                   help="return non-integral quotients instead of failing")
    _add_format(p, "text")
    p.set_defaults(handler=_cmd_const)

    p = sub.add_parser("tables", help="K-group shape table rows")
    p.add_argument("n", type=int, nargs="+", help="K-group indices")
    _add_format(p, "json")
    p.set_defaults(handler=_cmd_tables)

    p = sub.add_parser("count-lemma", help="pair count under a sum of integer "
                       "roots, with its leading term")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--X", type=float, required=True)
    _add_format(p, "csv")
    p.set_defaults(handler=_cmd_count_lemma)

    p = sub.add_parser("euler-sum", help="Euler summation of a polynomial over "
                       "an interval, checked against the direct sum")
    p.add_argument("--poly", required=True,
                   help="comma-separated coefficients, lowest degree first")
    p.add_argument("--lower", type=float, required=True)
    p.add_argument("--upper", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    _add_format(p, "csv")
    p.set_defaults(handler=_cmd_euler_sum)

    p = sub.add_parser("ratio", help="mixed lattice/volume ratio experiment for "
                       "homogeneous power functions")
    p.add_argument("--degree", type=float, required=True, help="homogeneity degree c")
    p.add_argument("--rank1", type=int, default=1, help="lattice rank")
    p.add_argument("--rank2", type=int, default=1, help="continuous rank")
    p.add_argument("--coeff1", type=float, default=1.0)
    p.add_argument("--coeff2", type=float, default=1.0)
    _add_schedule(p)
    _add_format(p, "csv")
    p.set_defaults(handler=_cmd_ratio)

    p = sub.add_parser("theorem1", help="Tamagawa-normalized C1/C2 ratio series "
                       "for a height-model config")
    p.add_argument("--config", required=True)
    _add_schedule(p)
    _add_format(p, "csv")
    p.set_defaults(handler=_cmd_theorem1)

    p = sub.add_parser("theorem2", help="two-quotient extension count against "
                       "its leading term")
    p.add_argument("--config", required=True)
    _add_schedule(p)
    _add_format(p, "csv")
    p.set_defaults(handler=_cmd_theorem2)

    p = sub.add_parser("theorem3", help="three-quotient count with the "
                       "exceptional-prime inclusion-exclusion")
    p.add_argument("--config", required=True)
    _add_schedule(p)
    _add_format(p, "csv")
    p.set_defaults(handler=_cmd_theorem3)

    p = sub.add_parser("report", help="run a study and write CSV + JSON + "
                       "convergence figure into a directory")
    p.add_argument("--kind", required=True,
                   choices=("ratio", "theorem1", "theorem2", "theorem3"))
    p.add_argument("--config", help="model config (theorem kinds)")
    _add_schedule(p)
    p.add_argument("--outdir", default="reports")
    p.add_argument("--degree", type=float, default=2.0, help="ratio kind only")
    p.add_argument("--rank1", type=int, default=1)
    p.add_argument("--rank2", type=int, default=1)
    p.add_argument("--coeff1", type=float, default=1.0)
    p.add_argument("--coeff2", type=float, default=1.0)
    _add_format(p, "text")
    p.set_defaults(handler=_cmd_report)

    return parser


def _fail(category: str, exc: Exception, stream) -> None:
    message = " ".join(str(exc).split())
    print(f"error: {category}: {message}", file=stream)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "report" and args.kind != "ratio" and not args.config:
            raise ModelFileError(f"report --kind {args.kind} requires --config")
        output = args.handler(args)
        rendered = output.render(args.format)
    except ScheduleError as exc:
        _fail("config", exc, sys.stderr)
        return 2
    except ModelFileError as exc:
        _fail("config", exc, sys.stderr)
        return 2
    except ModelValidationError as exc:
        _fail("model", exc, sys.stderr)
        return 3
    except (ArithmeticError, OverflowError) as exc:
        _fail("numeric", exc, sys.stderr)
        return 4
    except ValueError as exc:
        _fail("config", exc, sys.stderr)
        return 2
    if args.output:
        out_path = Path(args.output)
        base = os.environ.get(_OUTPUT_DIR_ENV)
        if base and not out_path.is_absolute():
            out_path = Path(base) / out_path
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(rendered)
    else:
        sys.stdout.write(rendered)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
