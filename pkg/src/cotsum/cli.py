"""Command-line interface.

Subcommands
-----------
eval        evaluate c0(h/k) and, optionally, the zeta-type value at the
            origin for a twist order alpha
verify      run a named identity/bound suite (prop1, floor, lemma2, lemma4,
            lemma5, corollary) and exit nonzero on any failure
residuals   scan delta(b) = c0(1/b) - main_terms(b) over a range of b, write
            the rows to CSV/JSON and report the log-fit
constants   report gamma, log(2*pi), the block-series values r(b) and the
            extrapolated main-term constant

Exit codes: 0 success, 1 verification failure, 2 usage/precondition error,
3 internal numerical-consistency failure.  Machine-readable output is
byte-identical across repeated runs with the same arguments; nothing
time- or host-dependent is ever emitted.  The environment variable
COTSUM_PRECISION sets the default working precision in bits.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
from dataclasses import dataclass, field

import mpmath

from . import asymptotics, exact
from .numerics import (
    NumericalConsistencyError,
    PrecisionConfig,
    PreconditionError,
    ReducedFraction,
    SummationStrategy,
    euler_gamma,
    log_two_pi,
)

__all__ = ["OutputRecord", "build_parser", "main", "entrypoint"]

DEFAULT_SEED = 927227
DEFAULT_RESIDUAL_BUDGET = 10**8

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass
class OutputRecord:
    """One machine-readable result: command, inputs, named outputs, residues."""

    command: str
    parameters: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "values": self.values,
            "diagnostics": self.diagnostics,
        }
        return json.dumps(payload, sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for section_name, section in (
            ("parameters", self.parameters),
            ("values", self.values),
            ("diagnostics", self.diagnostics),
        ):
            for key in sorted(section):
                lines.append(f"{section_name}.{key} = {section[key]!r}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _as_float(x) -> float:
    return float(x)


def _full_digits(x, cfg: PrecisionConfig) -> str:
    """Decimal string carrying the full working precision of x.

    The value is formatted directly: converting through ``mpmath.mpf`` would
    re-round it at the ambient (53-bit) precision and corrupt the low digits.
    """
    digits = max(17, int(cfg.working_precision * 0.30103) + 2)
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(float(x))
    return mpmath.nstr(x, digits)


def _add_common_flags(sub: argparse.ArgumentParser, fmt: bool = True) -> None:
    sub.add_argument(
        "--precision",
        type=int,
        default=int(os.environ.get("COTSUM_PRECISION", "53")),
        help="working precision in bits (>= 53; default from COTSUM_PRECISION or 53)",
    )
    sub.add_argument(
        "--summation",
        choices=[s.value for s in SummationStrategy],
        default=SummationStrategy.COMPENSATED.value,
        help="summation strategy (default: compensated)",
    )
    sub.add_argument(
        "--parallel-chunk",
        type=int,
        default=None,
        metavar="N",
        help="fixed block size for the pairwise reduction tree (enables "
        "deterministic parallel summation)",
    )
    if fmt:
        sub.add_argument(
            "--format",
            choices=["json", "text"],
            default="json",
            help="output format on stdout (default: json)",
        )


def _config_from(args: argparse.Namespace) -> PrecisionConfig:
    return PrecisionConfig(
        working_precision=args.precision,
        summation=SummationStrategy(args.summation),
        parallel_chunk=args.parallel_chunk,
    )


def _config_parameters(args: argparse.Namespace) -> dict:
    return {
        "precision": args.precision,
        "summation": args.summation,
        "parallel_chunk": args.parallel_chunk,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cotsum",
        description="Evaluate the cotangent sum c0(h/k), verify its finite "
        "trigonometric identities, and measure the residual of its two-term "
        "asymptotics.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_eval = sub.add_parser("eval", help="evaluate c0(h/k) and related values")
    p_eval.add_argument("--h", type=int, required=True, help="numerator h")
    p_eval.add_argument("--k", type=int, required=True, help="denominator k >= 2")
    p_eval.add_argument(
        "--alpha",
        type=int,
        default=None,
        help="also report the zeta-type value at the origin for this twist order",
    )
    _add_common_flags(p_eval)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument(
        "--suite",
        required=True,
        choices=["prop1", "floor", "lemma2", "lemma4", "lemma5", "corollary"],
        help="which identity/bound suite to run",
    )
    p_verify.add_argument(
        "--size", type=int, default=None, help="suite size (suite-specific default)"
    )
    p_verify.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed for the pseudo-random case sampling (fixed default)",
    )
    _add_common_flags(p_verify)

    p_res = sub.add_parser("residuals", help="scan delta(b) over a range of b")
    p_res.add_argument("--b-min", type=int, required=True)
    p_res.add_argument("--b-max", type=int, required=True)
    p_res.add_argument(
        "--geometric-step",
        type=float,
        default=None,
        help="multiply b by this factor between samples (default: every integer)",
    )
    p_res.add_argument(
        "--out",
        type=str,
        default=None,
        help="output path for the rows (default: residuals.csv / residuals.json)",
    )
    p_res.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_RESIDUAL_BUDGET,
        help="maximum total summation steps (sum of all sampled b)",
    )
    _add_common_flags(p_res, fmt=False)
    p_res.add_argument(
        "--format",
        choices=["csv", "json"],
        default="csv",
        help="format of the rows file (default: csv); the stdout summary is "
        "always JSON",
    )

    p_const = sub.add_parser("constants", help="report the extracted constants")
    p_const.add_argument(
        "--K", type=int, default=10**6, help="series truncation for r(b)"
    )
    p_const.add_argument(
        "--bs",
        type=str,
        default="100,1000,10000",
        help="comma-separated b values for r(b) and the extrapolation",
    )
    _add_common_flags(p_const)

    return parser


def _cmd_eval(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    frac = ReducedFraction(args.h, args.k)
    record = OutputRecord(
        command="eval",
        parameters={"h": args.h, "k": args.k, "alpha": args.alpha,
                    **_config_parameters(args)},
    )
    value = exact.c0(frac, cfg)
    record.values["c0"] = _as_float(value)
    if cfg.extended:
        record.diagnostics["c0_digits"] = _full_digits(value, cfg)
    if args.alpha is not None:
        ev = exact.estermann_at_zero(frac, args.alpha, cfg)
        record.values["estermann_re"] = _as_float(ev.real_part)
        record.values["estermann_im"] = _as_float(ev.imag_part)
        if cfg.extended:
            record.diagnostics["estermann_im_digits"] = _full_digits(
                ev.imag_part, cfg
            )
    print(record.render(args.format))
    return EXIT_OK


def _suite_prop1(size: int | None, seed: int, cfg: PrecisionConfig):
    size = size or 200
    rng = random.Random(seed)
    cases = []
    worst_cos = 0.0
    worst_frac = 0.0
    for b in range(2, size + 1):
        max_cos = 0.0
        max_frac = 0.0
        ok = True
        for _ in range(20):
            a = rng.randrange(1, 10**6)
            n = rng.randrange(1, 10**6)
            residue = abs(float(exact.cot_cos_identity_residual(a, b, n, cfg)))
            max_cos = max(max_cos, residue)
            if residue > 1e-10:
                ok = False
            if (n * a) % b == 0:
                continue
            got = exact.frac_via_cot_sin(a, b, n, cfg).value
            err = abs(float(got) - ((n * a) % b) / b)
            max_frac = max(max_frac, err)
            if err > 1e-10:
                ok = False
        cases.append((f"b={b}", ok, max(max_cos, max_frac)))
        worst_cos = max(worst_cos, max_cos)
        worst_frac = max(worst_frac, max_frac)
    extra = {"max_cot_cos_residue": worst_cos, "max_frac_error": worst_frac}
    return cases, extra


def _suite_floor(size: int | None, seed: int, cfg: PrecisionConfig):
    size = size or 100
    cases = []
    worst_im = 0.0
    worst_round = 0.0
    for b in range(2, size + 1):
        ok = True
        max_im = 0.0
        max_round = 0.0
        for a in range(1, 1001):
            re, im = exact._floor_identity_parts(a, b, cfg)
            re_f, im_f = float(re), float(im)
            nearest = round(re_f)
            max_im = max(max_im, abs(im_f))
            max_round = max(max_round, abs(re_f - nearest))
            if nearest != a // b:
                ok = False
        cases.append((f"b={b}", ok and max_im <= 1e-9 and max_round <= 1e-6, max_im))
        worst_im = max(worst_im, max_im)
        worst_round = max(worst_round, max_round)
    extra = {"max_imag_residue": worst_im, "max_rounding_distance": worst_round}
    return cases, extra


def _suite_lemma2(size: int | None, seed: int, cfg: PrecisionConfig):
    size = size or 100
    ks = [k for k in (1, 2, 5, 10, 20, 50, 100) if k <= size]
    bs = [b for b in (2, 5, 10, 20, 50, 100) if b <= max(2, size)]
    cases = []
    worst = 0.0
    for k in ks:
        for b in bs:
            block = math.fsum(1.0 / a for a in range(k * b, (k + 1) * b))
            approx = float(asymptotics.inner_block_expansion(k, b, cfg))
            defect = abs(approx - block)
            bound = 1.0 / (k**4 * b**4) + 1e-12
            cases.append((f"k={k},b={b}", defect <= bound, defect))
            worst = max(worst, defect)
    return cases, {"max_block_defect": worst}


def _suite_lemma4(size: int | None, seed: int, cfg: PrecisionConfig):
    grid = (10, 20, 50, 100)
    cases = []
    worst = 0.0
    for k in grid:
        for b in grid:
            d1 = abs(
                asymptotics.f_term(1, k, b) / 2 - asymptotics.taylor_f1(k, b)
            ) * k**4 * b
            d2 = abs(
                -asymptotics.f_term(2, k, b) / 12 - asymptotics.taylor_f2(k, b)
            ) * k**5 * b**2
            cases.append((f"k={k},b={b}", d1 <= 10 and d2 <= 10, max(d1, d2)))
            worst = max(worst, d1, d2)
    return cases, {"max_scaled_defect": worst}


def _suite_lemma5(size: int | None, seed: int, cfg: PrecisionConfig):
    base_ratio = size or 10**4
    c0_const = (euler_gamma(cfg) - log_two_pi(cfg)) / 2
    cases = []
    worst = 0.0
    for b in (10, 100):
        for ratio in (base_ratio, 10 * base_ratio):
            L = b * ratio
            direct = asymptotics.s_sum_direct(L, b, cfg)
            approx = asymptotics.s_sum_asymptotic(L, b, c0_const, cfg)
            defect = abs(float(direct - approx))
            bound = 2 + 0.05 * b * b / L
            cases.append((f"b={b},L={L}", defect <= bound, defect))
            worst = max(worst, defect)
    return cases, {"max_closure_defect": worst}


def _suite_corollary(size: int | None, seed: int, cfg: PrecisionConfig):
    K = size or 10**6
    closed_form = (euler_gamma(cfg) - log_two_pi(cfg)) / 2
    estimate = asymptotics.estimate_C0([100, 1000, 10000], K, cfg)
    gap = abs(float(estimate.value - closed_form))
    cases = [(f"bs=100,1000,10000,K={K}", gap <= 1e-3, gap)]
    extra = {
        "estimate": float(estimate.value),
        "closed_form": float(closed_form),
        "gap": gap,
        "tail_bound": estimate.tail_bound,
    }
    return cases, extra


_SUITES = {
    "prop1": _suite_prop1,
    "floor": _suite_floor,
    "lemma2": _suite_lemma2,
    "lemma4": _suite_lemma4,
    "lemma5": _suite_lemma5,
    "corollary": _suite_corollary,
}


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    cases, extra = _SUITES[args.suite](args.size, args.seed, cfg)
    failures = [name for name, ok, _ in cases if not ok]
    record = OutputRecord(
        command="verify",
        parameters={"suite": args.suite, "size": args.size, "seed": args.seed,
                    **_config_parameters(args)},
        values={
            "cases": len(cases),
            "failed": len(failures),
            "max_residue": max((res for _, _, res in cases), default=0.0),
            "passed": not failures,
        },
        diagnostics={"failed_cases": failures, **extra},
    )
    if args.format == "text":
        for name, ok, residue in cases:
            print(f"{'PASS' if ok else 'FAIL'} {args.suite} {name} "
                  f"residue={residue!r}")
    print(record.render(args.format))
    return EXIT_OK if not failures else EXIT_VERIFY_FAILED


def _residual_bs(b_min: int, b_max: int, step: float | None) -> list[int]:
    if step is None:
        return list(range(b_min, b_max + 1))
    if step <= 1.0:
        raise PreconditionError(f"geometric step must exceed 1, got {step}")
    bs = []
    current = float(b_min)
    while round(current) <= b_max:
        b = int(round(current))
        if not bs or b > bs[-1]:
            bs.append(b)
        current *= step
    return bs


def _cmd_residuals(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    if args.b_min < 2 or args.b_min >= args.b_max:
        raise PreconditionError(
            f"need 2 <= b_min < b_max, got ({args.b_min}, {args.b_max})"
        )
    bs = _residual_bs(args.b_min, args.b_max, args.geometric_step)
    cost = sum(bs)
    if cost > args.budget:
        raise PreconditionError(
            f"scan would take {cost} summation steps, over the budget "
            f"{args.budget}; use --geometric-step to thin the sample"
        )
    records, report = asymptotics.residual_scan(bs, cfg)
    out_path = args.out or (
        "residuals.json" if args.format == "json" else "residuals.csv"
    )
    _write_residuals(out_path, records, report, args.format)
    record = OutputRecord(
        command="residuals",
        parameters={
            "b_min": args.b_min,
            "b_max": args.b_max,
            "geometric_step": args.geometric_step,
            "out": out_path,
            **_config_parameters(args),
        },
        values={
            "rows": len(records),
            "slope": report.slope,
            "intercept": report.intercept,
            "max_abs_delta": report.max_abs_delta,
        },
        diagnostics={"total_steps": cost},
    )
    print(record.to_json())
    return EXIT_OK


def _write_residuals(path: str, records, report, fmt: str) -> None:
    if fmt == "json":
        rows = [
            {
                "b": r.b,
                "c0_exact": float(r.c0_exact),
                "c0_main_terms": float(r.c0_main_terms),
                "delta": float(r.delta),
            }
            for r in records
        ]
        rows.append(
            {
                "slope": report.slope,
                "intercept": report.intercept,
                "max_abs_delta": report.max_abs_delta,
            }
        )
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(rows, fh, sort_keys=True, indent=2)
            fh.write("\n")
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["b", "c0_exact", "c0_main_terms", "delta"])
        for r in records:
            writer.writerow(
                [r.b, repr(float(r.c0_exact)), repr(float(r.c0_main_terms)),
                 repr(float(r.delta))]
            )


def _cmd_constants(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    try:
        bs = [int(part) for part in args.bs.split(",") if part.strip()]
    except ValueError as err:
        raise PreconditionError(f"could not parse --bs {args.bs!r}") from err
    if not bs or any(b < 2 for b in bs):
        raise PreconditionError(f"every b must be an integer >= 2, got {args.bs!r}")
    gamma = euler_gamma(cfg)
    l2p = log_two_pi(cfg)
    closed_form = (gamma - l2p) / 2
    record = OutputRecord(
        command="constants",
        parameters={"K": args.K, "bs": bs, **_config_parameters(args)},
        values={
            "euler_gamma": _as_float(gamma),
            "log_two_pi": _as_float(l2p),
            "closed_form_C0": _as_float(closed_form),
        },
    )
    if cfg.extended:
        record.diagnostics["euler_gamma_digits"] = _full_digits(gamma, cfg)
        record.diagnostics["log_two_pi_digits"] = _full_digits(l2p, cfg)
    for b in bs:
        est = asymptotics.r_series(b, args.K, cfg)
        record.values[f"r_{b}"] = _as_float(est.value)
        record.diagnostics[f"r_{b}_tail_bound"] = est.tail_bound
    if len(bs) >= 3:
        estimate = asymptotics.estimate_C0(bs, args.K, cfg)
        record.values["C0_estimate"] = _as_float(estimate.value)
        record.values["C0_gap"] = abs(_as_float(estimate.value) - _as_float(closed_form))
        record.diagnostics["C0_tail_bound"] = estimate.tail_bound
    else:
        record.diagnostics["extrapolation"] = (
            "skipped: need at least 3 values of b"
        )
    print(record.render(args.format))
    return EXIT_OK


_HANDLERS = {
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "residuals": _cmd_residuals,
    "constants": _cmd_constants,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _HANDLERS[args.subcommand](args)
    except NumericalConsistencyError as err:
        print(f"numerical consistency failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (PreconditionError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    raise SystemExit(main())
