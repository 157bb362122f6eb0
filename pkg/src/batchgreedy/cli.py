"""Command-line interface: solve, curvature, bounds, certify, experiment,
paper-checks.

Exit codes: 0 on success, 1 on guard or validation failure, 2 when a
paper-checks run reports a failing check.

The experiment CSV contract: header row, fixed column order
``k,l,m,c_k,harmonic,exponential,greedy_value,optimum,ratio``, absent
optional columns emitted as empty fields, floats at 17 significant digits.
Identical configuration and seed reproduce the CSV byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from math import isclose
from pathlib import Path
from typing import Optional, Sequence

from .bounds import bound_values, exponential_bound, harmonic_bound
from .curvature import (
    CurvatureReport,
    k_batch_curvature,
    scheduling_curvature_closed_form,
    sensing_curvature_closed_form,
)
from .errors import BatchGreedyError
from .greedy import decompose, k_batch_greedy, make_trace, validate_trace
from .instances import (
    load_bundled,
    load_instance,
    random_scheduling_instance,
    random_sensing_instance,
)
from .matroids import (
    MatroidSpec,
    lifted_pair_augmentation_check,
    matroid_rank,
    verify_lifted_witness,
)
from .objectives import ObjectiveInstance
from .oracle import brute_force_optimum, certify
from .subsets import ElementSubset

CSV_COLUMNS = (
    "k",
    "l",
    "m",
    "c_k",
    "harmonic",
    "exponential",
    "greedy_value",
    "optimum",
    "ratio",
)

EMIT_CHOICES = ("curvature", "harmonic", "exponential", "greedy_value", "optimum", "ratio")
DEFAULT_EMIT = ("curvature", "harmonic", "exponential")


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: an instance source, a rank, batch sizes, and output toggles."""

    k_values: tuple[int, ...]
    instance_path: Optional[str] = None
    family: Optional[str] = None
    n: Optional[int] = None
    seed: int = 0
    rank: Optional[int] = None
    param_low: Optional[float] = None
    param_high: Optional[float] = None
    output: Optional[str] = None
    emit: tuple[str, ...] = DEFAULT_EMIT


def _materialize(config: ExperimentConfig) -> tuple[ObjectiveInstance, MatroidSpec]:
    if config.instance_path is not None:
        if config.family is not None:
            raise ValueError("give either an instance file or a generator family")
        return load_instance(config.instance_path)
    if config.family is None:
        raise ValueError("an instance file or a generator family is required")
    if config.n is None or config.rank is None:
        raise ValueError("generator sweeps need both N and the rank K")
    if config.family == "scheduling":
        low = 0.0 if config.param_low is None else config.param_low
        high = 1.0 if config.param_high is None else config.param_high
        instance = random_scheduling_instance(config.n, config.seed, low=low, high=high)
    elif config.family == "sensing":
        low = 0.5 if config.param_low is None else config.param_low
        high = 1.0 if config.param_high is None else config.param_high
        instance = random_sensing_instance(config.n, config.seed, low=low, high=high)
    else:
        raise ValueError(f"unknown generator family {config.family!r}")
    return instance, MatroidSpec.uniform(config.n, config.rank)


def curvature_auto(instance: ObjectiveInstance, k: int) -> CurvatureReport:
    """Closed form where one applies, exhaustive scan otherwise."""
    if instance.kind == "scheduling" and len(instance.p) == 1:
        return scheduling_curvature_closed_form(instance, k)
    if instance.kind == "sensing" and instance.sigma == 1.0:
        return sensing_curvature_closed_form(instance, k)
    return k_batch_curvature(instance, k)


def run_experiment_sweep(config: ExperimentConfig) -> list[dict]:
    """One row per batch size; see the module docstring for the CSV contract."""
    instance, spec = _materialize(config)
    rank = matroid_rank(spec)
    for k in config.k_values:
        if not 1 <= k <= rank:
            raise ValueError(f"k = {k} outside [1, K = {rank}]")
    uniform = spec.kind == "uniform"
    rows = []
    for k in config.k_values:
        dec = decompose(rank, k)
        row: dict = {"k": k, "l": dec.l, "m": dec.m}
        curv = curvature_auto(instance, k)
        if "curvature" in config.emit:
            row["c_k"] = curv.value
        if "harmonic" in config.emit:
            row["harmonic"] = harmonic_bound(curv.value)
        if "exponential" in config.emit and uniform:
            row["exponential"] = exponential_bound(curv.value, rank, k)
        needs_greedy = "greedy_value" in config.emit or "ratio" in config.emit
        needs_optimum = "optimum" in config.emit or "ratio" in config.emit
        greedy_value = optimum_value = None
        if needs_greedy:
            greedy_value = k_batch_greedy(instance, spec, k).final_value
        if needs_optimum:
            optimum_value = brute_force_optimum(instance, spec).optimum_value
        if "greedy_value" in config.emit:
            row["greedy_value"] = greedy_value
        if "optimum" in config.emit:
            row["optimum"] = optimum_value
        if "ratio" in config.emit:
            row["ratio"] = (
                greedy_value / optimum_value if optimum_value > 0.0 else 1.0
            )
        rows.append(row)
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def rows_to_csv(rows: Sequence[dict]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_cell(row.get(col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


# Golden checks over the bundled instances and the known bound pair.


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str


@dataclass(frozen=True)
class PaperChecksReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def _fmt_family(subsets, names) -> str:
    return (
        "{"
        + ", ".join("{" + ",".join(names[i] for i in s) + "}" for s in subsets)
        + "}"
    )


def _check_lifted() -> CheckResult:
    names = ("a", "b", "c", "d")
    spec = MatroidSpec.uniform(4, 4)  # independence = the power set of {a,b,c,d}
    report = lifted_pair_augmentation_check(spec, 2)
    if report.augmentation_ok:
        return CheckResult("lifted-augmentation", False, "no augmentation failure found")
    verified = verify_lifted_witness(spec, report)
    fam_a, fam_b = report.witness_families()
    details = (
        f"witness A={_fmt_family(fam_a, names)} B={_fmt_family(fam_b, names)}"
        f" ({'verified' if verified else 'NOT verified'})"
    )
    return CheckResult("lifted-augmentation", verified, details)


def _check_coverage_example(
    name: str,
    bundled: str,
    value_1batch: float,
    value_2batch: float,
    traces: Sequence[tuple[int, Sequence[Sequence[int]]]],
) -> CheckResult:
    instance, spec = load_bundled(bundled)
    n = instance.ground_size
    got1 = k_batch_greedy(instance, spec, 1).final_value
    got2 = k_batch_greedy(instance, spec, 2).final_value
    problems = []
    if got1 != value_1batch:
        problems.append(f"1-batch value {got1} != {value_1batch}")
    if got2 != value_2batch:
        problems.append(f"2-batch value {got2} != {value_2batch}")
    for k, batches in traces:
        trace = make_trace(
            instance, k, [ElementSubset.of(b, n) for b in batches]
        )
        verdict = validate_trace(instance, spec, trace)
        if not verdict.ok:
            problems.append(
                f"stated {k}-batch solution rejected at stage {verdict.stage}: {verdict.reason}"
            )
    details = (
        f"1-batch {got1:g}, 2-batch {got2:g}"
        + ("" if not problems else "; " + "; ".join(problems))
    )
    return CheckResult(name, not problems, details)


def _check_bound_numerics() -> CheckResult:
    expo = exponential_bound(0.6, 100, 80)
    harm = harmonic_bound(0.6)
    passed = isclose(expo, 0.5875, abs_tol=1e-4) and isclose(harm, 0.6250, abs_tol=1e-4)
    return CheckResult(
        "bound-numerics", passed, f"exponential {expo:.6f} vs 0.5875, harmonic {harm:.6f} vs 0.6250"
    )


def run_paper_checks() -> PaperChecksReport:
    """The one-shot golden run over the bundled examples and numeric pair."""
    checks = (
        _check_lifted(),
        _check_coverage_example(
            "coverage-5sets",
            "appendix_b1",
            7.0,
            6.0,
            [(1, [[2], [3], [4]]), (2, [[0, 4], [2]])],
        ),
        _check_coverage_example(
            "coverage-6sets",
            "appendix_b2",
            10.0,
            9.0,
            [(1, [[3], [1], [5], [4]]), (2, [[1, 2], [3, 4]])],
        ),
        _check_bound_numerics(),
    )
    return PaperChecksReport(checks=checks)


# Command dispatch.


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _subset_json(s: ElementSubset) -> list[int]:
    return list(s.members)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(doc, output: Optional[str]) -> None:
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", output)


def _parse_k_list(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError("empty k list")
    return tuple(out)


def _cmd_solve(args) -> int:
    instance, spec = load_instance(args.instance)
    trace = k_batch_greedy(instance, spec, args.k)
    if args.format == "csv":
        lines = ["stage,batch,value", f"0,,{trace.prefix_values[0]:.17g}"]
        for t, batch in enumerate(trace.batches, start=1):
            lines.append(
                f"{t},{';'.join(str(i) for i in batch)},{trace.prefix_values[t]:.17g}"
            )
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit_json(
            {
                "k": trace.k,
                "batches": [_subset_json(b) for b in trace.batches],
                "prefix_values": list(trace.prefix_values),
                "final_set": _subset_json(trace.final_set),
                "final_value": trace.final_value,
            },
            args.output,
        )
    return 0


def _curvature_report(instance, args) -> CurvatureReport:
    if args.method == "exhaustive":
        return k_batch_curvature(instance, args.k)
    if args.method == "closed-form":
        if instance.kind == "scheduling":
            return scheduling_curvature_closed_form(instance, args.k)
        if instance.kind == "sensing":
            return sensing_curvature_closed_form(instance, args.k)
        raise ValueError(f"no closed form for {instance.kind} instances")
    return curvature_auto(instance, args.k)


def _cmd_curvature(args) -> int:
    instance, _ = load_instance(args.instance)
    report = _curvature_report(instance, args)
    doc = {
        "k": report.k,
        "value": report.value,
        "argmax_set": None if report.argmax_set is None else _subset_json(report.argmax_set),
        "candidate_count": report.candidate_count,
        "method": report.method,
    }
    if args.format == "csv":
        _emit(
            "k,c_k,method,candidates\n"
            f"{report.k},{report.value:.17g},{report.method},{report.candidate_count}\n",
            args.output,
        )
    else:
        _emit_json(doc, args.output)
    return 0


def _cmd_bounds(args) -> int:
    if args.instance:
        instance, spec = load_instance(args.instance)
        rank = matroid_rank(spec)
        report = curvature_auto(instance, args.k)
        c_k = report.value
    else:
        if args.curvature is None or args.rank is None:
            raise ValueError("bounds needs either --instance or --curvature with --rank")
        c_k, rank = args.curvature, args.rank
    values = bound_values(c_k, rank, args.k)
    if args.format == "csv":
        row = {
            "k": values.k,
            "l": values.l,
            "m": values.m,
            "c_k": values.curvature,
            "harmonic": values.harmonic,
            "exponential": values.exponential,
        }
        _emit(rows_to_csv([row]), args.output)
    else:
        _emit_json(
            {
                "k": values.k,
                "K": values.K,
                "l": values.l,
                "m": values.m,
                "c_k": values.curvature,
                "harmonic": values.harmonic,
                "exponential": values.exponential,
                "better_of": values.better_of,
            },
            args.output,
        )
    return 0


def _cmd_certify(args) -> int:
    instance, spec = load_instance(args.instance)
    cert = certify(instance, spec, args.k)
    if args.format == "csv":
        dec = decompose(matroid_rank(spec), args.k)
        row = {
            "k": cert.k,
            "l": dec.l,
            "m": dec.m,
            "c_k": cert.curvature,
            "harmonic": cert.harmonic,
            "exponential": cert.exponential,
            "greedy_value": cert.greedy_value,
            "optimum": cert.optimum_value,
            "ratio": cert.ratio,
        }
        _emit(rows_to_csv([row]), args.output)
    else:
        _emit_json(
            {
                "k": cert.k,
                "greedy_value": cert.greedy_value,
                "greedy_set": _subset_json(cert.trace.final_set),
                "optimum_value": cert.optimum_value,
                "optimum_set": _subset_json(cert.optimum_set),
                "ratio": cert.ratio,
                "curvature": cert.curvature,
                "harmonic": cert.harmonic,
                "exponential": cert.exponential,
                "harmonic_holds": cert.harmonic_holds,
                "exponential_holds": cert.exponential_holds,
            },
            args.output,
        )
    return 0


def _cmd_experiment(args) -> int:
    config = ExperimentConfig(
        k_values=_parse_k_list(args.k_list),
        instance_path=args.instance,
        family=args.family,
        n=args.n,
        seed=args.seed,
        rank=args.rank,
        param_low=args.param_low,
        param_high=args.param_high,
        output=args.output,
        emit=tuple(args.emit),
    )
    rows = run_experiment_sweep(config)
    if args.format == "json":
        _emit_json(rows, args.output)
    else:
        _emit(rows_to_csv(rows), args.output)
    return 0


def _cmd_paper_checks(args) -> int:
    report = run_paper_checks()
    if args.format == "json":
        _emit_json(
            [
                {"name": c.name, "passed": c.passed, "details": c.details}
                for c in report.checks
            ],
            args.output,
        )
    else:
        lines = [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.details}"
            for c in report.checks
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return 0 if report.ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="batchgreedy",
        description=(
            "k-batch greedy maximization under matroid constraints with "
            "curvature-based performance bounds and brute-force certification"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p, instance_required=True):
        p.add_argument("--instance", required=instance_required, help="instance JSON file")
        p.add_argument("--k", type=int, required=True, help="batch size")
        p.add_argument("--output", help="write output to this path instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("csv", "json"), default="json")

    p_solve = sub.add_parser("solve", help="run the k-batch greedy strategy")
    shared(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_curv = sub.add_parser("curvature", help="total k-batch curvature")
    shared(p_curv)
    p_curv.add_argument(
        "--method",
        choices=("auto", "exhaustive", "closed-form"),
        default="auto",
    )
    p_curv.set_defaults(func=_cmd_curvature)

    p_bounds = sub.add_parser("bounds", help="harmonic and exponential bounds")
    shared(p_bounds, instance_required=False)
    p_bounds.add_argument("--curvature", type=float, help="c_k (instead of --instance)")
    p_bounds.add_argument("--rank", type=int, help="matroid rank K (with --curvature)")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_cert = sub.add_parser("certify", help="greedy vs brute-force optimum with bounds")
    shared(p_cert)
    p_cert.set_defaults(func=_cmd_certify)

    p_exp = sub.add_parser("experiment", help="sweep batch sizes, emit CSV rows")
    p_exp.add_argument("--instance", help="instance JSON file")
    p_exp.add_argument("--family", choices=("scheduling", "sensing"))
    p_exp.add_argument("--n", type=int, help="ground-set size for generated instances")
    p_exp.add_argument("--rank", type=int, help="uniform-matroid rank for generated instances")
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--param-low", type=float, help="lower sampling bound")
    p_exp.add_argument("--param-high", type=float, help="upper sampling bound")
    p_exp.add_argument("--k-list", required=True, help='batch sizes, e.g. "1,2,3" or "1..10"')
    p_exp.add_argument(
        "--emit",
        nargs="+",
        choices=EMIT_CHOICES,
        default=list(DEFAULT_EMIT),
        help="columns to fill (the CSV header is always complete)",
    )
    p_exp.add_argument("--output", help="write output to this path instead of stdout")
    p_exp.add_argument("--format", choices=("csv", "json"), default="csv")
    p_exp.set_defaults(func=_cmd_experiment)

    p_checks = sub.add_parser("paper-checks", help="golden checks over the bundled examples")
    p_checks.add_argument("--output", help="write output to this path instead of stdout")
    p_checks.add_argument("--format", choices=("text", "json"), default="text")
    p_checks.set_defaults(func=_cmd_paper_checks)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except (BatchGreedyError, ValueError, OSError) as exc:
        print(f"batchgreedy: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
