"""Brute-force optimum and end-to-end bound certification.

The brute-force scan is the package's independent verification oracle: it
never shares selection logic with the greedy solver beyond the objective
evaluator.  For nondecreasing objectives over a verified matroid some
optimum has full rank K, so the scan restricts to cardinality-K subsets;
otherwise it walks every independent set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from . import params
from ._backend import kernels
from .bounds import exponential_bound, harmonic_bound
from .curvature import CurvatureReport, k_batch_curvature
from .errors import CandidateCapExceeded, ExhaustiveLimitExceeded, RankUndefined
from .greedy import GreedyTrace, k_batch_greedy
from .matroids import MatroidSpec, matroid_rank
from .objectives import ObjectiveInstance
from .subsets import ElementSubset


@dataclass(frozen=True)
class OptimumCertificate:
    optimum_value: float
    optimum_set: ElementSubset
    sets_scanned: int


def _is_monotone(instance: ObjectiveInstance, limit: int) -> bool:
    """Whether f is nondecreasing, analytically where the family implies it."""
    if instance.kind in ("coverage", "scheduling", "sensing"):
        return True
    n = instance.ground_size
    if n > limit:
        return False  # unknown; fall back to the full independent-set scan
    obj = instance._packed
    values = [kernels.eval_mask(obj, m) for m in range(1 << n)]
    for m in range(1 << n):
        for j in range(n):
            bit = 1 << j
            if not m & bit and values[m | bit] < values[m] - params.VALUE_ATOL:
                return False
    return True


def brute_force_optimum(
    instance: ObjectiveInstance,
    spec: MatroidSpec,
    candidate_cap: int = params.CANDIDATE_CAP,
    full_scan_limit: int = params.FULL_SCAN_LIMIT,
    monotone_check_limit: int = params.EXHAUSTIVE_CHECK_LIMIT,
) -> OptimumCertificate:
    """Exact maximum of f over the independent sets.

    When f is nondecreasing and the spec is a matroid (uniform and partition
    kinds by construction; explicit kinds by axiom check), only the C(N, K)
    subsets of cardinality K are scanned, guarded by ``candidate_cap``.
    The fallback scans all 2^N subsets filtered by independence, guarded by
    ``full_scan_limit``.  Argmax ties resolve to the first subset in
    (cardinality, lexicographic) order.
    """
    if instance.ground_size != spec.ground_size:
        raise ValueError("instance and matroid ground sizes differ")
    n = instance.ground_size
    obj = instance._packed
    mat = kernels.pack_matroid(spec)

    rank: Optional[int] = None
    try:
        rank = matroid_rank(spec)
    except (RankUndefined, ExhaustiveLimitExceeded):
        rank = None
    if rank is not None and _is_monotone(instance, monotone_check_limit):
        count = comb(n, rank)
        if count > candidate_cap:
            raise CandidateCapExceeded(
                f"C({n},{rank}) = {count} subsets exceed the cap {candidate_cap}"
            )
        found, mask, value, scanned = kernels.best_subset_of_card(obj, mat, n, rank)
        if found:
            return OptimumCertificate(
                optimum_value=value,
                optimum_set=ElementSubset.from_mask(mask, n),
                sets_scanned=scanned,
            )
        # No independent set of full rank: fall through to the full scan.
    if n > full_scan_limit:
        raise ExhaustiveLimitExceeded(
            f"full scan over {n} elements exceeds the guard {full_scan_limit}"
        )
    found, mask, value, scanned = kernels.best_independent_subset(obj, mat, n)
    return OptimumCertificate(
        optimum_value=value,
        optimum_set=ElementSubset.from_mask(mask, n),
        sets_scanned=scanned,
    )


@dataclass(frozen=True)
class BoundCertificate:
    """Greedy value, brute-force optimum, curvature, bounds, and verdicts.

    ``exponential`` and ``exponential_holds`` are ``None`` for non-uniform
    specs, where the exponential bound does not apply.
    """

    k: int
    greedy_value: float
    optimum_value: float
    ratio: float
    curvature: float
    harmonic: float
    exponential: Optional[float]
    harmonic_holds: bool
    exponential_holds: Optional[bool]
    trace: GreedyTrace
    optimum_set: ElementSubset
    curvature_report: CurvatureReport


def certify(
    instance: ObjectiveInstance,
    spec: MatroidSpec,
    k: int,
    slack: float = params.HOLDS_SLACK,
) -> BoundCertificate:
    """Run greedy, brute force, and curvature; check the bound conclusions.

    ``ratio`` is f(S)/f(O), defined as 1 when the optimum is 0 (an
    identically-zero objective makes greedy vacuously optimal).  A bound
    holds when ratio >= bound - ``slack``.
    """
    rank = matroid_rank(spec)
    if not 1 <= k <= rank:
        raise ValueError(f"batch size {k} outside [1, {rank}]")
    trace = k_batch_greedy(instance, spec, k)
    optimum = brute_force_optimum(instance, spec)
    curv = k_batch_curvature(instance, k)
    harmonic = harmonic_bound(curv.value)
    exponential = (
        exponential_bound(curv.value, rank, k) if spec.kind == "uniform" else None
    )
    if optimum.optimum_value > 0.0:
        ratio = trace.final_value / optimum.optimum_value
    else:
        ratio = 1.0
    return BoundCertificate(
        k=k,
        greedy_value=trace.final_value,
        optimum_value=optimum.optimum_value,
        ratio=ratio,
        curvature=curv.value,
        harmonic=harmonic,
        exponential=exponential,
        harmonic_holds=ratio >= harmonic - slack,
        exponential_holds=(
            ratio >= exponential - slack if exponential is not None else None
        ),
        trace=trace,
        optimum_set=optimum.optimum_set,
        curvature_report=curv,
    )
