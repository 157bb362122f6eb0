"""Total batched curvature: exact exhaustive computation and closed forms.

The total k-batch curvature of a set function f is

    c_k = max over I with |I| = k and rho_I(empty) != 0
          of  1 - rho_I(X \\ I) / rho_I(empty),

which for k = 1 is the classical total curvature c.  For polymatroid
instances c_k lies in [0, 1], equals 0 for additive functions, and is
nonincreasing in k.  When no subset qualifies (an identically-zero f) the
curvature is defined as 0 here, which collapses the harmonic bound to 1,
consistent with greedy being vacuously optimal.

The scheduling family (one subtask) and the sensing family (sigma = 1) admit
closed forms that skip the two-sided function evaluations; both are exposed
as separate operations and agree with the exhaustive scan to 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from . import params
from ._backend import kernels
from .errors import CandidateCapExceeded
from .objectives import ObjectiveInstance
from .subsets import ElementSubset


@dataclass(frozen=True)
class CurvatureReport:
    """c_k with the subset attaining it.

    ``candidate_count`` is the number of k-subsets with a nonzero gain from
    the empty set (the max ranges over exactly those); ``argmax_set`` is
    ``None`` when nothing qualifies.
    """

    k: int
    value: float
    argmax_set: Optional[ElementSubset]
    candidate_count: int
    method: str


def k_batch_curvature(
    instance: ObjectiveInstance,
    k: int,
    candidate_cap: int = params.CANDIDATE_CAP,
    denom_eps: float = params.DENOM_EPS,
) -> CurvatureReport:
    """Exhaustive c_k over all C(N, k) subsets.

    Subsets with rho_I(empty) <= ``denom_eps`` are excluded from the max
    (the floating-point reading of the nonzero-gain membership condition).
    Ties resolve to the lexicographically smallest argmax subset.
    """
    n = instance.ground_size
    if not 1 <= k <= n:
        raise ValueError(f"batch size {k} outside [1, {n}]")
    count = comb(n, k)
    if count > candidate_cap:
        raise CandidateCapExceeded(
            f"C({n},{k}) = {count} subsets exceed the cap {candidate_cap}"
        )
    value, mask, qualifying = kernels.curvature_scan(instance._packed, n, k, denom_eps)
    return CurvatureReport(
        k=k,
        value=value,
        argmax_set=ElementSubset.from_mask(mask, n) if qualifying else None,
        candidate_count=qualifying,
        method="exhaustive",
    )


def scheduling_curvature_closed_form(
    instance: ObjectiveInstance, k: int
) -> CurvatureReport:
    """c_k for the one-subtask scheduling family, without enumeration.

    With success probabilities ordered ascending, the survival product of
    every agent outside the k least reliable ones gives

        c_k = 1 - prod over the N - k largest probabilities of (1 - p),

    attained by the k smallest probabilities.  Only the n = 1 case is
    supported; no closed form is stated for more subtasks.
    """
    if instance.kind != "scheduling":
        raise ValueError(f"expected a scheduling instance, got {instance.kind}")
    if len(instance.p) != 1:
        raise ValueError(
            f"closed form requires exactly one subtask row, got {len(instance.p)}"
        )
    n = instance.ground_size
    if not 1 <= k <= n:
        raise ValueError(f"batch size {k} outside [1, {n}]")
    probs = instance.p[0]
    order = sorted(range(n), key=lambda i: (probs[i], i))
    survival = 1.0
    for i in order[k:]:
        survival *= 1.0 - probs[i]
    return CurvatureReport(
        k=k,
        value=1.0 - survival,
        argmax_set=ElementSubset.of(order[:k], n),
        candidate_count=comb(n, k),  # p > 0 makes every k-subset qualify
        method="closed_form_scheduling",
    )


def sensing_curvature_closed_form(
    instance: ObjectiveInstance, k: int
) -> CurvatureReport:
    """c_k for the sensing family at sigma = 1.

    With s = 1 + sum(e_i) and t = 1 + sum(1 - e_i) over the whole ground
    set, maximizes over k-subsets J (subset sums u and v):

        1 - (log(s t) - log((s - u)(t - v))) / log((1 + u)(1 + v)).

    The entropy halves cancel in the ratio.  The max still ranges over all
    C(N, k) subsets but needs only running subset sums, so this scan is not
    bounded by the candidate cap.
    """
    if instance.kind != "sensing":
        raise ValueError(f"expected a sensing instance, got {instance.kind}")
    if instance.sigma != 1.0:
        raise ValueError(f"closed form requires sigma = 1, got {instance.sigma}")
    n = instance.ground_size
    if not 1 <= k <= n:
        raise ValueError(f"batch size {k} outside [1, {n}]")
    value, mask = kernels.sensing_curvature_scan(instance.e, k)
    return CurvatureReport(
        k=k,
        value=value,
        argmax_set=ElementSubset.from_mask(mask, n),
        candidate_count=comb(n, k),  # e >= 0.5 makes every k-subset qualify
        method="closed_form_sensing",
    )
