"""The k-batch greedy strategy and trace validation.

Writing the matroid rank as K = k*l + m with l >= 0 and 0 < m <= k, the
strategy runs l stages that each add the feasible k-element batch of maximum
gain, then one final stage adding the best m-element batch.  Candidate
batches are enumerated in lexicographic order of their sorted index tuples;
the first batch whose gain is within ``TIE_REL_TOL``-relative distance of the
running maximum (the maximum itself included) wins by first encounter, which
makes the solver deterministic even though greedy solutions are not unique.

:func:`validate_trace` certifies whether an arbitrary trace is a greedy
solution under *some* tie-breaking, so externally stated solutions remain
checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from . import params
from ._backend import kernels
from .errors import CandidateCapExceeded, GroundSetMismatch, NoFeasibleBatch
from .matroids import MatroidSpec, is_independent, matroid_rank
from .objectives import ObjectiveInstance
from .subsets import ElementSubset


@dataclass(frozen=True)
class BatchDecomposition:
    """K = k*l + m with l >= 0 and 0 < m <= k (m = k iff k divides K)."""

    K: int
    k: int
    l: int
    m: int

    def __post_init__(self) -> None:
        if self.K != self.k * self.l + self.m or not (0 < self.m <= self.k) or self.l < 0:
            raise ValueError(f"inconsistent decomposition {self}")

    @property
    def batch_sizes(self) -> tuple[int, ...]:
        return (self.k,) * self.l + (self.m,)


def decompose(K: int, k: int) -> BatchDecomposition:
    """The unique (l, m) with K = k*l + m and 0 < m <= k.

    m is not necessarily the remainder of K/k: when k divides K the final
    batch is a full one (m = k).  K = 0 is an empty schedule and is rejected;
    callers handle it trivially.
    """
    if k < 1:
        raise ValueError(f"batch size must be positive, got {k}")
    if K < 1:
        raise ValueError(f"rank must be positive, got {K}")
    if K % k == 0:
        return BatchDecomposition(K=K, k=k, l=K // k - 1, m=k)
    return BatchDecomposition(K=K, k=k, l=K // k, m=K % k)


@dataclass(frozen=True)
class GreedyTrace:
    """Batches J_1..J_{l+1} with the prefix values f(S^0)..f(S^{l+1})."""

    k: int
    batches: tuple[ElementSubset, ...]
    prefix_values: tuple[float, ...]
    final_set: ElementSubset

    def __post_init__(self) -> None:
        if len(self.prefix_values) != len(self.batches) + 1:
            raise ValueError("need one prefix value per stage plus the empty prefix")
        acc = 0
        for b in self.batches:
            if acc & b.mask:
                raise ValueError("batches must be pairwise disjoint")
            acc |= b.mask
        if acc != self.final_set.mask:
            raise ValueError("final_set must be the union of the batches")

    @property
    def final_value(self) -> float:
        return self.prefix_values[-1]

    def prefixes(self) -> tuple[ElementSubset, ...]:
        """S^0, S^1, ..., S^{l+1}."""
        n = self.final_set.ground_size
        out = [ElementSubset.empty(n)]
        acc = 0
        for b in self.batches:
            acc |= b.mask
            out.append(ElementSubset.from_mask(acc, n))
        return tuple(out)


def _check_pair(instance: ObjectiveInstance, spec: MatroidSpec) -> None:
    if instance.ground_size != spec.ground_size:
        raise GroundSetMismatch(
            f"instance over {instance.ground_size} elements used with a "
            f"{spec.ground_size}-element matroid"
        )


def k_batch_greedy(
    instance: ObjectiveInstance,
    spec: MatroidSpec,
    k: int,
    candidate_cap: int = params.CANDIDATE_CAP,
) -> GreedyTrace:
    """Run the k-batch greedy strategy and return the full trace.

    At stage t the solver enumerates every same-size batch J of unused
    elements with S^t u J independent and takes the maximum-gain one under
    the lexicographic first-encounter tie rule.  The instance is assumed to
    have passed its polymatroid checks and the spec its axioms; neither is
    re-verified here.  Stages whose candidate count C(|free|, size) exceeds
    ``candidate_cap`` raise rather than sample.
    """
    _check_pair(instance, spec)
    n = instance.ground_size
    rank = matroid_rank(spec)
    if rank == 0:
        empty = ElementSubset.empty(n)
        return GreedyTrace(
            k=k,
            batches=(),
            prefix_values=(kernels.eval_mask(instance._packed, 0),),
            final_set=empty,
        )
    if not 1 <= k <= rank:
        raise ValueError(f"batch size {k} outside [1, {rank}]")
    dec = decompose(rank, k)
    obj = instance._packed
    mat = kernels.pack_matroid(spec)
    acc_mask = 0
    value = kernels.eval_mask(obj, 0)
    prefix_values = [value]
    batches = []
    for stage, size in enumerate(dec.batch_sizes, start=1):
        n_candidates = comb(n - acc_mask.bit_count(), size)
        if n_candidates > candidate_cap:
            raise CandidateCapExceeded(
                f"stage {stage} would enumerate {n_candidates} batches "
                f"(cap {candidate_cap})"
            )
        sel_mask, sel_value, _, feasible = kernels.greedy_stage(
            obj, mat, n, acc_mask, value, size
        )
        if feasible == 0:
            raise NoFeasibleBatch(f"no independent batch of size {size} at stage {stage}")
        batches.append(ElementSubset.from_mask(sel_mask, n))
        acc_mask |= sel_mask
        value = sel_value
        prefix_values.append(value)
    return GreedyTrace(
        k=k,
        batches=tuple(batches),
        prefix_values=tuple(prefix_values),
        final_set=ElementSubset.from_mask(acc_mask, n),
    )


def make_trace(
    instance: ObjectiveInstance, k: int, batches: Sequence[ElementSubset]
) -> GreedyTrace:
    """Build a trace from explicit batches, evaluating the prefix values."""
    n = instance.ground_size
    acc = 0
    prefix_values = [kernels.eval_mask(instance._packed, 0)]
    for b in batches:
        if b.ground_size != n:
            raise GroundSetMismatch("batch ground size differs from the instance")
        acc |= b.mask
        prefix_values.append(kernels.eval_mask(instance._packed, acc))
    return GreedyTrace(
        k=k,
        batches=tuple(batches),
        prefix_values=tuple(prefix_values),
        final_set=ElementSubset.from_mask(acc, n),
    )


def max_batch_gain(
    instance: ObjectiveInstance,
    spec: MatroidSpec,
    base: ElementSubset,
    size: int,
    candidate_cap: int = params.CANDIDATE_CAP,
) -> Optional[float]:
    """Strict maximum gain of any feasible ``size``-batch on top of ``base``.

    Returns ``None`` when no feasible batch exists (including when fewer than
    ``size`` elements remain).
    """
    _check_pair(instance, spec)
    n = instance.ground_size
    if size < 1:
        raise ValueError(f"batch size must be positive, got {size}")
    free = n - base.mask.bit_count()
    if free < size:
        return None
    if comb(free, size) > candidate_cap:
        raise CandidateCapExceeded(
            f"{comb(free, size)} candidate batches exceed the cap {candidate_cap}"
        )
    base_value = kernels.eval_mask(instance._packed, base.mask)
    mat = kernels.pack_matroid(spec)
    _, _, strict_max, feasible = kernels.greedy_stage(
        instance._packed, mat, n, base.mask, base_value, size
    )
    return strict_max if feasible else None


@dataclass(frozen=True)
class TraceValidation:
    """Verdict of :func:`validate_trace`; ``stage`` is 1-based."""

    ok: bool
    stage: Optional[int] = None
    reason: str = ""


def validate_trace(
    instance: ObjectiveInstance,
    spec: MatroidSpec,
    trace: GreedyTrace,
    atol: float = params.VALUE_ATOL,
    candidate_cap: int = params.CANDIDATE_CAP,
) -> TraceValidation:
    """Certify that a trace is greedy-consistent under some tie-breaking.

    The trace passes iff it is structurally sound (batch sizes match the
    decomposition, every prefix is independent, recorded values re-evaluate,
    the final set has full rank) and at every stage the recorded batch
    attains the maximum gain among all feasible same-size batches within
    ``atol``.  Failures report the first offending 1-based stage.
    """
    _check_pair(instance, spec)
    n = instance.ground_size
    if trace.final_set.ground_size != n:
        return TraceValidation(False, None, "trace ground size differs from the instance")
    rank = matroid_rank(spec)
    if rank == 0:
        if trace.batches:
            return TraceValidation(False, 1, "rank-0 matroid admits no batches")
        return TraceValidation(True)
    if not 1 <= trace.k <= rank:
        return TraceValidation(False, None, f"batch size {trace.k} outside [1, {rank}]")
    dec = decompose(rank, trace.k)
    if len(trace.batches) != dec.l + 1:
        return TraceValidation(
            False, None, f"expected {dec.l + 1} batches, found {len(trace.batches)}"
        )
    for stage, (batch, size) in enumerate(zip(trace.batches, dec.batch_sizes), start=1):
        if len(batch) != size:
            return TraceValidation(
                False, stage, f"batch has {len(batch)} elements, expected {size}"
            )
    if len(trace.final_set) != rank:
        return TraceValidation(
            False, None, f"final set has {len(trace.final_set)} elements, expected {rank}"
        )

    obj = instance._packed
    mat = kernels.pack_matroid(spec)
    acc_mask = 0
    prev_value = kernels.eval_mask(obj, 0)
    if abs(trace.prefix_values[0] - prev_value) > atol:
        return TraceValidation(False, None, "recorded empty-prefix value mismatch")
    for stage, (batch, size) in enumerate(zip(trace.batches, dec.batch_sizes), start=1):
        new_mask = acc_mask | batch.mask
        if not is_independent(spec, ElementSubset.from_mask(new_mask, n)):
            return TraceValidation(False, stage, "prefix is not independent")
        new_value = kernels.eval_mask(obj, new_mask)
        if abs(trace.prefix_values[stage] - new_value) > atol:
            return TraceValidation(False, stage, "recorded prefix value mismatch")
        if comb(n - acc_mask.bit_count(), size) > candidate_cap:
            raise CandidateCapExceeded(
                f"stage {stage} would enumerate more than {candidate_cap} batches"
            )
        _, _, strict_max, feasible = kernels.greedy_stage(
            obj, mat, n, acc_mask, prev_value, size
        )
        if not feasible:
            return TraceValidation(False, stage, "no feasible batch exists at this stage")
        if new_value - prev_value < strict_max - atol:
            return TraceValidation(
                False, stage, "batch gain is below the stage maximum"
            )
        acc_mask = new_mask
        prev_value = new_value
    return TraceValidation(True)
