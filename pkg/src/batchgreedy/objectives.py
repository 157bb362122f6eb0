"""Set-function objectives: the four built-in families and property checks.

An :class:`ObjectiveInstance` is a value oracle for a set function over a
ground set of at most 64 elements:

* ``coverage`` -- f(S) = size of the union of the selected sets; ground
  elements are the sets, universe elements are named at construction.
* ``scheduling`` -- n subtasks, N agents with success probabilities
  p_i(a) in ]0, 1]; f(S) = (1/n) * sum_i (1 - prod_{a in S} (1 - p_i(a))),
  the expected fraction of subtasks accomplished by the agents in S.
* ``sensing`` -- diagonal linear-Gaussian measurements with parameters
  e_i in [0.5, 1] and noise deviation sigma; f(S) = the information gain
  0.5 * log((1 + sum e_i / sigma^2) * (1 + sum (1 - e_i) / sigma^2)).
  Natural logarithm; the 0.5 entropy factor is kept even though it cancels
  in curvature ratios, so traces read as entropy differences.
* ``table`` -- explicit nonnegative values for every subset, indexed by
  bit mask; the empty subset must map to 0.

All four families satisfy f(empty) = 0; the first three are polymatroid set
functions by construction and :func:`check_polymatroid` verifies the
properties exhaustively at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import isfinite
from typing import Hashable, Optional, Sequence

from . import params
from ._backend import kernels
from .errors import ExhaustiveLimitExceeded, GroundSetMismatch
from .subsets import ElementSubset

KINDS = ("coverage", "scheduling", "sensing", "table")


@dataclass(frozen=True)
class ObjectiveInstance:
    """A polymatroid set-function value oracle; see the module docstring.

    Build instances with the :meth:`coverage`, :meth:`scheduling`,
    :meth:`sensing` and :meth:`table` constructors; the payload fields other
    than the active family's are ``None``.
    """

    kind: str
    ground_size: int
    sets: Optional[tuple[tuple[int, ...], ...]] = None
    universe: Optional[tuple[Hashable, ...]] = None
    p: Optional[tuple[tuple[float, ...], ...]] = None
    e: Optional[tuple[float, ...]] = None
    sigma: Optional[float] = None
    values: Optional[tuple[float, ...]] = None

    @classmethod
    def coverage(cls, sets: Sequence[Sequence[Hashable]]) -> "ObjectiveInstance":
        """Coverage objective over named universe elements.

        ``sets`` is one element list per ground element; universe names are
        mapped to dense indices in order of first appearance.
        """
        _check_ground(len(sets))
        names: dict[Hashable, int] = {}
        packed = []
        for s in sets:
            idxs = []
            for name in s:
                if name not in names:
                    names[name] = len(names)
                idxs.append(names[name])
            packed.append(tuple(sorted(set(idxs))))
        return cls(
            kind="coverage",
            ground_size=len(sets),
            sets=tuple(packed),
            universe=tuple(names),
        )

    @classmethod
    def scheduling(cls, p: Sequence[Sequence[float]]) -> "ObjectiveInstance":
        """Task-scheduling objective from an n x N success-probability matrix."""
        if not p or not p[0]:
            raise ValueError("scheduling needs at least one subtask and one agent")
        n_agents = len(p[0])
        _check_ground(n_agents)
        rows = []
        for i, row in enumerate(p):
            if len(row) != n_agents:
                raise ValueError(f"scheduling row {i} has {len(row)} entries, expected {n_agents}")
            for a, pa in enumerate(row):
                if not (isfinite(pa) and 0.0 < pa <= 1.0):
                    raise ValueError(f"p[{i}][{a}] = {pa!r} outside ]0, 1]")
            rows.append(tuple(float(x) for x in row))
        return cls(kind="scheduling", ground_size=n_agents, p=tuple(rows))

    @classmethod
    def sensing(cls, e: Sequence[float], sigma: float = 1.0) -> "ObjectiveInstance":
        """Adaptive-sensing information-gain objective."""
        _check_ground(len(e))
        if not e:
            raise ValueError("sensing needs at least one measurement matrix")
        for i, ei in enumerate(e):
            if not (isfinite(ei) and 0.5 <= ei <= 1.0):
                raise ValueError(f"e[{i}] = {ei!r} outside [0.5, 1]")
        if not (isfinite(sigma) and sigma > 0.0):
            raise ValueError(f"sigma = {sigma!r} must be positive")
        return cls(
            kind="sensing",
            ground_size=len(e),
            e=tuple(float(x) for x in e),
            sigma=float(sigma),
        )

    @classmethod
    def table(cls, values: Sequence[float]) -> "ObjectiveInstance":
        """Explicit set function; ``values[mask]`` is f of that subset."""
        size = len(values)
        n = size.bit_length() - 1
        if size == 0 or size != 1 << n:
            raise ValueError(f"table must have 2^N entries, got {size}")
        _check_ground(n)
        vals = tuple(float(v) for v in values)
        if vals[0] != 0.0:
            raise ValueError("table must map the empty subset to 0")
        for m, v in enumerate(vals):
            if not (isfinite(v) and v >= 0.0):
                raise ValueError(f"table value for mask {m:#x} is {v!r}, expected nonnegative")
        return cls(kind="table", ground_size=n, values=vals)

    @cached_property
    def _packed(self):
        return kernels.pack_objective(self)

    def full_set(self) -> ElementSubset:
        return ElementSubset.full(self.ground_size)


def _check_ground(n: int) -> None:
    if n > params.MAX_GROUND_SIZE:
        raise ValueError(
            f"ground size {n} exceeds the bit-encoding cap {params.MAX_GROUND_SIZE}"
        )


def _check_subset(instance: ObjectiveInstance, subset: ElementSubset) -> None:
    if subset.ground_size != instance.ground_size:
        raise GroundSetMismatch(
            f"subset over {subset.ground_size} elements used with a "
            f"{instance.ground_size}-element instance"
        )


def evaluate(instance: ObjectiveInstance, subset: ElementSubset) -> float:
    """f(subset).  Deterministic and pure: equal arguments give bit-identical
    values."""
    _check_subset(instance, subset)
    return kernels.eval_mask(instance._packed, subset.mask)


def evaluate_mask(instance: ObjectiveInstance, mask: int) -> float:
    """f of the subset encoded by ``mask`` (hot-path variant of evaluate)."""
    if mask < 0 or mask >> instance.ground_size:
        raise GroundSetMismatch(f"mask {mask:#x} does not fit ground size {instance.ground_size}")
    return kernels.eval_mask(instance._packed, mask)


def marginal_gain(instance: ObjectiveInstance, t: ElementSubset, a: ElementSubset) -> float:
    """rho_T(A) = f(A u T) - f(A); the union handles overlapping T and A."""
    _check_subset(instance, t)
    _check_subset(instance, a)
    packed = instance._packed
    return kernels.eval_mask(packed, a.mask | t.mask) - kernels.eval_mask(packed, a.mask)


@dataclass(frozen=True)
class PropertyWitness:
    """A concrete violation found by :func:`check_polymatroid`.

    ``kind`` is the violated property.  For ``"monotonicity"``, f(a) > f(b)
    with a subset of b and ``j`` is ``None``; for ``"submodularity"``,
    adding ``j`` to ``a`` gains strictly less than adding it to ``b``;
    for ``"empty"``, f(empty) differs from 0.
    """

    kind: str
    a: ElementSubset
    b: ElementSubset
    j: Optional[int] = None


@dataclass(frozen=True)
class PolymatroidReport:
    is_nondecreasing: bool
    is_submodular: bool
    empty_is_zero: bool
    witness: Optional[PropertyWitness] = None

    @property
    def ok(self) -> bool:
        return self.is_nondecreasing and self.is_submodular and self.empty_is_zero


def check_polymatroid(
    instance: ObjectiveInstance,
    limit: int = params.EXHAUSTIVE_CHECK_LIMIT,
    tol: float = params.VALUE_ATOL,
) -> PolymatroidReport:
    """Exhaustively verify the polymatroid properties over all 2^N subsets.

    Checks f(empty) = 0, monotonicity over every pair A subset of B, and
    submodularity over every (A subset of B, j not in B), each with absolute
    tolerance ``tol``.  The first violation (in that property order) is
    returned as the witness.  Raises :class:`ExhaustiveLimitExceeded` when
    the ground set is larger than ``limit``.
    """
    n = instance.ground_size
    if n > limit:
        raise ExhaustiveLimitExceeded(
            f"polymatroid check over {n} elements exceeds the limit {limit}"
        )
    empty_ok, mono_ok, submod_ok, wkind, wa, wb, wj = kernels.polymatroid_scan(
        instance._packed, n, tol
    )
    witness = None
    if wkind:
        kind = {1: "empty", 2: "monotonicity", 3: "submodularity"}[wkind]
        witness = PropertyWitness(
            kind=kind,
            a=ElementSubset.from_mask(wa, n),
            b=ElementSubset.from_mask(wb, n),
            j=wj if wkind == 3 else None,
        )
    return PolymatroidReport(
        is_nondecreasing=mono_ok,
        is_submodular=submod_ok,
        empty_is_zero=empty_ok,
        witness=witness,
    )
