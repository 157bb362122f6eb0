"""Performance-bound formulas for k-batch greedy solutions.

For a polymatroid objective with total k-batch curvature c_k and a matroid
of rank K = k*l + m (0 < m <= k):

* harmonic bound (any matroid):      f(S)/f(O) >= 1 / (1 + c_k)
* exponential bound (uniform only):  f(S)/f(O) >=
      (1/c_k) * (1 - (1 - (c_k/(l+1)) * (m/k)) * (1 - c_k/(l+1))^l)

At k = 1 the exponential bound reduces to the single-element form
(1/c)(1 - (1 - c/K)^K), exposed as :func:`unit_batch_bound`; at c_k = 1 it
reduces to 1 - (1 - m/(k(l+1)))(1 - 1/(l+1))^l.  When k divides K the
exponential bound dominates the harmonic bound, but not in general: at
c_k = 0.6, K = 100, k = 80 the exponential bound is 0.5875 against a
harmonic 0.6250.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp

from . import params
from .greedy import decompose


def harmonic_bound(c_k: float) -> float:
    """1 / (1 + c_k); strictly decreasing, in [1/2, 1] for c_k in [0, 1]."""
    if not 0.0 <= c_k <= 1.0:
        raise ValueError(f"curvature {c_k!r} outside [0, 1]")
    return 1.0 / (1.0 + c_k)


def exponential_bound(c_k: float, K: int, k: int) -> float:
    """The uniform-matroid bound; equals 1 when k = K.

    c_k = 0 is outside the defining ratio, so curvatures below
    ``CURVATURE_ZERO_SWITCH`` evaluate via the analytic limit
    (m/k + l) / (l + 1) instead of the 0/0 expression.
    """
    if not 0.0 <= c_k <= 1.0:
        raise ValueError(f"curvature {c_k!r} outside [0, 1]")
    if k > K:
        raise ValueError(f"batch size {k} exceeds the rank {K}")
    dec = decompose(K, k)
    stages = dec.l + 1
    ratio = dec.m / dec.k
    if c_k < params.CURVATURE_ZERO_SWITCH:
        return (ratio + dec.l) / stages
    a = c_k / stages
    return (1.0 - (1.0 - a * ratio) * (1.0 - a) ** dec.l) / c_k


def unit_batch_bound(c: float, K: int) -> float:
    """(1/c)(1 - (1 - c/K)^K), the k = 1 uniform-matroid bound.

    Always at least (1 - e^{-c})/c, which it approaches from above as K
    grows.
    """
    if not 0.0 < c <= 1.0:
        raise ValueError(f"curvature {c!r} outside ]0, 1]")
    if K < 1:
        raise ValueError(f"rank must be positive, got {K}")
    return (1.0 - (1.0 - c / K) ** K) / c


def continuous_limit(c: float) -> float:
    """(1 - e^{-c})/c, the large-K limit of :func:`unit_batch_bound`."""
    if not 0.0 < c <= 1.0:
        raise ValueError(f"curvature {c!r} outside ]0, 1]")
    return (1.0 - exp(-c)) / c


@dataclass(frozen=True)
class BoundValues:
    """Both bounds for one (c_k, K, k) triple, with the comparison verdict."""

    curvature: float
    K: int
    k: int
    l: int
    m: int
    harmonic: float
    exponential: float
    better_of: str  # "harmonic" | "exponential" | "equal"


def bound_values(c_k: float, K: int, k: int, tie: float = params.BOUND_TIE_TOL) -> BoundValues:
    dec = decompose(K, k)
    h = harmonic_bound(c_k)
    e = exponential_bound(c_k, K, k)
    if abs(h - e) <= tie:
        better = "equal"
    elif e > h:
        better = "exponential"
    else:
        better = "harmonic"
    return BoundValues(
        curvature=c_k,
        K=K,
        k=k,
        l=dec.l,
        m=dec.m,
        harmonic=h,
        exponential=e,
        better_of=better,
    )
