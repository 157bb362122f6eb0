"""Shared instance builders for the test suite.

Every builder is deterministic in its seed so failures replay exactly.
"""

from __future__ import annotations

from itertools import product
from random import Random

from hypothesis import settings

from batchgreedy import (
    ElementSubset,
    MatroidSpec,
    ObjectiveInstance,
    random_coverage_instance,
    random_scheduling_instance,
    random_sensing_instance,
)

# Reproducible property tests: no wall-clock deadline, fixed example order.
settings.register_profile("certification", deadline=None, derandomize=True)
settings.load_profile("certification")

FAMILIES = ("coverage", "scheduling", "sensing")


def family_instance(family: str, n: int, seed: int) -> ObjectiveInstance:
    if family == "coverage":
        return random_coverage_instance(n, seed)
    if family == "scheduling":
        return random_scheduling_instance(n, seed)
    if family == "sensing":
        return random_sensing_instance(n, seed)
    raise ValueError(family)


def mixed_instance(index: int, n: int) -> ObjectiveInstance:
    return family_instance(FAMILIES[index % 3], n, seed=1000 + index)


def random_partition_spec(n: int, seed: int, max_rank: int) -> MatroidSpec:
    """Contiguous blocks over range(n) with capacities summing to <= max_rank."""
    rng = Random(seed)
    n_blocks = rng.randint(2, min(3, n))
    cuts = sorted(rng.sample(range(1, n), n_blocks - 1))
    edges = [0, *cuts, n]
    blocks = [list(range(edges[i], edges[i + 1])) for i in range(n_blocks)]
    capacities = []
    remaining = max_rank
    for i, block in enumerate(blocks):
        hi = min(len(block), remaining - (n_blocks - 1 - i))
        cap = rng.randint(1, max(1, hi))
        capacities.append(cap)
        remaining -= cap
    return MatroidSpec.partition(blocks, capacities)


def subset(elements, n: int) -> ElementSubset:
    return ElementSubset.of(elements, n)


def scheduling_outcome_tree(p_rows, agents) -> float:
    """Independent oracle for the scheduling objective.

    Enumerates the full Bernoulli outcome tree of the selected agents per
    subtask and averages the probability that at least one succeeds.
    """
    if not p_rows:
        raise ValueError("need at least one subtask")
    total = 0.0
    for row in p_rows:
        probs = [row[a] for a in agents]
        done = 0.0
        for bits in product((0, 1), repeat=len(probs)):
            pr = 1.0
            for b, q in zip(bits, probs):
                pr *= q if b else 1.0 - q
            if any(bits):
                done += pr
        total += done
    return total / len(p_rows)
