from itertools import combinations
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batchgreedy import (
    ElementSubset,
    ExhaustiveLimitExceeded,
    GroundSetMismatch,
    ObjectiveInstance,
    check_polymatroid,
    evaluate,
    evaluate_mask,
    load_bundled,
    marginal_gain,
    random_coverage_instance,
    random_scheduling_instance,
    random_sensing_instance,
)
from conftest import family_instance, scheduling_outcome_tree, subset

B1_SETS = [["a", "f"], ["f"], ["a", "b", "g"], ["c", "f", "g"], ["e", "g", "h"]]


class TestEvaluate:
    def test_coverage_b1_union(self):
        inst = ObjectiveInstance.coverage(B1_SETS)
        # |S3 u S4 u S5| = |{a,b,c,e,f,g,h}|
        assert evaluate(inst, subset([2, 3, 4], 5)) == 7.0

    def test_empty_is_zero_for_every_kind(self):
        instances = [
            ObjectiveInstance.coverage(B1_SETS),
            ObjectiveInstance.scheduling([[0.3, 0.6]]),
            ObjectiveInstance.sensing([0.5, 0.9]),
            ObjectiveInstance.table([0.0, 1.0, 2.0, 2.5]),
        ]
        for inst in instances:
            assert evaluate(inst, ElementSubset.empty(inst.ground_size)) == 0.0

    def test_scheduling_outcome_tree_oracle(self):
        # 1 - 0.5 * 0.5, cross-checked by enumerating the Bernoulli outcomes
        inst = ObjectiveInstance.scheduling([[0.5, 0.5]])
        got = evaluate(inst, subset([0, 1], 2))
        assert got == pytest.approx(0.75, abs=1e-15)
        assert got == pytest.approx(scheduling_outcome_tree(inst.p, [0, 1]), abs=1e-12)

    def test_scheduling_multirow_matches_oracle(self):
        inst = random_scheduling_instance(5, seed=3, subtasks=3)
        for agents in ([0], [1, 3], [0, 2, 4], [0, 1, 2, 3, 4]):
            got = evaluate(inst, subset(agents, 5))
            assert got == pytest.approx(scheduling_outcome_tree(inst.p, agents), abs=1e-12)

    def test_sensing_formula(self):
        from math import log

        inst = ObjectiveInstance.sensing([0.5, 0.9], sigma=2.0)
        got = evaluate(inst, subset([0, 1], 2))
        se, sc, s2 = 0.5 + 0.9, 0.5 + 0.1, 4.0
        assert got == pytest.approx(0.5 * log((1 + se / s2) * (1 + sc / s2)), abs=1e-15)

    def test_table_lookup(self):
        inst = ObjectiveInstance.table([0.0, 1.0, 2.0, 2.5])
        assert evaluate(inst, subset([0, 1], 2)) == 2.5

    def test_deterministic_bit_identical(self):
        inst = random_sensing_instance(6, seed=9)
        s = subset([0, 2, 5], 6)
        assert evaluate(inst, s) == evaluate(inst, s)

    def test_ground_mismatch_rejected(self):
        inst = ObjectiveInstance.table([0.0, 1.0])
        with pytest.raises(GroundSetMismatch):
            evaluate(inst, subset([0], 2))
        with pytest.raises(GroundSetMismatch):
            evaluate_mask(inst, 1 << 3)


class TestConstructors:
    def test_scheduling_rejects_zero_probability(self):
        with pytest.raises(ValueError):
            ObjectiveInstance.scheduling([[0.5, 0.0]])

    def test_sensing_rejects_out_of_band(self):
        with pytest.raises(ValueError):
            ObjectiveInstance.sensing([0.3])
        with pytest.raises(ValueError):
            ObjectiveInstance.sensing([0.5], sigma=0.0)

    def test_table_rejects_nonzero_empty_and_negatives(self):
        with pytest.raises(ValueError):
            ObjectiveInstance.table([0.5, 1.0])
        with pytest.raises(ValueError):
            ObjectiveInstance.table([0.0, -1.0])
        with pytest.raises(ValueError):
            ObjectiveInstance.table([0.0, 1.0, 2.0])  # not 2^N entries

    def test_coverage_maps_names_by_first_appearance(self):
        inst = ObjectiveInstance.coverage(B1_SETS)
        assert inst.universe == ("a", "f", "b", "g", "c", "e", "h")


class TestMarginalGain:
    def test_empty_addition_is_zero(self):
        inst = ObjectiveInstance.coverage(B1_SETS)
        for members in ([], [0], [1, 4]):
            a = subset(members, 5)
            assert marginal_gain(inst, ElementSubset.empty(5), a) == 0.0

    def test_b1_s5_adds_two_elements(self):
        inst = ObjectiveInstance.coverage(B1_SETS)
        # S5 = {e,g,h} adds {e,h} on top of S3 u S4
        assert marginal_gain(inst, subset([4], 5), subset([2, 3], 5)) == 2.0

    def test_scheduling_hand_value(self):
        inst = ObjectiveInstance.scheduling([[0.3, 0.6]])
        gain = marginal_gain(inst, subset([0], 2), subset([1], 2))
        assert gain == pytest.approx(0.12, abs=1e-15)  # (1 - 0.6) * 0.3
        direct = evaluate(inst, subset([0, 1], 2)) - evaluate(inst, subset([1], 2))
        assert gain == direct

    def test_overlap_handled_by_union(self):
        inst = ObjectiveInstance.coverage(B1_SETS)
        a = subset([2, 3], 5)
        assert marginal_gain(inst, a, a) == 0.0


class TestCheckPolymatroid:
    def test_coverage_instances_pass(self):
        for seed in range(4):
            report = check_polymatroid(random_coverage_instance(6, seed))
            assert report.ok and report.witness is None

    def test_scheduling_instances_pass(self):
        for seed in range(3):
            inst = random_scheduling_instance(6, seed, subtasks=2)
            assert check_polymatroid(inst).ok

    def test_sensing_instances_pass(self):
        for seed in range(3):
            assert check_polymatroid(random_sensing_instance(6, seed)).ok

    def test_constructed_monotonicity_violation(self):
        # f({0}) = 1 but f({0,1}) = 0
        inst = ObjectiveInstance.table([0.0, 1.0, 0.0, 0.0])
        report = check_polymatroid(inst)
        assert not report.is_nondecreasing
        w = report.witness
        assert w is not None and w.kind == "monotonicity"
        assert evaluate(inst, w.a) > evaluate(inst, w.b)
        assert w.a.issubset(w.b)

    def test_submodularity_witness_re_evaluates(self):
        # supermodular: f = |S|^2 (normalized to f(empty) = 0)
        inst = ObjectiveInstance.table([float(m.bit_count() ** 2) for m in range(16)])
        report = check_polymatroid(inst)
        assert not report.is_submodular
        w = report.witness
        assert w is not None and w.kind == "submodularity"
        bit = ElementSubset.of([w.j], 4)
        lhs = marginal_gain(inst, bit, w.a)
        rhs = marginal_gain(inst, bit, w.b)
        assert lhs < rhs and w.a.issubset(w.b) and w.j not in w.b

    def test_limit_guard(self):
        inst = random_coverage_instance(8, 0)
        with pytest.raises(ExhaustiveLimitExceeded):
            check_polymatroid(inst, limit=6)


class TestSubmodularConsequence:
    def test_batch_diminishing_returns_exhaustive(self):
        # f(A u T) - f(A) >= f(B u T) - f(B) for A subset B, T disjoint from B
        for family in ("coverage", "scheduling", "sensing"):
            inst = family_instance(family, 6, seed=11)
            n = inst.ground_size
            for b_mask in range(1 << n):
                a_mask = b_mask
                while True:
                    t_free = ((1 << n) - 1) & ~b_mask
                    t_mask = t_free
                    while True:
                        ga = evaluate_mask(inst, a_mask | t_mask) - evaluate_mask(inst, a_mask)
                        gb = evaluate_mask(inst, b_mask | t_mask) - evaluate_mask(inst, b_mask)
                        assert ga >= gb - 1e-9
                        if t_mask == 0:
                            break
                        t_mask = (t_mask - 1) & t_free
                    if a_mask == 0:
                        break
                    a_mask = (a_mask - 1) & b_mask


def _covers(rng: Random, elements: list[int], multiplicity: int) -> list[list[int]]:
    """Random cover where each element appears in exactly ``multiplicity`` parts."""
    parts = []
    for _ in range(multiplicity):
        n_parts = rng.randint(1, max(1, len(elements)))
        round_parts = [[] for _ in range(n_parts)]
        for e in elements:
            round_parts[rng.randrange(n_parts)].append(e)
        parts.extend(p for p in round_parts if p)
    return parts


@settings(max_examples=60, deadline=None)
@given(
    family=st.sampled_from(["coverage", "scheduling", "sensing"]),
    seed=st.integers(0, 10_000),
    n=st.integers(2, 7),
    multiplicity=st.integers(1, 3),
    cover_seed=st.integers(0, 10_000),
    data=st.data(),
)
def test_cover_multiplicity_lower_bounds_gain(family, seed, n, multiplicity, cover_seed, data):
    # sum_i rho_{M_i}(A) >= p * rho_{B \ A}(A) for covers of B \ A with
    # multiplicity p
    inst = family_instance(family, n, seed)
    a = data.draw(st.sets(st.integers(0, n - 1)))
    b = data.draw(st.sets(st.integers(0, n - 1)))
    diff = sorted(b - a)
    sa = subset(a, n)
    if not diff:
        return
    parts = _covers(Random(cover_seed), diff, multiplicity)
    lhs = sum(marginal_gain(inst, subset(p, n), sa) for p in parts)
    rhs = multiplicity * marginal_gain(inst, subset(diff, n), sa)
    assert lhs >= rhs - 1e-9


@settings(max_examples=60, deadline=None)
@given(
    family=st.sampled_from(["coverage", "scheduling", "sensing"]),
    seed=st.integers(0, 10_000),
    n=st.integers(2, 7),
    multiplicity=st.integers(1, 3),
    cover_seed=st.integers(0, 10_000),
    data=st.data(),
)
def test_cover_multiplicity_upper_bounds_gain(family, seed, n, multiplicity, cover_seed, data):
    # sum_i rho_{T_i}(A \ T_i) <= q * rho_{A \ A'}(A') for covers of A \ A'
    # with multiplicity q
    inst = family_instance(family, n, seed)
    a = data.draw(st.sets(st.integers(0, n - 1)))
    a_prime = data.draw(st.sets(st.sampled_from(sorted(a)))) if a else set()
    diff = sorted(a - a_prime)
    if not diff:
        return
    parts = _covers(Random(cover_seed), diff, multiplicity)
    a_mask = subset(a, n)
    lhs = sum(
        marginal_gain(inst, subset(p, n), a_mask.difference(subset(p, n)))
        for p in parts
    )
    rhs = multiplicity * marginal_gain(inst, subset(diff, n), subset(a_prime, n))
    assert lhs <= rhs + 1e-9


def test_all_subset_gains_upper_bounded_by_singleton_sums():
    # quick sanity on the bundled instance: rho is additive-at-most
    inst, _ = load_bundled("appendix_b1")
    n = inst.ground_size
    for mask in range(1, 1 << n):
        total = sum(
            marginal_gain(inst, subset([j], n), ElementSubset.empty(n))
            for j in range(n)
            if mask >> j & 1
        )
        assert evaluate_mask(inst, mask) <= total + 1e-9


def test_evaluate_examples_from_combinatorics():
    # coverage value equals a straight union computed with Python sets
    inst = ObjectiveInstance.coverage(B1_SETS)
    for r in range(6):
        for combo in combinations(range(5), r):
            expected = len(set().union(*[B1_SETS[i] for i in combo]) if combo else set())
            assert evaluate(inst, subset(combo, 5)) == float(expected)
