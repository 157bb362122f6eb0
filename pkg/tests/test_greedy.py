import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batchgreedy import (
    CandidateCapExceeded,
    ElementSubset,
    MatroidSpec,
    brute_force_optimum,
    decompose,
    is_independent,
    k_batch_greedy,
    load_bundled,
    make_trace,
    matroid_rank,
    max_batch_gain,
    validate_trace,
)
from conftest import family_instance, random_partition_spec, subset


class TestDecompose:
    def test_divisible_gives_full_final_batch(self):
        d = decompose(20, 10)
        assert (d.l, d.m) == (1, 10)

    def test_known_nondivisible_pair(self):
        d = decompose(100, 80)
        assert (d.l, d.m) == (1, 20)

    def test_forced_remainder(self):
        d = decompose(7, 3)
        assert (d.l, d.m) == (2, 1)

    def test_batch_sizes(self):
        assert decompose(7, 3).batch_sizes == (3, 3, 1)
        assert decompose(4, 4).batch_sizes == (4,)

    def test_rejects_empty_schedule(self):
        with pytest.raises(ValueError):
            decompose(0, 2)
        with pytest.raises(ValueError):
            decompose(5, 0)

    @given(K=st.integers(1, 200), k=st.integers(1, 200))
    def test_unique_reconstruction(self, K, k):
        d = decompose(K, k)
        assert d.K == d.k * d.l + d.m
        assert 0 < d.m <= d.k
        assert d.l >= 0


class TestGreedyGoldens:
    def test_b1_one_batch(self):
        inst, spec = load_bundled("appendix_b1")
        trace = k_batch_greedy(inst, spec, 1)
        assert [tuple(b) for b in trace.batches] == [(2,), (3,), (4,)]
        assert trace.final_value == 7.0
        assert trace.prefix_values == (0.0, 3.0, 5.0, 7.0)

    def test_b1_two_batch(self):
        inst, spec = load_bundled("appendix_b1")
        trace = k_batch_greedy(inst, spec, 2)
        assert [tuple(b) for b in trace.batches] == [(0, 4), (2,)]
        assert trace.final_value == 6.0

    def test_b2_one_batch(self):
        inst, spec = load_bundled("appendix_b2")
        trace = k_batch_greedy(inst, spec, 1)
        assert [tuple(b) for b in trace.batches] == [(3,), (1,), (5,), (4,)]
        assert trace.final_value == 10.0

    def test_b2_two_batch(self):
        inst, spec = load_bundled("appendix_b2")
        trace = k_batch_greedy(inst, spec, 2)
        assert [tuple(b) for b in trace.batches] == [(1, 2), (3, 4)]
        assert trace.final_value == 9.0

    def test_k_equals_rank_is_one_exhaustive_batch(self):
        for seed in range(5):
            inst = family_instance(("coverage", "scheduling", "sensing")[seed % 3], 7, seed)
            spec = MatroidSpec.uniform(7, 3)
            trace = k_batch_greedy(inst, spec, 3)
            assert len(trace.batches) == 1
            optimum = brute_force_optimum(inst, spec)
            assert trace.final_value == optimum.optimum_value


class TestGreedyInvariants:
    @settings(max_examples=30, deadline=None)
    @given(
        family=st.sampled_from(["coverage", "scheduling", "sensing"]),
        seed=st.integers(0, 500),
        n=st.integers(3, 8),
        uniform=st.booleans(),
        data=st.data(),
    )
    def test_prefixes_feasible_and_values_nondecreasing(self, family, seed, n, uniform, data):
        inst = family_instance(family, n, seed)
        if uniform:
            spec = MatroidSpec.uniform(n, data.draw(st.integers(1, n)))
        else:
            spec = random_partition_spec(n, seed, max_rank=min(5, n))
        k = data.draw(st.integers(1, matroid_rank(spec)))
        trace = k_batch_greedy(inst, spec, k)
        assert len(trace.final_set) == matroid_rank(spec)
        for prefix in trace.prefixes():
            assert is_independent(spec, prefix)
        for earlier, later in zip(trace.prefix_values, trace.prefix_values[1:]):
            assert later >= earlier - 1e-12
        verdict = validate_trace(inst, spec, trace)
        assert verdict.ok, (verdict.stage, verdict.reason)

    def test_deterministic(self):
        inst = family_instance("sensing", 8, 42)
        spec = MatroidSpec.uniform(8, 5)
        a = k_batch_greedy(inst, spec, 2)
        b = k_batch_greedy(inst, spec, 2)
        assert a == b

    def test_exact_ties_resolve_lexicographically_first(self):
        from batchgreedy import ObjectiveInstance

        tie = ObjectiveInstance.table([0.0, 1.0, 1.0, 1.5, 1.0, 1.5, 1.5, 2.0])
        trace = k_batch_greedy(tie, MatroidSpec.uniform(3, 2), 1)
        assert [tuple(b) for b in trace.batches] == [(0,), (1,)]
        # an alternative tie-breaking still validates
        alt = make_trace(tie, 1, [subset([2], 3), subset([0], 3)])
        assert validate_trace(tie, MatroidSpec.uniform(3, 2), alt).ok

    def test_tie_window_keeps_first_encounter(self):
        from batchgreedy import ObjectiveInstance

        # a later gain inside the 1e-12 relative window does not displace
        # the incumbent; a gain clear of the window does
        within = ObjectiveInstance.table([0.0, 1.0, 1.0 + 5e-13, 0.0, 1.0, 0.0, 0.0, 0.0])
        trace = k_batch_greedy(within, MatroidSpec.uniform(3, 1), 1)
        assert tuple(trace.batches[0]) == (0,)
        clear = ObjectiveInstance.table([0.0, 1.0, 1.0 + 1e-6, 0.0, 1.0, 0.0, 0.0, 0.0])
        trace = k_batch_greedy(clear, MatroidSpec.uniform(3, 1), 1)
        assert tuple(trace.batches[0]) == (1,)

    def test_proposition2_final_batch_property(self):
        # rho_{J_{l+1}}(S^l) >= (m/k) * max over full k-batches of the gain
        for seed in range(12):
            inst = family_instance(("coverage", "scheduling", "sensing")[seed % 3], 9, seed)
            spec = MatroidSpec.uniform(9, 5)
            for k in (2, 3, 4):
                trace = k_batch_greedy(inst, spec, k)
                dec = decompose(5, k)
                final_gain = trace.prefix_values[-1] - trace.prefix_values[-2]
                base = trace.prefixes()[-2]
                best_full = max_batch_gain(inst, spec, base, k)
                if best_full is None:
                    continue
                assert final_gain >= (dec.m / dec.k) * best_full - 1e-9

    def test_candidate_cap_guard(self):
        inst = family_instance("scheduling", 8, 1)
        spec = MatroidSpec.uniform(8, 4)
        with pytest.raises(CandidateCapExceeded):
            k_batch_greedy(inst, spec, 4, candidate_cap=10)

    def test_rank_zero_is_trivial(self):
        inst = family_instance("coverage", 4, 0)
        trace = k_batch_greedy(inst, MatroidSpec.uniform(4, 0), 1)
        assert trace.batches == ()
        assert trace.final_value == 0.0

    def test_k_above_rank_rejected(self):
        inst = family_instance("coverage", 4, 0)
        with pytest.raises(ValueError):
            k_batch_greedy(inst, MatroidSpec.uniform(4, 2), 3)

    def test_partition_constraint_respected(self):
        inst = family_instance("coverage", 6, 5)
        spec = MatroidSpec.partition([[0, 1, 2], [3, 4, 5]], [1, 2])
        trace = k_batch_greedy(inst, spec, 2)
        assert len(trace.final_set) == 3
        assert is_independent(spec, trace.final_set)


class TestValidateTrace:
    def test_paper_b2_one_batch_solution_accepted(self):
        inst, spec = load_bundled("appendix_b2")
        trace = make_trace(inst, 1, [subset([i], 6) for i in (3, 1, 5, 4)])
        assert validate_trace(inst, spec, trace).ok

    def test_b1_alternative_two_batch_solution_accepted(self):
        # {S3,S4,S5} is also a 2-batch greedy solution under another tie-break
        inst, spec = load_bundled("appendix_b1")
        trace = make_trace(inst, 2, [subset([2, 3], 5), subset([4], 5)])
        assert validate_trace(inst, spec, trace).ok

    def test_suboptimal_first_stage_rejected(self):
        inst, spec = load_bundled("appendix_b1")
        trace = make_trace(inst, 1, [subset([1], 5), subset([2], 5), subset([3], 5)])
        verdict = validate_trace(inst, spec, trace)
        assert not verdict.ok
        assert verdict.stage == 1

    def test_wrong_batch_sizes_rejected(self):
        inst, spec = load_bundled("appendix_b1")
        trace = make_trace(inst, 2, [subset([0], 5), subset([2, 4], 5)])
        verdict = validate_trace(inst, spec, trace)
        assert not verdict.ok and verdict.stage == 1

    def test_dependent_prefix_rejected(self):
        inst, _ = load_bundled("appendix_b1")
        spec = MatroidSpec.partition([[0, 1, 2], [3, 4]], [1, 2])
        # stage 1 takes the max-gain S3; stage 2 exhausts block 0's capacity
        trace = make_trace(inst, 1, [subset([i], 5) for i in (2, 0, 4)])
        verdict = validate_trace(inst, spec, trace)
        assert not verdict.ok and verdict.stage == 2
        assert "independent" in verdict.reason

    def test_solver_output_always_validates(self):
        inst, spec = load_bundled("appendix_b2")
        for k in (1, 2, 3, 4):
            trace = k_batch_greedy(inst, spec, k)
            assert validate_trace(inst, spec, trace).ok


def test_make_trace_rejects_overlapping_batches():
    inst, _ = load_bundled("appendix_b1")
    with pytest.raises(ValueError):
        make_trace(inst, 1, [subset([0], 5), subset([0], 5)])


def test_max_batch_gain_none_when_no_room():
    inst = family_instance("coverage", 4, 2)
    spec = MatroidSpec.uniform(4, 4)
    base = ElementSubset.of([0, 1, 2], 4)
    assert max_batch_gain(inst, spec, base, 2) is None
    assert max_batch_gain(inst, spec, base, 1) is not None
