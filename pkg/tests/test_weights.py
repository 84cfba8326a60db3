from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspgrowth import (
    ContractionPartition,
    IntVerdict,
    ResourceLimitError,
    ValidationError,
    WeightTuple,
    check_int,
    contract,
    enumerate_tuples,
    find_contraction,
)
from oracles import int_condition_verdict

F = Fraction

MU5 = WeightTuple.parse("2/6,2/6,3/6,4/6,1/6")
MU6 = WeightTuple.parse("2/6,2/6,3/6,3/6,1/6,1/6")
NU4 = WeightTuple.parse("1/6,3/6,4/6,4/6")


class TestWeightTuple:
    def test_parse_and_values(self):
        assert MU5.weights == (F(1, 3), F(1, 3), F(1, 2), F(2, 3), F(1, 6))
        assert MU5.ambient_dimension == 2

    def test_too_short(self):
        with pytest.raises(ValidationError, match="length"):
            WeightTuple.parse("1/2,1/2,1")

    def test_weight_out_of_range(self):
        with pytest.raises(ValidationError, match="between 0 and 1"):
            WeightTuple((F(1), F(1, 3), F(1, 3), F(1, 3)))
        with pytest.raises(ValidationError, match="between 0 and 1"):
            WeightTuple((F(-1, 6), F(5, 6), F(2, 3), F(2, 3)))

    def test_sum_must_be_two(self):
        with pytest.raises(ValidationError, match="sum to exactly 2"):
            WeightTuple.parse("1/2,1/2,1/2,1/4")

    def test_scaling_breaks_the_sum_invariant(self):
        # Scaling by 3/4 keeps every weight inside (0, 1), so it is the
        # sum invariant that rejects the tuple.
        scale = F(3, 4)
        with pytest.raises(ValidationError, match="sum to exactly 2"):
            WeightTuple(tuple(w * scale for w in NU4))
        # Scaling up instead pushes a weight out of range; still rejected.
        with pytest.raises(ValidationError):
            WeightTuple(tuple(w * F(3, 2) for w in NU4))

    def test_sorted_is_canonical(self):
        assert MU5.sorted().weights == tuple(sorted(MU5.weights))


class TestCheckInt:
    def test_five_tuple_is_int(self):
        status = check_int(MU5)
        assert status.verdict is IntVerdict.INT
        assert status.half_witnesses == ()
        assert status.fail_witnesses == ()

    def test_six_tuple_is_half_int_with_sole_witness(self):
        status = check_int(MU6)
        assert status.verdict is IntVerdict.HALF_INT
        assert len(status.half_witnesses) == 1
        w = status.half_witnesses[0]
        assert (w.i, w.j) == (4, 5)
        assert MU6[w.i] == MU6[w.j] == F(1, 6)
        assert w.value == F(3, 2)

    def test_four_tuple_is_int(self):
        assert check_int(NU4).verdict is IntVerdict.INT

    def test_compact_tuples_are_int(self):
        for text in ("3/8,3/8,3/8,7/8", "3/8,3/8,3/8,3/8,4/8", "1/8,3/8,3/8,3/8,3/8,3/8"):
            assert check_int(WeightTuple.parse(text)).verdict is IntVerdict.INT

    def test_fail_example(self):
        # (1/5, 2/5) gives (1 - 3/5)^-1 = 5/2 at unequal weights: a failure.
        status = check_int(WeightTuple.parse("1/5,2/5,4/5,3/5"))
        assert status.verdict is IntVerdict.FAIL
        assert status.fail_witnesses

    def test_matches_direct_evaluation_oracle(self):
        for mu in (MU5, MU6, NU4, WeightTuple.parse("1/5,2/5,4/5,3/5")):
            verdict, half, fail = int_condition_verdict(mu.weights)
            status = check_int(mu)
            assert status.verdict.value == verdict
            assert [((w.i, w.j), w.value) for w in status.half_witnesses] == half
            assert [((w.i, w.j), w.value) for w in status.fail_witnesses] == fail

    @given(st.permutations(list(range(6))))
    def test_permutation_invariance(self, perm):
        shuffled = WeightTuple(tuple(MU6[i] for i in perm))
        assert check_int(shuffled).verdict is check_int(MU6).verdict


class TestContract:
    def test_paper_pair(self):
        partition = ContractionPartition(((4,), (2,), (3,), (0, 1)))
        assert contract(MU5, partition).weights == NU4.sorted().weights

    def test_identity_partition(self):
        partition = ContractionPartition.identity(len(MU5))
        assert contract(MU5, partition).weights == MU5.sorted().weights

    def test_six_tuple_two_blocks(self):
        partition = ContractionPartition(((4,), (2,), (0, 1), (3, 5)))
        assert contract(MU6, partition).weights == NU4.sorted().weights

    def test_inadmissible_block_is_named(self):
        partition = ContractionPartition(((0, 3), (1,), (2,), (4,)))
        with pytest.raises(ValidationError, match=r"\(0, 3\)"):
            contract(MU5, partition)

    def test_partition_must_cover(self):
        partition = ContractionPartition(((0,), (1,), (2,), (3,)))
        with pytest.raises(ValidationError, match="covers indices"):
            contract(MU5, partition)

    def test_overlapping_blocks_rejected(self):
        with pytest.raises(ValidationError, match="two blocks"):
            ContractionPartition(((0, 1), (1, 2)))


class TestFindContraction:
    def test_paper_pair_merges_the_equal_weights(self):
        partition = find_contraction(MU5, NU4)
        assert partition is not None
        assert partition.blocks == ((0, 1), (2,), (3,), (4,))

    def test_identity(self):
        partition = find_contraction(MU5, MU5)
        assert partition is not None
        assert partition.is_identity

    def test_no_partition_exists(self):
        nu = WeightTuple.parse("1/2,1/2,1/2,1/2")
        assert find_contraction(MU5, nu) is None

    def test_six_tuple_needs_two_merged_blocks(self):
        partition = find_contraction(MU6, NU4)
        assert partition is not None
        sizes = sorted(len(b) for b in partition.blocks)
        assert sizes == [1, 1, 2, 2]
        assert contract(MU6, partition).weights == NU4.sorted().weights

    def test_six_tuple_every_solution_has_two_merged_blocks(self):
        # Exhaustive: no admissible partition of the 6-tuple onto the
        # 4-tuple uses a 3-block, and the search returns the least one.
        from cuspgrowth.weights import _partitions_into

        target = sorted(NU4.weights)
        valid = []
        for raw in _partitions_into(range(6), 4, max(target), MU6):
            part = ContractionPartition(raw)
            if sorted(part.block_sums(MU6)) != target:
                continue
            if any(len(b) >= 2 and sum(MU6[i] for i in b) >= 1 for b in part.blocks):
                continue
            assert sorted(len(b) for b in part.blocks) == [1, 1, 2, 2]
            valid.append(part.blocks)
        assert len(valid) == 4
        assert find_contraction(MU6, NU4).blocks == min(valid)
        assert min(valid) == ((0, 1), (2,), (3, 4), (5,))

    def test_target_longer_than_source_rejected(self):
        with pytest.raises(ValidationError, match="longer"):
            find_contraction(NU4, MU6)

    def test_round_trip_on_enumerated_tuples(self):
        for mu, _ in enumerate_tuples(5, 6):
            partition = ContractionPartition(((0, 1), (2,), (3,), (4,)))
            try:
                nu = contract(mu, partition)
            except ValidationError:
                continue
            recovered = find_contraction(mu, nu)
            assert recovered is not None
            assert contract(mu, recovered).weights == nu.weights


class TestEnumerate:
    def test_contains_the_five_tuple(self):
        found = [mu.weights for mu, _ in enumerate_tuples(5, 6)]
        assert MU5.sorted().weights in found

    def test_contains_the_compact_four_tuple(self):
        found = [mu.weights for mu, _ in enumerate_tuples(4, 8)]
        assert WeightTuple.parse("3/8,3/8,3/8,7/8").sorted().weights in found

    def test_halves_only(self):
        found = enumerate_tuples(4, 2)
        assert [mu.weights for mu, _ in found] == [(F(1, 2),) * 4]

    def test_everything_emitted_passes_check_int(self):
        for mu, status in enumerate_tuples(6, 6):
            assert check_int(mu).verdict is status.verdict
            assert status.verdict is not IntVerdict.FAIL

    def test_sorted_and_deduplicated(self):
        seen = set()
        for mu, _ in enumerate_tuples(5, 6):
            assert mu.weights == tuple(sorted(mu.weights))
            assert mu.weights not in seen
            seen.add(mu.weights)

    def test_resource_guard(self):
        with pytest.raises(ResourceLimitError) as err:
            enumerate_tuples(5, 6, cap=10)
        assert err.value.space == 126
        assert err.value.cap == 10

    def test_bad_arguments(self):
        with pytest.raises(ValidationError):
            enumerate_tuples(3, 6)
        with pytest.raises(ValidationError):
            enumerate_tuples(4, 1)


@st.composite
def weight_tuples(draw):
    d = draw(st.integers(min_value=3, max_value=10))
    length = draw(st.integers(min_value=4, max_value=6))
    # A composition of 2d into `length` parts within [1, d - 1].
    parts = []
    remaining = 2 * d
    for slot in range(length - 1, 0, -1):
        lo = max(1, remaining - (d - 1) * slot)
        hi = min(d - 1, remaining - slot)
        if lo > hi:
            # No valid completion; fall back to an even split value.
            lo = hi = max(1, min(d - 1, remaining - slot))
        parts.append(draw(st.integers(min_value=lo, max_value=hi)))
        remaining -= parts[-1]
    parts.append(remaining)
    if not all(1 <= p <= d - 1 for p in parts):
        # Rare fallback: the all-equal tuple over denominator length.
        return WeightTuple(tuple(F(2, length) for _ in range(length)))
    return WeightTuple(tuple(F(p, d) for p in parts))


@settings(max_examples=120, deadline=None)
@given(weight_tuples(), st.randoms())
def test_check_int_permutation_invariance_random(mu, rng):
    ws = list(mu.weights)
    rng.shuffle(ws)
    assert check_int(WeightTuple(tuple(ws))).verdict is check_int(mu).verdict
