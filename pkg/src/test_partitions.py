"""
Property-based tests for integer and set partitions using Hypothesis.

Feature: combinatorics
"""

import pytest
from hypothesis import given, strategies as st, settings

from src.errors import GuardViolation, InputError
from src.partitions import (
    IntegerPartition, bell_number, d_lambda, integer_partitions, partition_count, set_partitions,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]


class TestIntegerPartitionProperties:
    """Property-based tests for integer partitions."""

    def test_partitions_of_three_in_order(self):
        """Partitions come out in decreasing lexicographic order."""
        parts = [p.parts for p in integer_partitions(3)]
        assert parts == [(3,), (2, 1), (1, 1, 1)]

    def test_partitions_of_twelve(self):
        """Twelve has 77 partitions, the term count of k_12."""
        assert len(integer_partitions(12)) == 77
        assert partition_count(12) == 77

    @given(i=st.integers(min_value=0, max_value=18))
    @settings(max_examples=30, deadline=None)
    def test_count_matches_enumeration(self, i: int):
        """
        **Feature: combinatorics, Property 1: Partition count equals enumeration length**

        The pentagonal recurrence agrees with the enumerator, every partition
        sums to i and none repeats.
        """
        partitions = integer_partitions(i)
        assert len(partitions) == partition_count(i)
        assert len(set(partitions)) == len(partitions)
        assert all(p.total == i for p in partitions)

    @given(i=st.integers(min_value=1, max_value=9))
    @settings(max_examples=20, deadline=None)
    def test_d_lambda_sums_to_bell(self, i: int):
        """
        **Feature: combinatorics, Property 2: Block-type counts sum to the Bell number**
        """
        assert sum(d_lambda(p) for p in integer_partitions(i)) == BELL[i]

    def test_d_lambda_examples(self):
        assert d_lambda(IntegerPartition((2, 1))) == 3
        assert d_lambda(IntegerPartition((2, 2))) == 3
        assert d_lambda(IntegerPartition((3, 2, 1))) == 60
        assert d_lambda(IntegerPartition((3, 3, 3, 3))) == 15400
        assert d_lambda(IntegerPartition((3, 3, 2, 1, 1))) == 12600
        assert d_lambda(IntegerPartition((1, 1, 1, 1))) == 1

    @given(parts=st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=8))
    @settings(max_examples=50, deadline=None)
    def test_multiplicity_form_round_trip(self, parts):
        """Both representations of a partition describe the same object."""
        partition = IntegerPartition.from_parts(parts)
        assert IntegerPartition.from_multiplicities(partition.multiplicities) == partition
        assert partition.length == len(parts)

    def test_rejects_unsorted_or_non_positive_parts(self):
        with pytest.raises(InputError):
            IntegerPartition((1, 2))
        with pytest.raises(InputError):
            IntegerPartition((2, 0))
        with pytest.raises(InputError):
            integer_partitions(-1)


class TestSetPartitionProperties:
    """Property-based tests for set partition enumeration."""

    @given(k=st.integers(min_value=1, max_value=8))
    @settings(max_examples=20, deadline=None)
    def test_count_is_bell_number(self, k: int):
        """
        **Feature: combinatorics, Property 3: Set partitions of a k-set number B_k**

        Every partition covers 1..k exactly once and no partition repeats.
        """
        seen = set()
        for partition in set_partitions(k):
            flat = sorted(x for block in partition for x in block)
            assert flat == list(range(1, k + 1))
            seen.add(frozenset(frozenset(block) for block in partition))
        assert len(seen) == BELL[k] == bell_number(k)

    def test_small_cases(self):
        assert list(set_partitions(1)) == [((1,),)]
        assert len(list(set_partitions(3))) == 5
        assert len(list(set_partitions(4))) == 15

    def test_guard_rejects_out_of_range_sizes(self):
        with pytest.raises(GuardViolation):
            set_partitions(0)
        with pytest.raises(GuardViolation) as excinfo:
            set_partitions(14)
        assert excinfo.value.limit == 13
        assert excinfo.value.requested == 14
