"""
Property-based tests for multiset subdivisions using Hypothesis.

Feature: combinatorics
"""

import pytest
from hypothesis import given, strategies as st, settings

from src.errors import EmptyMultisetError
from src.monomial import Monomial, Multiset
from src.partitions import IntegerPartition, bell_number, d_lambda, integer_partitions
from src.subdivisions import (
    cache_stats, clear_cache, peak_subdivisions, shape_subdivisions, subdivisions,
    subdivisions_by_set_partitions,
)

VECTORS = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]

multisets = st.lists(st.sampled_from(VECTORS), min_size=1, max_size=6).map(Multiset.from_vectors)


def _histogram(multiset):
    return {row.blocks: row.multiplicity for row in subdivisions(multiset)}


class TestSubdivisionExamples:
    """Worked examples with hand-checked multiplicities."""

    def test_two_alike_one_different(self):
        """{a, a, b}: four subdivisions with multiplicities 1, 2, 1, 1."""
        rows = subdivisions(Multiset.from_vectors([(1, 0), (1, 0), (0, 1)]))
        names = ["a", "b"]
        assert [row.display(names) for row in rows] == [
            "{{a, a, b}}",
            "{{a}, {a, b}}",
            "{{b}, {a, a}}",
            "{{a}, {a}, {b}}",
        ]
        assert [row.multiplicity for row in rows] == [1, 2, 1, 1]
        assert sum(row.multiplicity for row in rows) == bell_number(3)

    def test_three_a_two_g(self):
        """{a^3, g^2}: 16 subdivisions, {{a,g},{a,g},{a}} counted 6 times."""
        a, g = Monomial((1, 0)), Monomial((0, 1))
        rows = subdivisions(Multiset.of([a, a, a, g, g]))
        assert len(rows) == 16
        assert sum(row.multiplicity for row in rows) == bell_number(5)

        ag = Multiset.of([a, g])
        target = tuple(sorted([(Multiset.of([a]), 1), (ag, 2)], key=lambda item: (item[0].size, item[0].sort_key())))
        [match] = [row for row in rows if row.blocks == target]
        assert match.multiplicity == 6
        assert match.size == 3

    def test_labeled_elements_never_share_a_block(self):
        """{chi1 mu, chi1 mu, chi2 mu}: only two subdivisions survive."""
        x1 = Monomial((1,), (1,))
        x2 = Monomial((1,), (2,))
        rows = subdivisions(Multiset.of([x1, x1, x2]))
        assert [(row.size, row.multiplicity) for row in rows] == [(2, 2), (3, 1)]

    def test_empty_multiset_is_rejected(self):
        with pytest.raises(EmptyMultisetError):
            subdivisions(Multiset())
        with pytest.raises(EmptyMultisetError):
            shape_subdivisions(())


class TestSubdivisionProperties:
    """Property-based tests for subdivisions."""

    @given(i=st.integers(min_value=1, max_value=9))
    @settings(max_examples=20, deadline=None)
    def test_single_element_matches_integer_partitions(self, i: int):
        """
        **Feature: combinatorics, Property 4: Subdivisions of {a^i} are partitions of i**

        Each subdivision's block sizes form a partition of i, and its
        multiplicity equals the number of set partitions of that block type.
        """
        rows = subdivisions(Multiset.from_vectors([(1,)] * i))
        assert len(rows) == len(integer_partitions(i))
        for row in rows:
            partition = IntegerPartition.from_parts([block.size for block in row.iter_blocks()])
            assert row.multiplicity == d_lambda(partition)

    @pytest.mark.parametrize("shape", [
        p.parts for size in range(1, 9) for p in integer_partitions(size)
    ])
    def test_every_shape_up_to_eight_sums_to_bell(self, shape):
        multiset = Multiset(tuple((Monomial((j + 1,)), count) for j, count in enumerate(shape)))
        rows = subdivisions(multiset)
        assert sum(row.multiplicity for row in rows) == bell_number(sum(shape))
        assert len(set(rows)) == len(rows)

    @given(multiset=multisets)
    @settings(max_examples=60, deadline=None)
    def test_multiplicities_sum_to_bell(self, multiset: Multiset):
        """
        **Feature: combinatorics, Property 5: Multiplicities sum to B_|M|**
        """
        rows = subdivisions(multiset)
        assert sum(row.multiplicity for row in rows) == bell_number(multiset.size)
        for row in rows:
            assert row.parent() == multiset

    @given(multiset=multisets)
    @settings(max_examples=60, deadline=None)
    def test_matches_projected_set_partitions(self, multiset: Multiset):
        """
        **Feature: combinatorics, Property 6: Insertion agrees with brute force**

        Labeling every element and projecting all set partitions gives the
        same subdivisions with the same multiplicities.
        """
        assert _histogram(multiset) == subdivisions_by_set_partitions(multiset)

    @given(multiset=multisets, data=st.data())
    @settings(max_examples=40, deadline=None)
    def test_invariant_under_renaming(self, multiset: Multiset, data):
        """
        **Feature: combinatorics, Property 7: Only the multiplicity shape matters**

        Replacing the distinct elements by other distinct monomials keeps the
        number of subdivisions and their multiplicities.
        """
        fresh = data.draw(st.permutations([(3, 0), (0, 3), (2, 1), (1, 2), (3, 3)]))
        renamed = Multiset(tuple(
            (Monomial(fresh[idx]), count) for idx, (_, count) in enumerate(multiset.entries)
        ))
        before = sorted(row.multiplicity for row in subdivisions(multiset))
        after = sorted(row.multiplicity for row in subdivisions(renamed))
        assert before == after

    @given(multiset=multisets)
    @settings(max_examples=30, deadline=None)
    def test_output_is_deterministic(self, multiset: Multiset):
        """Repeated calls, cached or not, list subdivisions in the same order."""
        first = subdivisions(multiset)
        clear_cache()
        assert subdivisions(multiset) == first
        assert subdivisions(multiset) == first


class TestSubdivisionCaching:
    """The shape cache is shared by every multiset with the same multiplicities."""

    def test_same_shape_hits_cache(self):
        clear_cache()
        subdivisions(Multiset.from_vectors([(1, 0), (1, 0), (0, 1)]))
        subdivisions(Multiset.from_vectors([(2, 0), (0, 1), (0, 1)]))
        stats = cache_stats()["shape"]
        assert stats["misses"] == 1
        assert stats["hits"] == 1
        assert peak_subdivisions() == 4

    def test_shape_order_is_respected(self):
        """Count vectors follow the caller's element order."""
        rows = shape_subdivisions((1, 2))
        assert ((1, 2),) in [blocks for blocks, _ in rows]
        assert all(len(block) == 2 for blocks, _ in rows for block in blocks)
