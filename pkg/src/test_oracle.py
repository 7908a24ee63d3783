"""
Tests for the brute-force oracle: explicit expansion over small samples and
exact expectations.

Feature: oracle
"""

import pytest
from hypothesis import given, strategies as st, settings

from src.basis_conversion import bracket_expectation
from src.errors import GuardViolation, InputError
from src.estimators import k_statistic, u_statistic
from src.oracle import (
    FormalSample, IndexedPolynomial, check_unbiased, estimator_expectation, evaluate,
    expand_bracket, expand_power_sum, expectation,
)
from src.partitions import IntegerPartition
from src.rational import RationalExpr
from src.symexpr import N, Bracket, SymExpr, falling, moment, power_sum


def m(*v):
    return SymExpr.from_atom(moment(v))


class TestFormalSample:
    """Sample construction and guards."""

    def test_slots_are_unit_major(self):
        sample = FormalSample(3, 2)
        assert sample.slot(0, 0) == 0
        assert sample.slot(0, 1) == 1
        assert sample.slot(2, 1) == 5

    def test_size_guard(self):
        with pytest.raises(GuardViolation) as excinfo:
            FormalSample(9)
        assert excinfo.value.limit == 8
        with pytest.raises(GuardViolation):
            FormalSample(0)
        with pytest.raises(InputError):
            FormalSample(2, 0)


class TestExpansion:
    """Power sums and brackets as explicit sums."""

    def test_power_sum_has_one_term_per_unit(self):
        sample = FormalSample(4)
        poly = expand_power_sum((2,), sample)
        assert len(poly) == 4
        assert all(c == 1 for c in poly.terms.values())

    def test_bracket_with_too_many_parts_is_zero(self):
        assert expand_bracket(Bracket.univariate([1, 1, 1]), FormalSample(2)).is_zero

    def test_bracket_counts_injective_tuples(self):
        poly = expand_bracket(Bracket.univariate([1, 1]), FormalSample(3))
        # X1 X2 appears once for (1,2) and once for (2,1)
        assert len(poly) == 3
        assert all(c == 2 for c in poly.terms.values())

    def test_width_mismatch(self):
        with pytest.raises(InputError):
            expand_power_sum((1, 0), FormalSample(2, 1))
        with pytest.raises(InputError):
            IndexedPolynomial(FormalSample(2)) + IndexedPolynomial(FormalSample(3))

    def test_square_of_sum(self):
        """E[(X1 + X2 + X3)^2] = 3 m_2 + 6 m_1^2."""
        sample = FormalSample(3)
        poly = expand_power_sum((1,), sample) ** 2
        assert expectation(poly) == 3 * m(2) + 6 * m(1) ** 2

    def test_dependence_within_a_unit(self):
        """E[sum X_i Y_i] = n m_{1,1}."""
        sample = FormalSample(3, 2)
        assert expectation(expand_power_sum((1, 1), sample)) == 3 * m(1, 1)

    def test_evaluate_rejects_population_atoms(self):
        with pytest.raises(InputError):
            evaluate(m(1), FormalSample(2))

    def test_evaluate_constants(self):
        sample = FormalSample(4)
        expr = SymExpr.from_atom(N) + SymExpr.from_atom(falling(2))
        assert evaluate(expr, sample) == IndexedPolynomial.constant(sample, 16)


class TestExpectations:
    """Exact expectations against the symbolic formulas."""

    @given(
        parts=st.lists(st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 0)]), min_size=1, max_size=3),
        n=st.integers(min_value=3, max_value=4),
    )
    @settings(max_examples=20, deadline=None)
    def test_bracket_expectation(self, parts, n):
        """
        **Feature: oracle, Property 1: E[bracket] = (n)_k times the moment product**
        """
        bracket = Bracket(tuple(parts))
        sample = FormalSample(n, 2)
        assert expectation(expand_bracket(bracket, sample)) == bracket_expectation(bracket).specialize_n(n)

    def test_u_statistic_expectation(self):
        sample = FormalSample(3)
        estimator = u_statistic(IntegerPartition((2, 1)))
        assert estimator_expectation(estimator, sample) == m(2) * m(1)

    def test_small_sample_rejected(self):
        with pytest.raises(GuardViolation):
            estimator_expectation(k_statistic(3), FormalSample(2))

    def test_report_shape(self):
        report = check_unbiased(k_statistic(2), m(2) - m(1) ** 2, [2, 3])
        assert [row["n"] for row in report] == [2, 3]
        assert all(row["ok"] for row in report)
        assert report[0]["actual"] == report[0]["expected"]

    def test_biased_formula_is_flagged(self):
        """The plug-in variance S2/n - (S1/n)^2 is biased."""
        n = SymExpr.from_atom(N)
        biased = RationalExpr(
            n * SymExpr.from_atom(power_sum((2,))) - SymExpr.from_atom(power_sum((1,))) ** 2,
            n ** 2,
        )
        report = check_unbiased(biased, m(2) - m(1) ** 2, [2, 3])
        assert not any(row["ok"] for row in report)
