"""
Rational Expressions
Fractions numerator/denominator of SymExpr, with normalization over a common
denominator: falling factorials expanded, common polynomial factors in n
cancelled, integer content removed and the denominator made positive.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Tuple

import sympy
from logzero import logger

from src.errors import GuardViolation, InputError, ZeroDenominatorError
from src.symexpr import N, SymExpr, TermKey, falling_factorial_expand

_n = sympy.Symbol("n")


def _to_poly(coeffs: Dict[int, Fraction]) -> sympy.Poly:
    return sympy.Poly.from_dict(
        {(p,): sympy.Rational(c.numerator, c.denominator) for p, c in coeffs.items()},
        _n, domain="QQ",
    )


def _from_poly(poly: sympy.Poly) -> Dict[int, Fraction]:
    out = {}
    for (p,), c in poly.as_dict().items():
        c = sympy.Rational(c)
        if c:
            out[p] = Fraction(int(c.p), int(c.q))
    return out


def _rebuild(grouped: Dict[TermKey, Dict[int, Fraction]]) -> SymExpr:
    terms = {}
    for rest, coeffs in grouped.items():
        for p, c in coeffs.items():
            key = tuple(sorted(rest + (((N, p),) if p else ())))
            terms[key] = c
    return SymExpr(terms)


def _leading_coefficient(expr: SymExpr) -> Fraction:
    """Coefficient of the highest power of n (ties broken by canonical key)."""
    best_key = None
    best_coeff = Fraction(0)
    for key, coeff in expr.terms.items():
        n_power = dict(key).get(N, 0)
        rank = (n_power, key)
        if best_key is None or rank > best_key:
            best_key, best_coeff = rank, coeff
    return best_coeff


def normalize_over_common_denominator(num: SymExpr, den: SymExpr) -> Tuple[SymExpr, SymExpr]:
    """
    Reduce num/den to lowest terms.

    Falling factorials are expanded. When the denominator is a polynomial in
    n alone, the polynomial gcd in n of the denominator and every numerator
    coefficient is cancelled. Then all coefficients are made integers with no
    common factor, and the denominator's leading coefficient is positive.

    Args:
        num: Numerator
        den: Denominator, non-zero

    Returns:
        tuple: (numerator, denominator) in lowest terms; (0, 1) for a zero numerator

    Raises:
        ZeroDenominatorError: If den is zero
    """
    num = falling_factorial_expand(num)
    den = falling_factorial_expand(den)
    if den.is_zero:
        raise ZeroDenominatorError("zero denominator")
    if num.is_zero:
        return SymExpr(), SymExpr.constant(1)

    if den.atoms() <= {N}:
        den_poly = _to_poly(den.collect_in_n()[()])
        grouped = {rest: _to_poly(coeffs) for rest, coeffs in num.collect_in_n().items()}
        common = den_poly
        for poly in grouped.values():
            if common.degree() <= 0:
                break
            common = common.gcd(poly)
        if common.degree() > 0:
            logger.debug(f"Cancelling common factor {common.as_expr()}")
            den_poly = den_poly.exquo(common)
            grouped = {rest: poly.exquo(common) for rest, poly in grouped.items()}
        num = _rebuild({rest: _from_poly(poly) for rest, poly in grouped.items()})
        den = _rebuild({(): _from_poly(den_poly)})

    coefficients = list(num.terms.values()) + list(den.terms.values())
    scale = lcm(*(c.denominator for c in coefficients))
    content = gcd(*(int(c * scale) for c in coefficients))
    factor = Fraction(scale, content)
    if _leading_coefficient(den) < 0:
        factor = -factor
    return num.scale(factor), den.scale(factor)


@dataclass(frozen=True)
class RationalExpr:
    """An estimator formula: numerator over denominator, both SymExpr."""
    numerator: SymExpr
    denominator: SymExpr

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ZeroDenominatorError("zero denominator")

    @classmethod
    def of(cls, expr: SymExpr) -> "RationalExpr":
        return cls(expr, SymExpr.constant(1))

    def normalized(self) -> "RationalExpr":
        num, den = normalize_over_common_denominator(self.numerator, self.denominator)
        return RationalExpr(num, den)

    def expand_factorials(self) -> "RationalExpr":
        return RationalExpr(falling_factorial_expand(self.numerator), falling_factorial_expand(self.denominator))

    @property
    def term_count(self) -> int:
        return len(self.numerator.collect_in_n())

    @property
    def total_degree(self) -> int:
        """Largest total degree of the data atoms (S, AUG) in one numerator term."""
        best = 0
        for key in self.numerator.terms:
            degree = 0
            for atom, e in key:
                if atom.kind == "S":
                    degree += sum(atom.index) * e
                elif atom.kind == "AUG":
                    degree += sum(sum(part) for part in atom.index) * e
            best = max(best, degree)
        return best

    def specialize_n(self, n: int) -> SymExpr:
        """
        Exact value of the formula at a concrete sample size.

        Raises:
            GuardViolation: If n is below the total degree of the formula
            ZeroDenominatorError: If the denominator vanishes at n
        """
        if n < self.total_degree:
            raise GuardViolation(
                f"sample size {n} below estimator degree {self.total_degree}",
                limit=self.total_degree, requested=n,
            )
        den = self.denominator.specialize_n(n)
        if not den.is_constant:
            raise InputError("denominator depends on data atoms; cannot specialize")
        value = den.constant_value()
        if not value:
            raise ZeroDenominatorError(f"denominator vanishes at n={n}")
        return self.numerator.specialize_n(n).scale(1 / value)

    def __str__(self):
        from src.formatters import to_text
        return to_text(self)
