"""
Brute-Force Oracle
Expands power sums and brackets as explicit sums over the sample units
X_{i,c} (unit i, variable c) of a small concrete sample and takes exact
expectations: units are independent and identically distributed, variables
within one unit are fully dependent.

Dense exponent tuples keep this deliberately simple; it is ground truth for
the symbolic engine, not a fast path.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Mapping, Sequence, Tuple

from logzero import logger

from config import config
from src.errors import GuardViolation, InputError
from src.rational import RationalExpr
from src.symexpr import Bracket, SymExpr, falling_value, moment

DenseKey = Tuple[int, ...]


@dataclass(frozen=True)
class FormalSample:
    """n units of `arity` jointly distributed variables (X, Y, ...)."""
    n: int
    arity: int = 1

    def __post_init__(self):
        if not 1 <= self.n <= config.ORACLE_MAX_N:
            raise GuardViolation(
                f"oracle sample size must be within 1..{config.ORACLE_MAX_N}, got {self.n}",
                limit=config.ORACLE_MAX_N, requested=self.n,
            )
        if self.arity < 1:
            raise InputError(f"sample arity must be positive: {self.arity}")

    def slot(self, unit: int, variable: int) -> int:
        return unit * self.arity + variable


class IndexedPolynomial:
    """Polynomial in the X_{i,c} with exact coefficients, keyed by dense exponent tuples."""
    __slots__ = ("sample", "terms")

    def __init__(self, sample: FormalSample, terms: Mapping[DenseKey, Fraction] = None):
        self.sample = sample
        self.terms: Dict[DenseKey, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, sample: FormalSample, value) -> "IndexedPolynomial":
        return cls(sample, {(0,) * (sample.n * sample.arity): value})

    def _check(self, other: "IndexedPolynomial"):
        if other.sample != self.sample:
            raise InputError("indexed polynomials over different samples")

    def __add__(self, other: "IndexedPolynomial") -> "IndexedPolynomial":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return IndexedPolynomial(self.sample, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return IndexedPolynomial(self.sample, {k: c * other for k, c in self.terms.items()})
        self._check(other)
        out: Dict[DenseKey, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                out[key] = out.get(key, 0) + c1 * c2
        return IndexedPolynomial(self.sample, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IndexedPolynomial":
        result = IndexedPolynomial.constant(self.sample, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, IndexedPolynomial):
            return NotImplemented
        return self.sample == other.sample and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"IndexedPolynomial(n={self.sample.n}, arity={self.sample.arity}, terms={len(self.terms)})"


def _check_width(v: Sequence[int], sample: FormalSample) -> None:
    if len(v) != sample.arity:
        raise InputError(f"exponent vector {tuple(v)} does not match sample arity {sample.arity}")


def _unit_monomial(assignments: Sequence[Tuple[int, Sequence[int]]], sample: FormalSample) -> DenseKey:
    key = [0] * (sample.n * sample.arity)
    for unit, v in assignments:
        for c, e in enumerate(v):
            key[sample.slot(unit, c)] += e
    return tuple(key)


def expand_power_sum(v: Sequence[int], sample: FormalSample) -> IndexedPolynomial:
    """S_v = sum over units i of prod_c X_{i,c}^{v_c}."""
    _check_width(v, sample)
    if not any(v):
        raise InputError("power sum of the zero vector")
    return IndexedPolynomial(sample, {_unit_monomial([(i, v)], sample): 1 for i in range(sample.n)})


def expand_bracket(bracket: Bracket, sample: FormalSample) -> IndexedPolynomial:
    """Sum over injective unit tuples of the part monomials; zero when parts exceed n."""
    _check_width(bracket.parts[0], sample)
    if bracket.length > sample.n:
        logger.info(f"Bracket with {bracket.length} parts is an empty sum at n={sample.n}")
        return IndexedPolynomial(sample)
    out: Dict[DenseKey, Fraction] = {}
    for units in permutations(range(sample.n), bracket.length):
        key = _unit_monomial(list(zip(units, bracket.parts)), sample)
        out[key] = out.get(key, 0) + 1
    return IndexedPolynomial(sample, out)


def expectation(poly: IndexedPolynomial, sample: FormalSample = None) -> SymExpr:
    """E[...] under independence across units, as a polynomial in moment atoms."""
    sample = sample or poly.sample
    acc: Dict = {}
    for key, coeff in poly.terms.items():
        powers: Dict = {}
        for unit in range(sample.n):
            a = key[sample.slot(unit, 0):sample.slot(unit, 0) + sample.arity]
            if any(a):
                atom = moment(a)
                powers[atom] = powers.get(atom, 0) + 1
        term = tuple(sorted(powers.items()))
        acc[term] = acc.get(term, 0) + coeff
    return SymExpr(acc)


def evaluate(expr: SymExpr, sample: FormalSample) -> IndexedPolynomial:
    """Expand power sums, brackets, n and (n)_k at the concrete sample."""
    cache: Dict = {}

    def atom_value(atom) -> IndexedPolynomial:
        if atom not in cache:
            if atom.kind == "S":
                cache[atom] = expand_power_sum(atom.index, sample)
            elif atom.kind == "AUG":
                cache[atom] = expand_bracket(Bracket.from_atom(atom), sample)
            elif atom.kind == "n":
                cache[atom] = IndexedPolynomial.constant(sample, sample.n)
            elif atom.kind == "ff":
                cache[atom] = IndexedPolynomial.constant(sample, falling_value(sample.n, atom.index[0]))
            else:
                raise InputError(f"cannot evaluate population atom {atom} on a sample")
        return cache[atom]

    total = IndexedPolynomial(sample)
    for key, coeff in expr.terms.items():
        term = IndexedPolynomial.constant(sample, coeff)
        for atom, e in key:
            if e < 0:
                raise InputError(f"negative power of {atom} in a sample expression")
            term = term * (atom_value(atom) ** e)
        total = total + term
    return total


def estimator_expectation(estimator: RationalExpr, sample: FormalSample) -> SymExpr:
    """
    Expected value of an estimator at the sample size.

    Raises:
        GuardViolation: If the sample is smaller than the estimator's degree
    """
    specialized = estimator.specialize_n(sample.n)
    return expectation(evaluate(specialized, sample), sample)


def check_unbiased(
    estimator: RationalExpr, target: SymExpr, n_values: Sequence[int], arity: int = 1
) -> List[dict]:
    """
    Compare E[estimator] with the target moment polynomial at several sample sizes.

    Returns:
        list: One dict per n with keys n, ok, expected, actual
    """
    report = []
    for n in n_values:
        actual = estimator_expectation(estimator, FormalSample(n, arity))
        ok = actual == target
        if not ok:
            logger.warning(f"Estimator is biased at n={n}")
        report.append({"n": n, "ok": ok, "expected": target, "actual": actual})
    return report


def check_conversion(lhs: SymExpr, rhs: SymExpr, sample: FormalSample) -> bool:
    """Both sides expand to the same polynomial in the sample variables."""
    return evaluate(lhs, sample) == evaluate(rhs, sample)
