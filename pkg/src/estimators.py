"""
Estimators
Builds U-statistics, k-statistics and polykays (univariate and multivariate)
as exact power-sum formulas over a common denominator in n, plus the
moment/cumulant relations they are unbiased for.

Every estimator is assembled the same way: each cumulant factor expands into
moment products, each moment product has the unbiased estimator
[parts] / (n)_k, and the brackets are finally rewritten in power sums.
"""
import time
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from logzero import logger

from config import config
from src.basis_conversion import aug_to_ps, aug_to_ps_many, block_coefficient, merged_vector
from src.errors import GuardViolation, InputError
from src.monomial import Multiset
from src.partitions import IntegerPartition, d_lambda, integer_partitions
from src.rational import RationalExpr, normalize_over_common_denominator
from src.subdivisions import shape_subdivisions
from src.symexpr import (
    N, Bracket, SymExpr, TermKey, Vector, cumulant, falling, falling_factorial_coefficients,
    moment, n_polynomial,
)

# (bracket length, bracket parts, integer coefficient)
Piece = Tuple[int, Tuple[Vector, ...], int]


def _check_order(order: int, max_order: Optional[int]) -> None:
    limit = config.MAX_ORDER if max_order is None else max_order
    if order > limit:
        raise GuardViolation(f"order {order} exceeds the maximum of {limit}", limit=limit, requested=order)


def _as_multiset(vectors: Union[Multiset, Sequence[Sequence[int]]]) -> Multiset:
    if isinstance(vectors, Multiset):
        if vectors.has_labels:
            raise InputError("estimator inputs are unlabeled exponent vectors")
        multiset = vectors
    else:
        multiset = Multiset.from_vectors(vectors)
    if multiset.is_empty:
        raise InputError("estimator input needs at least one exponent vector")
    return multiset


def univariate_pieces(i: int) -> List[Piece]:
    """kappa_i = sum over partitions of i of x_(nu) d_lambda times the moment product."""
    return [
        (lam.length, tuple((p,) for p in lam.parts), block_coefficient(lam.length) * d_lambda(lam))
        for lam in integer_partitions(i)
    ]


def joint_pieces(multiset: Multiset) -> List[Piece]:
    """kappa_T = sum over subdivisions of T of multiplicity x_(|S|) times merged moments."""
    elements = [element.exponents for element in multiset.distinct]
    pieces = []
    for blocks, multiplicity in shape_subdivisions(multiset.multiplicities):
        parts = tuple(merged_vector(elements, counts) for counts in blocks)
        pieces.append((len(blocks), parts, multiplicity * block_coefficient(len(blocks))))
    return pieces


def _combine(factors: Sequence[List[Piece]]) -> Dict[Tuple[int, Bracket], int]:
    """Multiply out cumulant factors, collecting equal (length, bracket) pairs."""
    acc: Dict[Tuple[int, Tuple[Vector, ...]], int] = {}
    for choice in product(*factors):
        length = sum(piece[0] for piece in choice)
        parts = tuple(sorted(p for piece in choice for p in piece[1]))
        coeff = 1
        for piece in choice:
            coeff *= piece[2]
        key = (length, parts)
        acc[key] = acc.get(key, 0) + coeff
    return {(length, Bracket(parts)): c for (length, parts), c in acc.items() if c}


def _assemble(collected: Dict[Tuple[int, Bracket], int], top: int, threads: int) -> RationalExpr:
    """
    Sum of c / (n)_k * [bracket] over a common denominator (n)_top, in power sums.

    Coefficients are accumulated as integers per bracket length and only then
    multiplied by (n - k)(n - k - 1)...(n - top + 1).
    """
    brackets = sorted({b for _, b in collected}, key=lambda b: b.parts)
    expansions = dict(zip(brackets, aug_to_ps_many(brackets, threads)))

    by_length: Dict[int, Dict[TermKey, int]] = {}
    for (length, bracket), coeff in collected.items():
        bucket = by_length.setdefault(length, {})
        for key, c in expansions[bracket].items():
            bucket[key] = bucket.get(key, 0) + coeff * c

    terms: Dict[TermKey, int] = {}
    for length, bucket in by_length.items():
        poly = falling_factorial_coefficients(length, top)
        for key, c in bucket.items():
            if not c:
                continue
            for power, a in enumerate(poly):
                if not a:
                    continue
                full = (((N, power),) + key) if power else key
                terms[full] = terms.get(full, 0) + a * c
    numerator = SymExpr(terms)
    denominator = n_polynomial(falling_factorial_coefficients(0, top))
    num, den = normalize_over_common_denominator(numerator, denominator)
    return RationalExpr(num, den)


def _build(label: str, factors: Sequence[List[Piece]], top: int, threads: Optional[int]) -> RationalExpr:
    threads = config.DEFAULT_THREADS if threads is None else threads
    started = time.perf_counter()
    collected = _combine(factors)
    result = _assemble(collected, top, threads)
    elapsed = (time.perf_counter() - started) * 1000
    logger.info(f"Built {label}: {result.term_count} power-sum terms from {len(collected)} brackets in {elapsed:.1f} ms")
    return result


def u_statistic(
    parts: Union[IntegerPartition, Bracket, Multiset, Sequence[Sequence[int]]],
    want_ps: bool = False,
    max_order: Optional[int] = None,
) -> RationalExpr:
    """
    Unbiased estimator of the moment product m_{v1} ... m_{vk}.

    Args:
        parts: Integer partition (univariate) or exponent vectors
        want_ps: Return the power-sum form instead of the bracket form
        max_order: Override of the total-degree guard

    Returns:
        RationalExpr: [parts] / (n)_k, or its normalized power-sum form
    """
    if isinstance(parts, IntegerPartition):
        if not parts.parts:
            raise InputError("U-statistic of the empty partition")
        bracket = Bracket.univariate(parts.parts)
    elif isinstance(parts, Bracket):
        bracket = parts
    else:
        bracket = Bracket(tuple(e.exponents for e in _as_multiset(parts).elements()))
    _check_order(bracket.degree, max_order)
    k = bracket.length
    denominator = SymExpr.from_atom(N if k == 1 else falling(k))
    if not want_ps:
        return RationalExpr(SymExpr.from_atom(bracket.atom()), denominator)
    return RationalExpr(aug_to_ps(bracket), denominator).normalized()


def cumulants_from_moments(i: int) -> SymExpr:
    """kappa_i in population moments."""
    if i < 1:
        raise InputError(f"cumulant order must be positive: {i}")
    return SymExpr.from_terms(
        (((moment(part), 1) for part in parts), coeff) for _, parts, coeff in univariate_pieces(i)
    )


def joint_cumulant_from_moments(vectors: Union[Multiset, Sequence[Sequence[int]]]) -> SymExpr:
    """Joint cumulant kappa_T in joint population moments."""
    multiset = _as_multiset(vectors)
    return SymExpr.from_terms(
        (((moment(part), 1) for part in parts), coeff) for _, parts, coeff in joint_pieces(multiset)
    )


def cumulant_product_from_moments(groups: Sequence[Union[Multiset, Sequence[Sequence[int]]]]) -> SymExpr:
    """Product of joint cumulants, one per group, in moments."""
    if not groups:
        raise InputError("cumulant product needs at least one group")
    result = SymExpr.constant(1)
    for group in groups:
        result = result * joint_cumulant_from_moments(group)
    return result


def moments_from_cumulants(i: int) -> SymExpr:
    """m_i = sum over partitions of i of d_lambda times the cumulant product."""
    if i < 1:
        raise InputError(f"moment order must be positive: {i}")
    return SymExpr.from_terms(
        (((cumulant((p,)), 1) for p in lam.parts), d_lambda(lam)) for lam in integer_partitions(i)
    )


def k_statistic(i: int, max_order: Optional[int] = None, threads: Optional[int] = None) -> RationalExpr:
    """
    k-statistic k_i, the symmetric unbiased estimator of kappa_i.

    Args:
        i: Order, 1 <= i <= max order
        max_order: Override of config.MAX_ORDER
        threads: Worker threads for the bracket expansions

    Returns:
        RationalExpr: e.g. k_3 = (n^2*S[3] - 3*n*S[1]*S[2] + 2*S[1]^3) / (n*(n-1)*(n-2))
    """
    if i < 1:
        raise InputError(f"k-statistic order must be positive: {i}")
    _check_order(i, max_order)
    return _build(f"k_{i}", [univariate_pieces(i)], i, threads)


def polykay(orders: Sequence[int], max_order: Optional[int] = None, threads: Optional[int] = None) -> RationalExpr:
    """
    Polykay k_{r,...,t}, the symmetric unbiased estimator of kappa_r ... kappa_t.
    """
    orders = list(orders)
    if not orders:
        raise InputError("polykay needs at least one order")
    if any(r < 1 for r in orders):
        raise InputError(f"polykay orders must be positive: {orders}")
    _check_order(sum(orders), max_order)
    label = "k_" + ",".join(str(r) for r in orders)
    return _build(label, [univariate_pieces(r) for r in orders], sum(orders), threads)


def multivariate_k_statistic(
    vectors: Union[Multiset, Sequence[Sequence[int]]],
    max_order: Optional[int] = None,
    threads: Optional[int] = None,
) -> RationalExpr:
    """Unbiased estimator of the joint cumulant indexed by a multiset of exponent vectors."""
    multiset = _as_multiset(vectors)
    _check_order(multiset.size, max_order)
    return _build(f"k_{multiset}", [joint_pieces(multiset)], multiset.size, threads)


def multivariate_polykay(
    groups: Sequence[Union[Multiset, Sequence[Sequence[int]]]],
    max_order: Optional[int] = None,
    threads: Optional[int] = None,
) -> RationalExpr:
    """Unbiased estimator of a product of joint cumulants, one per group."""
    if not groups:
        raise InputError("multivariate polykay needs at least one group")
    multisets = [_as_multiset(g) for g in groups]
    if len({m.width for m in multisets}) > 1:
        raise InputError("all groups must use the same number of variables")
    top = sum(m.size for m in multisets)
    _check_order(top, max_order)
    label = "k_" + "".join(str(m) for m in multisets)
    return _build(label, [joint_pieces(m) for m in multisets], top, threads)
