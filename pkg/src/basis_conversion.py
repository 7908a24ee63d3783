"""
Basis Conversion
Moves between products of power sums and augmented symmetric functions
(brackets) through multiset subdivisions, multiplies brackets with singleton
labels, and takes expectations of bracket expressions.
"""
from concurrent.futures import ThreadPoolExecutor
from math import factorial
from typing import Dict, Iterable, List, Sequence

from logzero import logger

from config import config
from src.errors import InputError
from src.monomial import Monomial, Multiset, merge_block
from src.subdivision_cache import SubdivisionCache
from src.subdivisions import shape_subdivisions, subdivisions
from src.symexpr import (
    N, Bracket, SymExpr, TermKey, Vector, falling, moment, power_sum,
)

_AUG_TO_PS_CACHE = SubdivisionCache("aug_to_ps", max_size=config.SUBDIVISION_CACHE_SIZE)


def block_coefficient(size: int) -> int:
    """(-1)^(b-1) (b-1)!, the factorial moment of the singleton umbra."""
    return (-1) ** (size - 1) * factorial(size - 1)


def _power_product_key(vectors: Iterable[Sequence[int]]) -> TermKey:
    counts: Dict = {}
    for v in vectors:
        atom = power_sum(v)
        counts[atom] = counts.get(atom, 0) + 1
    return tuple(sorted(counts.items()))


def ps_to_aug(multiset: Multiset) -> SymExpr:
    """
    Expand a product of power sums into brackets.

    Each element of the multiset stands for one power-sum factor S_v. Every
    subdivision contributes its multiplicity times the bracket of its merged
    blocks.

    Args:
        multiset: Non-empty multiset of unlabeled monomials

    Returns:
        SymExpr: Linear combination of bracket atoms

    Raises:
        InputError: If any monomial carries a singleton label
    """
    if multiset.has_labels:
        raise InputError("ps_to_aug takes unlabeled monomials; use aug_product for labeled input")
    acc: Dict[TermKey, int] = {}
    for subdivision in subdivisions(multiset):
        parts = tuple(merge_block(block).exponents for block in subdivision.iter_blocks())
        key = ((Bracket(parts).atom(), 1),)
        acc[key] = acc.get(key, 0) + subdivision.multiplicity
    logger.debug(f"ps_to_aug {multiset}: {len(acc)} brackets")
    return SymExpr(acc)


def merged_vector(elements: Sequence[Vector], counts: Sequence[int]) -> Vector:
    """Exponent vector of a count-vector block over distinct unlabeled elements."""
    width = len(elements[0])
    return tuple(sum(c * e[col] for c, e in zip(counts, elements)) for col in range(width))


def _aug_to_ps_terms(bracket: Bracket) -> Dict[TermKey, int]:
    distinct = [part for part, _ in bracket.counts()]
    shape = [count for _, count in bracket.counts()]
    acc: Dict[TermKey, int] = {}
    for blocks, multiplicity in shape_subdivisions(shape):
        coeff = multiplicity
        for counts in blocks:
            coeff *= block_coefficient(sum(counts))
        key = _power_product_key(merged_vector(distinct, counts) for counts in blocks)
        acc[key] = acc.get(key, 0) + coeff
    return {key: c for key, c in acc.items() if c}


def aug_to_ps_terms(bracket: Bracket) -> Dict[TermKey, int]:
    """Integer power-sum coefficients of a bracket, memoized per bracket."""
    key = SubdivisionCache.generate_key("aug_to_ps", parts=[list(p) for p in bracket.parts])
    return _AUG_TO_PS_CACHE.get_or_compute(key, lambda: _aug_to_ps_terms(bracket))


def aug_to_ps(bracket: Bracket) -> SymExpr:
    """
    Express a bracket in power sums.

    Args:
        bracket: Non-empty bracket

    Returns:
        SymExpr: Polynomial in power-sum atoms with integer coefficients
    """
    return SymExpr(aug_to_ps_terms(bracket))


def aug_to_ps_many(brackets: Sequence[Bracket], threads: int = 1) -> List[Dict[TermKey, int]]:
    """aug_to_ps_terms for several brackets, in input order."""
    if threads > 1 and len(brackets) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(aug_to_ps_terms, brackets))
    return [aug_to_ps_terms(b) for b in brackets]


def brackets_to_ps(expr: SymExpr, threads: int = 1) -> SymExpr:
    """Replace every bracket atom of an expression by its power-sum form."""
    brackets = sorted({Bracket.from_atom(a) for a in expr.atoms() if a.kind == "AUG"}, key=lambda b: b.parts)
    expansions = aug_to_ps_many(brackets, threads)
    return expr.substitute({b.atom(): SymExpr(terms) for b, terms in zip(brackets, expansions)})


def labeled_multiset(brackets: Sequence[Bracket]) -> Multiset:
    """Tag every part of the j-th bracket with singleton label j + 1."""
    counts: Dict[Monomial, int] = {}
    for label, bracket in enumerate(brackets, start=1):
        for part in bracket.parts:
            element = Monomial(part, (label,))
            counts[element] = counts.get(element, 0) + 1
    return Multiset.from_counts(counts)


def aug_product(brackets: Sequence[Bracket]) -> SymExpr:
    """
    Product of brackets, expanded back into brackets.

    Parts of one bracket share a singleton label so they can never merge
    with each other; subdivisions that would co-locate a label are pruned
    during enumeration.

    Args:
        brackets: Non-empty list of brackets of equal width

    Returns:
        SymExpr: Linear combination of bracket atoms
    """
    brackets = list(brackets)
    if not brackets:
        raise InputError("aug_product needs at least one bracket")
    if len(brackets) == 1:
        return SymExpr.from_atom(brackets[0].atom())
    multiset = labeled_multiset(brackets)
    acc: Dict[TermKey, int] = {}
    kept = 0
    for subdivision in subdivisions(multiset):
        parts = []
        for block in subdivision.iter_blocks():
            merged = merge_block(block)
            if merged is None:
                break
            parts.append(merged.exponents)
        else:
            key = ((Bracket(tuple(parts)).atom(), 1),)
            acc[key] = acc.get(key, 0) + subdivision.multiplicity
            kept += 1
    logger.debug(f"aug_product of {len(brackets)} brackets: {kept} surviving subdivisions, {len(acc)} terms")
    return SymExpr(acc)


def bracket_expectation(bracket: Bracket) -> SymExpr:
    """(n)_k times the product of moments of the k parts."""
    k = bracket.length
    factor = SymExpr.from_atom(N if k == 1 else falling(k))
    for part in bracket.parts:
        factor = factor * SymExpr.from_atom(moment(part))
    return factor


def expectation_of_brackets(expr: SymExpr) -> SymExpr:
    """
    Expected value of a bracket expression under i.i.d. sampling.

    Raises:
        InputError: If the expression holds atoms other than brackets and n
    """
    stray = [a for a in expr.atoms() if a.kind not in ("AUG", "n")]
    if stray:
        raise InputError(f"expectation_of_brackets takes bracket expressions, found {stray[0]}")
    return expr.substitute({
        a: bracket_expectation(Bracket.from_atom(a)) for a in expr.atoms() if a.kind == "AUG"
    })


def cache_stats() -> dict:
    return _AUG_TO_PS_CACHE.get_stats()


def clear_cache() -> None:
    _AUG_TO_PS_CACHE.clear()
