"""
Input Parser
Reads the command-line grammar:

    multiset   a^3,g^2        three copies of a and two of g
               (a^2*b),a      a product monomial in parentheses
    vectors    2,0;1,0        semicolon-separated exponent vectors
    integers   3,3,2          comma-separated positive integers
"""
import re
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.errors import ParseError
from src.monomial import Monomial, Multiset
from src.partitions import IntegerPartition
from src.symexpr import Bracket, Vector

_SYMBOL = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?$")
_ELEMENT = re.compile(r"^(\(([^()]*)\)|[A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?$")


@dataclass(frozen=True)
class ParsedMultiset:
    """A multiset together with the symbol names of its variables."""
    multiset: Multiset
    names: Tuple[str, ...]


def _split(text: str, sep: str) -> List[str]:
    if text is None or not text.strip():
        raise ParseError("empty input")
    items = [item.strip() for item in text.split(sep)]
    if any(not item for item in items):
        raise ParseError(f"empty item in {text!r}")
    return items


def _positive(token: str, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}") from None
    if value <= 0:
        raise ParseError(f"{what} must be positive, got {value}")
    return value


def parse_multiset(text: str) -> ParsedMultiset:
    """
    Parse a multiset of monomials in named symbols.

    Symbols become variables in order of first appearance, so "a,a,b" is
    {mu1, mu1, mu2}.

    Raises:
        ParseError: On malformed elements or zero repetitions
    """
    names: Dict[str, int] = {}
    raw: List[Tuple[Dict[str, int], int]] = []
    for item in _split(text, ","):
        match = _ELEMENT.match(item.replace(" ", ""))
        if not match:
            raise ParseError(f"cannot parse multiset element {item!r}")
        body = match.group(2) if match.group(2) is not None else match.group(1)
        repeat = _positive(match.group(3), "repetition") if match.group(3) else 1
        powers: Dict[str, int] = {}
        for factor in body.split("*"):
            fmatch = _SYMBOL.match(factor)
            if not fmatch:
                raise ParseError(f"cannot parse factor {factor!r} in {item!r}")
            symbol = fmatch.group(1)
            exponent = _positive(fmatch.group(2), "exponent") if fmatch.group(2) else 1
            names.setdefault(symbol, len(names))
            powers[symbol] = powers.get(symbol, 0) + exponent
        raw.append((powers, repeat))

    width = len(names)
    counts: Dict[Monomial, int] = {}
    for powers, repeat in raw:
        exps = [0] * width
        for symbol, exponent in powers.items():
            exps[names[symbol]] = exponent
        element = Monomial(tuple(exps))
        counts[element] = counts.get(element, 0) + repeat
    ordered = tuple(sorted(names, key=names.get))
    return ParsedMultiset(Multiset.from_counts(counts), ordered)


def parse_vector(text: str) -> Vector:
    try:
        vector = tuple(int(x) for x in _split(text, ","))
    except ValueError:
        raise ParseError(f"exponent vector must hold integers: {text!r}") from None
    if any(x < 0 for x in vector) or not any(vector):
        raise ParseError(f"exponent vector must be non-negative and non-zero: {text!r}")
    return vector


def parse_vectors(text: str) -> List[Vector]:
    """'2,0;1,0' -> [(2, 0), (1, 0)]; all vectors must share a width."""
    vectors = [parse_vector(part) for part in _split(text, ";")]
    if len({len(v) for v in vectors}) > 1:
        raise ParseError(f"exponent vectors of different widths in {text!r}")
    return vectors


def parse_bracket(text: str) -> Bracket:
    return Bracket(tuple(parse_vectors(text)))


def parse_integers(text: str) -> List[int]:
    return [_positive(token, "order") for token in _split(text, ",")]


def parse_partition(text: str) -> IntegerPartition:
    return IntegerPartition.from_parts(parse_integers(text))
