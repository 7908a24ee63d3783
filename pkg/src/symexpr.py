"""
Symbolic Expressions
Exact sparse polynomials over formal atoms: the sample size n, falling
factorials (n)_k, power sums S_v, population moments m_v, cumulants k_v and
augmented brackets AUG[{v1},{v2},...]. Coefficients are Fractions.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import chain
from numbers import Rational
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from src.errors import InputError

Vector = Tuple[int, ...]

# Atom kinds in canonical print order
KIND_RANK = {"n": 0, "ff": 1, "S": 2, "m": 3, "k": 4, "AUG": 5}


@dataclass(frozen=True, order=True)
class Atom:
    rank: int
    kind: str
    index: tuple

    def __repr__(self):
        return f"Atom({self.kind}, {self.index})"


def _check_vector(v: Sequence[int]) -> Vector:
    v = tuple(int(x) for x in v)
    if not v or any(x < 0 for x in v) or not any(v):
        raise InputError(f"exponent vector must be non-negative and non-zero: {v}")
    return v


def vector_key(v: Vector):
    """Order exponent vectors by total degree, then mu_1-heavy first."""
    return (sum(v), tuple(-x for x in v))


N = Atom(KIND_RANK["n"], "n", ())


def falling(depth: int) -> Atom:
    if depth < 1:
        raise InputError(f"falling factorial depth must be positive: {depth}")
    return Atom(KIND_RANK["ff"], "ff", (depth,))


def power_sum(v: Sequence[int]) -> Atom:
    return Atom(KIND_RANK["S"], "S", _check_vector(v))


def moment(v: Sequence[int]) -> Atom:
    return Atom(KIND_RANK["m"], "m", _check_vector(v))


def cumulant(v: Sequence[int]) -> Atom:
    return Atom(KIND_RANK["k"], "k", _check_vector(v))


@dataclass(frozen=True)
class Bracket:
    """Augmented symmetric function identified by a multiset of exponent vectors."""
    parts: Tuple[Vector, ...]

    def __post_init__(self):
        if not self.parts:
            raise InputError("bracket needs at least one part")
        checked = tuple(sorted((_check_vector(p) for p in self.parts), key=vector_key))
        if len({len(p) for p in checked}) > 1:
            raise InputError(f"bracket mixes exponent widths: {self.parts}")
        object.__setattr__(self, "parts", checked)

    @classmethod
    def univariate(cls, parts: Iterable[int]) -> "Bracket":
        return cls(tuple((p,) for p in parts))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def width(self) -> int:
        return len(self.parts[0])

    @property
    def degree(self) -> int:
        return sum(sum(p) for p in self.parts)

    def counts(self) -> List[Tuple[Vector, int]]:
        """Distinct parts with multiplicities, in canonical order."""
        out: List[Tuple[Vector, int]] = []
        for p in self.parts:
            if out and out[-1][0] == p:
                out[-1] = (p, out[-1][1] + 1)
            else:
                out.append((p, 1))
        return out

    def atom(self) -> Atom:
        return Atom(KIND_RANK["AUG"], "AUG", self.parts)

    @classmethod
    def from_atom(cls, atom: Atom) -> "Bracket":
        if atom.kind != "AUG":
            raise InputError(f"not a bracket atom: {atom}")
        return cls(atom.index)


TermKey = Tuple[Tuple[Atom, int], ...]
Number = Union[int, Fraction]


def _canonical_key(powers: Iterable[Tuple[Atom, int]]) -> TermKey:
    """One (atom, power) pair per atom, zero powers dropped, atoms sorted."""
    merged: Counter = Counter()
    for atom, e in powers:
        merged[atom] += e
    return tuple(sorted((atom, e) for atom, e in merged.items() if e))


def _mul_keys(a: TermKey, b: TermKey) -> TermKey:
    return _canonical_key(chain(a, b))


class SymExpr:
    """
    Sparse exact polynomial: a map from atom power-products to Fractions.

    Values are immutable; every operation returns a new expression in
    canonical form (no zero coefficients, atoms sorted inside each key).
    """
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[TermKey, Number] = None):
        clean: Dict[TermKey, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    key = _canonical_key(key)
                    clean[key] = clean.get(key, 0) + Fraction(coeff)
        self._terms = {key: c for key, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: Dict[TermKey, Fraction]) -> "SymExpr":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, value: Number) -> "SymExpr":
        return cls({(): value})

    @classmethod
    def from_atom(cls, atom: Atom, exponent: int = 1) -> "SymExpr":
        if exponent == 0:
            return cls.constant(1)
        return cls({((atom, exponent),): 1})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Iterable[Tuple[Atom, int]], Number]]) -> "SymExpr":
        """Build from (atom powers, coefficient) pairs, collecting equal keys."""
        acc: Dict[TermKey, Fraction] = {}
        for powers, coeff in pairs:
            key = _canonical_key(powers)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        return cls(acc)

    @property
    def terms(self) -> Mapping[TermKey, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(key == () for key in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise InputError("expression is not a constant")
        return self._terms.get((), Fraction(0))

    def atoms(self) -> set:
        return {atom for key in self._terms for atom, _ in key}

    @staticmethod
    def _lift(other) -> "SymExpr":
        if isinstance(other, SymExpr):
            return other
        if isinstance(other, (int, Rational)):
            return SymExpr.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            total = out.get(key, 0) + coeff
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return SymExpr._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymExpr._raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Number) -> "SymExpr":
        factor = Fraction(factor)
        if not factor:
            return SymExpr()
        return SymExpr._raw({key: c * factor for key, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: Dict[TermKey, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = _mul_keys(k1, k2)
                total = out.get(key, 0) + c1 * c2
                if total:
                    out[key] = total
                else:
                    out.pop(key, None)
        return SymExpr._raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"only non-negative integer powers are supported: {exponent}")
        result = SymExpr.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def substitute(self, mapping: Mapping[Atom, Union["SymExpr", Number]]) -> "SymExpr":
        """Replace atoms by expressions or numbers; other atoms are kept."""
        if not mapping:
            return self
        lifted = {atom: SymExpr._lift(value) for atom, value in mapping.items()}
        acc: Dict[TermKey, Fraction] = {}
        power_cache: Dict[Tuple[Atom, int], SymExpr] = {}
        for key, coeff in self._terms.items():
            kept = []
            factor = SymExpr.constant(coeff)
            for atom, e in key:
                if atom in lifted:
                    if e < 0:
                        raise InputError(f"cannot substitute into negative power of {atom}")
                    cached = power_cache.get((atom, e))
                    if cached is None:
                        cached = lifted[atom] ** e
                        power_cache[(atom, e)] = cached
                    factor = factor * cached
                else:
                    kept.append((atom, e))
            kept_key = tuple(kept)
            for fkey, fcoeff in factor._terms.items():
                merged = _mul_keys(fkey, kept_key)
                acc[merged] = acc.get(merged, 0) + fcoeff
        return SymExpr(acc)

    def specialize_n(self, n: int) -> "SymExpr":
        """Substitute a concrete sample size into n and every (n)_k."""
        mapping: Dict[Atom, Number] = {N: n}
        for atom in self.atoms():
            if atom.kind == "ff":
                mapping[atom] = falling_value(n, atom.index[0])
        return self.substitute(mapping)

    def collect_in_n(self) -> Dict[TermKey, Dict[int, Fraction]]:
        """Group terms by their non-n part; values map powers of n to coefficients."""
        grouped: Dict[TermKey, Dict[int, Fraction]] = {}
        for key, coeff in self._terms.items():
            power = 0
            rest = []
            for atom, e in key:
                if atom == N:
                    power = e
                else:
                    rest.append((atom, e))
            grouped.setdefault(tuple(rest), {})[power] = coeff
        return grouped

    def __repr__(self):
        from src.formatters import to_text
        return f"SymExpr({to_text(self)})"

    def __str__(self):
        from src.formatters import to_text
        return to_text(self)


@lru_cache(maxsize=None)
def falling_factorial_coefficients(start: int, stop: int) -> Tuple[int, ...]:
    """
    Integer coefficients (constant term first) of (n - start)(n - start - 1)...(n - stop + 1).

    An empty product (stop <= start) is the constant 1.
    """
    coeffs = [1]
    for j in range(start, stop):
        shifted = [0] + coeffs
        for p, c in enumerate(coeffs):
            shifted[p] -= j * c
        coeffs = shifted
    return tuple(coeffs)


def n_polynomial(coeffs: Sequence[Number]) -> SymExpr:
    """Polynomial in n from a constant-first coefficient list."""
    return SymExpr({((N, p),) if p else (): c for p, c in enumerate(coeffs) if c})


def falling_value(n: int, depth: int) -> int:
    value = 1
    for j in range(depth):
        value *= n - j
    return value


def falling_factorial_expand(expr: SymExpr) -> SymExpr:
    """Replace every (n)_k atom by its expanded polynomial in n."""
    mapping = {
        atom: n_polynomial(falling_factorial_coefficients(0, atom.index[0]))
        for atom in expr.atoms() if atom.kind == "ff"
    }
    return expr.substitute(mapping)
