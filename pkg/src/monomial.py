"""
Umbral Monomials and Multisets
Monomials are products of powers of base symbols mu_1..mu_d, optionally
carrying singleton-umbra labels chi_i. Multisets of monomials are kept in a
canonical order so subdivisions can be deduplicated and compared.
"""
from collections import Counter
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from src.errors import InputError

Vector = Tuple[int, ...]


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """mu_1^{e_1} ... mu_d^{e_d} times a multiset of singleton labels."""
    exponents: Vector
    labels: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise InputError(f"negative exponent in monomial: {self.exponents}")
        if not self.exponents:
            raise InputError("monomial needs at least one variable slot")
        if list(self.labels) != sorted(self.labels):
            object.__setattr__(self, "labels", tuple(sorted(self.labels)))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def width(self) -> int:
        return len(self.exponents)

    def sort_key(self):
        # total degree first, then mu_1 before mu_2 (descending exponent vectors)
        return (self.degree, tuple(-e for e in self.exponents), self.labels)

    def __lt__(self, other: "Monomial"):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def display(self, names: Optional[Sequence[str]] = None) -> str:
        """Render as e.g. chi1*mu1^2*mu2, or with custom variable names."""
        if names is None:
            names = ["mu"] if self.width == 1 else [f"mu{i + 1}" for i in range(self.width)]
        factors = [f"chi{label}" for label in self.labels]
        for name, e in zip(names, self.exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"

    def __str__(self):
        return self.display()


@dataclass(frozen=True)
class Multiset:
    """Canonically ordered multiset of monomials with positive multiplicities."""
    entries: Tuple[Tuple[Monomial, int], ...] = field(default=())

    def __post_init__(self):
        merged: Dict[Monomial, int] = {}
        for element, count in self.entries:
            if count <= 0:
                raise InputError(f"multiplicity must be positive, got {count} for {element}")
            merged[element] = merged.get(element, 0) + count
        widths = {element.width for element in merged}
        if len(widths) > 1:
            raise InputError(f"multiset mixes exponent widths {sorted(widths)}")
        canonical = tuple(sorted(merged.items(), key=lambda item: item[0].sort_key()))
        object.__setattr__(self, "entries", canonical)

    @classmethod
    def of(cls, elements: Iterable[Monomial]) -> "Multiset":
        return cls(tuple(Counter(elements).items()))

    @classmethod
    def from_counts(cls, counts: Dict[Monomial, int]) -> "Multiset":
        return cls(tuple(counts.items()))

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]]) -> "Multiset":
        return cls.of(Monomial(tuple(v)) for v in vectors)

    @property
    def size(self) -> int:
        """|M|, the number of elements counted with multiplicity."""
        return sum(count for _, count in self.entries)

    @property
    def distinct(self) -> Tuple[Monomial, ...]:
        return tuple(element for element, _ in self.entries)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(count for _, count in self.entries)

    @property
    def width(self) -> int:
        if not self.entries:
            return 0
        return self.entries[0][0].width

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def has_labels(self) -> bool:
        return any(element.labels for element, _ in self.entries)

    def elements(self) -> Iterator[Monomial]:
        """Iterate with repetition, in canonical order."""
        for element, count in self.entries:
            for _ in range(count):
                yield element

    def union(self, other: "Multiset") -> "Multiset":
        return Multiset(self.entries + other.entries)

    def sort_key(self):
        return tuple((element.sort_key(), count) for element, count in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def display(self, names: Optional[Sequence[str]] = None) -> str:
        return "{" + ", ".join(element.display(names) for element in self.elements()) + "}"

    def __str__(self):
        return self.display()


def merge_block(block: Multiset) -> Optional[Monomial]:
    """
    Evaluate the product of a block of monomials.

    A singleton label seen twice in the block annihilates it (chi^2 ~ 0).
    Otherwise exponents add up and every surviving label evaluates to 1.

    Args:
        block: Non-empty multiset of monomials

    Returns:
        Monomial: The merged, label-free monomial, or None if annihilated
    """
    if block.is_empty:
        raise InputError("cannot merge an empty block")
    seen = set()
    for element, count in block.entries:
        for label in element.labels:
            if count > 1 or label in seen:
                return None
            seen.add(label)
    width = block.width
    exps = [0] * width
    for element, count in block.entries:
        for idx, e in enumerate(element.exponents):
            exps[idx] += e * count
    return Monomial(tuple(exps))
