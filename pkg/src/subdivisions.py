"""
Multiset Subdivisions
Enumerates every distinct subdivision of a multiset together with the number
of set partitions projecting onto it, by inserting the pieces of one element
at a time into the subdivisions of the elements before it.

Blocks are handled internally as count vectors over the distinct elements of
the multiset, so the same enumeration serves every multiset of a given shape.
"""
from collections import Counter
from dataclasses import dataclass
from math import factorial, prod
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from logzero import logger

from config import config
from src.errors import EmptyMultisetError
from src.monomial import Monomial, Multiset
from src.partitions import integer_partitions, set_partitions
from src.subdivision_cache import SubdivisionCache

CountVector = Tuple[int, ...]
Blocks = Tuple[CountVector, ...]
ShapeSubdivision = Tuple[Blocks, int]

_SHAPE_CACHE = SubdivisionCache("shape", max_size=config.SUBDIVISION_CACHE_SIZE)
_LABELED_CACHE = SubdivisionCache("labeled", max_size=config.SUBDIVISION_CACHE_SIZE)


@dataclass(frozen=True)
class Subdivision:
    """A multiset of blocks (block, repetition) plus its set-partition count."""
    blocks: Tuple[Tuple[Multiset, int], ...]
    multiplicity: int

    @property
    def size(self) -> int:
        """|S|, the number of blocks counted with repetition."""
        return sum(rep for _, rep in self.blocks)

    def iter_blocks(self):
        for block, rep in self.blocks:
            for _ in range(rep):
                yield block

    def parent(self) -> Multiset:
        """The multiset this subdivision splits: the union of its blocks."""
        merged = Multiset()
        for block in self.iter_blocks():
            merged = merged.union(block)
        return merged

    def display(self, names: Optional[Sequence[str]] = None) -> str:
        return "{" + ", ".join(block.display(names) for block in self.iter_blocks()) + "}"

    def __str__(self):
        return self.display()


def _multinomial(total: int, parts: Sequence[int]) -> int:
    return factorial(total) // prod(factorial(p) for p in parts)


def _multiplicity(blocks: Blocks, shape: Sequence[int]) -> int:
    """
    Set partitions of the labeled multiset that collapse onto these blocks:
    one multinomial per element over its per-block counts, divided by c_t!
    for every block repeated c_t times.
    """
    numerator = 1
    for column, total in enumerate(shape):
        numerator *= _multinomial(total, [b[column] for b in blocks if b[column]])
    denominator = prod(factorial(c) for c in Counter(blocks).values())
    return numerator // denominator


def _place(
    blocks: Blocks,
    pieces: Tuple[int, ...],
    t: int,
    column: int,
    width: int,
    produced: Set[Blocks],
    blocked: Optional[Callable[[CountVector], bool]],
) -> None:
    if t == len(pieces):
        produced.add(tuple(sorted(blocks, reverse=True)))
        return
    piece = pieces[t]
    tried = set()
    for idx, block in enumerate(blocks):
        # a block holds at most one piece of the element being inserted
        if block[column] or block in tried:
            continue
        tried.add(block)
        if blocked is not None and blocked(block):
            continue
        grown = block[:column] + (piece,) + block[column + 1:]
        _place(blocks[:idx] + (grown,) + blocks[idx + 1:], pieces, t + 1, column, width, produced, blocked)
    fresh = tuple(piece if c == column else 0 for c in range(width))
    _place(blocks + (fresh,), pieces, t + 1, column, width, produced, blocked)


def _insert_element(
    current: List[Blocks],
    column: int,
    total: int,
    width: int,
    singletons_only: bool = False,
    blocked: Optional[Callable[[CountVector], bool]] = None,
) -> List[Blocks]:
    """Insert every subdivision of {e^(total)} into every current subdivision."""
    if singletons_only:
        options = [(1,) * total]
    else:
        options = [p.parts for p in integer_partitions(total)]
    out: List[Blocks] = []
    for blocks in current:
        for pieces in options:
            produced: Set[Blocks] = set()
            _place(blocks, pieces, 0, column, width, produced, blocked)
            out.extend(sorted(produced))
    return out


def _enumerate_shape(shape: Tuple[int, ...]) -> Tuple[ShapeSubdivision, ...]:
    width = len(shape)
    current: List[Blocks] = [
        tuple(tuple(p if c == 0 else 0 for c in range(width)) for p in partition.parts)
        for partition in integer_partitions(shape[0])
    ]
    for column in range(1, width):
        current = _insert_element(current, column, shape[column], width)
    result = [(blocks, _multiplicity(blocks, shape)) for blocks in current]
    result.sort(key=lambda item: (len(item[0]), item[0]))
    logger.debug(f"Shape {shape}: {len(result)} subdivisions")
    return tuple(result)


def shape_subdivisions(shape: Sequence[int]) -> Tuple[ShapeSubdivision, ...]:
    """
    Subdivisions of any multiset with the given multiplicities, as count vectors.

    Args:
        shape: Multiplicities of the distinct elements, in the caller's order

    Returns:
        tuple: (blocks, multiplicity) pairs; each block is a count vector
            aligned with `shape`
    """
    shape = tuple(shape)
    if not shape or sum(shape) == 0:
        raise EmptyMultisetError()
    order = sorted(range(len(shape)), key=lambda i: -shape[i])
    canonical = tuple(shape[i] for i in order)
    key = SubdivisionCache.generate_key("shape", shape=list(canonical))
    cached = _SHAPE_CACHE.get_or_compute(key, lambda: _enumerate_shape(canonical))
    if list(order) == list(range(len(shape))):
        return cached
    # Map canonical positions back onto the caller's element order
    inverse = [0] * len(shape)
    for pos, original in enumerate(order):
        inverse[original] = pos
    remapped = []
    for blocks, multiplicity in cached:
        moved = tuple(sorted((tuple(b[inverse[i]] for i in range(len(shape))) for b in blocks), reverse=True))
        remapped.append((moved, multiplicity))
    remapped.sort(key=lambda item: (len(item[0]), item[0]))
    return tuple(remapped)


def _enumerate_labeled(multiset: Multiset) -> Tuple[ShapeSubdivision, ...]:
    """
    Subdivisions of a multiset whose monomials carry singleton labels.

    Blocks that would hold one label twice evaluate to zero, so insertions
    creating them are skipped instead of being generated and discarded.
    Labeled elements are split into singleton pieces for the same reason.
    """
    if multiset.is_empty:
        raise EmptyMultisetError()
    elements = multiset.distinct
    shape = multiset.multiplicities
    width = len(elements)
    label_sets = [frozenset(e.labels) for e in elements]

    def blocker(column: int) -> Optional[Callable[[CountVector], bool]]:
        labels = label_sets[column]
        if not labels:
            return None
        return lambda block: any(block[p] and label_sets[p] & labels for p in range(width))

    first_pieces = [(1,) * shape[0]] if label_sets[0] else [p.parts for p in integer_partitions(shape[0])]
    current: List[Blocks] = [
        tuple(tuple(p if c == 0 else 0 for c in range(width)) for p in pieces)
        for pieces in first_pieces
    ]
    for column in range(1, width):
        current = _insert_element(
            current, column, shape[column], width,
            singletons_only=bool(label_sets[column]), blocked=blocker(column),
        )
    result = [(blocks, _multiplicity(blocks, shape)) for blocks in current]
    result.sort(key=lambda item: (len(item[0]), item[0]))
    logger.debug(f"Labeled multiset of {width} elements: {len(result)} surviving subdivisions")
    return tuple(result)


def labeled_shape_subdivisions(multiset: Multiset) -> Tuple[ShapeSubdivision, ...]:
    """Subdivisions of a labeled multiset that survive label annihilation, memoized."""
    key = SubdivisionCache.generate_key(
        "labeled",
        entries=[[list(e.exponents), list(e.labels), count] for e, count in multiset.entries],
    )
    return _LABELED_CACHE.get_or_compute(key, lambda: _enumerate_labeled(multiset))


def _to_subdivision(elements: Sequence[Monomial], blocks: Blocks, multiplicity: int) -> Subdivision:
    repetition = Counter(blocks)
    built = []
    for counts, rep in repetition.items():
        block = Multiset(tuple((elements[i], c) for i, c in enumerate(counts) if c))
        built.append((block, rep))
    built.sort(key=lambda item: (item[0].size, item[0].sort_key()))
    return Subdivision(tuple(built), multiplicity)


def subdivisions(multiset: Multiset) -> List[Subdivision]:
    """
    Every distinct subdivision of a multiset with its multiplicity.

    Args:
        multiset: Non-empty multiset

    Returns:
        list: Subdivision objects in a deterministic order (fewest blocks first)

    Raises:
        EmptyMultisetError: If the multiset is empty
    """
    if multiset.is_empty:
        raise EmptyMultisetError()
    if multiset.has_labels:
        raw = labeled_shape_subdivisions(multiset)
    else:
        raw = shape_subdivisions(multiset.multiplicities)
    elements = multiset.distinct
    return [_to_subdivision(elements, blocks, multiplicity) for blocks, multiplicity in raw]


def project_set_partition(elements: Sequence[Monomial], partition) -> Tuple[Tuple[Multiset, int], ...]:
    """Project a set partition of positions 1..len(elements) onto subdivision blocks."""
    blocks = Counter(Multiset.of(elements[i - 1] for i in block) for block in partition)
    return tuple(sorted(blocks.items(), key=lambda item: (item[0].size, item[0].sort_key())))


def subdivisions_by_set_partitions(multiset: Multiset) -> Dict[Tuple[Tuple[Multiset, int], ...], int]:
    """
    Histogram of subdivisions obtained by labeling every element of the
    multiset and projecting all set partitions. Slow; used for verification.
    """
    if multiset.is_empty:
        raise EmptyMultisetError()
    elements = list(multiset.elements())
    histogram: Dict[Tuple[Tuple[Multiset, int], ...], int] = {}
    for partition in set_partitions(len(elements)):
        key = project_set_partition(elements, partition)
        histogram[key] = histogram.get(key, 0) + 1
    return histogram


def cache_stats() -> dict:
    """Statistics of the shape and labeled subdivision caches."""
    return {"shape": _SHAPE_CACHE.get_stats(), "labeled": _LABELED_CACHE.get_stats()}


def peak_subdivisions() -> int:
    """Largest subdivision list stored in either cache since the last clear."""
    return max(_SHAPE_CACHE.get_stats()["largest_entry"], _LABELED_CACHE.get_stats()["largest_entry"])


def clear_cache() -> None:
    _SHAPE_CACHE.clear()
    _LABELED_CACHE.clear()
