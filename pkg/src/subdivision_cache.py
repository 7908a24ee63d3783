"""
Memo cache with LRU eviction for combinatorial results.

Subdivisions depend only on the multiplicity shape of a multiset, and the
power-sum expansion of a bracket only on the bracket itself, so both are
computed once and reused across estimator builds.
"""

import hashlib
import json
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Optional

from logzero import logger


@dataclass
class CacheEntry:
    """Represents a cache entry with metadata."""
    key: Hashable
    value: Any
    size: int
    access_count: int


class SubdivisionCache:
    """
    LRU cache for immutable computation results.

    Implements Least Recently Used (LRU) eviction. Thread-safe for concurrent
    access; values must be immutable since they are shared between callers.
    """

    def __init__(self, name: str, max_size: int = 4096):
        """
        Initialize LRU cache.

        Args:
            name: Label used in log lines and statistics
            max_size: Maximum cache entries
        """
        if max_size <= 0:
            raise ValueError("max_size must be positive")

        self.name = name
        self.max_size = max_size
        self._cache: "OrderedDict[Hashable, CacheEntry]" = OrderedDict()
        self._lock = threading.Lock()

        # Statistics
        self._hits = 0
        self._misses = 0
        self._evictions = 0
        self._largest_entry = 0

    def _evict_lru(self) -> None:
        """Evict the least recently used entry."""
        if self._cache:
            key, _ = self._cache.popitem(last=False)
            self._evictions += 1
            logger.debug(f"[{self.name}] evicted LRU entry: {key}")

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Get cached value if present.

        Args:
            key: Cache key

        Returns:
            Cached value or None if not found
        """
        with self._lock:
            entry = self._cache.get(key)
            if entry is None:
                self._misses += 1
                return None
            entry.access_count += 1
            self._cache.move_to_end(key)
            self._hits += 1
            return entry.value

    def set(self, key: Hashable, value: Any) -> None:
        """
        Store value in cache.

        Args:
            key: Cache key
            value: Immutable result to cache
        """
        size = len(value) if hasattr(value, "__len__") else 1
        with self._lock:
            if key in self._cache:
                del self._cache[key]
            while len(self._cache) >= self.max_size:
                self._evict_lru()
            self._cache[key] = CacheEntry(key=key, value=value, size=size, access_count=0)
            self._largest_entry = max(self._largest_entry, size)

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """
        Return the cached value, computing and storing it on a miss.

        Two threads missing on the same key may both compute; results are
        deterministic so whichever is stored last is equivalent.
        """
        value = self.get(key)
        if value is None:
            value = compute()
            self.set(key, value)
        return value

    def clear(self) -> None:
        """Clear all cache entries and reset statistics."""
        with self._lock:
            count = len(self._cache)
            self._cache.clear()
            self._hits = 0
            self._misses = 0
            self._evictions = 0
            self._largest_entry = 0
            logger.debug(f"[{self.name}] cache cleared: {count} entries removed")

    def get_stats(self) -> dict:
        """
        Get cache statistics.

        Returns:
            Dictionary with cache statistics
        """
        with self._lock:
            total_requests = self._hits + self._misses
            hit_rate = (self._hits / total_requests * 100) if total_requests > 0 else 0
            return {
                'name': self.name,
                'size': len(self._cache),
                'max_size': self.max_size,
                'hits': self._hits,
                'misses': self._misses,
                'hit_rate': round(hit_rate, 2),
                'evictions': self._evictions,
                'largest_entry': self._largest_entry,
            }

    @staticmethod
    def generate_key(kind: str, **params) -> str:
        """
        Generate a stable string key from a kind and parameters.

        Args:
            kind: Result family, e.g. "shape"
            **params: JSON-serializable parameters

        Returns:
            Cache key string
        """
        sorted_params = sorted(params.items())
        params_str = json.dumps(sorted_params, sort_keys=True)
        params_hash = hashlib.md5(params_str.encode()).hexdigest()[:12]
        return f"{kind}:{params_hash}"
