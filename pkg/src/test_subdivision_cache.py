"""
Property-based tests for SubdivisionCache using Hypothesis.

Feature: combinatorics
"""

import threading

import pytest
from hypothesis import given, strategies as st, settings
from src.subdivision_cache import SubdivisionCache


class TestSubdivisionCacheProperties:
    """Property-based tests for SubdivisionCache."""

    @given(
        max_size=st.integers(min_value=5, max_value=20),
        num_entries=st.integers(min_value=10, max_value=50)
    )
    @settings(max_examples=50, deadline=None)
    def test_lru_eviction_maintains_size_limit(self, max_size: int, num_entries: int):
        """
        **Feature: combinatorics, Property 8: LRU eviction maintains size limit**

        For any cache with max size N, after any number of insertions,
        the cache size should never exceed N entries.
        """
        cache = SubdivisionCache("test", max_size=max_size)

        for i in range(num_entries):
            cache.set(f"key_{i}", (i,))
            stats = cache.get_stats()
            assert stats['size'] <= max_size, \
                f"Cache size ({stats['size']}) exceeded max_size ({max_size})"

        final_stats = cache.get_stats()
        assert final_stats['size'] == min(num_entries, max_size)
        assert final_stats['evictions'] == max(0, num_entries - max_size)

    @given(max_size=st.integers(min_value=10, max_value=30))
    @settings(max_examples=50, deadline=None)
    def test_lru_evicts_least_recently_used(self, max_size: int):
        """
        Test that LRU eviction removes the least recently used entries.
        """
        cache = SubdivisionCache("test", max_size=max_size)

        for i in range(max_size):
            cache.set(f"key_{i}", (i,))

        # Touch the first half
        for i in range(max_size // 2):
            cache.get(f"key_{i}")

        num_new = max_size // 4
        for i in range(num_new):
            cache.set(f"new_key_{i}", (i,))

        for i in range(max_size // 2):
            assert cache.get(f"key_{i}") is not None, \
                f"Recently accessed key_{i} should still be in cache"

        evicted = sum(1 for i in range(max_size // 2, max_size) if cache.get(f"key_{i}") is None)
        assert evicted >= num_new

    def test_get_or_compute_runs_once(self):
        cache = SubdivisionCache("test", max_size=4)
        calls = []

        def compute():
            calls.append(1)
            return ((1, 2), (3,))

        first = cache.get_or_compute("shape", compute)
        second = cache.get_or_compute("shape", compute)
        assert first == second == ((1, 2), (3,))
        assert len(calls) == 1
        stats = cache.get_stats()
        assert stats['hits'] == 1
        assert stats['misses'] == 1
        assert stats['largest_entry'] == 2

    def test_key_generation_consistency(self):
        """
        Test that cache key generation is consistent for same parameters.
        """
        key1 = SubdivisionCache.generate_key("shape", shape=[3, 2])
        key2 = SubdivisionCache.generate_key("shape", shape=[3, 2])
        assert key1 == key2, "Same parameters should generate same key"

        key3 = SubdivisionCache.generate_key("shape", shape=[2, 3])
        assert key1 != key3, "Different parameters should generate different keys"

        key4 = SubdivisionCache.generate_key("labeled", shape=[3, 2])
        assert key1 != key4, "Different kinds should generate different keys"
        assert key1.startswith("shape:")

    def test_clear(self):
        cache = SubdivisionCache("test", max_size=10)
        cache.set("a", (1,))
        cache.set("b", (1, 2, 3))
        assert cache.get("b") == (1, 2, 3)

        cache.clear()
        stats = cache.get_stats()
        assert stats['size'] == 0
        assert stats['hits'] == 0
        assert stats['misses'] == 0
        assert stats['largest_entry'] == 0

    def test_cache_stats_accuracy(self):
        """
        Test that cache statistics are accurately tracked.
        """
        cache = SubdivisionCache("test", max_size=10)

        stats = cache.get_stats()
        assert stats['hits'] == 0
        assert stats['misses'] == 0
        assert stats['size'] == 0
        assert stats['name'] == "test"

        for i in range(5):
            cache.set(f"key_{i}", (i,))
        for i in range(3):
            cache.get(f"key_{i}")
        cache.get("nonexistent")
        cache.get("also_nonexistent")

        stats = cache.get_stats()
        assert stats['size'] == 5
        assert stats['hits'] == 3
        assert stats['misses'] == 2
        assert stats['hit_rate'] == round(3 / 5 * 100, 2)

    def test_concurrent_access(self):
        """Parallel get_or_compute calls leave a consistent cache."""
        cache = SubdivisionCache("test", max_size=8)
        errors = []

        def worker(offset: int):
            try:
                for i in range(50):
                    key = f"key_{(i + offset) % 12}"
                    value = cache.get_or_compute(key, lambda: (i,))
                    assert isinstance(value, tuple)
            except Exception as e:  # surfaced below
                errors.append(e)

        threads = [threading.Thread(target=worker, args=(t,)) for t in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert not errors
        stats = cache.get_stats()
        assert stats['size'] <= 8
        assert stats['hits'] + stats['misses'] == 200

    def test_rejects_non_positive_size(self):
        with pytest.raises(ValueError):
            SubdivisionCache("test", max_size=0)


class RecordingLogger:
    def __init__(self):
        self.lines = []

    def debug(self, message):
        self.lines.append(message)

    info = warning = debug


class TestSubdivisionCacheLogging:
    """Caches are created at import time, before log levels are configured."""

    def test_construction_is_silent(self, monkeypatch):
        recorder = RecordingLogger()
        monkeypatch.setattr("src.subdivision_cache.logger", recorder)
        SubdivisionCache("quiet", max_size=4)
        assert recorder.lines == []

    def test_clear_is_logged(self, monkeypatch):
        recorder = RecordingLogger()
        monkeypatch.setattr("src.subdivision_cache.logger", recorder)
        cache = SubdivisionCache("loud", max_size=4)
        cache.clear()
        assert len(recorder.lines) == 1
