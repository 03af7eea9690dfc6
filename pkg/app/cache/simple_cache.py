# app/cache/simple_cache.py
import json
import os
import time
import hashlib
from typing import Any, Optional, Dict


class SimpleCache:
    """File-based cache for window ledgers and other JSON-serializable results"""

    def __init__(self, cache_dir: str = "data/cache", memory_size: int = 100, verbose: bool = False):
        self.cache_dir = cache_dir
        self.verbose = verbose
        os.makedirs(cache_dir, exist_ok=True)

        # In-memory cache for recent items
        self.memory_cache: Dict[str, Dict[str, Any]] = {}
        self.memory_cache_size = memory_size
        self.hits = 0
        self.misses = 0

    def _get_cache_key(self, key: str) -> str:
        """Generate a safe cache key"""
        return hashlib.md5(key.encode()).hexdigest()

    def _get_cache_file_path(self, cache_key: str) -> str:
        return os.path.join(self.cache_dir, f"{cache_key}.cache")

    def get(self, key: str) -> Optional[Any]:
        """Get value from cache"""
        if key in self.memory_cache:
            self.hits += 1
            return self.memory_cache[key]["value"]

        cache_file = self._get_cache_file_path(self._get_cache_key(key))
        if not os.path.exists(cache_file):
            self.misses += 1
            return None

        try:
            with open(cache_file, "r", encoding="utf-8") as f:
                data = json.load(f)
            if data.get("key") != key:
                self.misses += 1
                return None
            value = data["value"]
            self._store_in_memory(key, value)
            self.hits += 1
            if self.verbose:
                print(f"[CACHE] hit {key}")
            return value
        except (OSError, ValueError, KeyError) as e:
            print(f"[CACHE] Error reading cache file {cache_file}: {e}")
            self.misses += 1
            return None

    def set(self, key: str, value: Any):
        """Set value in cache"""
        self._store_in_memory(key, value)

        cache_file = self._get_cache_file_path(self._get_cache_key(key))
        try:
            cache_data = {
                "value": value,
                "timestamp": time.time(),
                "key": key,  # guards against md5 collisions
            }
            tmp_file = cache_file + ".tmp"
            with open(tmp_file, "w", encoding="utf-8") as f:
                json.dump(cache_data, f)
            os.replace(tmp_file, cache_file)
            if self.verbose:
                print(f"[CACHE] stored {key}")
        except (OSError, TypeError, ValueError) as e:
            print(f"[CACHE] Error writing cache file {cache_file}: {e}")

    def _store_in_memory(self, key: str, value: Any):
        """Store value in memory cache with size limit"""
        if key not in self.memory_cache and len(self.memory_cache) >= self.memory_cache_size:
            oldest_key = min(self.memory_cache.keys(),
                             key=lambda k: self.memory_cache[k]["timestamp"])
            del self.memory_cache[oldest_key]

        self.memory_cache[key] = {
            "value": value,
            "timestamp": time.time(),
        }

    def delete(self, key: str):
        """Delete value from cache"""
        self.memory_cache.pop(key, None)

        cache_file = self._get_cache_file_path(self._get_cache_key(key))
        if os.path.exists(cache_file):
            try:
                os.remove(cache_file)
            except OSError as e:
                print(f"[CACHE] Error removing cache file {cache_file}: {e}")

    def clear(self):
        """Clear all cache"""
        self.memory_cache.clear()
        try:
            for filename in os.listdir(self.cache_dir):
                if filename.endswith(".cache"):
                    os.remove(os.path.join(self.cache_dir, filename))
        except OSError as e:
            print(f"[CACHE] Error clearing cache directory: {e}")

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics"""
        cache_files = [f for f in os.listdir(self.cache_dir) if f.endswith(".cache")]

        total_size = 0
        for filename in cache_files:
            try:
                total_size += os.path.getsize(os.path.join(self.cache_dir, filename))
            except OSError:
                continue

        return {
            "memory_cache_items": len(self.memory_cache),
            "file_cache_items": len(cache_files),
            "hits": self.hits,
            "misses": self.misses,
            "total_size_bytes": total_size,
            "total_size_mb": round(total_size / 1024 / 1024, 2),
        }


# Global cache instance, created on first use
_cache: Optional[SimpleCache] = None


def get_cache(cache_dir: Optional[str] = None) -> SimpleCache:
    """Get or create the global cache instance"""
    global _cache
    if _cache is None or (cache_dir is not None and _cache.cache_dir != cache_dir):
        if cache_dir is None:
            from app.config.settings import get_settings
            cache_dir = get_settings().cache_dir
        _cache = SimpleCache(cache_dir=cache_dir)
    return _cache


def ledger_key(fingerprint: str) -> str:
    return f"ledger:{fingerprint}"
