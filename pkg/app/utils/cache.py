from cachetools import LRUCache
from typing import Any, Callable, Hashable, Optional, Tuple

from app.core.config import settings


class CacheManager:
    """Bounded memo store for pure algebra computations (normal forms, products)."""

    def __init__(self, maxsize: Optional[int] = None):
        self.cache = LRUCache(maxsize=maxsize or settings.cache_size)
        self.hits = 0
        self.misses = 0

    def generate_key(self, namespace: str, *parts: Hashable) -> Tuple[Hashable, ...]:
        return (namespace,) + parts

    def get(self, key: Hashable) -> Optional[Any]:
        return self.cache.get(key)

    def set(self, key: Hashable, value: Any) -> None:
        self.cache[key] = value

    def get_or_compute(self, key: Hashable, factory: Callable[[], Any]) -> Any:
        if key in self.cache:
            self.hits += 1
            return self.cache[key]
        self.misses += 1
        value = factory()
        self.cache[key] = value
        return value

    def clear(self) -> None:
        """Clear all cached data"""
        self.cache.clear()

    def size(self) -> int:
        """Get current cache size"""
        return len(self.cache)
