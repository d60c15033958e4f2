from collections.abc import Callable, Hashable, Iterator
from threading import RLock
from typing import Any, ClassVar, Generic, TypeVar, cast

T = TypeVar('T')
K = TypeVar('K', bound=Hashable)
V = TypeVar('V')


class Singleton(type):
    """Metaclass that keeps one instance per class, created under a process-wide lock."""
    _instances: ClassVar[dict[type[Any], Any]] = {}
    _lock: ClassVar[RLock] = RLock()

    def __call__(cls: type[T], *args: Any, **kwargs: Any) -> T:
        singleton_cls = cast(Singleton, cls.__class__)
        with singleton_cls._lock:
            if cls not in singleton_cls._instances:
                instance = super(Singleton, singleton_cls).__call__(cls, *args, **kwargs)
                singleton_cls._instances[cls] = instance
            else:
                instance = singleton_cls._instances[cls]
                if getattr(cls, '_allow_reinitialization', False):
                    instance.__init__(*args, **kwargs)
        return cast(T, instance)

    @classmethod
    def drop(cls, target: type[Any]) -> None:
        """Forget the cached instance of `target` so the next call builds a fresh one."""
        with cls._lock:
            cls._instances.pop(target, None)


class InternTable(Generic[K, V]):
    """
    Thread-safe canonicalizing table that maps keys to dense integer ids.

    Every key is stored once; `intern` returns the existing id when the key is
    already known, otherwise it assigns the next id and stores the value built
    by the factory. Lookups and insertions happen under one re-entrant lock,
    so concurrent producers never observe two ids for the same key.
    """

    def __init__(self) -> None:
        self._lock = RLock()
        self._ids: dict[K, int] = {}
        self._keys: list[K] = []
        self._values: list[V] = []

    def intern(self, key: K, factory: Callable[[int, K], V]) -> tuple[int, bool]:
        """
        Return the id of `key`, creating an entry when it is new.

        Args:
            key: Canonical key.
            factory: Called with the fresh id and the key to build the stored value.

        Returns:
            A pair of the id and a flag telling whether the entry was created.
        """
        with self._lock:
            known = self._ids.get(key)
            if known is not None:
                return known, False
            ident = len(self._keys)
            self._ids[key] = ident
            self._keys.append(key)
            self._values.append(factory(ident, key))
            return ident, True

    def find(self, key: K) -> int | None:
        with self._lock:
            return self._ids.get(key)

    def key(self, ident: int) -> K:
        return self._keys[ident]

    def value(self, ident: int) -> V:
        return self._values[ident]

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self) -> Iterator[V]:
        return iter(list(self._values))
