# quadselmer/cache.py
from __future__ import annotations

import logging
import os
import time
from collections import OrderedDict
from threading import Lock
from typing import Callable, TypeVar

log = logging.getLogger("quadselmer.cache")

T = TypeVar("T")

MAX_FIELDS = int(os.environ.get("SELMER_CACHE_FIELDS", "512"))

_REGISTRY: "OrderedDict[object, FieldContext]" = OrderedDict()
_REGISTRY_LOCK = Lock()


class FieldContext:
    """
    Memo por campo: unidad fundamental, grupos de clases, unidades, espacios de Selmer.
    Cada entrada se calcula una sola vez (asignación única bajo lock).
    """

    def __init__(self, field):
        self.field = field
        self.created_at = time.time()
        self._values: dict[str, object] = {}
        self._lock = Lock()

    def get_or_create(self, key: str, builder: Callable[[], T]) -> T:
        with self._lock:
            if key in self._values:
                return self._values[key]  # type: ignore[return-value]

        # el builder puede pedir otras entradas del mismo contexto
        value = builder()

        with self._lock:
            return self._values.setdefault(key, value)  # type: ignore[return-value]

    def has(self, key: str) -> bool:
        with self._lock:
            return key in self._values


def field_context(field) -> FieldContext:
    with _REGISTRY_LOCK:
        ctx = _REGISTRY.get(field)
        if ctx is None:
            ctx = FieldContext(field)
            _REGISTRY[field] = ctx
            if len(_REGISTRY) > MAX_FIELDS:
                old, _ = _REGISTRY.popitem(last=False)
                log.debug(f"contexto expulsado: d={getattr(old, 'd', old)}")
        return ctx


def clear() -> None:
    with _REGISTRY_LOCK:
        _REGISTRY.clear()
