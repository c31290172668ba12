# quadselmer/errors.py
from __future__ import annotations


class SelmerError(Exception):
    """Raíz de todos los errores del motor."""


class UsageError(SelmerError, ValueError):
    """Argumentos mal formados (CLI o llamadas directas)."""


class DomainError(SelmerError, ValueError):
    """Entrada matemáticamente inválida: d no libre de cuadrados, elemento cero, primo par..."""


class InconclusiveError(SelmerError):
    """Una búsqueda acotada se agotó sin decidir."""

    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (cota={bound})")
        self.bound = bound


class TheoremViolation(SelmerError, AssertionError):
    """
    Una identidad que debe cumplirse siempre falló dentro de una construcción.
    Indica un bug de implementación, nunca un evento matemático.
    """

    def __init__(self, check: str, message: str, report: dict | None = None):
        super().__init__(f"[{check}] {message}")
        self.check = check
        self.report = report
