# quadselmer/arith.py
"""Primitivas sobre Q: símbolos de Jacobi/Kronecker, partes libres de cuadrados, géneros."""
from __future__ import annotations

from math import isqrt

from sympy import factorint
from sympy.functions.combinatorial.numbers import jacobi_symbol

from .errors import DomainError, UsageError


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise UsageError(f"jacobi: n debe ser impar y positivo (n={n})")
    if n == 1:
        return 1
    return int(jacobi_symbol(a % n, n))


def kronecker_prime(D: int, p: int) -> int:
    """(D/p) para p primo; en p = 2 usa la regla de D mod 8."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    return jacobi(D, p)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorint(abs(n)).values())


def squarefree_part(n: int) -> int:
    """signo(n) · ∏ p^(e mod 2); el representante canónico de n·Q^×²."""
    if n == 0:
        raise DomainError("squarefree_part(0)")
    out = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def field_discriminant(d: int) -> int:
    if d % 4 == 1:
        return d
    return 4 * d


def is_fundamental_discriminant(disc: int) -> bool:
    if disc in (0, 1):
        return False
    if disc % 4 == 1:
        return is_squarefree(disc)
    if disc % 4 == 0:
        m = disc // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def genus_rank(disc: int) -> int:
    """t − 1, con t el número de primos distintos que dividen el discriminante."""
    if not is_fundamental_discriminant(disc):
        raise DomainError(f"discriminante inválido: {disc}")
    return len(factorint(abs(disc))) - 1
