# quadselmer/ideals.py
"""
Ideales enteros en forma normal de Hermite: Ideal(c, a, b) = c·(aZ + (b+ω)Z),
con 0 ≤ b < a y a | N(b+ω). La forma es única, así que la igualdad es estructural.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterable, Iterator

from sympy import factorint, isprime, primerange
from sympy.core.intfunc import igcdex
from sympy.ntheory import sqrt_mod

from .arith import kronecker_prime
from .errors import DomainError
from .field import FieldElement, QuadField


@dataclass(frozen=True, order=True)
class Ideal:
    c: int
    a: int
    b: int

    def __post_init__(self):
        if self.c < 1 or self.a < 1 or not (0 <= self.b < self.a):
            raise DomainError(f"HNF inválida: ({self.c}; {self.a}, {self.b})")

    @property
    def norm(self) -> int:
        return self.c * self.c * self.a

    def is_unit(self) -> bool:
        return self.c == 1 and self.a == 1

    def is_odd(self) -> bool:
        return self.norm % 2 == 1

    def primitive(self) -> "Ideal":
        return Ideal(1, self.a, self.b)

    def to_json(self) -> str:
        return f"({self.c}; {self.a}, {self.b})"

    def __str__(self) -> str:
        return self.to_json()


UNIT_IDEAL = Ideal(1, 1, 0)


def make_ideal(F: QuadField, c: int, a: int, b: int) -> Ideal:
    ideal = Ideal(c, a, b % a)
    if not F.is_rational and FieldElement(ideal.b, 1, F).norm() % a:
        raise DomainError(f"{a} no divide N({ideal.b}+ω): no es un ideal")
    return ideal


def _hnf(F: QuadField, vectors: Iterable[tuple[int, int]]) -> Ideal:
    """Ideal generado como Z-módulo por los vectores (x, y) en la base {1, ω}."""
    g_x = 0
    top: tuple[int, int] | None = None
    for x, y in vectors:
        if y == 0:
            g_x = gcd(g_x, x)
            continue
        if top is None:
            top = (x, y)
            continue
        tx, ty = top
        u, v, g = (int(t) for t in igcdex(ty, y))
        # [[u, v], [y/g, −ty/g]] es unimodular
        top = (u * tx + v * x, g)
        g_x = gcd(g_x, (y // g) * tx - (ty // g) * x)

    if top is None or g_x == 0:
        raise DomainError("el módulo no tiene rango 2")
    tx, ty = top
    if ty < 0:
        tx, ty = -tx, -ty
    A, B, C = g_x, tx % g_x, ty
    if A % C or B % C:
        raise DomainError("el módulo no es un ideal")
    return Ideal(C, A // C, B // C)


def _basis_vectors(F: QuadField, I: Ideal) -> list[tuple[int, int]]:
    return [(I.c * I.a, 0), (I.c * I.b, I.c)]


def principal_ideal(F: QuadField, alpha: FieldElement) -> Ideal:
    if alpha.is_zero():
        raise DomainError("ideal cero")
    if F.is_rational:
        return Ideal(1, abs(alpha.x), 0)
    x, y = alpha.x, alpha.y
    return _hnf(F, [(x, y), (-F.omega_norm * y, x + F.omega_trace * y)])


def multiply(F: QuadField, I: Ideal, J: Ideal) -> Ideal:
    if F.is_rational:
        return Ideal(1, I.a * J.a, 0)
    a1, b1, a2, b2 = I.a, I.b, J.a, J.b
    T, N = F.omega_trace, F.omega_norm
    prim = _hnf(
        F,
        [
            (a1 * a2, 0),
            (a1 * b2, a1),
            (a2 * b1, a2),
            (b1 * b2 - N, b1 + b2 + T),
        ],
    )
    return Ideal(prim.c * I.c * J.c, prim.a, prim.b)


def power(F: QuadField, I: Ideal, e: int) -> Ideal:
    if e < 0:
        raise DomainError("potencias negativas no son enteras")
    result, base = UNIT_IDEAL, I
    while e:
        if e & 1:
            result = multiply(F, result, base)
        base = multiply(F, base, base)
        e >>= 1
    return result


def conjugate(F: QuadField, I: Ideal) -> Ideal:
    if F.is_rational:
        return I
    return Ideal(I.c, I.a, (-I.b - F.omega_trace) % I.a)


def ideal_sum(F: QuadField, I: Ideal, J: Ideal) -> Ideal:
    """I + J (el mcd de los dos ideales)."""
    if F.is_rational:
        return Ideal(1, gcd(I.a, J.a), 0)
    return _hnf(F, _basis_vectors(F, I) + _basis_vectors(F, J))


def contains(F: QuadField, I: Ideal, alpha: FieldElement) -> bool:
    if F.is_rational:
        return alpha.x % I.a == 0
    if alpha.y % I.c or alpha.x % I.c:
        return False
    l = alpha.y // I.c
    return (alpha.x // I.c - l * I.b) % I.a == 0


def are_coprime(F: QuadField, I: Ideal, J: Ideal) -> bool:
    return ideal_sum(F, I, J).is_unit()


# -------------------------
# primos
# -------------------------
class SplitKind(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class SplitRecord:
    kind: SplitKind
    p: int
    primes: tuple[Ideal, ...]


def _roots_mod(F: QuadField, p: int) -> list[int]:
    """Raíces de z² − t·z + nw módulo p."""
    T, N = F.omega_trace, F.omega_norm
    if p == 2:
        return [z for z in (0, 1) if (z * z - T * z + N) % 2 == 0]
    roots = sqrt_mod(F.disc % p, p, all_roots=True) or []
    inv2 = pow(2, -1, p)
    return sorted({((T + s) * inv2) % p for s in roots})


def split_prime(F: QuadField, p: int) -> SplitRecord:
    if not isprime(p):
        raise DomainError(f"{p} no es primo")
    if F.is_rational:
        return SplitRecord(SplitKind.SPLIT, p, (Ideal(1, p, 0),))

    k = kronecker_prime(F.disc, p)
    if k == -1:
        return SplitRecord(SplitKind.INERT, p, (Ideal(p, 1, 0),))

    primes = tuple(sorted(Ideal(1, p, (-z) % p) for z in _roots_mod(F, p)))
    kind = SplitKind.RAMIFIED if k == 0 else SplitKind.SPLIT
    expected = 1 if k == 0 else 2
    if len(primes) != expected:
        raise DomainError(f"raíces inesperadas módulo {p} para d={F.d}")
    return SplitRecord(kind, p, primes)


def factorize(F: QuadField, I: Ideal) -> list[tuple[Ideal, int]]:
    counts: dict[Ideal, int] = {}

    def add(P: Ideal, e: int) -> None:
        counts[P] = counts.get(P, 0) + e

    if F.is_rational:
        for p, e in factorint(I.a).items():
            add(Ideal(1, p, 0), e)
    else:
        for p, e in factorint(I.c).items():
            rec = split_prime(F, p)
            if rec.kind is SplitKind.RAMIFIED:
                add(rec.primes[0], 2 * e)
            else:
                for P in rec.primes:
                    add(P, e)
        # parte primitiva: cada p^e ‖ a aporta un solo primo de grado 1
        for p, e in factorint(I.a).items():
            add(Ideal(1, p, I.b % p), e)

    return sorted(counts.items(), key=lambda t: (t[0].norm, t[0].b))


def from_factorization(F: QuadField, factors: Iterable[tuple[Ideal, int]]) -> Ideal:
    out = UNIT_IDEAL
    for P, e in factors:
        out = multiply(F, out, power(F, P, e))
    return out


def ideal_sqrt(F: QuadField, I: Ideal) -> Ideal | None:
    factors = factorize(F, I)
    if any(e % 2 for _, e in factors):
        return None
    return from_factorization(F, [(P, e // 2) for P, e in factors])


def iter_prime_ideals(F: QuadField, bound: int, *, odd_only: bool = True) -> Iterator[Ideal]:
    """Ideales primos de norma ≤ bound en orden creciente de norma."""
    pending: list[tuple[int, int]] = []  # (p², p) de primos inertes
    start = 3 if odd_only else 2
    for p in primerange(start, bound + 1):
        while pending and pending[0][0] < p:
            _, q = heapq.heappop(pending)
            yield Ideal(q, 1, 0)
        rec = split_prime(F, p)
        if rec.kind is SplitKind.INERT:
            if p * p <= bound:
                heapq.heappush(pending, (p * p, p))
            continue
        yield from rec.primes
    while pending:
        _, q = heapq.heappop(pending)
        yield Ideal(q, 1, 0)


def norm_equation_solutions(F: QuadField, n: int, height: int) -> list[FieldElement]:
    """Fuerza bruta: x + yω con |x|, |y| ≤ height y norma n. Solo como oráculo."""
    return [
        FieldElement(x, y, F)
        for x in range(-height, height + 1)
        for y in range(-height, height + 1)
        if FieldElement(x, y, F).norm() == n
    ]
