# quadselmer/classgroups.py
"""
Grupos de clases en sentido estricto (Cl⁺) y usual (Cl).

Cada clase se identifica con una clave canónica (un ideal reducido):
  - imaginario: el ideal de la forma reducida;
  - real: el mínimo de los ideales reducidos de su ciclo, restringido en el
    caso estricto a los que difieren de I por un elemento de signatura
    en sig(E).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from math import isqrt

from sympy import factorint

from .cache import field_context
from .errors import InconclusiveError, TheoremViolation
from .field import FieldElement, QuadField, signature
from .ideals import UNIT_IDEAL, Ideal, iter_prime_ideals, multiply
from .reduction import form_to_ideal, fundamental_unit, reduce_definite, walk

log = logging.getLogger("quadselmer.classgroups")

DEFAULT_PRIME_FACTOR = 200


@dataclass(frozen=True)
class ClassGroupData:
    narrow: bool
    order: int
    elements: tuple[Ideal, ...]          # claves; elements[0] es la clase trivial
    table: tuple[tuple[int, ...], ...]   # ley de grupo sobre índices
    elementary_divisors: tuple[int, ...]
    two_torsion_basis: tuple[Ideal, ...]
    two_rank: int

    def index_of(self, key: Ideal) -> int:
        return self.elements.index(key)

    def product(self, i: int, j: int) -> int:
        return self.table[i][j]

    def power(self, i: int, e: int) -> int:
        return _power_index(self.table, i, e)

    def order_of(self, i: int) -> int:
        k, j = 1, i
        while j != 0:
            j = self.table[j][i]
            k += 1
        return k


# ======================================================
# CLAVES DE CLASE
# ======================================================
def _unit_signatures(F: QuadField) -> frozenset[tuple[int, int]]:
    eps = signature(F, fundamental_unit(F))
    return frozenset({(0, 0), (1, 1), eps, (eps[0] ^ 1, eps[1] ^ 1)})


def _real_cycle_parts(F: QuadField, I: Ideal) -> tuple[Ideal, Ideal, Ideal | None, list[Ideal]]:
    """
    Devuelve: (clave usual, clave estricta de I, clave estricta de la otra
    mitad del ciclo o None, ideales del ciclo).
    """
    path, start = walk(F, I.primitive())
    cycle = path[start:]
    units = _unit_signatures(F)
    same = [st.ideal for st in cycle if st.sig in units]
    other = [st.ideal for st in cycle if st.sig not in units]
    if not same:
        raise TheoremViolation("narrow_cycle", f"ciclo sin ideales en la clase estricta (d={F.d})")
    wide = min(st.ideal for st in cycle)
    return wide, min(same), (min(other) if other else None), [st.ideal for st in cycle]


def class_key(F: QuadField, I: Ideal, narrow: bool) -> Ideal:
    if F.is_rational:
        return UNIT_IDEAL
    if F.is_imaginary:
        red = reduce_definite(F, I.primitive())
        return form_to_ideal(F, red.a, red.B)
    wide, strict, _, _ = _real_cycle_parts(F, I)
    return strict if narrow else wide


def _candidates(F: QuadField) -> list[Ideal]:
    """Ideales primitivos con norma bajo la cota de reducción; cubren todas las clases."""
    if F.is_imaginary:
        top = isqrt(abs(F.disc) // 3)
    else:
        top = isqrt(F.disc) // 2
    out = []
    for a in range(1, max(top, 1) + 1):
        for b in range(a):
            if FieldElement(b, 1, F).norm() % a == 0:
                out.append(Ideal(1, a, b))
    return out


def _enumerate_keys(F: QuadField, narrow: bool) -> list[Ideal]:
    keys = [class_key(F, UNIT_IDEAL, narrow)]
    seen = set(keys)
    if F.is_imaginary:
        for P in _candidates(F):
            k = class_key(F, P, narrow)
            if k not in seen:
                seen.add(k)
                keys.append(k)
        return keys

    visited: set[Ideal] = set()
    for P in _candidates(F):
        if P in visited:
            continue
        wide, strict, other, cycle = _real_cycle_parts(F, P)
        visited.update(cycle)
        found = [wide] if not narrow else [strict] + ([other] if other else [])
        for k in found:
            if k not in seen:
                seen.add(k)
                keys.append(k)
    return keys


# ======================================================
# ESTRUCTURA
# ======================================================
def _power_index(table, i: int, e: int) -> int:
    result, base = 0, i
    while e:
        if e & 1:
            result = table[result][base]
        base = table[base][base]
        e >>= 1
    return result


def _exact_log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise TheoremViolation("group_structure", f"{n} no es potencia de {p}")
        n //= p
        k += 1
    return k


def _invariant_factors(table) -> tuple[int, ...]:
    """d1 | d2 | ... a partir de los conteos de p^k-torsión."""
    h = len(table)
    per_prime: dict[int, list[int]] = {}
    for p, e in factorint(h).items():
        ranks: list[int] = []   # ranks[k-1] = #{factores cíclicos con exponente ≥ k}
        f_prev, k = 0, 1
        while True:
            cnt = sum(1 for i in range(h) if _power_index(table, i, p**k) == 0)
            f_k = _exact_log(cnt, p)
            ranks.append(f_k - f_prev)
            if f_k == e:
                break
            f_prev, k = f_k, k + 1
        per_prime[p] = sorted(
            (sum(1 for rk in ranks if rk > i) for i in range(ranks[0])), reverse=True
        )

    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for j in range(width):
        f = 1
        for p, exps in per_prime.items():
            if j < len(exps):
                f *= p ** exps[j]
        factors.append(f)
    return tuple(sorted(factors))


def _two_torsion_basis(
    F: QuadField, keys: list[Ideal], table, two_rank: int, narrow: bool, bound: int
) -> tuple[Ideal, ...]:
    """Primos de grado 1, p ∤ 2Δ, de norma mínima que amplían el subgrupo generado en G[2]."""
    if two_rank == 0:
        return ()
    index = {k: i for i, k in enumerate(keys)}
    span = {0}
    basis: list[Ideal] = []
    for P in iter_prime_ideals(F, bound):
        if P.c != 1 or F.disc % P.a == 0:
            continue
        i = index[class_key(F, P, narrow)]
        if table[i][i] != 0 or i in span:
            continue
        basis.append(P)
        span |= {table[s][i] for s in span}
        if len(basis) == two_rank:
            return tuple(basis)
    raise InconclusiveError(f"base de 2-torsión incompleta para d={F.d}", bound)


def _build(F: QuadField, narrow: bool, bound: int | None) -> ClassGroupData:
    if F.is_rational:
        return ClassGroupData(narrow, 1, (UNIT_IDEAL,), ((0,),), (), (), 0)

    keys = _enumerate_keys(F, narrow)
    index = {k: i for i, k in enumerate(keys)}
    h = len(keys)
    rows = [[0] * h for _ in range(h)]
    for i in range(h):
        for j in range(i, h):
            k = class_key(F, multiply(F, keys[i], keys[j]), narrow)
            if k not in index:
                raise TheoremViolation("class_closure", f"producto fuera de las clases enumeradas (d={F.d})")
            rows[i][j] = rows[j][i] = index[k]
    table = tuple(tuple(r) for r in rows)

    factors = _invariant_factors(table)
    two_rank = sum(1 for f in factors if f % 2 == 0)
    involutions = sum(1 for i in range(h) if table[i][i] == 0)
    if involutions != 2**two_rank:
        raise TheoremViolation("two_rank", f"|G[2]| = {involutions} ≠ 2^{two_rank} (d={F.d})")

    basis = _two_torsion_basis(F, keys, table, two_rank, narrow, _resolve_bound(F, bound))
    log.debug(f"d={F.d} {'Cl+' if narrow else 'Cl'} = {factors or '(1)'}")
    return ClassGroupData(narrow, h, tuple(keys), table, factors, basis, two_rank)


def _resolve_bound(F: QuadField, bound: int | None) -> int:
    return bound or DEFAULT_PRIME_FACTOR * abs(F.disc)


# la cota forma parte de la clave: otra cota puede decidir lo que esta no
def narrow_class_group(F: QuadField, bound: int | None = None) -> ClassGroupData:
    if F.is_imaginary:
        # sin lugares reales: Cl⁺ = Cl
        return replace(class_group(F, bound), narrow=True)
    b = _resolve_bound(F, bound)
    return field_context(F).get_or_create(f"narrow_class_group:{b}", lambda: _build(F, True, b))


def class_group(F: QuadField, bound: int | None = None) -> ClassGroupData:
    b = _resolve_bound(F, bound)
    return field_context(F).get_or_create(f"class_group:{b}", lambda: _build(F, False, b))
