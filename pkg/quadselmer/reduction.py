# quadselmer/reduction.py
"""
Reducción de ideales.

Imaginario: reducción de la forma (a, 2b+t, N(b+ω)/a) siguiendo la base del ideal.
Real: infraestructura, el ciclo de ideales reducidos bajo el paso ρ,
acumulando el elemento Γ_k con I_k = Γ_k·I_0.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd, isqrt

from .cache import field_context
from .errors import DomainError
from .field import FieldElement, QuadField, signature
from .ideals import UNIT_IDEAL, Ideal

log = logging.getLogger("quadselmer.reduction")


# ======================================================
# IMAGINARIO: formas definidas positivas
# ======================================================
@dataclass(frozen=True)
class ReducedForm:
    a: int
    B: int
    C: int
    beta1: FieldElement  # N(beta1) = a·N(I) en la base final


def reduce_definite(F: QuadField, I: Ideal) -> ReducedForm:
    """Reduce la forma del ideal primitivo de I, con la transformación aplicada a su base."""
    if not F.is_imaginary:
        raise DomainError("reduce_definite solo aplica a campos imaginarios")
    T = F.omega_trace
    a = I.a
    B = 2 * I.b + T
    C = FieldElement(I.b, 1, F).norm() // a
    b1, b2 = F.element(a), F.element(I.b, 1)

    while True:
        k = (a - B) // (2 * a)
        if k:
            B, C = B + 2 * a * k, a * k * k + B * k + C
            b2 = b2 + b1 * k
        if a > C or (a == C and B < 0):
            a, B, C = C, -B, a
            b1, b2 = b2, -b1
            continue
        return ReducedForm(a, B, C, b1)


def form_to_ideal(F: QuadField, a: int, B: int) -> Ideal:
    return Ideal(1, a, ((B - F.omega_trace) // 2) % a)


# ======================================================
# REAL: ciclo de ideales reducidos
# ======================================================
@dataclass(frozen=True)
class CycleStep:
    ideal: Ideal
    sig: tuple[int, ...]  # signatura de Γ_k
    num: FieldElement
    den: int              # Γ_k = num / den


def _rho(F: QuadField, a: int, B: int, root: int) -> tuple[int, int, FieldElement]:
    if a <= root:
        B1 = root - ((root - B) % (2 * a))
    else:
        B1 = a - ((a - B) % (2 * a))
    C1 = (B1 * B1 - F.disc) // (4 * a)
    # a·I'' = ψ·I',  ψ = (B1 − √Δ)/2
    psi = FieldElement((B1 + F.omega_trace) // 2, -1, F)
    return abs(C1), -B1, psi


def walk(F: QuadField, I: Ideal, *, stop_at_unit: bool = False) -> tuple[list[CycleStep], int]:
    """
    Recorre I_0 = parte primitiva de I, I_1 = ρ(I_0), ... hasta repetir un ideal.
    Devuelve: (camino, índice donde empieza el ciclo). Con stop_at_unit, corta al
    llegar a O y el índice es -1.
    """
    if not F.is_real:
        raise DomainError("walk solo aplica a campos reales")
    root = isqrt(F.disc)
    T = F.omega_trace
    a, B = I.a, 2 * I.b + T
    num, den, sig = F.one, 1, (0, 0)

    seen: dict[Ideal, int] = {}
    path: list[CycleStep] = []
    while True:
        ideal = form_to_ideal(F, a, B)
        if ideal in seen:
            log.debug(f"d={F.d} ciclo de {len(path) - seen[ideal]} pasos tras {seen[ideal]}")
            return path, seen[ideal]
        seen[ideal] = len(path)
        path.append(CycleStep(ideal, sig, num, den))
        if stop_at_unit and ideal == UNIT_IDEAL:
            return path, -1

        a_next, B_next, psi = _rho(F, a, B, root)
        s_psi = signature(F, psi)
        sig = (sig[0] ^ s_psi[0], sig[1] ^ s_psi[1])
        num = num * psi
        den = den * a
        g = gcd(gcd(num.x, num.y), den)
        if g > 1:
            num, den = num.exact_div(g), den // g
        a, B = a_next, B_next


def _inverse_of_step(step: CycleStep) -> FieldElement:
    """Γ_k^{-1} = den·σ(num)/N(num); entero cuando I_k = O."""
    n = step.num.norm()
    return (step.num.conj() * step.den).exact_div(n)


# ======================================================
# UNIDAD FUNDAMENTAL
# ======================================================
def _normalize_unit(u: FieldElement) -> FieldElement:
    """El representante > 1 entre ±u, ±σ(u)."""
    for cand in (u, -u, u.conj(), -u.conj()):
        A, B = cand.half_coords()
        if A > 0 and B > 0:
            return cand
    raise DomainError(f"{u} no es una unidad no trivial")


def _compute_fundamental_unit(F: QuadField) -> FieldElement:
    root = isqrt(F.disc)
    a, B = 1, F.omega_trace
    num, den = F.one, 1
    steps = 0
    while True:
        a_next, B_next, psi = _rho(F, a, B, root)
        num, den = num * psi, den * a
        g = gcd(gcd(num.x, num.y), den)
        if g > 1:
            num, den = num.exact_div(g), den // g
        a, B = a_next, B_next
        steps += 1
        if a == 1:
            break
    # de vuelta en O: Γ = num/den es una unidad
    unit = num.exact_div(den)
    if abs(unit.norm()) != 1:
        raise DomainError(f"ciclo principal de d={F.d} no devolvió una unidad")
    eps = _normalize_unit(unit)
    log.debug(f"d={F.d} ε={eps} (periodo {steps})")
    return eps


def fundamental_unit(F: QuadField) -> FieldElement:
    if not F.is_real:
        raise DomainError("la unidad fundamental solo existe para d > 0")
    return field_context(F).get_or_create("fundamental_unit", lambda: _compute_fundamental_unit(F))


# ======================================================
# GENERADORES
# ======================================================
def principal_generator(F: QuadField, I: Ideal) -> FieldElement | None:
    if F.is_rational:
        return F.element(I.a)
    P = I.primitive()
    if P.is_unit():
        return F.element(I.c)

    if F.is_imaginary:
        red = reduce_definite(F, P)
        if red.a != 1:
            return None
        return red.beta1 * I.c

    path, _ = walk(F, P, stop_at_unit=True)
    last = path[-1]
    if last.ideal != UNIT_IDEAL:
        return None
    return _inverse_of_step(last) * I.c


def strict_generator(F: QuadField, I: Ideal) -> FieldElement | None:
    gamma = principal_generator(F, I)
    if gamma is None:
        return None
    if F.is_rational:
        return gamma if gamma.x > 0 else -gamma
    if F.is_imaginary:
        return gamma
    eps = fundamental_unit(F)
    for eta in (F.one, -F.one, eps, -eps):
        cand = gamma * eta
        if not any(signature(F, cand)):
            return cand
    return None
