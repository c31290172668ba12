# quadselmer/symbols.py
"""
Símbolos de residuo cuadrático en F, su extensión a clases de Selmer e
ideales, los cuatro emparejamientos, la pertenencia a I²P* y las pruebas
de reciprocidad y de la ley suplementaria.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import chain, product
from math import gcd

from .arith import jacobi
from .classgroups import class_group, class_key
from .errors import DomainError, InconclusiveError, TheoremViolation
from .field import FieldElement, QuadField, combine, is_square_mod4, is_totally_positive
from .gf2 import BitMatrix, f2_rank
from .ideals import (
    UNIT_IDEAL,
    Ideal,
    are_coprime,
    contains,
    factorize,
    iter_prime_ideals,
    multiply,
    power,
    principal_ideal,
)
from .reduction import principal_generator
from .selmer import (
    Modulus,
    SelmerKind,
    SelmerSpace,
    coprime_representative,
    default_bound,
    selmer_space,
    selmer_subspace,
)
from .units import unit_structure

log = logging.getLogger("quadselmer.symbols")


# ======================================================
# SÍMBOLO DE RESIDUO
# ======================================================
def _pow_mod(F: QuadField, x: int, y: int, e: int, p: int) -> tuple[int, int]:
    """(x + yω)^e en O/(p) = F_p[ω]/(ω² − tω + nw)."""
    T, N = F.omega_trace, F.omega_norm
    rx, ry = 1, 0
    bx, by = x % p, y % p
    while e:
        if e & 1:
            rx, ry = (rx * bx - N * ry * by) % p, (rx * by + bx * ry + T * ry * by) % p
        bx, by = (bx * bx - N * by * by) % p, (2 * bx * by + T * by * by) % p
        e >>= 1
    return rx, ry


def residue_symbol(F: QuadField, alpha: FieldElement, P: Ideal) -> int:
    """(α/𝔭) = α^{(N𝔭−1)/2} mod 𝔭."""
    if not P.is_odd():
        raise DomainError(f"{P} es un primo diádico")
    if contains(F, P, alpha):
        raise DomainError(f"{P} divide a ({alpha})")

    if F.is_rational:
        return jacobi(alpha.x, P.a)

    if P.c == 1:
        # grado 1: ω ≡ −b mod 𝔭
        p = P.a
        return jacobi(alpha.x - alpha.y * P.b, p)

    p = P.c
    val = _pow_mod(F, alpha.x, alpha.y, (p * p - 1) // 2, p)
    if val == (1, 0):
        return 1
    if val == (p - 1, 0):
        return -1
    raise TheoremViolation("residue_symbol", f"α^((p²−1)/2) = {val} mod {p}")


def symbol_ideal(F: QuadField, omega: FieldElement, A: Ideal, *, bound: int | None = None) -> int:
    """(ω/𝔞) con un representante de la clase de ω coprimo con 𝔞."""
    if not A.is_odd():
        raise DomainError(f"{A} no es impar")
    if A.is_unit():
        return 1
    rep = coprime_representative(F, omega, Modulus.FOUR, avoid=A.norm, bound=bound)
    result = 1
    for P, e in factorize(F, A):
        if e % 2:
            result *= residue_symbol(F, rep, P)
    return result


def symbol_element(F: QuadField, alpha: FieldElement, beta: FieldElement) -> int:
    """(α/β) := (α/(β)) sobre la factorización de (β)."""
    result = 1
    for P, e in factorize(F, principal_ideal(F, beta)):
        if e % 2:
            result *= residue_symbol(F, alpha, P)
    return result


# ======================================================
# GRUPOS DE IDEALES I²P*
# ======================================================
class IdealGroupKind(str, Enum):
    I2P = "I²P"
    I2P_PLUS = "I²P⁺"
    I2P_4 = "I²P₄"
    I2P_4_PLUS = "I²P₄⁺"

    @property
    def needs_positive(self) -> bool:
        return self in (IdealGroupKind.I2P_PLUS, IdealGroupKind.I2P_4_PLUS)

    @property
    def needs_primary(self) -> bool:
        return self in (IdealGroupKind.I2P_4, IdealGroupKind.I2P_4_PLUS)

    def dual_selmer_kind(self) -> SelmerKind:
        return {
            IdealGroupKind.I2P: SelmerKind.FOUR_PLUS,
            IdealGroupKind.I2P_PLUS: SelmerKind.FOUR,
            IdealGroupKind.I2P_4: SelmerKind.PLUS,
            IdealGroupKind.I2P_4_PLUS: SelmerKind.FULL,
        }[self]

    def accepts(self, F: QuadField, alpha: FieldElement) -> bool:
        if self.needs_positive and not is_totally_positive(F, alpha):
            return False
        if self.needs_primary and not is_square_mod4(F, alpha):
            return False
        return True


class Membership(str, Enum):
    MEMBER = "member"
    NON_MEMBER = "non_member"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MembershipResult:
    verdict: Membership
    alpha: FieldElement | None = None   # 𝔞𝔟² = (α)
    helper: Ideal | None = None         # 𝔟
    exhaustive: bool = False            # todas las clases de 𝔟 fueron probadas


def _search_witness(F: QuadField, A: Ideal, kind: IdealGroupKind, bound: int) -> MembershipResult:
    h = class_group(F).order
    units = unit_structure(F).basis
    unit_classes = [combine(F, units, bits) for bits in product((0, 1), repeat=len(units))]

    seen: set[Ideal] = set()
    for B in chain([UNIT_IDEAL], iter_prime_ideals(F, bound)):
        key = class_key(F, B, narrow=False)
        if key in seen:
            continue
        seen.add(key)
        gamma = principal_generator(F, multiply(F, A, power(F, B, 2)))
        if gamma is not None:
            for eta in unit_classes:
                alpha = gamma * eta
                if kind.accepts(F, alpha):
                    return MembershipResult(Membership.MEMBER, alpha, B, len(seen) == h)
        if len(seen) == h:
            break
    return MembershipResult(Membership.INCONCLUSIVE, exhaustive=len(seen) == h)


def ideal_group_membership(
    F: QuadField, A: Ideal, kind: IdealGroupKind | str, bound: int, *, certify: bool = True
) -> MembershipResult:
    """
    Busca 𝔞𝔟² = (α) con α en la condición del tipo. Sin testigo, solo se
    declara non_member si un símbolo del Selmer dual vale −1.
    """
    kind = IdealGroupKind(kind)
    if not A.is_odd():
        raise DomainError(f"{A} no es impar")

    found = _search_witness(F, A, kind, bound)
    if found.verdict is Membership.MEMBER or not certify:
        return found

    dual = selmer_subspace(F, kind.dual_selmer_kind())
    for omega in dual.odd_basis:
        if symbol_ideal(F, omega, A) == -1:
            return MembershipResult(Membership.NON_MEMBER, exhaustive=found.exhaustive)
    if found.exhaustive:
        log.warning(f"d={F.label}: {A} sin testigo en {kind.value} y símbolos duales triviales")
    return found


# ======================================================
# EMPAREJAMIENTOS
# ======================================================
class PairingKind(str, Enum):
    EP1 = "EP1"   # Cl⁺{4} × Sel
    EP2 = "EP2"   # Cl{4} × Sel⁺
    EP3 = "EP3"   # Cl⁺ × Sel₄
    EP4 = "EP4"   # Cl × Sel₄⁺

    @property
    def selmer_kind(self) -> SelmerKind:
        return {
            PairingKind.EP1: SelmerKind.FULL,
            PairingKind.EP2: SelmerKind.PLUS,
            PairingKind.EP3: SelmerKind.FOUR,
            PairingKind.EP4: SelmerKind.FOUR_PLUS,
        }[self]


class PairingVerdict(str, Enum):
    PERFECT = "perfect"
    RANK_DEFICIT = "rank_deficit"
    INCONCLUSIVE = "inconclusive"


@dataclass
class PairingReport:
    kind: PairingKind
    selmer_side: SelmerSpace | None
    row_ideals: list[Ideal] = field(default_factory=list)
    matrix: BitMatrix = field(default_factory=lambda: BitMatrix.zero(0, 0))
    achieved_rank: int = 0
    expected_rank: int = 0
    verdict: PairingVerdict = PairingVerdict.INCONCLUSIVE

    def to_dict(self) -> dict:
        side = self.selmer_side
        return {
            "kind": self.kind.value,
            "selmer_basis": [a.to_json() for a in side.basis] if side else [],
            "row_ideals": [P.to_json() for P in self.row_ideals],
            # entrada 1 ↔ símbolo −1
            "symbols": [[-1 if b else 1 for b in row] for row in self.matrix.to_lists()],
            "achieved_rank": self.achieved_rank,
            "expected_rank": self.expected_rank,
            "verdict": self.verdict.value,
        }


def pairing_matrix(F: QuadField, kind: PairingKind | str, *, bound: int | None = None) -> PairingReport:
    kind = PairingKind(kind)
    bound = bound or default_bound(F)
    report = PairingReport(kind=kind, selmer_side=None)
    try:
        side = selmer_subspace(F, kind.selmer_kind, bound=bound)
    except InconclusiveError:
        return report

    report.selmer_side = side
    report.expected_rank = side.dim
    report.matrix = BitMatrix.zero(0, side.dim)
    if side.dim == 0:
        report.verdict = PairingVerdict.PERFECT
        return report

    forbidden = 2 * abs(F.disc)
    for rep in side.odd_basis:
        forbidden *= abs(rep.norm())

    for P in iter_prime_ideals(F, bound):
        if gcd(P.norm, forbidden) != 1:
            continue
        row = [1 if residue_symbol(F, rep, P) == -1 else 0 for rep in side.odd_basis]
        candidate = report.matrix.with_row(row)
        if f2_rank(candidate) > report.achieved_rank:
            report.matrix = candidate
            report.row_ideals.append(P)
            report.achieved_rank += 1
            if report.achieved_rank == report.expected_rank:
                report.verdict = PairingVerdict.PERFECT
                return report

    log.warning(f"d={F.label} {kind.value}: rango {report.achieved_rank}/{report.expected_rank} hasta norma {bound}")
    report.verdict = PairingVerdict.RANK_DEFICIT
    return report


# ======================================================
# RECIPROCIDAD
# ======================================================
class CheckOutcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def reciprocity_hypothesis(F: QuadField, alpha: FieldElement, beta: FieldElement) -> bool:
    """Normas impares, (α) + (β) = (1) y α primario con α ≫ 0 o β ≫ 0."""
    if alpha.is_zero() or beta.is_zero():
        return False
    if alpha.norm() % 2 == 0 or beta.norm() % 2 == 0:
        return False
    if not are_coprime(F, principal_ideal(F, alpha), principal_ideal(F, beta)):
        return False
    if not is_square_mod4(F, alpha):
        return False
    return is_totally_positive(F, alpha) or is_totally_positive(F, beta)


def reciprocity_check(F: QuadField, alpha: FieldElement, beta: FieldElement) -> CheckOutcome:
    if not reciprocity_hypothesis(F, alpha, beta):
        return CheckOutcome.SKIPPED
    lhs = symbol_element(F, alpha, beta)
    rhs = symbol_element(F, beta, alpha)
    if lhs != rhs:
        log.error(f"d={F.label}: ({alpha}/{beta}) = {lhs} ≠ ({beta}/{alpha}) = {rhs}")
        return CheckOutcome.FAIL
    return CheckOutcome.PASS


class SupplementaryVerdict(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


def supplementary_check(F: QuadField, A: Ideal, bound: int) -> SupplementaryVerdict:
    """
    (1) 𝔞𝔟² = (α) con α ≡ 1 mod 4∞  frente a  (2) (ω/𝔞) = 1 para todo ω ∈ Sel(F).
    """
    try:
        sel = selmer_space(F)
        symbols_trivial = all(symbol_ideal(F, omega, A) == 1 for omega in sel.odd_basis)
    except InconclusiveError:
        return SupplementaryVerdict.INCONCLUSIVE

    found = ideal_group_membership(F, A, IdealGroupKind.I2P_4_PLUS, bound, certify=False)
    if found.verdict is Membership.MEMBER:
        if symbols_trivial:
            return SupplementaryVerdict.VERIFIED
        log.error(f"d={F.label}: {A} ∈ I²P₄⁺ con α={found.alpha} pero algún (ω/𝔞) = −1")
        return SupplementaryVerdict.REFUTED
    if not symbols_trivial:
        return SupplementaryVerdict.VERIFIED
    if found.exhaustive:
        log.error(f"d={F.label}: {A} fuera de I²P₄⁺ (búsqueda exhaustiva) con símbolos triviales")
        return SupplementaryVerdict.REFUTED
    return SupplementaryVerdict.INCONCLUSIVE
