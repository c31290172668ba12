# quadselmer/selmer.py
"""
Sel(F) = {α : (α) = 𝔞²}/F^×² con representantes explícitos, sus subgrupos
Sel⁺, Sel₄, Sel₄⁺ como núcleos, los 2-rangos de clases de rayos y los mapas
de cambio de base con Q.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import chain, product
from math import gcd, isqrt

from sympy import factorint

from .arith import squarefree_part
from .cache import field_context
from .classgroups import DEFAULT_PRIME_FACTOR, class_group, narrow_class_group
from .errors import DomainError, InconclusiveError, TheoremViolation, UsageError
from .field import (
    FieldElement,
    QuadField,
    combine,
    is_square,
    is_square_mod4,
    mod4_coords,
    signature,
)
from .gf2 import BitMatrix, f2_kernel_basis, f2_rank, stack
from .ideals import UNIT_IDEAL, ideal_sqrt, iter_prime_ideals, multiply, power, principal_ideal
from .reduction import principal_generator
from .units import unit_structure

log = logging.getLogger("quadselmer.selmer")


class Modulus(str, Enum):
    ONE = "1"
    INF = "∞"
    FOUR = "(4)"
    FOUR_INF = "(4)∞"

    @property
    def has_infinity(self) -> bool:
        return self in (Modulus.INF, Modulus.FOUR_INF)

    @property
    def finite_is_four(self) -> bool:
        return self in (Modulus.FOUR, Modulus.FOUR_INF)

    def divides(self, other: "Modulus") -> bool:
        return (not self.has_infinity or other.has_infinity) and (
            not self.finite_is_four or other.finite_is_four
        )


class SelmerKind(str, Enum):
    FULL = "sel"
    PLUS = "plus"
    FOUR = "four"
    FOUR_PLUS = "four_plus"


@dataclass(frozen=True)
class SelmerSpace:
    field: QuadField
    kind: SelmerKind
    basis: tuple[FieldElement, ...]
    dim: int
    sign_matrix: BitMatrix   # r × dim
    mod4_matrix: BitMatrix   # n × dim, calculada sobre odd_basis
    odd_basis: tuple[FieldElement, ...]


@dataclass(frozen=True)
class RayRanks:
    rho_4: int
    rho_4_plus: int
    rho_plus_via_selmer: int


def default_bound(F: QuadField) -> int:
    return DEFAULT_PRIME_FACTOR * abs(F.disc)


def same_class(F: QuadField, a: FieldElement, b: FieldElement) -> bool:
    return is_square(F, a * b)


def is_singular(F: QuadField, a: FieldElement) -> bool:
    if a.is_zero():
        return False
    if F.is_rational:
        return isqrt(abs(a.x)) ** 2 == abs(a.x)
    return ideal_sqrt(F, principal_ideal(F, a)) is not None


def _trim_square_content(a: FieldElement) -> FieldElement:
    """Quita factores racionales g² del contenido; la clase no cambia."""
    k = 1
    # factorización parcial: el cofactor grande, si se repite, también es un cuadrado válido
    for p, e in factorint(a.content(), limit=10_000).items():
        k *= p ** (2 * (e // 2))
    return a.exact_div(k) if k > 1 else a


# ======================================================
# REPRESENTANTES COPRIMOS
# ======================================================
def coprime_representative(
    F: QuadField,
    alpha: FieldElement,
    modulus: Modulus = Modulus.FOUR,
    *,
    avoid: int = 1,
    bound: int | None = None,
) -> FieldElement:
    """
    β en la clase de α con (β) = 𝔟², 𝔟 coprimo con la parte finita del módulo
    (y con `avoid`). Si α ya lo es, se devuelve sin cambios.
    """
    if F.is_rational:
        if not is_singular(F, alpha):
            raise DomainError(f"{alpha} no es singular en Q")
        return F.element(1 if alpha.x > 0 else -1)

    A = ideal_sqrt(F, principal_ideal(F, alpha))
    if A is None:
        raise DomainError(f"{alpha} no es singular: (α) no es un cuadrado")

    m = abs(avoid) * (2 if modulus.finite_is_four else 1)
    if gcd(alpha.norm(), m) == 1:
        return alpha

    bound = bound or default_bound(F)
    scale = A.norm * A.norm
    for Q in chain([UNIT_IDEAL], iter_prime_ideals(F, bound)):
        if gcd(Q.norm, m) != 1:
            continue
        # 𝔞𝔮 = (γ)  ⟹  α·σ(γ)²/N(𝔞)² genera σ(𝔮)²
        gamma = principal_generator(F, multiply(F, A, Q))
        if gamma is None:
            continue
        g = gamma.conj()
        return (alpha * g * g).exact_div(scale)

    log.warning(f"d={F.d}: sin representante coprimo para {alpha} hasta norma {bound}")
    raise InconclusiveError(f"representante coprimo de {alpha}", bound)


# ======================================================
# Sel(F)
# ======================================================
def _check_independent(F: QuadField, basis: tuple[FieldElement, ...]) -> None:
    for bits in product((0, 1), repeat=len(basis)):
        if any(bits) and is_square(F, combine(F, basis, bits)):
            raise TheoremViolation("selmer_independence", f"combinación {bits} es un cuadrado (d={F.label})")


def _build_space(
    F: QuadField, kind: SelmerKind, basis: tuple[FieldElement, ...], bound: int | None
) -> SelmerSpace:
    odd = tuple(coprime_representative(F, a, Modulus.FOUR, bound=bound) for a in basis)
    return SelmerSpace(
        field=F,
        kind=kind,
        basis=basis,
        dim=len(basis),
        sign_matrix=BitMatrix.from_columns([signature(F, a) for a in basis], F.r),
        mod4_matrix=BitMatrix.from_columns([mod4_coords(F, a) for a in odd], F.n),
        odd_basis=odd,
    )


def _compute_selmer(F: QuadField, bound: int | None) -> SelmerSpace:
    units = unit_structure(F)
    cl = class_group(F, bound)

    basis = list(units.basis)
    for A in cl.two_torsion_basis:
        gamma = principal_generator(F, power(F, A, 2))
        if gamma is None:
            raise TheoremViolation("two_torsion", f"{A}² no es principal (d={F.label})")
        basis.append(gamma)

    expected = cl.two_rank + F.r + F.s
    if len(basis) != expected:
        raise TheoremViolation("selmer_dim", f"dim Sel = {len(basis)} ≠ ρ+r+s = {expected} (d={F.label})")
    for a in basis:
        if not is_singular(F, a):
            raise TheoremViolation("selmer_singular", f"{a} no es singular (d={F.label})")
    _check_independent(F, tuple(basis))
    return _build_space(F, SelmerKind.FULL, tuple(basis), bound)


def selmer_space(F: QuadField, bound: int | None = None) -> SelmerSpace:
    b = bound or default_bound(F)
    return field_context(F).get_or_create(f"selmer:{b}", lambda: _compute_selmer(F, b))


def expected_dims(F: QuadField, bound: int | None = None) -> dict[SelmerKind, int]:
    rho = class_group(F, bound).two_rank
    rho_plus = narrow_class_group(F, bound).two_rank
    return {
        SelmerKind.FULL: rho + F.r + F.s,
        SelmerKind.PLUS: rho_plus + F.s,
        SelmerKind.FOUR: rho_plus,
        SelmerKind.FOUR_PLUS: rho,
    }


def _kind_matrix(S: SelmerSpace, kind: SelmerKind) -> BitMatrix:
    if kind is SelmerKind.PLUS:
        return S.sign_matrix
    if kind is SelmerKind.FOUR:
        return S.mod4_matrix
    if kind is SelmerKind.FOUR_PLUS:
        return stack(S.sign_matrix, S.mod4_matrix)
    raise UsageError(f"subespacio desconocido: {kind}")


def _compute_subspace(F: QuadField, kind: SelmerKind, strict: bool, bound: int) -> SelmerSpace:
    S = selmer_space(F, bound)
    vectors = f2_kernel_basis(_kind_matrix(S, kind))
    basis = tuple(_trim_square_content(combine(F, S.basis, v)) for v in vectors)
    odd = tuple(_trim_square_content(combine(F, S.odd_basis, v)) for v in vectors)
    sub = SelmerSpace(
        field=F,
        kind=kind,
        basis=basis,
        dim=len(basis),
        sign_matrix=BitMatrix.from_columns([S.sign_matrix.apply(v) for v in vectors], F.r),
        mod4_matrix=BitMatrix.from_columns([S.mod4_matrix.apply(v) for v in vectors], F.n),
        odd_basis=odd,
    )
    want = expected_dims(F, bound)[kind]
    if strict and sub.dim != want:
        raise TheoremViolation(f"selmer_{kind.value}_dim", f"dim = {sub.dim} ≠ {want} (d={F.label})")
    return sub


def selmer_subspace(
    F: QuadField, kind: SelmerKind | str, *, strict: bool = True, bound: int | None = None
) -> SelmerSpace:
    kind = SelmerKind(kind)
    b = bound or default_bound(F)
    if kind is SelmerKind.FULL:
        return selmer_space(F, b)
    return field_context(F).get_or_create(
        f"selmer_{kind.value}_{strict}:{b}", lambda: _compute_subspace(F, kind, strict, b)
    )


def selmer_coordinates(space: SelmerSpace, alpha: FieldElement) -> tuple[int, ...] | None:
    """Coordenadas de la clase de α en la base de `space`, o None si α no está en el subespacio."""
    F = space.field
    for bits in product((0, 1), repeat=space.dim):
        if is_square(F, alpha * combine(F, space.basis, bits)):
            return bits
    return None


# ======================================================
# RANGOS DE RAYOS
# ======================================================
def ray_2ranks(F: QuadField, bound: int | None = None) -> RayRanks:
    S = selmer_space(F, bound)
    rho = class_group(F, bound).two_rank
    return RayRanks(
        rho_4=rho + F.n - f2_rank(S.mod4_matrix),
        rho_4_plus=rho + F.n + F.r - f2_rank(stack(S.sign_matrix, S.mod4_matrix)),
        rho_plus_via_selmer=rho + F.r - f2_rank(S.sign_matrix),
    )


def conductor_class(F: QuadField, omega: FieldElement) -> Modulus:
    if not is_singular(F, omega):
        raise DomainError(f"{omega} no es singular")
    rep = coprime_representative(F, omega, Modulus.FOUR)
    primary = is_square_mod4(F, rep)
    positive = not any(signature(F, omega))
    if primary and positive:
        return Modulus.ONE
    if primary:
        return Modulus.INF
    if positive:
        return Modulus.FOUR
    return Modulus.FOUR_INF


# ======================================================
# CAMBIO DE BASE  Q ⇄ F
# ======================================================
class BaseChange(str, Enum):
    LIFT = "lift"
    NORM = "norm"


def selmer_base_change(direction: BaseChange | str, source, F: QuadField) -> FieldElement:
    """
    lift: αQ^×² ↦ αF^×²;  norm: ωF^×² ↦ N(ω)Q^×², reducido a signo · parte libre de cuadrados.
    """
    try:
        direction = BaseChange(direction)
    except ValueError as e:
        raise UsageError(f"dirección desconocida: {direction!r}") from e

    if direction is BaseChange.LIFT:
        a = source.x if isinstance(source, FieldElement) else int(source)
        if isinstance(source, FieldElement) and not source.field.is_rational:
            raise UsageError("lift espera una clase de Q")
        return F.element(squarefree_part(a))

    if not isinstance(source, FieldElement) or source.field != F:
        raise UsageError("norm espera un elemento de F")
    return QuadField.rational().element(squarefree_part(source.norm()))
