# quadselmer/units.py
from __future__ import annotations

from dataclasses import dataclass

from .cache import field_context
from .field import FieldElement, QuadField, combine, is_square_mod4, mod4_coords, signature
from .gf2 import BitMatrix, f2_kernel_basis, f2_rank, stack
from .reduction import fundamental_unit


@dataclass(frozen=True)
class UnitData:
    """
    E/E² con su base, la matriz de signaturas (r × (r+s)), las coordenadas
    mod 4 (n × (r+s)) y representantes de E⁺/E², E₄/E², E₄⁺/E².
    """

    torsion_or_fundamental: FieldElement
    basis: tuple[FieldElement, ...]
    sign_matrix: BitMatrix
    mod4_matrix: BitMatrix
    mod4_vector: tuple[int, ...]   # 1 si el elemento de la base es cuadrado mod 4
    u: int
    plus: tuple[FieldElement, ...]
    four: tuple[FieldElement, ...]
    four_plus: tuple[FieldElement, ...]

    @property
    def dims(self) -> dict[str, int]:
        return {"e_plus": len(self.plus), "e_4": len(self.four), "e_4_plus": len(self.four_plus)}


def _torsion_and_basis(F: QuadField) -> tuple[FieldElement, tuple[FieldElement, ...]]:
    minus_one = -F.one
    if F.is_real:
        eps = fundamental_unit(F)
        return eps, (minus_one, eps)
    if F.d == -1:
        i = F.omega
        return i, (i,)
    if F.d == -3:
        # ω es raíz sexta de la unidad y ω ≡ −1 módulo cuadrados
        return F.omega, (minus_one,)
    return minus_one, (minus_one,)


def _compute(F: QuadField) -> UnitData:
    gen, basis = _torsion_and_basis(F)
    sign_m = BitMatrix.from_columns([signature(F, e) for e in basis], F.r)
    mod4_m = BitMatrix.from_columns([mod4_coords(F, e) for e in basis], F.n)

    def reps(m: BitMatrix) -> tuple[FieldElement, ...]:
        return tuple(combine(F, basis, v) for v in f2_kernel_basis(m))

    return UnitData(
        torsion_or_fundamental=gen,
        basis=basis,
        sign_matrix=sign_m,
        mod4_matrix=mod4_m,
        mod4_vector=tuple(1 if is_square_mod4(F, e) else 0 for e in basis),
        u=f2_rank(sign_m),
        plus=reps(sign_m),
        four=reps(mod4_m),
        four_plus=reps(stack(sign_m, mod4_m)),
    )


def unit_structure(F: QuadField) -> UnitData:
    return field_context(F).get_or_create("units", lambda: _compute(F))
