# quadselmer/field.py
"""
Aritmética exacta en F = Q(√d) y su anillo de enteros Z[ω].

ω = √d si d ≢ 1 mod 4, ω = (1+√d)/2 si d ≡ 1 mod 4; en ambos casos
ω² = t·ω − nw con t = traza(ω), nw = norma(ω).

El campo racional se modela con d = 1 como marcador interno: solo se
construye con QuadField.rational() o make_field(RATIONAL).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, isqrt

from .arith import field_discriminant, is_squarefree
from .cache import field_context
from .errors import DomainError, TheoremViolation

RATIONAL = "Q"

Residue = tuple[int, int]


@dataclass(frozen=True)
class QuadField:
    d: int
    disc: int
    r: int
    s: int
    n: int
    omega_trace: int
    omega_norm: int

    @classmethod
    def rational(cls) -> "QuadField":
        return cls(d=1, disc=1, r=1, s=0, n=1, omega_trace=0, omega_norm=0)

    @property
    def is_rational(self) -> bool:
        return self.d == 1

    @property
    def is_real(self) -> bool:
        return self.d > 1

    @property
    def is_imaginary(self) -> bool:
        return self.d < 0

    @property
    def label(self) -> str:
        return RATIONAL if self.is_rational else str(self.d)

    def element(self, x: int, y: int = 0) -> "FieldElement":
        if self.is_rational and y:
            raise DomainError("el campo racional no tiene coordenada ω")
        return FieldElement(int(x), int(y), self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, 0, self)

    @property
    def omega(self) -> "FieldElement":
        if self.is_rational:
            raise DomainError("el campo racional no tiene ω")
        return FieldElement(0, 1, self)

    def from_half(self, A: int, B: int) -> "FieldElement | None":
        """(A + B√d)/2 como elemento entero, o None si no es entero."""
        if self.is_rational:
            return FieldElement(A // 2, 0, self) if B == 0 and A % 2 == 0 else None
        if self.omega_trace == 0:
            if A % 2 or B % 2:
                return None
            return FieldElement(A // 2, B // 2, self)
        if (A - B) % 2:
            return None
        return FieldElement((A - B) // 2, B, self)

    def __repr__(self) -> str:
        return f"QuadField(d={self.label}, disc={self.disc})"


def make_field(d: int | str) -> QuadField:
    if d == RATIONAL:
        return QuadField.rational()
    if isinstance(d, bool) or not isinstance(d, int):
        raise DomainError(f"d debe ser entero: {d!r}")
    if d in (0, 1) or not is_squarefree(d):
        raise DomainError(f"d debe ser libre de cuadrados y distinto de 0, 1 (d={d})")

    disc = field_discriminant(d)
    if d % 4 == 1:
        t, nw = 1, (1 - d) // 4
    else:
        t, nw = 0, -d
    r, s = (2, 0) if d > 0 else (0, 1)
    return QuadField(d=d, disc=disc, r=r, s=s, n=r + 2 * s, omega_trace=t, omega_norm=nw)


def _mul(F: QuadField, x1: int, y1: int, x2: int, y2: int) -> tuple[int, int]:
    return (
        x1 * x2 - F.omega_norm * y1 * y2,
        x1 * y2 + x2 * y1 + F.omega_trace * y1 * y2,
    )


@dataclass(frozen=True)
class FieldElement:
    x: int
    y: int
    field: QuadField

    # -------------------------
    # aritmética
    # -------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DomainError("elementos de campos distintos")
            return other
        if isinstance(other, int):
            return FieldElement(other, 0, self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.x + o.x, self.y + o.y, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.x - o.x, self.y - o.y, self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(-self.x, -self.y, self.field)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.x * other, self.y * other, self.field)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        x, y = _mul(self.field, self.x, self.y, o.x, o.y)
        return FieldElement(x, y, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("solo exponentes no negativos")
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, k: int) -> "FieldElement":
        if k == 0 or self.x % k or self.y % k:
            raise DomainError(f"{self} no es divisible por {k}")
        return FieldElement(self.x // k, self.y // k, self.field)

    # -------------------------
    # invariantes
    # -------------------------
    def conj(self) -> "FieldElement":
        if self.field.is_rational:
            return self
        return FieldElement(self.x + self.field.omega_trace * self.y, -self.y, self.field)

    def norm(self) -> int:
        if self.field.is_rational:
            return self.x
        F = self.field
        return self.x * self.x + F.omega_trace * self.x * self.y + F.omega_norm * self.y * self.y

    def trace(self) -> int:
        if self.field.is_rational:
            return self.x
        return 2 * self.x + self.field.omega_trace * self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def content(self) -> int:
        return gcd(self.x, self.y)

    def half_coords(self) -> tuple[int, int]:
        """(A, B) con α = (A + B√d)/2."""
        if self.field.is_rational or self.field.omega_trace == 0:
            return 2 * self.x, 2 * self.y
        return 2 * self.x + self.y, self.y

    def residue(self, m: int = 4) -> Residue:
        return self.x % m, self.y % m

    def to_json(self) -> str:
        return f"[{self.x}, {self.y}]"

    def __str__(self) -> str:
        return element_text(self)

    def __repr__(self) -> str:
        return f"FieldElement({self.x}, {self.y}, d={self.field.label})"


def combine(F: QuadField, elements, bits) -> FieldElement:
    """∏ elements[i]^bits[i]."""
    out = F.one
    for el, b in zip(elements, bits):
        if b:
            out = out * el
    return out


def element_text(a: FieldElement) -> str:
    """35+6√34, (1+√5)/2, -1 ..."""
    F = a.field
    if F.is_rational or a.y == 0:
        return str(a.x)
    A, B = a.half_coords()
    g = 2
    if A % 2 == 0 and B % 2 == 0:
        A, B, g = A // 2, B // 2, 1
    root = f"√{F.d}" if F.d > 0 else f"√({F.d})"
    coef = "" if abs(B) == 1 else str(abs(B))
    surd = f"{coef}{root}"
    if A == 0:
        body = surd if B > 0 else f"-{surd}"
    else:
        body = f"{A}{'+' if B > 0 else '-'}{surd}"
    return body if g == 1 else f"({body})/2"


# -------------------------
# signatura
# -------------------------
def _surd_sign(A: int, B: int, d: int) -> int:
    """Signo exacto de A + B√d, d > 0 no cuadrado."""
    if B == 0:
        return (A > 0) - (A < 0)
    if A == 0:
        return (B > 0) - (B < 0)
    if A > 0 and B > 0:
        return 1
    if A < 0 and B < 0:
        return -1
    # signos opuestos: gana el de mayor valor absoluto
    if A * A > B * B * d:
        return 1 if A > 0 else -1
    return 1 if B > 0 else -1


def signature(F: QuadField, a: FieldElement) -> tuple[int, ...]:
    """
    Bit i = 1 si la i-ésima inmersión real es negativa.
    Orden fijo: primero √d ↦ +√d, luego √d ↦ −√d.
    """
    if a.is_zero():
        raise DomainError("signatura de 0")
    if F.is_rational:
        return (1 if a.x < 0 else 0,)
    if F.r == 0:
        return ()
    A, B = a.half_coords()
    return (
        1 if _surd_sign(A, B, F.d) < 0 else 0,
        1 if _surd_sign(A, -B, F.d) < 0 else 0,
    )


def is_totally_positive(F: QuadField, a: FieldElement) -> bool:
    return not any(signature(F, a))


# -------------------------
# cuadrados exactos
# -------------------------
def sqrt_element(F: QuadField, a: FieldElement) -> FieldElement | None:
    """β entero con β² = α, o None si α no es un cuadrado en F."""
    if a.is_zero():
        return a
    if F.is_rational:
        if a.x < 0:
            return None
        m = isqrt(a.x)
        return F.element(m) if m * m == a.x else None

    N = a.norm()
    if N < 0:
        return None
    m = isqrt(N)
    if m * m != N:
        return None

    A, B = a.half_coords()
    # β = (P + Q√d)/2:  P² = A ± 2m,  Q²·d = 2A − P²,  P·Q = B
    for P2 in {A + 2 * m, A - 2 * m}:
        if P2 < 0:
            continue
        P = isqrt(P2)
        if P * P != P2:
            continue
        rest = 2 * A - P2
        if rest % F.d:
            continue
        Q2 = rest // F.d
        if Q2 < 0:
            continue
        Q = isqrt(Q2)
        if Q * Q != Q2:
            continue
        if B < 0:
            Q = -Q
        if P * Q != B:
            continue
        beta = F.from_half(P, Q)
        if beta is not None and beta * beta == a:
            return beta
    return None


def is_square(F: QuadField, a: FieldElement) -> bool:
    if a.is_zero():
        raise DomainError("0 no define una clase de cuadrados")
    return sqrt_element(F, a) is not None


# -------------------------
# residuos mod 4
# -------------------------
@dataclass(frozen=True)
class Mod4Data:
    unit_residues: tuple[Residue, ...]
    squares: frozenset[Residue]
    basis: tuple[Residue, ...]
    dim: int


def _mul_res(F: QuadField, u: Residue, v: Residue) -> Residue:
    x, y = _mul(F, u[0], u[1], v[0], v[1])
    return x % 4, y % 4


def _odd_norm(F: QuadField, res: Residue) -> bool:
    return FieldElement(res[0], res[1], F).norm() % 2 == 1


def _compute_mod4_data(F: QuadField) -> Mod4Data:
    ys = range(1) if F.is_rational else range(4)
    units = tuple(res for res in product(range(4), ys) if _odd_norm(F, res))
    squares = frozenset(_mul_res(F, u, u) for u in units)

    # base voraz del cociente M4/M4²
    basis: list[Residue] = []
    span = set(squares)
    for u in units:
        if u in span:
            continue
        basis.append(u)
        span |= {_mul_res(F, u, s) for s in span}

    data = Mod4Data(unit_residues=units, squares=squares, basis=tuple(basis), dim=len(basis))
    if data.dim != F.n:
        raise TheoremViolation("mod4_dim", f"dim M4/M4² = {data.dim} ≠ n = {F.n} para d={F.label}")
    return data


def mod4_data(F: QuadField) -> Mod4Data:
    return field_context(F).get_or_create("mod4", lambda: _compute_mod4_data(F))


def _require_odd(a: FieldElement) -> None:
    if a.norm() % 2 == 0:
        raise DomainError(f"{a} tiene norma par")


def is_square_mod4(F: QuadField, a: FieldElement) -> bool:
    _require_odd(a)
    return a.residue(4) in mod4_data(F).squares


def mod4_coords(F: QuadField, a: FieldElement) -> tuple[int, ...]:
    """Exponentes e con α ≡ ∏ b_i^{e_i} · ξ² mod 4 para la base almacenada."""
    _require_odd(a)
    data = mod4_data(F)
    res = a.residue(4)
    for exps in product((0, 1), repeat=data.dim):
        acc = res
        for b, e in zip(data.basis, exps):
            if e:
                acc = _mul_res(F, acc, b)
        if acc in data.squares:
            return tuple(exps)
    raise TheoremViolation("mod4_coords", f"{a} fuera del grupo generado por la base")
