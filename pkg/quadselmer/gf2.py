# quadselmer/gf2.py
"""
Álgebra lineal sobre F2 con filas empaquetadas en enteros.

El bit j de una fila es la entrada de la columna j. Los vectores se
representan como tuplas de 0/1 (la forma que se serializa en reportes).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

BitVector = tuple[int, ...]


def pack(bits: Sequence[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def unpack(word: int, length: int) -> BitVector:
    return tuple((word >> j) & 1 for j in range(length))


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("todas las filas deben tener `cols` entradas")
        return cls(tuple(pack(r) for r in rows), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "BitMatrix":
        """Matriz nrows × len(columns); cada columna es un vector de longitud nrows."""
        rows = [[columns[j][i] & 1 for j in range(len(columns))] for i in range(nrows)]
        return cls(tuple(pack(r) for r in rows), len(columns))

    @classmethod
    def zero(cls, nrows: int, cols: int) -> "BitMatrix":
        return cls((0,) * nrows, cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return unpack(self.rows[i], self.cols)

    def column(self, j: int) -> BitVector:
        return tuple((r >> j) & 1 for r in self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def apply(self, v: Sequence[int]) -> BitVector:
        """m·v"""
        w = pack(v)
        return tuple(bin(r & w).count("1") & 1 for r in self.rows)

    def with_row(self, bits: Sequence[int]) -> "BitMatrix":
        return BitMatrix(self.rows + (pack(bits),), self.cols)


def stack(top: BitMatrix, bottom: BitMatrix) -> BitMatrix:
    if top.cols != bottom.cols:
        raise ValueError("columnas incompatibles")
    return BitMatrix(top.rows + bottom.rows, top.cols)


def _eliminate(rows: list[int], cols: int) -> tuple[list[int], list[int]]:
    """
    Forma escalonada reducida sobre las primeras `cols` columnas.
    Bits por encima de `cols` (columna aumentada) viajan con la fila.
    Devuelve: (filas, columnas pivote); las primeras len(pivotes) filas son las pivote.
    """
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        bit = 1 << c
        piv = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def f2_rank(m: BitMatrix) -> int:
    _, pivots = _eliminate(list(m.rows), m.cols)
    return len(pivots)


def f2_kernel_basis(m: BitMatrix) -> list[BitVector]:
    rows, pivots = _eliminate(list(m.rows), m.cols)
    pivot_set = set(pivots)
    basis: list[BitVector] = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for i, p in enumerate(pivots):
            if (rows[i] >> f) & 1:
                v |= 1 << p
        basis.append(unpack(v, m.cols))
    return basis


def f2_solve(m: BitMatrix, v: Sequence[int]) -> BitVector | None:
    if len(v) != m.nrows:
        raise ValueError("len(v) debe ser igual al número de filas")
    aug = 1 << m.cols
    rows = [r | (aug if b & 1 else 0) for r, b in zip(m.rows, v)]
    rows, pivots = _eliminate(rows, m.cols)

    mask = aug - 1
    for r in rows[len(pivots):]:
        if (r & mask) == 0 and r & aug:
            return None  # inconsistente

    x = 0
    for i, p in enumerate(pivots):
        if rows[i] & aug:
            x |= 1 << p
    return unpack(x, m.cols)


def kernel_contained(a: BitMatrix, b: BitMatrix) -> bool:
    """ker a ⊆ ker b  (mismas columnas) ⟺ rango(a sobre b) = rango(a)."""
    return f2_rank(stack(a, b)) == f2_rank(a)


def span_contains(vectors: Sequence[Sequence[int]], v: Sequence[int], length: int) -> bool:
    if not vectors:
        return not any(v)
    m = BitMatrix.from_columns(vectors, length)
    return f2_solve(m, v) is not None
