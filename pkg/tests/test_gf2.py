from hypothesis import given, strategies as st

from quadselmer.gf2 import (
    BitMatrix,
    f2_kernel_basis,
    f2_rank,
    f2_solve,
    kernel_contained,
    pack,
    span_contains,
    stack,
    unpack,
)


def bit_matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=0, max_size=max_rows
        ).map(lambda rows: BitMatrix.from_rows(rows, cols))
    )


def test_pack_unpack():
    assert pack([1, 0, 1, 1]) == 0b1101
    assert unpack(0b1101, 4) == (1, 0, 1, 1)


def test_rank_of_identity_and_zero():
    eye = BitMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert f2_rank(eye) == 3
    assert f2_rank(BitMatrix.zero(3, 3)) == 0
    assert f2_kernel_basis(eye) == []


def test_rank_over_f2_not_q():
    # sobre Q tendría rango 3
    m = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert f2_rank(m) == 2
    assert f2_kernel_basis(m) == [(1, 1, 1)]


def test_from_columns_transposes():
    m = BitMatrix.from_columns([(1, 0), (1, 1), (0, 1)], 2)
    assert m.to_lists() == [[1, 1, 0], [0, 1, 1]]
    assert m.column(1) == (1, 1)


def test_empty_matrix_kernel_is_everything():
    m = BitMatrix.zero(0, 3)
    assert f2_rank(m) == 0
    assert len(f2_kernel_basis(m)) == 3


@given(bit_matrices())
def test_rank_nullity(m):
    assert f2_rank(m) + len(f2_kernel_basis(m)) == m.cols


@given(bit_matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in f2_kernel_basis(m):
        assert not any(m.apply(v))


@given(bit_matrices(), st.data())
def test_solve_finds_preimage_of_image(m, data):
    x = data.draw(st.lists(st.integers(0, 1), min_size=m.cols, max_size=m.cols))
    y = m.apply(x)
    sol = f2_solve(m, y)
    assert sol is not None
    assert m.apply(sol) == y


def test_solve_inconsistent():
    m = BitMatrix.from_rows([[1, 1], [1, 1]])
    assert f2_solve(m, (1, 0)) is None


def test_kernel_contained():
    a = BitMatrix.from_rows([[1, 0]])
    b = BitMatrix.from_rows([[1, 0], [0, 1]])
    assert kernel_contained(b, a)
    assert not kernel_contained(a, b)
    assert f2_rank(stack(a, b)) == 2


def test_span_contains():
    vecs = [(1, 0, 1), (0, 1, 1)]
    assert span_contains(vecs, (1, 1, 0), 3)
    assert not span_contains(vecs, (1, 0, 0), 3)
    assert span_contains([], (0, 0, 0), 3)
