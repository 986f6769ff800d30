from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from quivinv.errors import NotAntisymmetric, OddSize, ShapeMismatch
from quivinv.linalg import (
    Matrix,
    adjoint,
    block_diag,
    cayley,
    det,
    hyperbolic,
    inverse,
    kernel,
    pfaffian,
    random_antisymmetric,
    rank,
    reflection,
    sample_full_orthogonal,
    sample_gl,
    sample_orthogonal,
    sample_symplectic,
    sparse_kernel,
    sparse_rank,
    standard_symplectic,
)
from quivinv.rng import stream

small = st.integers(-4, 4)


def matrices(rows, cols, elements=small):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda d: Matrix(d, rows, cols)
    )


@st.composite
def square(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return draw(matrices(n, n))


@st.composite
def antisymmetric(draw, sizes=(2, 4, 6)):
    n = draw(st.sampled_from(sizes))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(small)
            m[i][j], m[j][i] = x, -x
    return Matrix(m, n, n)


def leibniz_det(a):
    """Determinant straight from the permutation expansion."""
    n = a.rows
    total = 0
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= a[i, p[i]]
        total += term
    return total


def matching_pfaffian(a):
    """Pfaffian from the expansion over perfect matchings."""
    n = a.rows
    if n == 0:
        return 1
    total = 0
    for k in range(1, n):
        sign = -1 if (k - 1) % 2 else 1
        rest = [i for i in range(1, n) if i != k]
        sub = Matrix([[a[i, j] for j in rest] for i in rest], n - 2, n - 2)
        total += sign * a[0, k] * matching_pfaffian(sub)
    return total


@given(square())
def test_det_matches_leibniz(a):
    assert det(a) == leibniz_det(a)


@given(square(), square())
def test_det_multiplicative(a, b):
    if a.rows == b.rows:
        assert det(a @ b) == det(a) * det(b)


@given(square())
def test_inverse(a):
    if det(a) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(a)
    else:
        assert a @ inverse(a) == Matrix.identity(a.rows)


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_nullity_and_kernel(rows, cols, data):
    a = data.draw(matrices(rows, cols, st.integers(-2, 2)))
    ker = kernel(a)
    assert rank(a) + len(ker) == cols
    for v in ker:
        col = Matrix([[x] for x in v], cols, 1)
        assert a @ col == Matrix.zeros(rows, 1)


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_sparse_rank_agrees_with_dense(rows, cols, data):
    a = data.draw(matrices(rows, cols, st.integers(-2, 2)))
    sparse = [{j: a[i, j] for j in range(cols) if a[i, j]} for i in range(rows)]
    assert sparse_rank(sparse) == rank(a)
    basis = sparse_kernel(sparse, list(range(cols)))
    assert len(basis) == cols - rank(a)
    for v in basis:
        for row in sparse:
            assert sum(c * v.get(j, 0) for j, c in row.items()) == 0


def test_fractions_normalize():
    m = Matrix([[Fraction(4, 2), Fraction(1, 3)]])
    assert type(m[0, 0]) is int
    assert m[0, 1] == Fraction(1, 3)


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        Matrix([[1, 2], [3]], 2, 2)
    with pytest.raises(ShapeMismatch):
        det(Matrix([[1, 2]]))


@given(antisymmetric(sizes=(0, 2, 4, 6)))
def test_pfaffian_squares_to_det(a):
    assert pfaffian(a) ** 2 == det(a)
    assert pfaffian(a) == matching_pfaffian(a)


def test_pfaffian_examples():
    assert pfaffian(Matrix([[0, 3], [-3, 0]])) == 3
    block = Matrix([[0, 1], [-1, 0]])
    assert pfaffian(block_diag(block, block)) == 1
    # [[0, I], [-I, 0]] differs from the block form by a transposition
    assert pfaffian(standard_symplectic(4)) == -1
    with pytest.raises(NotAntisymmetric):
        pfaffian(Matrix([[1, 0], [0, 0]]))
    with pytest.raises(OddSize):
        pfaffian(Matrix.zeros(3, 3))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_pfaffian_transformation_rule(n):
    for k in range(25):
        rng = stream(11, "pf", n, k)
        a = random_antisymmetric(rng, n)
        g = Matrix([[int(rng.integers(-3, 4)) for _ in range(n)] for _ in range(n)], n, n)
        assert pfaffian(g @ a @ g.T) == det(g) * pfaffian(a)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_orthogonal_samples(n):
    for k in range(10):
        rng = stream(3, "o", n, k)
        q = sample_orthogonal(n, rng)
        assert q.T @ q == Matrix.identity(n)
        assert det(q) == 1
        r = sample_full_orthogonal(n, rng, flip=True)
        assert r.T @ r == Matrix.identity(n)
        assert det(r) == -1


@pytest.mark.parametrize("n", [2, 4, 6])
def test_symplectic_samples(n):
    j = standard_symplectic(n)
    for k in range(10):
        s = sample_symplectic(n, stream(5, "sp", n, k))
        assert s.T @ j @ s == j
    with pytest.raises(OddSize):
        sample_symplectic(3, stream(0))


def test_gl_samples_invertible():
    for k in range(10):
        assert det(sample_gl(3, stream(1, k))) != 0


def test_cayley_of_antisymmetric_is_orthogonal():
    x = Matrix([[0, 1], [-1, 0]])
    c = cayley(x)
    assert c.T @ c == Matrix.identity(2)
    assert det(c) == 1


def test_reflection_and_forms():
    assert det(reflection(3)) == -1
    assert hyperbolic(2) == Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    j = standard_symplectic(2)
    assert j.T == -j
    assert block_diag(Matrix.identity(1), j).shape == (3, 3)


@given(matrices(2, 3), matrices(2, 1), matrices(3, 1))
def test_adjoint_is_form_adjoint(f, y, x):
    """``<f x, y>_dst == <x, f* y>_src`` for ``B(u, v) = u^T B v``."""
    b_src = Matrix.identity(3)
    b_dst = standard_symplectic(2)
    fa = adjoint(f, b_src, b_dst)
    assert ((f @ x).T @ b_dst @ y) == (x.T @ b_src @ (fa @ y))
