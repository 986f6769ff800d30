"""Exact dense linear algebra over the rationals.

``Matrix`` is an immutable grid of ring elements.  Entries are normally
``int`` or ``Fraction``; the product, sum and trace routines only use ``+``
and ``*`` so they also work with :class:`quivinv.poly.Poly` entries.
"""

from fractions import Fraction
from math import gcd

from .errors import (
    DegenerateCayley,
    NotAntisymmetric,
    OddSize,
    ShapeMismatch,
)
from .rng import small_int


def _clean(x):
    """Turn integral Fractions back into ints; keeps arithmetic cheap."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = tuple(tuple(_clean(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeMismatch(f"entry grid does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __iter__(self):
        return iter(self.data)

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.data]})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    @property
    def T(self):
        return Matrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
        )

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.data], self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = [tuple(other.data[k][j] for k in range(other.rows)) for j in range(other.cols)]
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, self.rows, other.cols)

    def trace(self):
        if self.rows != self.cols:
            raise ShapeMismatch("trace of a non-square matrix")
        acc = 0
        for i in range(self.rows):
            acc = acc + self.data[i][i]
        return acc

    def is_square(self):
        return self.rows == self.cols

    def tolist(self):
        return [list(r) for r in self.data]


def block_diag(*blocks):
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.data[i][j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(out, n, m)


def standard_symplectic(n):
    """The form ``J = [[0, I], [-I, 0]]`` of size ``n`` (``n`` even)."""
    if n % 2:
        raise OddSize(f"symplectic form needs even size, got {n}")
    h = n // 2
    return Matrix(
        [[1 if j == i + h else (-1 if i == j + h else 0) for j in range(n)] for i in range(n)],
        n,
        n,
    )


def hyperbolic(n):
    """The pairing ``[[0, I], [I, 0]]`` on ``k^n + k^n``."""
    return Matrix(
        [[1 if abs(i - j) == n else 0 for j in range(2 * n)] for i in range(2 * n)],
        2 * n,
        2 * n,
    )


# -- elimination ------------------------------------------------------------


def _rows_fraction(a):
    return [[Fraction(x) for x in r] for r in a.data]


def det(a):
    if not a.is_square():
        raise ShapeMismatch("determinant of a non-square matrix")
    m = _rows_fraction(a)
    n = a.rows
    sign = 1
    acc = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        piv = m[k][k]
        acc *= piv
        for i in range(k + 1, n):
            f = m[i][k]
            if f:
                f /= piv
                rk = m[k]
                ri = m[i]
                for j in range(k, n):
                    ri[j] -= f * rk[j]
    return _clean(sign * acc)


def inverse(a):
    if not a.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    n = a.rows
    m = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(_rows_fraction(a))]
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        m[k], m[p] = m[p], m[k]
        piv = m[k][k]
        m[k] = [x / piv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return Matrix([r[n:] for r in m], n, n)


def rref(a):
    """Reduced row echelon form and pivot columns."""
    m = _rows_fraction(a)
    pivots = []
    r = 0
    for c in range(a.cols):
        p = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return Matrix(m, a.rows, a.cols), pivots


def rank(a):
    return len(sparse_echelon(_dense_to_sparse(a)))


def kernel(a):
    """Basis of the right kernel, as a list of column vectors (tuples)."""
    red, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(tuple(_clean(x) for x in v))
    return basis


# -- sparse fraction-free elimination -----------------------------------------


def _dense_to_sparse(a):
    rows = []
    for r in a.data:
        row = {j: Fraction(x) for j, x in enumerate(r) if x}
        if row:
            rows.append(_integral(row))
    return rows


def _integral(row):
    """Scale a rational sparse row to a primitive integer row."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def sparse_echelon(rows, key=None):
    """Echelonize sparse rows (dicts column -> number) without fractions.

    Returns a dict pivot column -> primitive integer row.  Columns are
    compared with ``key`` (default: natural order); each stored row has
    its pivot as its smallest column.
    """
    key = key or (lambda c: c)
    pivots = {}
    for row in rows:
        v = _integral({k: x for k, x in row.items() if x})
        while v:
            lead = min(v, key=key)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            a = v[lead]
            b = p[lead]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            w = {k: x * ma for k, x in v.items()}
            for k, x in p.items():
                y = w.get(k, 0) - mb * x
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
            v = _integral(w) if w else w
    return pivots


def sparse_rank(rows, key=None):
    return len(sparse_echelon(rows, key))


def sparse_kernel(rows, columns):
    """Kernel of the constraint rows restricted to ``columns``.

    ``rows`` are dicts over column labels; the result is a list of dicts
    (label -> Fraction) spanning ``{c : sum_j row[j] c_j = 0 for every row}``.
    """
    order = {c: i for i, c in enumerate(columns)}
    piv = sparse_echelon(rows, key=order.__getitem__)
    # back substitution from the last pivot upwards
    pivot_cols = sorted(piv, key=order.__getitem__)
    free = [c for c in columns if c not in piv]
    basis = []
    for f in free:
        sol = {f: Fraction(1)}
        for pc in reversed(pivot_cols):
            row = piv[pc]
            s = sum((Fraction(x) * sol[k] for k, x in row.items() if k != pc and k in sol), Fraction(0))
            if s:
                sol[pc] = -s / row[pc]
        basis.append({k: _clean(v) for k, v in sol.items() if v})
    return basis


# -- forms, adjoints, pfaffians ---------------------------------------------


def adjoint(f, src_form, dst_form, src_form_inv=None):
    """Adjoint of ``f: src -> dst`` with respect to the two bilinear forms.

    Returns ``src_form^-1 f^T dst_form`` which maps the dual side of ``dst``
    back to the dual side of ``src``.
    """
    if f.cols != src_form.rows or f.rows != dst_form.rows:
        raise ShapeMismatch(
            f"map of shape {f.shape} does not fit forms {src_form.shape} / {dst_form.shape}"
        )
    if src_form_inv is None:
        src_form_inv = inverse(src_form)
    return src_form_inv @ f.T @ dst_form


def is_antisymmetric(a):
    return a.is_square() and all(
        a[i, j] == -a[j, i] for i in range(a.rows) for j in range(i, a.rows)
    )


def pfaffian(a):
    """Exact pfaffian by skew Gaussian elimination, O(n^3)."""
    if not is_antisymmetric(a):
        raise NotAntisymmetric("pfaffian needs an antisymmetric matrix")
    n = a.rows
    if n % 2:
        raise OddSize(f"pfaffian of odd size {n}")
    m = _rows_fraction(a)
    acc = Fraction(1)
    for k in range(0, n - 1, 2):
        j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
        if j is None:
            return 0
        if j != k + 1:
            m[k + 1], m[j] = m[j], m[k + 1]
            for r in m:
                r[k + 1], r[j] = r[j], r[k + 1]
            acc = -acc
        piv = m[k][k + 1]
        acc *= piv
        rk, rk1 = m[k], m[k + 1]
        for i in range(k + 2, n):
            ai, bi = rk[i], rk1[i]
            if not ai and not bi:
                continue
            ri = m[i]
            for l in range(k + 2, n):
                ri[l] += (bi * rk[l] - ai * rk1[l]) / piv
    return _clean(acc)


# -- sampling classical groups ----------------------------------------------


def _random_int_matrix(rng, rows, cols, bound=5):
    return Matrix([[small_int(rng, bound) for _ in range(cols)] for _ in range(rows)], rows, cols)


def random_antisymmetric(rng, n, bound=5):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = small_int(rng, bound)
            m[i][j] = x
            m[j][i] = -x
    return Matrix(m, n, n)


def random_symmetric(rng, n, bound=5):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = small_int(rng, bound)
    return Matrix(m, n, n)


def cayley(x):
    """``(I - X)^-1 (I + X)``; raises ZeroDivisionError if ``I - X`` is singular."""
    one = Matrix.identity(x.rows)
    return inverse(one - x) @ (one + x)


def sample_orthogonal(n, rng, retries=32):
    """A rational element of SO(n): Cayley transform of an antisymmetric matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    for _ in range(retries):
        try:
            return cayley(random_antisymmetric(rng, n))
        except ZeroDivisionError:  # pragma: no cover - I - X is always invertible here
            continue
    raise DegenerateCayley(f"no invertible Cayley sample for SO({n})")


def reflection(n, index=0):
    return Matrix.diag([-1 if i == index else 1 for i in range(n)])


def sample_full_orthogonal(n, rng, flip=None):
    """Element of O(n) covering both components.

    ``flip`` forces the determinant -1 component when true; by default the
    component is chosen at random.
    """
    q = sample_orthogonal(n, rng)
    if flip is None:
        flip = bool(rng.integers(0, 2))
    return q @ reflection(n) if flip else q


def sample_symplectic(n, rng, retries=32):
    """A rational element of Sp(n): Cayley transform of ``J S``, ``S`` symmetric."""
    if n < 1 or n % 2:
        raise OddSize(f"symplectic sampling needs positive even n, got {n}")
    j = standard_symplectic(n)
    for _ in range(retries):
        try:
            return cayley(j @ random_symmetric(rng, n))
        except ZeroDivisionError:
            continue
    raise DegenerateCayley(f"no invertible Cayley sample for Sp({n}) after {retries} tries")


def sample_gl(n, rng, retries=64):
    """Random integer matrix, resampled until invertible."""
    if n < 1:
        raise ValueError("n must be positive")
    for _ in range(retries):
        g = _random_int_matrix(rng, n, n)
        if det(g) != 0:
            return g
    raise DegenerateCayley(f"no invertible integer sample for GL({n})")

