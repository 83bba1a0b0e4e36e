"""Exact dense linear algebra over a prime field GF(p).

Matrices are stored row-major as lists of Python ints reduced into
[0, p).  Everything is done by modular Gauss-Jordan elimination, so
results are exact and independent of floating point.
"""

from __future__ import annotations

import random

DEFAULT_PRIME = 2305843009213693951  # 2**61 - 1


class Matrix:
    """A rows x cols matrix over GF(p)."""

    __slots__ = ("rows", "cols", "data", "p")

    def __init__(self, rows: int, cols: int, data=None, p: int = DEFAULT_PRIME):
        self.rows = rows
        self.cols = cols
        self.p = p
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        self.data = data

    @classmethod
    def from_rows(cls, rows, p: int = DEFAULT_PRIME, cols=None) -> "Matrix":
        data = [[int(x) % p for x in row] for row in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged rows")
        return cls(len(data), cols, data, p)

    @classmethod
    def zeros(cls, rows, cols, p=DEFAULT_PRIME):
        return cls(rows, cols, None, p)

    @classmethod
    def identity(cls, n, p=DEFAULT_PRIME):
        data = [[0] * n for _ in range(n)]
        for i in range(n):
            data[i][i] = 1
        return cls(n, n, data, p)

    @classmethod
    def from_columns(cls, columns, rows: int, p=DEFAULT_PRIME):
        data = [[col[r] for col in columns] for r in range(rows)]
        return cls(rows, len(columns), data, p)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entries(self):
        """Row-major flat list of entries."""
        return [x for row in self.data for x in row]

    def column(self, j):
        return [row[j] for row in self.data]

    def columns(self):
        return [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)]

    def copy(self):
        return Matrix(self.rows, self.cols, [row[:] for row in self.data], self.p)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, self.columns(), self.p)

    T = property(transpose)

    def is_zero(self):
        return not any(any(row) for row in self.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.p
        if other.rows == 0:
            return Matrix.zeros(self.rows, other.cols, p)
        ocols = list(zip(*other.data))
        data = [[sum(a * b for a, b in zip(row, col)) % p for col in ocols] for row in self.data]
        return Matrix(self.rows, other.cols, data, p)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.p
        data = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix(self.rows, self.cols, data, p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.p
        data = [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix(self.rows, self.cols, data, p)

    def scale(self, c: int) -> "Matrix":
        p = self.p
        return Matrix(self.rows, self.cols, [[c * x % p for x in row] for row in self.data], p)

    def apply(self, vec):
        p = self.p
        return [sum(a * b for a, b in zip(row, vec)) % p for row in self.data]

    def select_rows(self, idx):
        return Matrix(len(idx), self.cols, [self.data[i][:] for i in idx], self.p)

    def select_cols(self, idx):
        return Matrix(self.rows, len(idx), [[row[j] for j in idx] for row in self.data], self.p)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.data})"


def hstack(mats, rows=None, p=DEFAULT_PRIME) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(rows or 0, 0, p)
    rows = mats[0].rows
    data = [sum((m.data[r] for m in mats), []) for r in range(rows)]
    return Matrix(rows, sum(m.cols for m in mats), data, mats[0].p)


def vstack(mats, cols=None, p=DEFAULT_PRIME) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(0, cols or 0, p)
    data = [row[:] for m in mats for row in m.data]
    return Matrix(sum(m.rows for m in mats), mats[0].cols, data, mats[0].p)


def block_diag(mats, p=DEFAULT_PRIME) -> Matrix:
    mats = list(mats)
    if mats:
        p = mats[0].p
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = Matrix.zeros(rows, cols, p)
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.data):
            out.data[r0 + i][c0:c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return out


# -- elimination kernels on raw row lists ---------------------------------

def echelon(data, ncols, p, reduced=True):
    """Gauss-Jordan in place on a list of rows; returns the pivot columns.

    With ``reduced=False`` only the rows below each pivot are cleared,
    which is enough for rank computations.
    """
    m = len(data)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if data[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            data[r], data[piv] = data[piv], data[r]
        row = data[r]
        lead = row[c]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            row = [x * inv % p for x in row]
            data[r] = row
        tail = row[c:]
        targets = range(m) if reduced else range(r + 1, m)
        for i in targets:
            if i == r:
                continue
            other = data[i]
            f = other[c]
            if f:
                data[i] = other[:c] + [(x - f * y) % p for x, y in zip(other[c:], tail)]
        pivots.append(c)
        r += 1
    return pivots


def _rows_rank(rows, ncols, p):
    return len(echelon([r[:] for r in rows], ncols, p, reduced=False))


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.cols > m.rows:
        return _rows_rank(m.columns(), m.rows, m.p)
    return _rows_rank(m.data, m.cols, m.p)


def rank_of_vectors(vectors, length, p=DEFAULT_PRIME) -> int:
    """Dimension of the span of a list of vectors of the given length."""
    vectors = [v for v in vectors if any(v)]
    if not vectors or length == 0:
        return 0
    return _rows_rank(vectors, length, p)


def nullspace(data, ncols, p):
    """Basis of {x : data x = 0} as a list of vectors."""
    rows = [r[:] for r in data]
    pivots = echelon(rows, ncols, p)
    pivset = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            x = rows[i][fc]
            if x:
                v[pc] = -x % p
        basis.append(v)
    return basis


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of m."""
    vecs = nullspace(m.data, m.cols, m.p)
    return Matrix.from_columns(vecs, m.cols, m.p)


def solve(a: Matrix, b) -> list | None:
    """Some x with a x = b, or None when the system is inconsistent."""
    b = list(b)
    if len(b) != a.rows:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    p = a.p
    aug = [row[:] + [x % p] for row, x in zip(a.data, b)]
    pivots = echelon(aug, a.cols + 1, p)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [0] * a.cols
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][a.cols]
    return x


def cokernel(m: Matrix):
    """Return (proj, section) for the cokernel of m.

    proj has full row rank and proj @ m = 0.  section is a right inverse
    of proj (proj @ section = identity) made of unit vectors, so its
    columns are lifts of the cokernel basis.
    """
    p = m.p
    n = m.rows
    rows = m.columns()
    pivots = echelon(rows, n, p) if rows else []
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    proj = []
    for c in free:
        row = [0] * n
        row[c] = 1
        for i, pc in enumerate(pivots):
            x = rows[i][c]
            if x:
                row[pc] = -x % p
        proj.append(row)
    section = Matrix.zeros(n, len(free), p)
    for j, c in enumerate(free):
        section.data[c][j] = 1
    return Matrix(len(free), n, proj, p), section


def cokernel_projection(m: Matrix):
    """Return (proj, dim) with proj @ m = 0 and proj of full row rank."""
    proj, _ = cokernel(m)
    return proj, proj.rows


def column_space_basis(m: Matrix) -> Matrix:
    """Columns of m at the pivot positions: a basis of the image."""
    rows = [r[:] for r in m.data]
    pivots = echelon(rows, m.cols, m.p, reduced=False)
    return m.select_cols(pivots)


def left_inverse(k: Matrix) -> Matrix:
    """L with L @ k = identity, for k of full column rank.

    For x in the column space of k, L @ x gives its coordinates.
    """
    p = k.p
    n, r = k.rows, k.cols
    if r == 0:
        return Matrix.zeros(0, n, p)
    cols = k.columns()
    rows_sel = echelon([c[:] for c in cols], n, p, reduced=False)
    if len(rows_sel) != r:
        raise ValueError("matrix does not have full column rank")
    sub = [k.data[i][:] + [1 if j == t else 0 for j in range(r)] for t, i in enumerate(rows_sel)]
    echelon(sub, 2 * r, p)
    inv = [row[r:] for row in sub]
    out = Matrix.zeros(r, n, p)
    for t, i in enumerate(rows_sel):
        for s in range(r):
            out.data[s][i] = inv[s][t]
    return out


def random_matrix(rows: int, cols: int, rng: random.Random, p: int = DEFAULT_PRIME) -> Matrix:
    """Matrix with i.i.d. uniform entries drawn from rng."""
    data = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
    return Matrix(rows, cols, data, p)
