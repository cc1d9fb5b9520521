"""Exact integer linear algebra: matrices, Smith normal form, integral solving.

Everything is plain Python ints (arbitrary precision); no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major tuple of tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.entries and any(len(r) != len(self.entries[0]) for r in self.entries):
            raise ValueError("ragged rows")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(m: int, n: int) -> "IntMatrix":
        return IntMatrix(tuple((0,) * n for _ in range(m)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else self

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.entries))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def apply(self, v) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)


@dataclass(frozen=True)
class SnfDecomposition:
    """u @ a @ v == d with u, v unimodular and d diagonal, d1 | d2 | ... >= 0."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.rows, self.d.cols)))


def det(a: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = a.rows
    if n != a.cols:
        raise ValueError("det of non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _find_pivot(m, t, rows, cols):
    """Smallest nonzero |entry| in the trailing block; ties by lowest row, then column."""
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            x = m[i][j]
            if x != 0 and (best is None or abs(x) < abs(m[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(a: IntMatrix) -> SnfDecomposition:
    rows, cols = a.rows, a.cols
    m = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, k):
        m[i], m[k] = m[k], m[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in m:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(i, k, c):  # row i += c * row k
        m[i] = [x + c * y for x, y in zip(m[i], m[k])]
        u[i] = [x + c * y for x, y in zip(u[i], u[k])]

    def add_col(j, k, c):  # col j += c * col k
        for r in m:
            r[j] += c * r[k]
        for r in v:
            r[j] += c * r[k]

    t = 0
    while t < min(rows, cols):
        piv = _find_pivot(m, t, rows, cols)
        if piv is None:
            break
        while True:
            pi, pj = piv
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    add_row(i, t, -(m[i][t] // p))
                    if m[i][t] != 0:
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    add_col(j, t, -(m[t][j] // p))
                    if m[t][j] != 0:
                        dirty = True
            if dirty:
                piv = _find_pivot(m, t, rows, cols)
                continue
            # row/col t clear; enforce that the pivot divides the rest of the block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % p != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
            piv = _find_pivot(m, t, rows, cols)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SnfDecomposition(IntMatrix.from_rows(u), IntMatrix.from_rows(m), IntMatrix.from_rows(v))


def solve_integral(a: IntMatrix, b) -> tuple[int, ...] | None:
    """An integer solution x of a @ x = b, or None if no integral solution exists."""
    b = tuple(int(x) for x in b)
    if len(b) != a.rows:
        raise ValueError("length mismatch")
    snf = smith_normal_form(a)
    ub = snf.u.apply(b)
    diag = snf.diagonal()
    y = [0] * a.cols
    for i in range(a.rows):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            q, r = divmod(ub[i], di)
            if r != 0:
                return None
            y[i] = q
    x = snf.v.apply(y)
    assert a.apply(x) == b
    return x


def kernel_basis(a: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the saturated integer kernel of a (columns x with a @ x = 0)."""
    snf = smith_normal_form(a)
    diag = snf.diagonal()
    rank = sum(1 for d in diag if d != 0)
    basis = [snf.v.col(j) for j in range(rank, a.cols)]
    for k in basis:
        assert all(x == 0 for x in a.apply(k))
    return basis


def adjugate(a: IntMatrix) -> tuple[IntMatrix, int]:
    """(adj, det) with a @ adj == det * identity, computed by exact elimination."""
    from fractions import Fraction

    n = a.rows
    if n != a.cols:
        raise ValueError("adjugate of non-square matrix")
    d = det(a)
    if d == 0:
        raise ValueError("singular matrix")
    # invert over Q, then scale by det
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a.entries)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                c = m[i][col]
                m[i] = [x - c * y for x, y in zip(m[i], m[col])]
    adj_rows = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = m[i][j] * d
            assert x.denominator == 1
            row.append(int(x))
        adj_rows.append(row)
    adj = IntMatrix.from_rows(adj_rows)
    return adj, d


def content(v) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
