"""Even lattices as Gram-matrix algebra: pairings, divisibility, standard
constructors, direct sums, saturated orthogonal complements.

A Lattice is a finite-rank free Z-module with a fixed basis and a
non-degenerate even symmetric Gram matrix.  Vectors are integer coordinate
columns relative to that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exactlin import IntMatrix, content, det, kernel_basis, smith_normal_form


@dataclass(frozen=True)
class Lattice:
    gram: IntMatrix
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        g = self.gram
        if g.rows != g.cols:
            raise ValueError("Gram matrix must be square")
        if g != g.transpose():
            raise ValueError("Gram matrix must be symmetric")
        if any(g[i, i] % 2 != 0 for i in range(g.rows)):
            raise ValueError("lattice must be even")
        if det(g) == 0:
            raise ValueError("Gram matrix must be non-degenerate")
        if self.labels is not None and len(self.labels) != g.rows:
            raise ValueError("label count must match rank")

    @property
    def rank(self) -> int:
        return self.gram.rows

    def vector(self, coords) -> "LatVector":
        return LatVector(self, tuple(int(c) for c in coords))

    def basis_vector(self, i: int) -> "LatVector":
        return self.vector(tuple(1 if j == i else 0 for j in range(self.rank)))

    def zero(self) -> "LatVector":
        return self.vector((0,) * self.rank)

    def signature(self) -> tuple[int, int]:
        """(positive, negative) inertia via exact rational LDL-style reduction."""
        from fractions import Fraction

        n = self.rank
        m = [[Fraction(self.gram[i, j]) for j in range(n)] for i in range(n)]
        pos = neg = 0
        idx = list(range(n))
        for step in range(n):
            # find a nonzero diagonal entry, or create one from an off-diagonal
            piv = next((i for i in range(step, n) if m[i][i] != 0), None)
            if piv is None:
                i, j = next(
                    (i, j)
                    for i in range(step, n)
                    for j in range(i + 1, n)
                    if m[i][j] != 0
                )
                for k in range(n):  # row/col i += row/col j, makes m[i][i] = 2*m[i][j]
                    m[i][k] += m[j][k]
                for k in range(n):
                    m[k][i] += m[k][j]
                piv = i
            if piv != step:
                m[step], m[piv] = m[piv], m[step]
                for row in m:
                    row[step], row[piv] = row[piv], row[step]
            d = m[step][step]
            if d > 0:
                pos += 1
            else:
                neg += 1
            for i in range(step + 1, n):
                c = m[i][step] / d
                if c != 0:
                    for k in range(n):
                        m[i][k] -= c * m[step][k]
                    for k in range(n):
                        m[k][i] -= c * m[k][step]
        del idx
        return pos, neg

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "gram": [[str(x) for x in row] for row in self.gram.entries],
            "labels": list(self.labels) if self.labels else None,
        }


@dataclass(frozen=True)
class LatVector:
    lattice: Lattice
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise ValueError("coordinate length must equal lattice rank")

    def __add__(self, other: "LatVector") -> "LatVector":
        _same(self, other)
        return LatVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatVector") -> "LatVector":
        _same(self, other)
        return LatVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, c: int) -> "LatVector":
        return LatVector(self.lattice, tuple(c * a for a in self.coords))

    def __neg__(self) -> "LatVector":
        return LatVector(self.lattice, tuple(-a for a in self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def to_json(self, name: str | None = None) -> dict:
        return {
            "lattice": name if name is not None else self.lattice.to_json(),
            "coords": [str(c) for c in self.coords],
        }


def _same(x: LatVector, y: LatVector):
    if x.lattice is not y.lattice and x.lattice != y.lattice:
        raise ValueError("vectors live in different lattices")


def pair(x: LatVector, y: LatVector) -> int:
    _same(x, y)
    g = x.lattice.gram
    return sum(
        xi * sum(gij * yj for gij, yj in zip(row, y.coords))
        for xi, row in zip(x.coords, g.entries)
    )


def square(x: LatVector) -> int:
    return pair(x, x)


def divisibility(x: LatVector) -> int:
    """gcd of (x, y) over the basis y; positive."""
    if x.is_zero():
        raise ValueError("divisibility of the zero vector is undefined")
    g = 0
    for row in x.lattice.gram.entries:
        g = gcd(g, sum(a * c for a, c in zip(row, x.coords)))
    return g


# --- standard constructors -------------------------------------------------

_U_GRAM = ((0, 1), (1, 0))

# E8 Cartan matrix (Bourbaki numbering: node 2 attached to node 4)
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def _e8neg_gram() -> tuple[tuple[int, ...], ...]:
    m = [[0] * 8 for _ in range(8)]
    for i in range(8):
        m[i][i] = -2
    for a, b in _E8_EDGES:
        m[a - 1][b - 1] = m[b - 1][a - 1] = 1
    return tuple(tuple(r) for r in m)


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    m = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                m[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in m)


def _og10_gram():
    return _block_diag(
        [_U_GRAM, _U_GRAM, _U_GRAM, _e8neg_gram(), _e8neg_gram(), ((-2, 3), (3, -6))]
    )


_CATALOGUE = {
    "U": (_U_GRAM, ("e", "f")),
    "E8neg": (_e8neg_gram(), tuple(f"r{i}" for i in range(1, 9))),
    "A2neg": (((-2, 1), (1, -2)), ("a1", "a2")),
    "G2neg": (((-2, 3), (3, -6)), ("Btilde", "Sigmatilde")),
    "OG10": (
        _og10_gram(),
        ("e1", "f1", "e2", "f2", "e3", "f3")
        + tuple(f"r{i}" for i in range(1, 9))
        + tuple(f"s{i}" for i in range(1, 9))
        + ("Btilde", "Sigmatilde"),
    ),
    # rank-3 algebraic Mukai lattice for a degree-2 K3: (r, mH, s), H^2 = 2,
    # pairing ((r,m,s),(r',m',s')) = 2mm' - rs' - r's
    "MukaiAlg2": (((0, 0, -1), (0, 2, 0), (-1, 0, 0)), ("r", "H", "s")),
}

_cache: dict[str, Lattice] = {}


def standard_lattice(name: str) -> Lattice:
    if name not in _CATALOGUE:
        raise ValueError(f"unknown lattice name: {name!r}")
    if name not in _cache:
        gram, labels = _CATALOGUE[name]
        _cache[name] = Lattice(IntMatrix.from_rows(gram), labels)
    return _cache[name]


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    gram = IntMatrix.from_rows(_block_diag([a.gram.entries, b.gram.entries]))
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = a.labels + b.labels
    return Lattice(gram, labels)


@dataclass(frozen=True)
class Sublattice:
    """A saturated sublattice with its induced Gram and its embedding into the
    ambient lattice (embedding columns = sublattice basis in ambient coords)."""

    ambient: Lattice
    embedding: IntMatrix
    lattice: Lattice

    def to_ambient(self, x: LatVector) -> LatVector:
        if x.lattice != self.lattice:
            raise ValueError("vector not in this sublattice")
        return self.ambient.vector(self.embedding.apply(x.coords))

    def from_ambient(self, x: LatVector) -> LatVector:
        """Express an ambient vector in sublattice coordinates (must lie in it)."""
        from .exactlin import solve_integral

        sol = solve_integral(self.embedding, x.coords)
        if sol is None:
            raise ValueError("vector does not lie in the sublattice")
        return self.lattice.vector(sol)


def orthogonal_complement(l: Lattice, gens: list[LatVector]) -> Sublattice:
    if not gens:
        raise ValueError("need at least one generator")
    rows = [l.gram.apply(g.coords) for g in gens]
    cm = IntMatrix.from_rows(rows)
    snf = smith_normal_form(cm)
    if sum(1 for d in snf.diagonal() if d != 0) != len(gens):
        raise ValueError("generators are linearly dependent")
    basis = kernel_basis(cm)  # saturated by construction
    emb = IntMatrix.from_rows([[b[i] for b in basis] for i in range(l.rank)])
    vecs = [l.vector(b) for b in basis]
    gram = IntMatrix.from_rows([[pair(x, y) for y in vecs] for x in vecs])
    return Sublattice(l, emb, Lattice(gram))


def lattice_det(l: Lattice) -> int:
    return det(l.gram)


def glue_index(amb: Lattice, sub_a: Sublattice, sub_b: Sublattice) -> int:
    """Index of A + B inside the ambient lattice (A, B spanning complements)."""
    n = amb.rank
    cols = [sub_a.embedding.col(j) for j in range(sub_a.embedding.cols)]
    cols += [sub_b.embedding.col(j) for j in range(sub_b.embedding.cols)]
    if len(cols) != n:
        raise ValueError("sublattices do not span")
    b = IntMatrix.from_rows([[c[i] for c in cols] for i in range(n)])
    return abs(det(b))


def vector_content(x: LatVector) -> int:
    return content(x.coords)
