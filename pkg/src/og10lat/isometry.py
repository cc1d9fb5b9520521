"""Certified lattice isometries and the constructive Eichler machinery.

Key performance fact used throughout: a transvection differs from the identity
by a rank-2 matrix and a reflection by a rank-1 matrix, so multiplying an
accumulated product by either costs O(n^2) instead of O(n^3).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .exactlin import IntMatrix, adjugate, content, det
from .discriminant import discriminant_group
from .lattice import Lattice, LatVector, divisibility, pair, square


class Isometry:
    """Integer matrix certified to preserve the Gram form of its lattice."""

    __slots__ = ("lattice", "matrix")

    def __init__(self, lattice: Lattice, matrix: IntMatrix, *, _trusted: bool = False):
        if matrix.rows != matrix.cols or matrix.rows != lattice.rank:
            raise ValueError("matrix shape does not match lattice rank")
        if not _trusted:
            g = lattice.gram
            if matrix.transpose() @ g @ matrix != g:
                raise ValueError("matrix does not preserve the Gram form")
        self.lattice = lattice
        self.matrix = matrix

    def __eq__(self, other):
        return (
            isinstance(other, Isometry)
            and self.lattice == other.lattice
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((id(self.lattice), self.matrix.entries))

    def __repr__(self):
        return f"Isometry(rank={self.lattice.rank})"

    def apply(self, x: LatVector) -> LatVector:
        if x.lattice != self.lattice:
            raise ValueError("vector not in this isometry's lattice")
        return self.lattice.vector(self.matrix.apply(x.coords))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if self.lattice != other.lattice:
            raise ValueError("lattice mismatch")
        return Isometry(self.lattice, self.matrix @ other.matrix, _trusted=True)

    def inverse(self) -> "Isometry":
        gadj, gdet = _gram_adjugate(self.lattice)
        num = gadj @ self.matrix.transpose() @ self.lattice.gram
        rows = []
        for r in num.entries:
            row = []
            for x in r:
                q, rem = divmod(x, gdet)
                assert rem == 0
                row.append(q)
            rows.append(row)
        return Isometry(self.lattice, IntMatrix.from_rows(rows), _trusted=True)

    def is_identity(self) -> bool:
        return self.matrix.is_identity()


@lru_cache(maxsize=None)
def _gram_adjugate(l: Lattice):
    return adjugate(l.gram)


def identity_isometry(l: Lattice) -> Isometry:
    return Isometry(l, IntMatrix.identity(l.rank), _trusted=True)


def make_isometry(l: Lattice, m: IntMatrix) -> Isometry:
    return Isometry(l, m)


# --- O(n^2) product accumulation ------------------------------------------


def _gram_apply(l: Lattice, v):
    return [sum(a * c for a, c in zip(row, v)) for row in l.gram.entries]


def _pair(l: Lattice, x, y) -> int:
    return sum(
        xi * sum(g * yj for g, yj in zip(row, y)) for xi, row in zip(x, l.gram.entries)
    )


def _t_vectors(l: Lattice, z, a):
    """t(z,a) = I + z (x) u + a (x) w with u, w the returned row functionals."""
    gz = _gram_apply(l, z)
    ga = _gram_apply(l, a)
    c = _pair(l, a, a) // 2
    u = [-x - c * y for x, y in zip(ga, gz)]
    return u, gz


def _rank2_left(p, z, u, a, w):
    """p <- (I + z(x)u + a(x)w) @ p, in place; p is a list of row lists."""
    n = len(p)
    up = [sum(u[k] * p[k][j] for k in range(n)) for j in range(n)]
    wp = [sum(w[k] * p[k][j] for k in range(n)) for j in range(n)]
    for i in range(n):
        zi, ai = z[i], a[i]
        if zi or ai:
            row = p[i]
            for j in range(n):
                row[j] += zi * up[j] + ai * wp[j]


def _rank2_right(p, z, u, a, w):
    """p <- p @ (I + z(x)u + a(x)w), in place."""
    n = len(p)
    for row in p:
        pz = sum(row[k] * z[k] for k in range(n))
        pa = sum(row[k] * a[k] for k in range(n))
        if pz or pa:
            for j in range(n):
                row[j] += pz * u[j] + pa * w[j]


def _refl_vectors(l: Lattice, v):
    """R_v = I + v (x) s; requires v^2 | 2(v,x) for all basis x."""
    sq = _pair(l, v, v)
    gv = _gram_apply(l, v)
    s = []
    for x in gv:
        q, r = divmod(-2 * x, sq)
        if r != 0:
            raise ValueError("reflection is not integral")
        s.append(q)
    return s


def _rank1_left(p, v, s):
    n = len(p)
    sp = [sum(s[k] * p[k][j] for k in range(n)) for j in range(n)]
    for i in range(n):
        vi = v[i]
        if vi:
            row = p[i]
            for j in range(n):
                row[j] += vi * sp[j]


def _apply_transvection(l: Lattice, z, a, x):
    ax = _pair(l, a, x)
    zx = _pair(l, z, x)
    c = _pair(l, a, a) // 2
    return [xi - ax * zi + zx * ai - c * zx * zi for xi, zi, ai in zip(x, z, a)]


def atoms_to_matrix(l: Lattice, atoms, invert: bool = False) -> IntMatrix:
    """Matrix of a transvection word given in application order (first applied
    first).  invert=True yields the matrix of the inverse word."""
    n = l.rank
    p = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    seq = [(z, [-x for x in a]) for z, a in reversed(atoms)] if invert else atoms
    for z, a in seq:
        u, w = _t_vectors(l, z, a)
        _rank2_left(p, z, u, a, w)
    return IntMatrix.from_rows(p)


# --- reflections and transvections ----------------------------------------


def reflection(v: LatVector) -> Isometry:
    l = v.lattice
    if square(v) == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    s = _refl_vectors(l, v.coords)
    n = l.rank
    rows = [
        [int(i == j) + v.coords[i] * s[j] for j in range(n)] for i in range(n)
    ]
    return Isometry(l, IntMatrix.from_rows(rows), _trusted=True)


def transvection(z: LatVector, a: LatVector) -> Isometry:
    l = z.lattice
    if a.lattice != l:
        raise ValueError("lattice mismatch")
    if square(z) != 0:
        raise ValueError("transvection base must be isotropic")
    if pair(z, a) != 0:
        raise ValueError("transvection argument must be orthogonal to the base")
    u, w = _t_vectors(l, z.coords, a.coords)
    n = l.rank
    rows = [
        [int(i == j) + z.coords[i] * u[j] + a.coords[i] * w[j] for j in range(n)]
        for i in range(n)
    ]
    return Isometry(l, IntMatrix.from_rows(rows), _trusted=True)


# --- orientation -----------------------------------------------------------


@lru_cache(maxsize=None)
def _positive_frame(l: Lattice):
    """Integer basis of a positive-definite rational 3-space, plus the sign of
    its own projected determinant.  Uses the distinguished U-sum frame when the
    lattice opens with three hyperbolic blocks; otherwise diagonalizes."""
    from fractions import Fraction

    pos, neg = l.signature()
    if pos != 3:
        raise ValueError("orientation needs signature (3, n)")
    n = l.rank
    frame = None
    if n >= 6 and all(
        l.gram[i, j] == (1 if {i, j} == {2 * b, 2 * b + 1} else 0)
        for b in range(3)
        for i in range(2 * b, 2 * b + 2)
        for j in range(6)
    ):
        frame = [
            tuple(1 if i in (2 * b, 2 * b + 1) else 0 for i in range(n))
            for b in range(3)
        ]
    if frame is None:
        # symmetric rational reduction tracking the congruence basis
        m = [[Fraction(l.gram[i, j]) for j in range(n)] for i in range(n)]
        basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        frame_q = []
        for step in range(n):
            piv = next((i for i in range(step, n) if m[i][i] != 0), None)
            if piv is None:
                i, j = next(
                    (i, j)
                    for i in range(step, n)
                    for j in range(i + 1, n)
                    if m[i][j] != 0
                )
                for k in range(n):
                    m[i][k] += m[j][k]
                for k in range(n):
                    m[k][i] += m[k][j]
                basis[i] = [x + y for x, y in zip(basis[i], basis[j])]
                piv = i
            if piv != step:
                m[step], m[piv] = m[piv], m[step]
                for row in m:
                    row[step], row[piv] = row[piv], row[step]
                basis[step], basis[piv] = basis[piv], basis[step]
            d = m[step][step]
            if d > 0:
                frame_q.append(list(basis[step]))
            for i in range(step + 1, n):
                c = m[i][step] / d
                if c != 0:
                    for k in range(n):
                        m[i][k] -= c * m[step][k]
                    for k in range(n):
                        m[k][i] -= c * m[k][step]
                    basis[i] = [x - c * y for x, y in zip(basis[i], basis[step])]
        frame = []
        for vec in frame_q:
            den = 1
            for x in vec:
                den = den * x.denominator // gcd(den, x.denominator)
            frame.append(tuple(int(x * den) for x in vec))
    base = _frame_det(l, frame, None)
    assert base != 0
    return tuple(frame), 1 if base > 0 else -1


def _frame_det(l: Lattice, frame, matrix: IntMatrix | None) -> int:
    cols = [matrix.apply(w) if matrix is not None else w for w in frame]
    gw = [_gram_apply(l, c) for c in cols]
    a = [[sum(x * y for x, y in zip(w, col)) for col in gw] for w in frame]
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def is_orientation_preserving(g: Isometry) -> bool:
    frame, base_sign = _positive_frame(g.lattice)
    d = _frame_det(g.lattice, frame, g.matrix)
    assert d != 0
    return (1 if d > 0 else -1) == base_sign


# --- generator words -------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWord:
    """Ordered factorization: product = factors[0] @ factors[1] @ ...
    (so the last factor is applied first)."""

    lattice: Lattice
    factors: tuple[tuple[str, Isometry], ...]
    product: Isometry

    def verify(self) -> bool:
        m = IntMatrix.identity(self.lattice.rank)
        for _, iso in self.factors:
            m = m @ iso.matrix
        return m == self.product.matrix

    def to_json(self) -> dict:
        return {
            "factors": [
                {"tag": tag, "matrix": [[str(x) for x in row] for row in iso.matrix.entries]}
                for tag, iso in self.factors
            ],
            "product": [[str(x) for x in row] for row in self.product.matrix.entries],
        }

    @staticmethod
    def empty(l: Lattice) -> "GeneratorWord":
        return GeneratorWord(l, (), identity_isometry(l))


# --- random generation -----------------------------------------------------


@lru_cache(maxsize=None)
def _generator_catalogue(l: Lattice):
    """(isotropic vectors, integral (-2)-reflection vectors) harvested from the
    basis and small two-term combinations."""
    n = l.rank
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    cands = list(basis)
    for i in range(n):
        for j in range(i + 1, n):
            if l.gram[i, j] != 0:  # only interacting pairs give new classes
                for ci, cj in ((1, 1), (1, -1), (2, 1)):
                    cands.append(
                        tuple(
                            ci * basis[i][k] + cj * basis[j][k] for k in range(n)
                        )
                    )
    isotropic = []
    minus_two = []
    for v in cands:
        sq = _pair(l, v, v)
        if sq == 0 and any(v):
            isotropic.append(v)
        elif sq == -2:
            minus_two.append(v)
    return tuple(isotropic), tuple(minus_two)


def random_isometry(l: Lattice, seed: int, length: int) -> tuple[Isometry, GeneratorWord]:
    isotropic, minus_two = _generator_catalogue(l)
    if not isotropic or not minus_two:
        raise ValueError("catalogue lacks isotropic or (-2) classes")
    rng = random.Random(seed)
    n = l.rank
    p = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    factors = []
    made = 0
    while made < length:
        if rng.random() < 0.5:
            v = rng.choice(minus_two)
            s = _refl_vectors(l, v)
            _rank1_left(p, v, s)
            rows = [
                [int(i == j) + v[i] * s[j] for j in range(n)] for i in range(n)
            ]
            factors.append(("REFL", Isometry(l, IntMatrix.from_rows(rows), _trusted=True)))
        else:
            z = rng.choice(isotropic)
            # partner with smallest nonzero pairing against z, to keep entries small
            gz = _gram_apply(l, z)
            jbest = min(
                (j for j in range(n) if gz[j] != 0), key=lambda j: abs(gz[j])
            )
            g = gz[jbest]
            x = [0] * n
            for _ in range(3):
                x[rng.randrange(n)] = rng.choice((-2, -1, 1, 2))
            xz = _pair(l, x, z)
            a = [g * xi - xz * int(i == jbest) for i, xi in enumerate(x)]
            if not any(a) or _pair(l, a, z) != 0:
                continue
            u, w = _t_vectors(l, z, a)
            _rank2_left(p, z, u, a, w)
            rows = [
                [int(i == j) + z[i] * u[j] + a[i] * w[j] for j in range(n)]
                for i in range(n)
            ]
            factors.append(("TRANSV", Isometry(l, IntMatrix.from_rows(rows), _trusted=True)))
        made += 1
    iso = Isometry(l, IntMatrix.from_rows(p), _trusted=True)
    # catalogue generators all preserve orientation, so the product does too
    factors.reverse()  # product convention: factors[0] applied last
    word = GeneratorWord(l, tuple(factors), iso)
    return iso, word


# --- Eichler reduction engine ----------------------------------------------


def _has_engine_shape(l: Lattice) -> bool:
    """Two orthogonal hyperbolic blocks at indices (0,1) and (2,3), orthogonal
    to the rest of the basis."""
    n = l.rank
    if n < 4:
        return False
    g = l.gram
    for b in (0, 2):
        if g[b, b] != 0 or g[b + 1, b + 1] != 0 or g[b, b + 1] != 1:
            return False
    for i in range(4):
        for j in range(4, n):
            if g[i, j] != 0:
                return False
    return g[0, 2] == g[0, 3] == g[1, 2] == g[1, 3] == 0


class _Reducer:
    """Drives a vector to its canonical form by transvections based at the
    first hyperbolic block with arguments from the rest of the lattice.

    Canonical form: d*e1 + beta*f1 + w0 with d the divisibility, the second
    hyperbolic block cleared, w0 reduced componentwise mod d (beta is then
    forced by the square).
    """

    def __init__(self, l: Lattice):
        if not _has_engine_shape(l):
            raise ValueError("lattice lacks the required U + U presentation")
        self.l = l
        self.n = l.rank
        self.bound = 10 * l.rank

    def reduce(self, coords):
        self.u = list(coords)
        self.factors = []  # (z, a) in application order
        self.steps = 0
        l = self.l
        n = self.n
        d = 0
        for row in l.gram.entries:
            d = gcd(d, sum(a * c for a, c in zip(row, coords)))
        self.d = d
        e1 = [int(i == 0) for i in range(n)]
        f1 = [int(i == 1) for i in range(n)]
        e2 = [int(i == 2) for i in range(n)]
        f2 = [int(i == 3) for i in range(n)]
        self.e1, self.f1, self.e2, self.f2 = e1, f1, e2, f2

        if not any(self.u):
            raise ValueError("cannot reduce the zero vector")
        self._ensure_alpha()
        guard = 0
        while abs(self.u[0]) != d:
            guard += 1
            if guard > self.bound:
                raise RuntimeError("Eichler reduction exceeded its step bound")
            a, b = self.u[0], self.u[1]
            if self.u[2] != 0:
                self._euclid(2)
            elif self.u[3] != 0:
                self._euclid(3)
            elif b % a != 0:
                self._move(e1, e2, 1)  # gamma += beta (delta is 0, alpha safe)
                self._euclid(2)
            else:
                j = self._kappa_with_new_pairing(a)
                self._move(f1, e2, 1)  # back up alpha into gamma
                self._t(e1, j)
                self._euclid(2)
        self._clear(3)
        self._clear(2)
        if self.u[0] == -d:
            # flip the sign of alpha via the second block (slots are 0 here)
            self._move(f1, e2, 1)   # gamma = -d
            self._move(e1, f2, 2)   # alpha = d; side: delta += 2*beta
            self._clear(3)
            self._move(f1, e2, 1)   # gamma back to 0
        # reduce the tail componentwise mod d in one move
        if d > 0:
            a = [0] * n
            for i in range(4, n):
                a[i] = -(self.u[i] // d)
            if any(a):
                self._t(f1, a)
        assert self.u[0] == d and self.u[2] == 0 and self.u[3] == 0
        assert all(0 <= self.u[i] < d for i in range(4, n)) or d == 0
        return self.factors, tuple(self.u)

    # -- moves --

    def _t(self, z, a):
        if self.steps > self.bound:
            raise RuntimeError("Eichler reduction exceeded its step bound")
        self.steps += 1
        self.u = _apply_transvection(self.l, z, a, self.u)
        self.factors.append((tuple(z), tuple(a)))

    def _move(self, z, direction, nn):
        if nn != 0:
            self._t(z, [nn * x for x in direction])

    def _euclid(self, slot):
        """Euclid on (u[0], u[slot]), ending with u[slot] == 0 and
        u[0] = +-gcd of the pair.  Move A shifts u[0] by multiples of u[slot];
        move B shifts u[slot] by multiples of u[0]."""
        dir_a = self.f2 if slot == 2 else self.e2  # t(e1, n*dir_a): u[0] -= n*u[slot]
        dir_b = self.e2 if slot == 2 else self.f2  # t(f1, n*dir_b): u[slot] += n*u[0]
        while self.u[slot] != 0:
            a, x = self.u[0], self.u[slot]
            if a != 0 and x % a == 0:
                self._move(self.f1, dir_b, -(x // a))
                break
            if a == 0:
                self._move(self.e1, dir_a, -1)  # pull u[slot] into u[0]
                continue
            n = a // x
            if n != 0:
                self._move(self.e1, dir_a, n)  # u[0] <- u[0] mod u[slot]
            if self.u[0] != 0:
                self._move(self.f1, dir_b, -(self.u[slot] // self.u[0]))

    def _clear(self, slot):
        """Zero u[slot], which must be a multiple of u[0] (move B only; the
        only side effect is on the unconstrained u[1])."""
        x = self.u[slot]
        if x != 0:
            a = self.u[0]
            assert x % a == 0
            dir_b = self.e2 if slot == 2 else self.f2
            self._move(self.f1, dir_b, -(x // a))

    def _ensure_alpha(self):
        u = self.u
        if u[0] != 0:
            return
        if u[3] != 0:
            self._move(self.e1, self.e2, -1)
        elif u[2] != 0:
            self._move(self.e1, self.f2, -1)
        elif u[1] != 0:
            self._move(self.e1, self.e2, 1)
            self._move(self.e1, self.f2, -1)
        else:
            j = self._kappa_with_new_pairing(0)
            self._t(self.e1, j)

    def _kappa_with_new_pairing(self, mod):
        """A tail basis direction whose pairing with u is nonzero mod `mod`
        (nonzero if mod == 0), as an argument vector."""
        for i in range(4, self.n):
            bi = [int(k == i) for k in range(self.n)]
            p = _pair(self.l, bi, self.u)
            if (mod == 0 and p != 0) or (mod != 0 and p % mod != 0):
                return bi
        raise RuntimeError("no reducing direction found (bug)")


def _invert_atoms(atoms):
    return [(z, tuple(-x for x in a)) for z, a in reversed(atoms)]


def eichler_transport(l: Lattice, u: LatVector, v: LatVector) -> GeneratorWord:
    """A word of transvections based at the first hyperbolic block mapping u
    to v, for primitive vectors with equal square, divisibility, and
    discriminant coset."""
    if u.lattice != l or v.lattice != l:
        raise ValueError("vectors must live in the given lattice")
    if u.coords == v.coords:
        return GeneratorWord.empty(l)
    for x in (u, v):
        if content(x.coords) != 1:
            raise ValueError("vectors must be primitive")
    if square(u) != square(v):
        raise ValueError("squares differ")
    du, dv = divisibility(u), divisibility(v)
    if du != dv:
        raise ValueError("divisibilities differ")
    form = discriminant_group(l)
    if form.coset_coords(u.coords, du) != form.coset_coords(v.coords, dv):
        raise ValueError("discriminant cosets differ")
    red = _Reducer(l)
    fu, cu = red.reduce(u.coords)
    fv, cv = red.reduce(v.coords)
    if cu != cv:
        raise RuntimeError("canonical forms disagree despite equal invariants (bug)")
    atoms = fu + _invert_atoms(fv)  # application order: u -> canon -> v
    factors = tuple(
        ("TRANSV", transvection(l.vector(z), l.vector(a))) for z, a in reversed(atoms)
    )
    product = Isometry(l, atoms_to_matrix(l, atoms), _trusted=True)
    assert product.matrix.apply(u.coords) == v.coords
    return GeneratorWord(l, factors, product)


def factor_off_hyperbolic(l: Lattice, g: Isometry) -> tuple[GeneratorWord, Isometry]:
    """Write g = (word over transvections based at the first U block, with
    arguments orthogonal to it) composed with h fixing that block pointwise."""
    if g.lattice != l:
        raise ValueError("lattice mismatch")
    if not _has_engine_shape(l):
        raise ValueError("lattice lacks the required U + U presentation")
    pos, _ = l.signature()
    if pos == 3 and not is_orientation_preserving(g):
        raise ValueError("isometry is not orientation preserving")
    n = l.rank
    e1 = tuple(int(i == 0) for i in range(n))
    f1 = tuple(int(i == 1) for i in range(n))
    red = _Reducer(l)
    atoms, canon = red.reduce(g.matrix.col(0))
    assert canon == e1  # g(e1) is isotropic, divisibility 1, trivial coset
    # h0 = (word) o g fixes e1; then one move sends h0(f1) to f1
    p = [list(row) for row in g.matrix.entries]
    for z, a in atoms:
        uu, ww = _t_vectors(l, z, a)
        _rank2_left(p, z, uu, a, ww)
    y = [row[1] for row in p]
    a_last = [0] * n
    a_last[2:] = [-y[i] for i in range(2, n)]
    if any(a_last):
        atoms.append((e1, tuple(a_last)))
        uu, ww = _t_vectors(l, e1, a_last)
        _rank2_left(p, e1, uu, a_last, ww)
    h = Isometry(l, IntMatrix.from_rows(p), _trusted=True)
    assert h.matrix.col(0) == e1 and h.matrix.col(1) == f1
    inv_atoms = _invert_atoms(atoms)  # word with product W^{-1}, g = W^{-1} o h
    factors = tuple(
        ("TRANSV", transvection(l.vector(z), l.vector(a)))
        for z, a in reversed(inv_atoms)
    )
    word = GeneratorWord(
        l, factors, Isometry(l, atoms_to_matrix(l, inv_atoms), _trusted=True)
    )
    return word, h
