"""Discriminant groups L*/L, their Q/2Z-valued quadratic forms, induced
actions of isometries, and the gluing/extension test for block isometries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .exactlin import IntMatrix, adjugate, smith_normal_form
from .lattice import Lattice, LatVector, Sublattice, pair


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """L*/L as a product of cyclic groups with generators lifted to L (x) Q.

    q_values are mod 2, b_values mod 1, both exact rationals.
    """

    lattice: Lattice
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...]
    b_values: tuple[tuple[Fraction, ...], ...]
    # rows of V^-1 needed to read off coset coordinates; internal
    _vinv_rows: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def coset_coords(self, coords, denom: int = 1) -> tuple[int, ...]:
        """Coset of the rational vector coords/denom (must lie in L*)."""
        gram = self.lattice.gram
        for row in gram.entries:
            s = sum(a * c for a, c in zip(row, coords))
            if s % denom != 0:
                raise ValueError("vector is not in the dual lattice")
        out = []
        for d, vrow in zip(self.invariant_factors, self._vinv_rows):
            y = sum(a * c for a, c in zip(vrow, coords))  # times denom
            num = y * d
            if num % denom != 0:
                raise ValueError("vector is not in the dual lattice")
            out.append((num // denom) % d)
        return tuple(out)

    def element_q(self, c) -> Fraction:
        """q of the element sum c_i * gen_i, reduced mod 2."""
        total = Fraction(0)
        k = len(c)
        for i in range(k):
            total += c[i] * c[i] * self.q_values[i]
            for j in range(i + 1, k):
                total += 2 * c[i] * c[j] * self.b_values[i][j]
        return total % 2

    def element_b(self, c1, c2) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(c1):
            for j, b in enumerate(c2):
                total += a * b * self.b_values[i][j]
        return total % 1


@lru_cache(maxsize=None)
def discriminant_group(l: Lattice) -> FiniteQuadraticForm:
    snf = smith_normal_form(l.gram)
    diag = snf.diagonal()
    vinv, dv = adjugate(snf.v)
    if dv == -1:
        vinv = -vinv
    gens = []
    orders = []
    vinv_rows = []
    for i, d in enumerate(diag):
        if d > 1:
            orders.append(d)
            col = snf.v.col(i)
            gens.append(tuple(Fraction(x, d) for x in col))
            vinv_rows.append(vinv.row(i))
    q_vals = []
    b_vals = []
    for g in gens:
        q_vals.append(_rat_pair(l.gram, g, g) % 2)
        b_vals.append(tuple(_rat_pair(l.gram, g, h) % 1 for h in gens))
    return FiniteQuadraticForm(
        l, tuple(orders), tuple(gens), tuple(q_vals), tuple(b_vals), tuple(vinv_rows)
    )


def _rat_pair(gram: IntMatrix, x, y) -> Fraction:
    return sum(
        xi * sum(g * yj for g, yj in zip(row, y)) for xi, row in zip(x, gram.entries)
    )


def induced_action(g) -> tuple[tuple[int, ...], ...]:
    """Image of each discriminant generator under g, in generator coordinates."""
    form = discriminant_group(g.lattice)
    out = []
    for gen in form.generators:
        d = gen[0].denominator
        for x in gen:
            d = d * x.denominator // _gcd(d, x.denominator)
        num = [int(x * d) for x in gen]
        img = g.matrix.apply(num)
        out.append(form.coset_coords(img, d))
    return tuple(out)


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def is_stable(g) -> bool:
    """True iff g acts as the identity on the discriminant group."""
    form = discriminant_group(g.lattice)
    action = induced_action(g)
    for i, img in enumerate(action):
        expected = tuple(
            1 % form.invariant_factors[j] if j == i else 0
            for j in range(len(form.invariant_factors))
        )
        if img != expected:
            return False
    return True


@lru_cache(maxsize=None)
def _glue_base_change(amb: Lattice, m_cols: tuple, n_cols: tuple):
    n = amb.rank
    cols = list(m_cols) + list(n_cols)
    if len(cols) != n:
        raise ValueError("sublattices do not span the ambient lattice")
    b = IntMatrix.from_rows([[c[i] for c in cols] for i in range(n)])
    adj, d = adjugate(b)
    return b, adj, d


def extends_across_gluing(
    l: Lattice,
    m_gens: list[LatVector],
    n_gens: list[LatVector],
    g_m,
    g_n,
) -> bool:
    """Whether g_m (+) g_n on the orthogonal pair M, N extends integrally to l."""
    for x in m_gens:
        for y in n_gens:
            if pair(x, y) != 0:
                raise ValueError("sublattices are not orthogonal")
    for gens in (m_gens, n_gens):
        stack = IntMatrix.from_rows([g.coords for g in gens])
        if any(d not in (0, 1) for d in smith_normal_form(stack).diagonal()):
            raise ValueError("sublattice generators are not primitive")
    b, adj, d = _glue_base_change(
        l, tuple(g.coords for g in m_gens), tuple(g.coords for g in n_gens)
    )
    rm, rn = len(m_gens), len(n_gens)
    blk = [[0] * (rm + rn) for _ in range(rm + rn)]
    for i in range(rm):
        for j in range(rm):
            blk[i][j] = g_m.matrix[i, j]
    for i in range(rn):
        for j in range(rn):
            blk[rm + i][rm + j] = g_n.matrix[i, j]
    num = b @ IntMatrix.from_rows(blk) @ adj
    return all(x % d == 0 for row in num.entries for x in row)


def forms_isomorphic(
    a: FiniteQuadraticForm, b: FiniteQuadraticForm, search_bound: int = 10**4
) -> bool:
    if a.invariant_factors != b.invariant_factors:
        return False
    if a.is_trivial():
        return True
    if a.order > search_bound:
        raise ValueError("group order exceeds exhaustive-search bound")
    orders = a.invariant_factors
    elements = list(product(*(range(d) for d in orders)))
    k = len(orders)
    # try every assignment of generator images; keep the ones giving a
    # well-defined bijective hom preserving q mod 2 and b mod 1
    for images in product(elements, repeat=k):
        ok = True
        for i in range(k):
            scaled = tuple(orders[i] * c % orders[j] for j, c in enumerate(images[i]))
            if any(scaled):  # image order must divide generator order
                ok = False
                break
            if b.element_q(images[i]) != a.q_values[i] % 2:
                ok = False
                break
        if not ok:
            continue
        for i in range(k):
            for j in range(i + 1, k):
                if b.element_b(images[i], images[j]) != a.b_values[i][j] % 1:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        # bijectivity: the images must generate everything
        seen = set()
        for coeffs in product(*(range(d) for d in orders)):
            pt = tuple(
                sum(c * img[j] for c, img in zip(coeffs, images)) % orders[j]
                for j in range(k)
            )
            seen.add(pt)
        if len(seen) == a.order:
            return True
    return False


def sublattice_disc(sub: Sublattice) -> FiniteQuadraticForm:
    return discriminant_group(sub.lattice)
