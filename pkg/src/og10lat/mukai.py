"""Rank-3 algebraic Mukai-lattice calculus for a genus-2 K3 surface: v-perp,
the half-integral extension mixing the exceptional half class, the explicit
pullback/pushforward isometries, parallel transports into the OG10 block
spanned by H, Btilde, Sigmatilde, and the Fujiki/Poincare bookkeeping.

Pairing convention: ((r,m,s),(r',m',s')) = 2mm' - rs' - r's (H^2 = 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactlin import IntMatrix, kernel_basis, solve_integral
from .lattice import Lattice, LatVector


@dataclass(frozen=True)
class MukaiVector:
    r: int
    m: int
    s: int

    def __add__(self, o):
        return MukaiVector(self.r + o.r, self.m + o.m, self.s + o.s)

    def __sub__(self, o):
        return MukaiVector(self.r - o.r, self.m - o.m, self.s - o.s)

    def __rmul__(self, c: int):
        return MukaiVector(c * self.r, c * self.m, c * self.s)

    def triple(self):
        return (self.r, self.m, self.s)


def mukai_pair(x: MukaiVector, y: MukaiVector) -> int:
    return 2 * x.m * y.m - x.r * y.s - x.s * y.r


def v_perp_basis(v: MukaiVector) -> list[MukaiVector]:
    if v.triple() == (0, 0, 0):
        raise ValueError("v must be nonzero")
    # (x, v) as a linear form in x = (r, m, s)
    form = IntMatrix.from_rows([[-v.s, 2 * v.m, -v.r]])
    return [MukaiVector(*k) for k in kernel_basis(form)]


def spans_match(xs: list[MukaiVector], ys: list[MukaiVector]) -> bool:
    """Whether two sets generate the same saturated rank-2 sublattice."""
    bx = IntMatrix.from_rows([[x.r for x in xs], [x.m for x in xs], [x.s for x in xs]])
    by = IntMatrix.from_rows([[y.r for y in ys], [y.m for y in ys], [y.s for y in ys]])
    return all(
        solve_integral(bx, y.triple()) is not None for y in ys
    ) and all(solve_integral(by, x.triple()) is not None for x in xs)


# --- the half-integral extension -------------------------------------------


@dataclass(frozen=True)
class GammaElement:
    """w + k*sigma/2 with w in v-perp (x) Q; k even iff w is integral in
    v-perp.  sigma has square -6 and is orthogonal to the w part."""

    v: MukaiVector
    w: tuple[Fraction, Fraction, Fraction]
    k: int

    def __post_init__(self):
        basis = _perp_matrix(self.v)
        two_w = []
        for x in self.w:
            y = 2 * x
            if y.denominator != 1:
                raise ValueError("w must be half-integral")
            two_w.append(int(y))
        if solve_integral(basis, two_w) is None:
            raise ValueError("2w must lie in the orthogonal complement of v")
        integral = all(x.denominator == 1 for x in self.w) and solve_integral(
            basis, [int(x) for x in self.w]
        ) is not None
        if (self.k % 2 == 0) != integral:
            raise ValueError("parity violated: k even iff w is integral")


@lru_cache(maxsize=None)
def _perp_matrix(v: MukaiVector) -> IntMatrix:
    basis = v_perp_basis(v)
    return IntMatrix.from_rows(
        [[b.r for b in basis], [b.m for b in basis], [b.s for b in basis]]
    )


def gamma_element(v: MukaiVector, w, k: int) -> GammaElement:
    return GammaElement(v, tuple(Fraction(x) for x in w), int(k))


def gamma_pair(x: GammaElement, y: GammaElement) -> Fraction:
    if x.v != y.v:
        raise ValueError("elements belong to different extensions")
    w1, w2 = x.w, y.w
    mukai = 2 * w1[1] * w2[1] - w1[0] * w2[2] - w1[2] * w2[0]
    return mukai - 6 * Fraction(x.k, 2) * Fraction(y.k, 2)


# --- target block ----------------------------------------------------------


@lru_cache(maxsize=None)
def hbs_lattice() -> Lattice:
    """The span of H, Btilde, Sigmatilde inside OG10."""
    return Lattice(
        IntMatrix.from_rows([[2, 0, 0], [0, -2, 3], [0, 3, -6]]),
        ("H", "Btilde", "Sigmatilde"),
    )


V_OG10 = MukaiVector(2, 0, -2)
V2 = MukaiVector(0, 2, -2)


def gamma_to_h2(x: GammaElement) -> LatVector:
    """((n/2, xi, n/2), k*sigma/2) |-> xi*H + n*Btilde + (n+k)/2 * Sigmatilde."""
    if x.v != V_OG10:
        raise ValueError("this isometry is defined for v = (2, 0, -2)")
    if x.w[0] != x.w[2]:
        raise ValueError("first component must have the symmetric shape (n/2, xi, n/2)")
    n2 = 2 * x.w[0]
    if n2.denominator != 1:
        raise ValueError("n must be an integer")
    n = int(n2)
    if x.w[1].denominator != 1:
        raise ValueError("the K3 component must be integral")
    xi = int(x.w[1])
    if (n + x.k) % 2 != 0:
        raise ValueError("n + k must be even")
    return hbs_lattice().vector((xi, n, (n + x.k) // 2))


_A2 = MukaiVector(-2, 1, 0)
_B2 = MukaiVector(0, 0, 1)


def psi_pullback(coeffs) -> GammaElement:
    """Linear extension of a |-> a2/2 + 3/2 b2 - sigma2/2, b |-> b2,
    sigma0 |-> 3 b2 - sigma2, landing in the extension for v2 = (0, 2, -2)."""
    ca, cb, cs = (int(c) for c in coeffs)
    half = Fraction(1, 2)
    wa = tuple(half * t for t in _A2.triple())
    wa = tuple(x + y for x, y in zip(wa, (0, 0, Fraction(3, 2))))
    ka = -1
    w = tuple(
        ca * x + cb * Fraction(y) + cs * Fraction(z)
        for x, y, z in zip(wa, _B2.triple(), (3 * t for t in _B2.triple()))
    )
    k = ca * ka + cb * 0 + cs * (-2)
    return GammaElement(V2, w, k)


def fm_pushforward(x: GammaElement) -> LatVector:
    """((-m, m/2, n/2), k*sigma2/2) |-> (m+n)/2 H - n Btilde + (k-n)/2 Sigmatilde."""
    if x.v != V2:
        raise ValueError("this map is defined for v2 = (0, 2, -2)")
    if x.w[0].denominator != 1:
        raise ValueError("first coordinate must be an integer")
    m = -int(x.w[0])
    if x.w[1] != Fraction(m, 2):
        raise ValueError("middle coordinate must equal m/2")
    n2 = 2 * x.w[2]
    if n2.denominator != 1:
        raise ValueError("n must be an integer")
    n = int(n2)
    if (m + n) % 2 != 0:
        raise ValueError("m + n must be even")
    if (x.k - n) % 2 != 0:
        raise ValueError("k - n must be even")
    return hbs_lattice().vector(((m + n) // 2, -n, (x.k - n) // 2))


# --- parallel transports ---------------------------------------------------

# images of a, b, sigma in (H, Btilde, Sigmatilde) coordinates
_P2_A = (2, -3, -2)
_P2_B = (1, -2, -1)
_P2_SIGMA = (3, -6, -4)


def p1(c_theta: int, c_b: int) -> tuple[int, int]:
    """Theta_V |-> a - 2b, b_V |-> b, as coefficients in (a, b)."""
    return (c_theta, c_b - 2 * c_theta)


def p2(ca: int, cb: int, cs: int = 0) -> LatVector:
    coords = tuple(
        ca * x + cb * y + cs * z for x, y, z in zip(_P2_A, _P2_B, _P2_SIGMA)
    )
    return hbs_lattice().vector(coords)


def parallel_transport_P(c_theta: int, c_b: int) -> LatVector:
    ca, cb = p1(c_theta, c_b)
    return p2(ca, cb)


# --- Fujiki / Poincare -----------------------------------------------------


@dataclass(frozen=True)
class FujikiTheta:
    theta_b_pairing: int | None
    b_square: int
    obstruction: Fraction | None = None


def _iroot5(n: int) -> int | None:
    if n < 0:
        r = _iroot5(-n)
        return None if r is None else -r
    if n == 0:
        return 0
    x = int(round(n ** (1 / 5))) + 2
    while x**5 > n:
        x -= 1
    return x if x**5 == n else None


def fujiki_theta_pairing(fujiki_constant: int, theta5_b5: int) -> FujikiTheta:
    """Solve C(10,5) * (Theta^5.b^5) = c * 2^5 * q(Theta, b)^5 for the
    pairing, exactly; q(b) = 0 is forced by dimension and returned as data."""
    if fujiki_constant <= 0:
        raise ValueError("Fujiki constant must be positive")
    fifth = Fraction(252 * theta5_b5, fujiki_constant * 32)
    rn = _iroot5(fifth.numerator)
    rd = _iroot5(fifth.denominator)
    if rn is None or rd is None or rd == 0:
        return FujikiTheta(None, 0, obstruction=fifth)
    val = Fraction(rn, rd)
    if val.denominator != 1:
        return FujikiTheta(None, 0, obstruction=fifth)
    return FujikiTheta(int(val), 0)


# --- theta-class solver ----------------------------------------------------

A_CLASS = MukaiVector(-1, 1, 0)
B_CLASS = MukaiVector(0, 0, 1)


def solve_theta_class(data: dict) -> tuple[int, int] | None:
    """Coefficients (alpha, beta) with T = alpha*a + beta*b matching the
    intersection table, or None when no integral solution exists."""
    a_l1, b_l1 = int(data["a_l1"]), int(data["b_l1"])
    t_l1, t_sq = int(data["T_l1"]), int(data["T_sq"])
    if b_l1 != 0:
        raise ValueError("solver assumes b pairs trivially with l1")
    if a_l1 == 0 or t_l1 % a_l1 != 0:
        return None if a_l1 != 0 else (None if t_l1 != 0 else _alpha_zero(t_sq))
    alpha = t_l1 // a_l1
    if alpha == 0:
        return _alpha_zero(t_sq)
    asq = mukai_pair(A_CLASS, A_CLASS)
    ab = mukai_pair(A_CLASS, B_CLASS)
    # T^2 = alpha^2 a^2 + 2 alpha beta (a,b)
    num = t_sq - alpha * alpha * asq
    den = 2 * alpha * ab
    if den == 0 or num % den != 0:
        return None
    return (alpha, num // den)


def _alpha_zero(t_sq: int):
    return (0, 0) if t_sq == 0 else None
