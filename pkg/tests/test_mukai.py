import random
from fractions import Fraction

import pytest

from og10lat.lattice import pair, square
from og10lat.mukai import (
    A_CLASS,
    B_CLASS,
    MukaiVector,
    V2,
    V_OG10,
    fm_pushforward,
    fujiki_theta_pairing,
    gamma_element,
    gamma_pair,
    gamma_to_h2,
    hbs_lattice,
    mukai_pair,
    p1,
    p2,
    parallel_transport_P,
    psi_pullback,
    solve_theta_class,
    spans_match,
    v_perp_basis,
)


def test_mukai_pair():
    assert mukai_pair(V_OG10, V_OG10) == 8
    assert mukai_pair(A_CLASS, B_CLASS) == 1
    assert mukai_pair(B_CLASS, B_CLASS) == 0
    assert mukai_pair(A_CLASS, A_CLASS) == 2


def test_v_perp_basis():
    assert spans_match(v_perp_basis(MukaiVector(0, 2, -4)), [MukaiVector(-1, 1, 0), B_CLASS])
    assert spans_match(v_perp_basis(V2), [MukaiVector(-2, 1, 0), B_CLASS])
    assert spans_match(v_perp_basis(V_OG10), [MukaiVector(1, 0, 1), MukaiVector(0, 1, 0)])


def test_gamma_parity_enforced():
    gamma_element(V_OG10, (1, 0, 1), 0)
    gamma_element(V_OG10, (Fraction(1, 2), 0, Fraction(1, 2)), 1)
    with pytest.raises(ValueError):
        gamma_element(V_OG10, (1, 0, 1), 1)  # integral w needs even k
    with pytest.raises(ValueError):
        gamma_element(V_OG10, (Fraction(1, 2), 0, Fraction(1, 2)), 0)
    with pytest.raises(ValueError):
        gamma_element(V_OG10, (1, 0, 0), 0)  # not orthogonal to v


def test_gamma_to_h2_examples():
    hbs = hbs_lattice()
    x = gamma_element(V_OG10, (1, 0, 1), 0)
    img = gamma_to_h2(x)
    assert img.coords == (0, 2, 1)  # 2*Btilde + Sigmatilde
    assert square(img) == -2 and gamma_pair(x, x) == -2
    h = gamma_element(V_OG10, (0, 1, 0), 0)
    assert gamma_to_h2(h).coords == (1, 0, 0)
    assert square(gamma_to_h2(h)) == 2
    s = gamma_element(V_OG10, (0, 0, 0), 2)
    assert gamma_to_h2(s).coords == (0, 0, 1)
    assert square(gamma_to_h2(s)) == -6
    del hbs


def _random_gamma(rng):
    n = rng.randrange(-6, 7)
    xi = rng.randrange(-6, 7)
    k = rng.randrange(-6, 7)
    # membership parity (k even iff w integral iff n even) == n + k even
    if (n + k) % 2 != 0:
        k += 1
    half = Fraction(n, 2)
    return gamma_element(V_OG10, (half, xi, half), k)


def test_gamma_pairing_preserved_random():
    rng = random.Random(77)
    for _ in range(200):
        x = _random_gamma(rng)
        y = _random_gamma(rng)
        assert gamma_pair(x, y) == pair(gamma_to_h2(x), gamma_to_h2(y))


def test_psi_table():
    a_img = psi_pullback((1, 0, 0))
    assert a_img.w == (Fraction(-1), Fraction(1, 2), Fraction(3, 2))
    assert a_img.k == -1
    assert gamma_pair(a_img, a_img) == 2
    b_img = psi_pullback((0, 1, 0))
    assert b_img.w == (Fraction(0), Fraction(0), Fraction(1)) and b_img.k == 0
    assert gamma_pair(b_img, b_img) == 0
    s_img = psi_pullback((0, 0, 1))
    assert s_img.w == (Fraction(0), Fraction(0), Fraction(3)) and s_img.k == -2
    assert gamma_pair(s_img, s_img) == -6


def test_psi_gram_preserved():
    src = [[2, 1, 0], [1, 0, 0], [0, 0, -6]]
    imgs = [psi_pullback(c) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    for i in range(3):
        for j in range(3):
            assert gamma_pair(imgs[i], imgs[j]) == src[i][j]


def test_fm_examples():
    s2 = gamma_element(V2, (0, 0, 0), 2)
    assert fm_pushforward(s2).coords == (0, 0, 1)
    x = gamma_element(V2, (Fraction(-1), Fraction(1, 2), Fraction(3, 2)), -1)
    img = fm_pushforward(x)
    assert img.coords == (2, -3, -2)
    assert square(img) == 2
    zero = gamma_element(V2, (0, 0, 0), 0)
    assert fm_pushforward(zero).coords == (0, 0, 0)


def test_fm_psi_composite_reproduces_p2():
    for coeffs in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -1, 1)):
        assert fm_pushforward(psi_pullback(coeffs)).coords == p2(*coeffs).coords


def test_p2_gram_preserved():
    src = [[2, 1, 0], [1, 0, 0], [0, 0, -6]]
    imgs = [p2(1, 0, 0), p2(0, 1, 0), p2(0, 0, 1)]
    for i in range(3):
        for j in range(3):
            assert pair(imgs[i], imgs[j]) == src[i][j]


def test_parallel_transport():
    assert p1(1, 0) == (1, -2)
    assert p1(0, 1) == (0, 1)
    assert parallel_transport_P(1, 0).coords == (0, 1, 0)  # Btilde
    assert parallel_transport_P(0, 1).coords == (1, -2, -1)  # f
    e_img = parallel_transport_P(1, 1)
    assert e_img.coords == (1, -1, -1)  # e
    assert square(e_img) == 0
    # pairing (Theta, b) = 1 is preserved
    assert pair(parallel_transport_P(1, 0), parallel_transport_P(0, 1)) == 1


def test_fujiki():
    assert fujiki_theta_pairing(945, 120).theta_b_pairing == 1
    assert fujiki_theta_pairing(945, 0).theta_b_pairing == 0
    assert fujiki_theta_pairing(945, 3840).theta_b_pairing == 2
    for n in range(6):
        res = fujiki_theta_pairing(945, 120 * n**5)
        assert res.theta_b_pairing == n and res.b_square == 0
    bad = fujiki_theta_pairing(945, 121)
    assert bad.theta_b_pairing is None and bad.obstruction is not None


def test_theta_solver():
    table = {"a_l1": 5, "a_l2": -1, "b_l1": 0, "b_l2": 1, "T_l1": 5, "T_sq": -2}
    assert solve_theta_class(table) == (1, -2)
    # check against the mukai pairing: (a - 2b)^2 = -2
    t = A_CLASS - 2 * B_CLASS
    assert mukai_pair(t, t) == -2
    zero = dict(table, T_l1=0, T_sq=0)
    assert solve_theta_class(zero) == (0, 0)
    odd = dict(table, T_sq=-3)
    assert solve_theta_class(odd) is None
