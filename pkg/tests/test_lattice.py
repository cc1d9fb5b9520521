import random

import pytest

from og10lat.discriminant import discriminant_group
from og10lat.exactlin import smith_normal_form
from og10lat.lattice import (
    direct_sum,
    divisibility,
    glue_index,
    lattice_det,
    orthogonal_complement,
    pair,
    square,
    standard_lattice,
)
from og10lat.og10 import named_classes, og10_lattice


def test_standard_lattices():
    g2 = standard_lattice("G2neg")
    assert g2.gram.entries == ((-2, 3), (3, -6))
    u = standard_lattice("U")
    assert u.gram.entries == ((0, 1), (1, 0))
    og = standard_lattice("OG10")
    assert og.rank == 24
    assert lattice_det(og) in (3, -3)
    assert og.signature() == (3, 21)
    with pytest.raises(ValueError):
        standard_lattice("NOPE")


def test_direct_sum_reconstructs_og10():
    u = standard_lattice("U")
    e8 = standard_lattice("E8neg")
    g2 = standard_lattice("G2neg")
    total = direct_sum(direct_sum(direct_sum(direct_sum(direct_sum(u, u), u), e8), e8), g2)
    assert total.gram == og10_lattice().gram


def test_named_class_pairings():
    nc = named_classes()
    assert square(nc.e) == 0 and square(nc.f) == 0
    assert pair(nc.e, nc.f) == 1
    assert pair(nc.Btilde, nc.Sigmatilde) == 3
    assert square(nc.A) == -6
    assert square(nc.l) == -2 and square(nc.k) == -2
    assert pair(nc.k, nc.H) == 0
    # coordinate identities
    assert (nc.H - nc.Btilde - nc.Sigmatilde).coords == nc.e.coords
    assert (nc.H - 2 * nc.Btilde - nc.Sigmatilde).coords == nc.f.coords
    assert (3 * nc.f - nc.A).coords == nc.Sigmatilde.coords
    assert (nc.k + nc.f).coords == nc.l.coords


def test_divisibility():
    nc = named_classes()
    assert divisibility(nc.e) == 1
    assert divisibility(nc.Sigmatilde) == 3
    assert divisibility(2 * nc.e) == 2
    with pytest.raises(ValueError):
        divisibility(0 * nc.e)


def test_bilinearity_random():
    lat = og10_lattice()
    rng = random.Random(5)
    for _ in range(500):
        x = lat.vector([rng.randrange(-4, 5) for _ in range(24)])
        y = lat.vector([rng.randrange(-4, 5) for _ in range(24)])
        z = lat.vector([rng.randrange(-4, 5) for _ in range(24)])
        assert pair(x, y) == pair(y, x)
        assert pair(x + z, y) == pair(x, y) + pair(z, y)


def test_orthogonal_complement_ubar():
    nc = named_classes()
    sub = orthogonal_complement(og10_lattice(), [nc.e, nc.f])
    assert sub.lattice.rank == 22
    assert sub.lattice.signature() == (2, 20)
    assert discriminant_group(sub.lattice).invariant_factors == (3,)
    # saturation
    assert all(d == 1 for d in smith_normal_form(sub.embedding).diagonal())


def test_orthogonal_complement_in_u_plus_u():
    uu = direct_sum(standard_lattice("U"), standard_lattice("U"))
    sub = orthogonal_complement(uu, [uu.basis_vector(0), uu.basis_vector(1)])
    assert sub.lattice.gram.entries == ((0, 1), (1, 0))


def test_sigma_perp_invariants():
    nc = named_classes()
    sub = orthogonal_complement(og10_lattice(), [nc.Sigmatilde])
    assert sub.lattice.rank == 23
    assert abs(lattice_det(sub.lattice)) == 2
    # contains 2*Btilde + Sigmatilde, of square -2
    v = 2 * nc.Btilde + nc.Sigmatilde
    assert pair(v, nc.Sigmatilde) == 0 and square(v) == -2
    w = sub.from_ambient(v)
    assert sub.to_ambient(w).coords == v.coords
    from og10lat.exactlin import IntMatrix
    from og10lat.lattice import Lattice, Sublattice

    sig_sub = Sublattice(
        og10_lattice(),
        IntMatrix.from_rows([[c] for c in nc.Sigmatilde.coords]),
        Lattice(IntMatrix.from_rows([[-6]])),
    )
    assert glue_index(og10_lattice(), sub, sig_sub) == 2
