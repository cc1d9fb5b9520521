import random
from fractions import Fraction

import pytest

from og10lat.discriminant import (
    discriminant_group,
    extends_across_gluing,
    forms_isomorphic,
    induced_action,
    is_stable,
)
from og10lat.exactlin import IntMatrix
from og10lat.isometry import identity_isometry, make_isometry, random_isometry, reflection, transvection
from og10lat.lattice import Lattice, orthogonal_complement, standard_lattice
from og10lat.og10 import named_classes, og10_lattice


def test_trivial_group():
    assert discriminant_group(standard_lattice("U")).is_trivial()


def test_g2_group():
    form = discriminant_group(standard_lattice("G2neg"))
    assert form.invariant_factors == (3,)
    assert form.q_values[0] % 2 == Fraction(-2, 3) % 2


def test_og10_group():
    form = discriminant_group(og10_lattice())
    assert form.invariant_factors == (3,)
    assert form.q_values[0] % 2 == Fraction(-2, 3) % 2
    assert form.order == 3


def test_group_order_matches_det():
    for name in ("U", "E8neg", "A2neg", "G2neg", "OG10"):
        lat = standard_lattice(name)
        from og10lat.lattice import lattice_det

        assert discriminant_group(lat).order == abs(lattice_det(lat))


def test_induced_action_identity():
    g = identity_isometry(og10_lattice())
    assert induced_action(g) == ((1,),)
    assert is_stable(g)


def test_ra_acts_as_minus_id():
    nc = named_classes()
    ra = reflection(nc.A)
    assert induced_action(ra) == ((2,),)  # -1 mod 3
    assert not is_stable(ra)


def test_rb_stable():
    nc = named_classes()
    assert is_stable(reflection(nc.Btilde))


def test_transvections_and_divisibility1_reflections_stable():
    lat = og10_lattice()
    rng = random.Random(41)
    nc = named_classes()
    zs = [lat.basis_vector(i) for i in (0, 1, 2, 3, 4, 5)]
    for _ in range(200):
        z = rng.choice(zs)
        a = rng.randrange(-2, 3) * z
        for _ in range(2):
            a = a + rng.randrange(-2, 3) * lat.basis_vector(rng.randrange(6, 22))
        t = transvection(z, a)
        assert is_stable(t)
    # reflections in square -2, divisibility 1 vectors
    for i in range(6, 22):
        assert is_stable(reflection(lat.basis_vector(i)))
    assert is_stable(reflection(nc.k))


def test_induced_action_homomorphism():
    lat = og10_lattice()
    for seed in range(100):
        g, _ = random_isometry(lat, 900 + seed, 3)
        h, _ = random_isometry(lat, 1900 + seed, 3)
        form = discriminant_group(lat)
        a_gh = induced_action(g @ h)
        a_h = induced_action(h)
        # compose: image of gen under h, then under g
        a_g = induced_action(g)
        d = form.invariant_factors[0]
        composed = tuple(
            (sum(c * a_g[j][0] for j, c in enumerate(img)) % d,) for img in a_h
        )
        assert a_gh == composed


def test_gluing_examples():
    u = standard_lattice("U")
    m = u.vector((1, 3))
    n = u.vector((1, -3))
    lat1 = Lattice(IntMatrix.from_rows([[6]]))
    lat2 = Lattice(IntMatrix.from_rows([[-6]]))
    gid = identity_isometry(lat1)
    gneg = make_isometry(lat2, IntMatrix.from_rows([[-1]]))
    assert extends_across_gluing(u, [m], [n], gid, identity_isometry(lat2))
    assert not extends_across_gluing(u, [m], [n], gid, gneg)


def test_gluing_sigma_perp_minus_id():
    # -id on the Sigmatilde complement glued with id on <Sigmatilde> IS
    # integral: the glue group is Z/2, where -1 = +1
    og = og10_lattice()
    nc = named_classes()
    sub = orthogonal_complement(og, [nc.Sigmatilde])
    amb_basis = [sub.to_ambient(sub.lattice.basis_vector(j)) for j in range(23)]
    minus = make_isometry(
        sub.lattice,
        IntMatrix.from_rows([[-1 if i == j else 0 for j in range(23)] for i in range(23)]),
    )
    sig_lat = Lattice(IntMatrix.from_rows([[-6]]))
    assert extends_across_gluing(
        og, amb_basis, [nc.Sigmatilde], minus, identity_isometry(sig_lat)
    )


def test_forms_isomorphic():
    ubar = orthogonal_complement(og10_lattice(), [named_classes().e, named_classes().f])
    d1 = discriminant_group(ubar.lattice)
    a2 = discriminant_group(standard_lattice("A2neg"))
    g2 = discriminant_group(standard_lattice("G2neg"))
    assert forms_isomorphic(d1, a2)
    assert forms_isomorphic(g2, a2)
    assert not forms_isomorphic(discriminant_group(standard_lattice("U")), g2)


def test_gluing_rejects_bad_inputs():
    u = standard_lattice("U")
    lat1 = Lattice(IntMatrix.from_rows([[2]]))
    with pytest.raises(ValueError):
        extends_across_gluing(
            u,
            [u.vector((1, 1))],
            [u.vector((1, 0))],  # not orthogonal to (1,1)
            identity_isometry(lat1),
            identity_isometry(lat1),
        )
