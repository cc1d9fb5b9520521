"""Named divisor classes in the OG10 lattice, the generator subgroups G1, G2,
G3, the constructive decomposition of orientation-preserving isometries into
{R_k, R_Btilde, R_l, R_A, G3} factors, and the locally trivial monodromy test.

Decomposition strategy: conjugate into a basis whose first block is the
hyperbolic plane spanned by e and f, peel off a transvection word based there,
then rewrite each transvection through conjugation transport onto the single
model transvection t(f,k) = R_l o R_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .discriminant import discriminant_group, extends_across_gluing, is_stable
from .exactlin import IntMatrix, adjugate, content
from .isometry import (
    GeneratorWord,
    Isometry,
    _invert_atoms,
    _pair,
    _rank1_left,
    _rank2_left,
    _Reducer,
    _refl_vectors,
    _t_vectors,
    identity_isometry,
    is_orientation_preserving,
    reflection,
    transvection,
)
from .lattice import (
    Lattice,
    LatVector,
    Sublattice,
    orthogonal_complement,
    pair,
    square,
    standard_lattice,
)


@dataclass(frozen=True)
class NamedClasses:
    H: LatVector
    Btilde: LatVector
    Sigmatilde: LatVector
    e: LatVector
    f: LatVector
    k: LatVector
    l: LatVector
    A: LatVector
    Ubar_basis: tuple[LatVector, LatVector]


def og10_lattice() -> Lattice:
    return standard_lattice("OG10")


@lru_cache(maxsize=None)
def named_classes() -> NamedClasses:
    lat = og10_lattice()
    n = lat.rank

    def vec(**nz):
        c = [0] * n
        for i, x in nz.items():
            c[int(i[1:])] = x
        return lat.vector(c)

    H = vec(i0=1, i1=1)
    B = vec(i22=1)
    S = vec(i23=1)
    e = H - B - S
    f = H - 2 * B - S
    k = vec(i2=1) - vec(i3=1)  # square -2, orthogonal to H; fixed representative
    l = k + f
    A = 3 * f - S
    assert square(e) == 0 and square(f) == 0 and pair(e, f) == 1
    assert square(A) == -6 and pair(A, e) == 0 and pair(A, f) == 0
    return NamedClasses(H, B, S, e, f, k, l, A, (e, f))


# --- rebased coordinates ---------------------------------------------------


@dataclass(frozen=True)
class _Rebase:
    """OG10 in the basis (e, f, e2, f2, e3, f3, E8 x 16, x1, x2), so that the
    distinguished hyperbolic plane sits at indices (0, 1)."""

    lat: Lattice
    t: IntMatrix
    tinv: IntMatrix
    lprime: Lattice
    l1: Lattice  # rank 22, complement of the (e, f) plane, engine-shaped
    emb_cols: tuple[tuple[int, ...], ...]  # t columns 2..23 (L1 -> OG10)
    refls: dict  # tag -> (Isometry, v_coords, s_row) in OG10 coordinates
    a_lprime: tuple[int, ...]
    wr_atoms: tuple  # L1 word moving the first E8 root to e2 - f2


@lru_cache(maxsize=None)
def _rebase() -> _Rebase:
    lat = og10_lattice()
    nc = named_classes()
    n = lat.rank
    cols = [list(nc.e.coords), list(nc.f.coords)]
    for i in range(2, 22):
        cols.append([int(j == i) for j in range(n)])
    x1 = [0] * n
    x1[0], x1[1] = 1, -1
    x2 = [0] * n
    x2[0], x2[22], x2[23] = 3, -3, -2
    cols += [x1, x2]
    t = IntMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])
    tadj, tdet = adjugate(t)
    assert tdet in (1, -1)
    tinv = tadj if tdet == 1 else -tadj
    gram_p = t.transpose() @ lat.gram @ t
    lprime = Lattice(gram_p)
    l1 = Lattice(IntMatrix.from_rows([row[2:] for row in gram_p.entries[2:]]))

    refls = {}
    for tag, v in (
        ("RK", nc.k),
        ("RL", nc.l),
        ("RB", nc.Btilde),
        ("RA", nc.A),
    ):
        iso = reflection(v)
        refls[tag] = (iso, v.coords, tuple(_refl_vectors(lat, v.coords)))

    # model identity: t(f, k) equals R_l o R_k (checked, not assumed)
    tfk = transvection(nc.f, nc.k)
    assert tfk.matrix == (refls["RL"][0] @ refls["RK"][0]).matrix

    a_lp = tinv.apply(nc.A.coords)

    rho = tuple(int(i == 4) for i in range(22))  # first E8 root in L1
    red = _Reducer(l1)
    wr_atoms, canon = red.reduce(rho)
    assert canon == tuple(1 if i == 0 else (-1 if i == 1 else 0) for i in range(22))

    return _Rebase(
        lat,
        t,
        tinv,
        lprime,
        l1,
        tuple(tuple(c) for c in cols[2:]),
        refls,
        tuple(a_lp),
        tuple(wr_atoms),
    )


# --- membership predicates -------------------------------------------------


def in_G1(g: Isometry) -> bool:
    nc = named_classes()
    if g.lattice != og10_lattice():
        return False
    return (
        is_orientation_preserving(g)
        and g.apply(nc.H) == nc.H
        and g.apply(nc.Btilde) == nc.Btilde
        and g.apply(nc.Sigmatilde) == nc.Sigmatilde
    )


@lru_cache(maxsize=None)
def _g2_elements() -> frozenset:
    nc = named_classes()
    rb = reflection(nc.Btilde)
    rs = reflection(nc.Sigmatilde)
    gens = [rb.matrix, rs.matrix]
    seen = {identity_isometry(og10_lattice()).matrix}
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for gmat in gens:
                prod = m @ gmat
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return frozenset(seen)


def g2_order() -> int:
    return len(_g2_elements())


def in_G2(g: Isometry) -> bool:
    return g.lattice == og10_lattice() and g.matrix in _g2_elements()


def in_G3(g: Isometry) -> bool:
    nc = named_classes()
    if g.lattice != og10_lattice():
        return False
    return (
        g.apply(nc.e) == nc.e
        and g.apply(nc.f) == nc.f
        and is_stable(g)
        and is_orientation_preserving(g)
    )


# --- decomposition ---------------------------------------------------------


class _Emitter:
    """Collects tagged factors in product order; consecutive G3 entries are
    fused into a single factor at materialization time."""

    def __init__(self, rb: _Rebase):
        self.rb = rb
        self.items = []  # ("R", tag) | ("G3A", atoms_app) | ("G3M", IntMatrix)

    def refl(self, tag: str):
        self.items.append(("R", tag))

    def g3_atoms(self, atoms_app):
        if atoms_app:
            self.items.append(("G3A", atoms_app))

    def g3_matrix(self, m: IntMatrix):
        if not m.is_identity():
            self.items.append(("G3M", m))

    def materialize(self):
        rb = self.rb
        lat = rb.lat
        n = lat.rank
        factors = []
        i = 0
        items = self.items
        while i < len(items):
            kind = items[i][0]
            if kind == "R":
                iso = rb.refls[items[i][1]][0]
                factors.append((items[i][1], iso))
                i += 1
                continue
            j = i
            group = []
            while j < len(items) and items[j][0] in ("G3A", "G3M"):
                group.append(items[j])
                j += 1
            p = [[int(a == b) for b in range(n)] for a in range(n)]
            for kind2, payload in reversed(group):
                if kind2 == "G3A":
                    for z, a in payload:
                        u, w = _t_vectors(lat, z, a)
                        _rank2_left(p, z, u, a, w)
                else:
                    p = [list(r) for r in (payload @ IntMatrix.from_rows(p)).entries]
            m = IntMatrix.from_rows(p)
            if not m.is_identity():
                factors.append(("G3", Isometry(lat, m, _trusted=True)))
            i = j
        return factors


def _split_isotropic(rb: _Rebase, a):
    """Split an argument supported away from the first block into at most
    three mutually orthogonal isotropic pieces (coordinates of L-prime)."""
    n = len(a)
    pieces = []
    rest = list(a)
    if any(a[i] for i in range(6, n)):
        q = [0] * n
        for i in range(6, n):
            q[i] = a[i]
        qsq = _pair(rb.lprime, q, q)
        assert qsq < 0 and qsq % 2 == 0
        c1 = list(q)
        c1[2] += 1
        c1[3] += -qsq // 2
        pieces.append(tuple(c1))
        rest = [x - y for x, y in zip(rest, c1)]
    if rest[2] or rest[5]:
        c = [0] * n
        c[2], c[5] = rest[2], rest[5]
        pieces.append(tuple(c))
    if rest[3] or rest[4]:
        c = [0] * n
        c[3], c[4] = rest[3], rest[4]
        pieces.append(tuple(c))
    return pieces


def _lift_l1_atoms(rb: _Rebase, atoms):
    """Map an L1 transvection word into OG10 coordinates (sparse columns)."""
    cols = rb.emb_cols
    n = rb.lat.rank

    def lift(v):
        out = [0] * n
        for i, x in enumerate(v):
            if x:
                col = cols[i]
                for j in range(n):
                    if col[j]:
                        out[j] += x * col[j]
        return tuple(out)

    return [(lift(z), lift(a)) for z, a in atoms]


def _emit_tf_isotropic(rb: _Rebase, em: _Emitter, c):
    """Expand t(f, c) for isotropic c supported away from the first block."""
    nn = content(c)
    c0_l1 = tuple(x // nn for x in c[2:])
    e2_l1 = tuple(int(i == 0) for i in range(22))
    v_atoms = []
    if c0_l1 != e2_l1:
        v_atoms, canon = _Reducer(rb.l1).reduce(c0_l1)
        assert canon == e2_l1
    rho = tuple(int(i == 4) for i in range(22))
    bprime = tuple(nn * e - r for e, r in zip(e2_l1, rho))
    wb_atoms, canon_b = _Reducer(rb.l1).reduce(bprime)
    k2 = tuple(1 if i == 0 else (-1 if i == 1 else 0) for i in range(22))
    assert canon_b == k2
    v_lift = _lift_l1_atoms(rb, v_atoms)
    wr_lift = _lift_l1_atoms(rb, rb.wr_atoms)
    wb_lift = _lift_l1_atoms(rb, wb_atoms)
    # t(f,c) = V^-1 Wr^-1 (RL RK) Wr Wb^-1 (RL RK) Wb V   (product order)
    em.g3_atoms(_invert_atoms(v_lift))
    em.g3_atoms(_invert_atoms(wr_lift))
    em.refl("RL")
    em.refl("RK")
    em.g3_atoms(wr_lift)
    em.g3_atoms(_invert_atoms(wb_lift))
    em.refl("RL")
    em.refl("RK")
    em.g3_atoms(wb_lift)
    em.g3_atoms(v_lift)


def _emit_transvection(rb: _Rebase, em: _Emitter, z, a):
    """Expand t(z, a) (L-prime coordinates, z in {e, f}, a away from the
    first block) into RB / RL / RK / G3 factors."""
    if not any(a):
        return
    based_at_e = z[0] == 1
    if based_at_e:
        em.refl("RB")  # t(e, a) = R_B o t(f, a) o R_B, since B = e - f
    for c in _split_isotropic(rb, a):
        _emit_tf_isotropic(rb, em, c)
    if based_at_e:
        em.refl("RB")


def decompose_monodromy(g: Isometry) -> GeneratorWord:
    lat = og10_lattice()
    if g.lattice != lat:
        raise ValueError("expected an isometry of the OG10 lattice")
    if not is_orientation_preserving(g):
        raise ValueError("isometry is not orientation preserving")
    if g.is_identity():
        return GeneratorWord.empty(lat)
    rb = _rebase()
    gp_matrix = rb.tinv @ g.matrix @ rb.t
    gp = Isometry(rb.lprime, gp_matrix, _trusted=True)

    n = lat.rank
    e1 = tuple(int(i == 0) for i in range(n))
    f1 = tuple(int(i == 1) for i in range(n))
    red = _Reducer(rb.lprime)
    atoms, canon = red.reduce(gp.matrix.col(0))
    assert canon == e1
    p = [list(row) for row in gp.matrix.entries]
    for z, a in atoms:
        u, w = _t_vectors(rb.lprime, z, a)
        _rank2_left(p, z, u, a, w)
    y = [row[1] for row in p]
    a_last = tuple(0 if i < 2 else -y[i] for i in range(n))
    if any(a_last):
        atoms.append((e1, a_last))
        u, w = _t_vectors(rb.lprime, e1, a_last)
        _rank2_left(p, e1, u, a_last, w)
    assert [row[0] for row in p] == list(e1) and [row[1] for row in p] == list(f1)
    h = IntMatrix.from_rows(p)

    em = _Emitter(rb)
    for z, a in reversed(_invert_atoms(atoms)):  # product order
        _emit_transvection(rb, em, z, a)
    if not h.is_identity():
        h_iso = Isometry(rb.lprime, h, _trusted=True)
        if not is_stable(h_iso):
            em.refl("RA")
            s = tuple(_refl_vectors(rb.lprime, rb.a_lprime))
            hm = [list(r) for r in h.entries]
            _rank1_left(hm, rb.a_lprime, s)
            h = IntMatrix.from_rows(hm)
        em.g3_matrix(rb.t @ h @ rb.tinv)
    factors = em.materialize()

    total = [[int(i == j) for j in range(n)] for i in range(n)]
    for tag, iso in reversed(factors):
        if tag in rb.refls:
            _, v, s = rb.refls[tag]
            _rank1_left(total, v, s)
        else:
            total = [list(r) for r in (iso.matrix @ IntMatrix.from_rows(total)).entries]
    assert IntMatrix.from_rows(total) == g.matrix
    return GeneratorWord(lat, tuple(factors), g)


# --- locally trivial monodromy ---------------------------------------------


@lru_cache(maxsize=None)
def sigma_perp() -> Sublattice:
    nc = named_classes()
    return orthogonal_complement(og10_lattice(), [nc.Sigmatilde])


@lru_cache(maxsize=None)
def _sigma_perp_left_inverse() -> IntMatrix:
    """Integer left inverse of the embedding of the Sigmatilde complement
    (exists because the sublattice is saturated)."""
    from .exactlin import smith_normal_form

    emb = sigma_perp().embedding
    snf = smith_normal_form(emb)
    assert all(d == 1 for d in snf.diagonal())
    r = emb.cols
    cut = IntMatrix.from_rows(
        [[int(i == j) for j in range(emb.rows)] for i in range(r)]
    )
    left = snf.v @ cut @ snf.u
    assert left @ emb == IntMatrix.identity(r)
    return left


def restrict_to_sigma_perp(g: Isometry) -> Isometry:
    """Restriction of a Sigmatilde-fixing OG10 isometry to its complement."""
    nc = named_classes()
    if g.apply(nc.Sigmatilde) != nc.Sigmatilde:
        raise ValueError("isometry does not fix Sigmatilde")
    sub = sigma_perp()
    left = _sigma_perp_left_inverse()
    return Isometry(sub.lattice, left @ g.matrix @ sub.embedding)


def lt_monodromy_check(h: Isometry) -> bool:
    sub = sigma_perp()
    if h.lattice != sub.lattice:
        raise ValueError("expected an isometry of the Sigmatilde complement")
    stable_and_oriented = is_stable(h) and is_orientation_preserving(h)
    # cross-check against the integral-extension oracle (identity on <Sigma>)
    nc = named_classes()
    amb_basis = [
        sub.to_ambient(sub.lattice.basis_vector(j)) for j in range(sub.lattice.rank)
    ]
    sig_lat = Lattice(IntMatrix.from_rows([[square(nc.Sigmatilde)]]))
    glue_ok = extends_across_gluing(
        og10_lattice(),
        amb_basis,
        [nc.Sigmatilde],
        h,
        identity_isometry(sig_lat),
    )
    ok = is_orientation_preserving(h) and glue_ok
    assert ok == stable_and_oriented
    return stable_and_oriented
