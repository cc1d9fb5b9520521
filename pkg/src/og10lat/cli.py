"""Command-line surface: verification suites, decomposition of isometries
into tagged generator words, discriminant reports, seeded random isometries.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 invalid isometry
input, 4 orientation-reversing input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .discriminant import discriminant_group, forms_isomorphic
from .exactlin import IntMatrix
from .isometry import (
    is_orientation_preserving,
    make_isometry,
    random_isometry,
    transvection,
)
from .lattice import divisibility, pair, square, standard_lattice
from .mukai import (
    V2,
    V_OG10,
    fm_pushforward,
    fujiki_theta_pairing,
    gamma_element,
    gamma_pair,
    gamma_to_h2,
    hbs_lattice,
    p2,
    parallel_transport_P,
    psi_pullback,
    solve_theta_class,
)
from .og10 import (
    decompose_monodromy,
    in_G3,
    lt_monodromy_check,
    named_classes,
    og10_lattice,
    sigma_perp,
)


class Suite:
    def __init__(self, name):
        self.name = name
        self.checks = []

    def check(self, check_id, expected, actual):
        status = "PASS" if expected == actual else "FAIL"
        self.checks.append(
            {
                "id": check_id,
                "status": status,
                "expected": repr(expected),
                "actual": repr(actual),
            }
        )

    def ok(self):
        return all(c["status"] == "PASS" for c in self.checks)


def _suite_core_identities(s: Suite):
    lat = og10_lattice()
    rng = random.Random(20001)
    nc = named_classes()
    z = nc.e
    good = 0
    trials = 25
    for i in range(trials):
        # random arguments orthogonal to z = e: combinations of e and basis
        # vectors away from the H / Btilde / Sigmatilde block
        a = rng.randrange(-2, 3) * nc.e
        b = rng.randrange(-2, 3) * nc.e
        for _ in range(3):
            j = rng.randrange(2, 22)
            a = a + rng.randrange(-2, 3) * lat.basis_vector(j)
            j = rng.randrange(2, 22)
            b = b + rng.randrange(-2, 3) * lat.basis_vector(j)
        g, _ = random_isometry(lat, 50000 + i, 4)
        t = transvection(z, a)
        if (
            (t @ transvection(z, -1 * a)).is_identity()
            and (g @ t @ g.inverse()).matrix
            == transvection(g.apply(z), g.apply(a)).matrix
            and transvection(z, a + b).matrix == (t @ transvection(z, b)).matrix
        ):
            good += 1
    s.check("transvection-laws", trials, good)


def _suite_og10_classes(s: Suite):
    nc = named_classes()
    s.check("e.e", 0, square(nc.e))
    s.check("f.f", 0, square(nc.f))
    s.check("e.f", 1, pair(nc.e, nc.f))
    s.check("A.A", -6, square(nc.A))
    s.check("A.e", 0, pair(nc.A, nc.e))
    s.check("A.f", 0, pair(nc.A, nc.f))
    s.check("l.l", -2, square(nc.l))
    ztilde = nc.H + nc.k - 2 * nc.Btilde - nc.Sigmatilde
    s.check("Ztilde.Ztilde", -2, square(ztilde))
    s.check("div.Sigmatilde", 3, divisibility(nc.Sigmatilde))


def _suite_gamma(s: Suite):
    from fractions import Fraction

    gens = [
        gamma_element(V_OG10, (1, 0, 1), 0),
        gamma_element(V_OG10, (0, 1, 0), 0),
        gamma_element(V_OG10, (0, 0, 0), 2),
        gamma_element(V_OG10, (Fraction(1, 2), 0, Fraction(1, 2)), 1),
    ]
    ok = True
    for x in gens:
        for y in gens:
            lhs = gamma_pair(x, y)
            rhs = pair(gamma_to_h2(x), gamma_to_h2(y))
            ok = ok and lhs == rhs
    s.check("gamma-pairing-preserved", True, ok)


def _suite_psi(s: Suite):
    src_gram = [[2, 1, 0], [1, 0, 0], [0, 0, -6]]  # a, b, sigma0
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    imgs = [psi_pullback(c) for c in basis]
    ok = all(
        gamma_pair(imgs[i], imgs[j]) == src_gram[i][j]
        for i in range(3)
        for j in range(3)
    )
    s.check("psi-gram-preserved", True, ok)


def _suite_fm(s: Suite):
    sigma2 = gamma_element(V2, (0, 0, 0), 2)
    s.check("fm-sigma2", (0, 0, 1), fm_pushforward(sigma2).coords)
    comp = fm_pushforward(psi_pullback((0, 0, 1)))
    s.check("fm-psi-sigma0", p2(0, 0, 1).coords, comp.coords)


def _suite_transport(s: Suite):
    s.check("P-theta", (0, 1, 0), parallel_transport_P(1, 0).coords)
    s.check("P-bV", (1, -2, -1), parallel_transport_P(0, 1).coords)
    e_hbs = hbs_lattice().vector((1, -1, -1))
    s.check("P-theta-plus-bV", e_hbs.coords, parallel_transport_P(1, 1).coords)


def _suite_fujiki(s: Suite):
    res = fujiki_theta_pairing(945, 120)
    s.check("theta-b-pairing", 1, res.theta_b_pairing)
    s.check("b-square", 0, res.b_square)


def _suite_theta(s: Suite):
    table = {"a_l1": 5, "a_l2": -1, "b_l1": 0, "b_l2": 1, "T_l1": 5, "T_sq": -2}
    s.check("theta-class", (1, -2), solve_theta_class(table))


def _suite_generation(s: Suite):
    lat = og10_lattice()
    good = 0
    trials = 10
    for seed in range(trials):
        g, _ = random_isometry(lat, 30000 + seed, 8)
        word = decompose_monodromy(g)
        if word.product.matrix == g.matrix and all(
            tag != "G3" or in_G3(iso) for tag, iso in word.factors
        ):
            good += 1
    s.check("decompose-reassemble", trials, good)


def _suite_lt_monodromy(s: Suite):
    sub = sigma_perp()
    good = 0
    trials = 10
    for seed in range(trials):
        h, _ = random_isometry(sub.lattice, 40000 + seed, 6)
        if lt_monodromy_check(h):
            good += 1
    s.check("lt-restrictions", trials, good)


def _suite_l1_genus(s: Suite):
    from .lattice import orthogonal_complement

    nc = named_classes()
    sub = orthogonal_complement(og10_lattice(), [nc.e, nc.f])
    s.check("l1-signature", (2, 20), sub.lattice.signature())
    s.check(
        "l1-disc-vs-A2",
        True,
        forms_isomorphic(
            discriminant_group(sub.lattice),
            discriminant_group(standard_lattice("A2neg")),
        ),
    )


SUITES = {
    "core-identities": _suite_core_identities,
    "og10-classes": _suite_og10_classes,
    "gamma": _suite_gamma,
    "psi": _suite_psi,
    "fm": _suite_fm,
    "transport": _suite_transport,
    "fujiki": _suite_fujiki,
    "theta": _suite_theta,
    "generation": _suite_generation,
    "lt-monodromy": _suite_lt_monodromy,
    "l1-genus": _suite_l1_genus,
}


def _matrix_to_json(name: str, m: IntMatrix) -> dict:
    return {"lattice": name, "matrix": [[str(x) for x in row] for row in m.entries]}


def _matrix_from_json(doc: dict) -> tuple[str, IntMatrix]:
    return doc["lattice"], IntMatrix.from_rows(
        [[int(x) for x in row] for row in doc["matrix"]]
    )


def _write(out, doc):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    if args.list:
        for name in SUITES:
            print(name)
        return 0
    if args.suite is None or args.suite not in SUITES:
        print(f"unknown suite: {args.suite!r}", file=sys.stderr)
        return 2
    suite = Suite(args.suite)
    start = time.monotonic()
    SUITES[args.suite](suite)
    elapsed = int((time.monotonic() - start) * 1000)
    report = {
        "suite": suite.name,
        "checks": suite.checks,
        "elapsed_ms": elapsed,
    }
    _write(args.out, report)
    return 0 if suite.ok() else 1


def cmd_decompose(args) -> int:
    with open(args.matrix) as fh:
        doc = json.load(fh)
    name, m = _matrix_from_json(doc)
    lat = standard_lattice(name)
    try:
        g = make_isometry(lat, m)
    except ValueError as exc:
        print(f"not an isometry: {exc}", file=sys.stderr)
        return 3
    if not is_orientation_preserving(g):
        print(
            "orientation-reversing isometries are outside the monodromy group "
            "(the group lies in O^+)",
            file=sys.stderr,
        )
        return 4
    word = decompose_monodromy(g)
    assert word.product.matrix == g.matrix
    _write(args.out, word.to_json())
    return 0


def cmd_random(args) -> int:
    lat = og10_lattice()
    g, _ = random_isometry(lat, args.seed, args.length)
    _write(args.out, _matrix_to_json("OG10", g.matrix))
    return 0


def cmd_disc(args) -> int:
    try:
        lat = standard_lattice(args.lattice)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    form = discriminant_group(lat)
    if form.is_trivial():
        print("trivial")
    else:
        parts = " x ".join(f"Z/{d}" for d in form.invariant_factors)
        # display q with the representative in (-1, 1]
        qs = ", ".join(
            f"q(gen{i}) = {(q + 1) % 2 - 1} mod 2" for i, q in enumerate(form.q_values)
        )
        print(f"{parts}, {qs}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="og10lat", description="Exact OG10 lattice toolkit"
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", nargs="?")
    p.add_argument("--out")
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("decompose", help="decompose an O^+ matrix into generators")
    p.add_argument("--matrix", required=True)
    p.add_argument("--out")

    p = sub.add_parser("random", help="emit a seeded random O^+ matrix")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("disc", help="discriminant group report")
    p.add_argument("lattice")

    args = parser.parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "decompose": cmd_decompose,
        "random": cmd_random,
        "disc": cmd_disc,
    }
    if args.command not in handlers:
        parser.print_help()
        return 2
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
