"""One test per acceptance criterion; a summary line per criterion is printed at the end."""

import json
import random
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from k3lab import verify
from k3lab.config import fragments
from k3lab.curves import rational_curves
from k3lab.exact import (
    determinant,
    enumerate_norm_solutions,
    integer_kernel,
    matmul,
    matvec,
    rank,
    signature,
    smith_normal_form,
    transpose,
)
from k3lab.lattice import graph_gram

from .conftest import record
from .test_exact import box_oracle

GOLDEN = json.loads((Path(__file__).parent / "data" / "humbert_basis_gram.json").read_text())


def run_checks(number, title, checks):
    t = time.perf_counter()
    verdicts = [v for fn in checks for v in fn()]
    dt = time.perf_counter() - t
    failed = [f"{v.name} ({v.detail})" for v in verdicts if not v.ok]
    record(number, title, not failed, dt, "; ".join(failed))
    assert not failed, failed


def test_01_lattice_invariants(ctx):
    def golden():
        lat = ctx.lattice
        return [verify._v("basis Gram equals the frozen matrix", lat.gram == GOLDEN["gram"] and lat.basis_labels == GOLDEN["basis"])]

    run_checks(1, "lattice invariants", [lambda: verify.check_lattice(ctx), golden])


def test_02_discriminant_form(ctx):
    run_checks(2, "discriminant form", [lambda: verify.check_discriminant(ctx)])


def test_03_transcendental(ctx):
    run_checks(3, "transcendental lattice", [lambda: verify.check_transcendental(ctx)])


def test_04_symmetry(ctx):
    run_checks(4, "symmetry group", [lambda: verify.check_symmetry(ctx)])


def test_05_structural_counts(ctx):
    run_checks(5, "structural counts", [lambda: verify.check_counts(ctx)])


def test_06_curve_census(ctx):
    run_checks(6, "rational curve census", [lambda: verify.check_curves(ctx)])


def test_07_pencil_census(ctx):
    run_checks(7, "pencil census", [lambda: verify.check_pencils(ctx)])


def test_08_fiber_structures(ctx):
    run_checks(8, "fiber structures", [lambda: verify.check_fibers(ctx)])


def test_09_extension_lab(ctx):
    run_checks(9, "extension lab", [lambda: verify.check_extension(ctx)])


def _property_checks(ctx):
    rnd = random.Random(20240601)
    out = []
    # Fincke-Pohst against a box search, rank <= 3
    ok = True
    for _ in range(60):
        n = rnd.randint(1, 3)
        a = [[rnd.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        g = matmul(transpose(a), a)
        g = [[g[i][j] + (i == j) for j in range(n)] for i in range(n)]
        shift = [Fraction(rnd.randint(-4, 4), rnd.choice([1, 2, 3])) for _ in range(n)]
        target = rnd.randint(0, 10)
        ok &= enumerate_norm_solutions(g, shift, target) == box_oracle(g, shift, target)
    out.append(verify._v("Fincke-Pohst equals box search", ok))
    # Vinberg filter independent of candidate order
    lat = ctx.lattice
    ref = rational_curves(lat, 4)
    same = all(
        rational_curves(lat, 4, shuffle=random.Random(s)).curves == ref.curves for s in (1, 2)
    )
    out.append(verify._v("curve census independent of candidate order", same))
    # SNF, kernel and signature identities
    ok = True
    for _ in range(60):
        r, c = rnd.randint(1, 4), rnd.randint(1, 4)
        m = [[rnd.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        u, d, v = smith_normal_form(m)
        ok &= matmul(matmul(u, m), v) == d and abs(determinant(u)) == 1 and abs(determinant(v)) == 1
        k = integer_kernel(m)
        ok &= len(k) == c - rank(m) and all(matvec(m, x) == [0] * r for x in k)
        s = [[rnd.randint(-4, 4) for _ in range(c)] for _ in range(c)]
        s = [[s[i][j] + s[j][i] for j in range(c)] for i in range(c)]
        p, q, z = signature(s)
        ok &= p + q + z == c and p + q == rank(s)
    out.append(verify._v("SNF, kernel and signature identities", ok))
    # fragment sums agree modulo the radical
    cfg = ctx.cfg
    gram = graph_gram(cfg)
    frs = fragments(cfg)
    ok = True
    for f1, f2 in combinations(frs, 2):
        diff = [int(v in f1) - int(v in f2) for v in range(cfg.n)]
        ok &= matvec(gram, diff) == [0] * cfg.n
    out.append(verify._v("fragment sums differ by radical relations", ok))
    return out


def test_10_property_suites(ctx):
    run_checks(10, "property suites", [lambda: _property_checks(ctx)])


@pytest.mark.census
def test_11_moduli_census(ctx):
    run_checks(11, "moduli census (stretch)", [lambda: verify.check_census(ctx)])
