import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from k3lab import data
from k3lab.curves import CurveError, classify_conics, classify_quartics, rational_curves
from k3lab.exact import enumerate_norm_solutions, matvec
from k3lab.lattice import IntegralLattice, LatticeError, vectors_of_degree


def positive_form(lat):
    """``Q(v) = (v.H)^2 - v^2``: positive definite when ``lat`` is hyperbolic and ``H^2 > 0``."""
    hv = matvec(lat.gram, lat.h)
    n = lat.rank
    return [[hv[i] * hv[j] - lat.gram[i][j] for j in range(n)] for i in range(n)]


def second_route(lat, degree, square):
    hv = matvec(lat.gram, lat.h)
    q = positive_form(lat)
    sols = enumerate_norm_solutions(q, None, degree * degree - square)
    return sorted(v for v in sols if sum(a * b for a, b in zip(hv, v)) == degree)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_vectors_of_degree_two_routes(ctx, degree):
    lat = ctx.lattice
    assert sorted(vectors_of_degree(lat, degree, -2)) == second_route(lat, degree, -2)


def toy_lattice(a):
    """``U + <-2a>`` with ``H = e + 3f`` (``H^2 = 6``)."""
    g = [[0, 1, 0], [1, 0, 0], [0, 0, -2 * a]]
    return IntegralLattice(g, ["e", "f", "r"], {"H": [1, 3, 0]})


def box(lat, degree, square, r=12):
    out = []
    for v in product(range(-r, r + 1), repeat=lat.rank):
        v = list(v)
        if lat.degree(v) == degree and lat.square(v) == square:
            out.append(v)
    return sorted(out)


@given(st.integers(1, 4), st.integers(0, 3), st.sampled_from([-2, 0, 2]))
@settings(max_examples=30, deadline=None)
def test_vectors_of_degree_on_toy_matches_box(a, degree, square):
    lat = toy_lattice(a)
    # Q(v) = deg^2 - square bounds every coordinate well inside the box
    assert sorted(vectors_of_degree(lat, degree, square)) == box(lat, degree, square)


@pytest.fixture(scope="module")
def low(ctx):
    return rational_curves(ctx.lattice, 4, ctx.group)


def test_low_degree_counts(low):
    assert low.counts() == {1: 24, 2: 9, 3: 0, 4: 72}
    assert low.orbit_sizes(1) == [24] and low.orbit_sizes(2) == [9] and low.orbit_sizes(4) == [72]


def test_degree_one_are_the_lines(ctx, low):
    assert {c.coords for c in low.curves[1]} == {tuple(ctx.lattice[x]) for x in ctx.cfg.labels}


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_census_does_not_depend_on_candidate_order(ctx, low, seed):
    shuffled = rational_curves(ctx.lattice, 4, shuffle=random.Random(seed))
    assert {d: [c.coords for c in v] for d, v in shuffled.curves.items()} == {
        d: [c.coords for c in v] for d, v in low.curves.items()
    }


def test_accepted_curves_meet_nonnegatively(ctx):
    lat = ctx.lattice
    curves = ctx.census.all_curves()
    for i, a in enumerate(curves):
        assert lat.square(a.coords) == -2
        for b in curves[i + 1 :]:
            assert lat.pair(a.coords, b.coords) >= 0


def test_higher_degree_counts(ctx):
    c = ctx.census
    for d, (count, sizes) in data.RATIONAL_CURVE_COUNTS.items():
        assert len(c.curves[d]) == count
        assert c.orbit_sizes(d) == sorted(sizes)


def test_rejected_candidates_have_a_witness(ctx, low):
    lat = ctx.lattice
    accepted = {c.coords for c in low.curves[2]}
    lines = low.curves[1]
    for v in vectors_of_degree(lat, 2, -2):
        if tuple(v) not in accepted:
            assert any(lat.pair(v, l.coords) < 0 for l in lines)


def test_degree_zero_request_is_empty(ctx):
    assert rational_curves(ctx.lattice, 0).curves == {}


def test_invalid_polarization_refused():
    g = [[0, 1, 0], [1, 0, 0], [0, 0, -2]]
    lat = IntegralLattice(g, ["e", "f", "r"], {"H": [1, 3, 0]})
    with pytest.raises(LatticeError):
        rational_curves(lat, 2)


def test_conic_and_quartic_patterns(ctx, low):
    conics = classify_conics(low.curves[2], ctx.lattice, ctx.cfg)
    assert sorted(conics) == [(r, s) for r in range(3) for s in range(3)]
    quartics = classify_quartics(low.curves[4], ctx.lattice, ctx.cfg)
    assert len(quartics) == 72
    lat = ctx.lattice
    for (li, mj), q in quartics.items():
        assert lat.pair(q.coords, lat[li]) == 3 and lat.pair(q.coords, lat[mj]) == 3


def test_classify_conics_rejects_wrong_input(ctx, low):
    with pytest.raises(CurveError):
        classify_conics(low.curves[2][:8], ctx.lattice, ctx.cfg)


def test_census_json_lists_orbits(low):
    doc = low.to_json()
    assert sorted(doc) == ["1", "2", "3", "4"]
    assert doc["4"]["count"] == 72 and doc["4"]["orbit_sizes"] == [72]
    assert {c["orbit"] for c in doc["2"]["classes"]} == {0}
    assert all(c["degree"] == 1 for c in doc["1"]["classes"])
