from itertools import combinations

import pytest

from k3lab.config import cells, fragments, humbert_configuration
from k3lab.exact import signature
from k3lab.extension import (
    ExtensionError,
    cell_label,
    degeneration_strata,
    extend_lattice,
    grid_group,
    is_double_six,
    parse_cells,
    radical,
    strongly_regular_parameters,
    symmetric_conic_candidates,
)
from k3lab.lattice import discriminant_form


@pytest.fixture(scope="module")
def cfg():
    return humbert_configuration()


@pytest.fixture(scope="module")
def candidates(cfg):
    return symmetric_conic_candidates(cfg)


def test_candidates_match_exhaustive_search(cfg, candidates):
    rad = radical(cfg)
    frags = fragments(cfg)
    want = []
    for al in combinations(range(12), 4):
        ra = [sum(r[v] for v in al) for r in rad]
        fa = [sum(v in al for v in f) for f in frags]
        for be in combinations(range(12, 24), 4):
            if all(x + sum(r[v] for v in be) == 0 for x, r in zip(ra, rad)) and all(
                x + sum(v in be for v in f) == 2 for x, f in zip(fa, frags)
            ):
                want.append(tuple(sorted(al + be)))
    assert sorted(c.support() for c in candidates.patterns) == sorted(want)
    assert len(want) == 81


def test_candidate_orbits(candidates):
    assert len(candidates.old) == 9
    assert [len(o) for o in candidates.new_orbits] == [72]
    assert candidates.chosen in candidates.new_orbits[0]


def test_old_conics_do_not_extend(cfg, candidates):
    with pytest.raises(ExtensionError, match="rank"):
        extend_lattice(cfg, candidates.old[(0, 0)], check_overlattices=False)


def test_extended_lattice(ctx):
    lat = ctx.extension.lattice
    assert lat.rank == 16
    assert signature(lat.gram) == (1, 15, 0)
    assert lat.square(lat.h) == 6 and lat.degree(lat["C"]) == 2 and lat.square(lat["C"]) == -2
    assert discriminant_form(lat).size == abs(lat.det())


def test_extension_census(ctx):
    r = ctx.extension
    assert r.curves.census.counts() == {1: 24, 2: 21}
    assert r.group.order() == 192
    assert r.line_image.order() * r.line_kernel.order() == 192


def test_named_conic_pairs_share_line_intersections(ctx):
    cu = ctx.extension.curves
    lat = cu.lattice
    lines = cu.names[:24]
    new = [x for x in cu.names if x.startswith("N")]
    assert len(new) == 12
    for a, b in zip(new[0::2], new[1::2]):
        assert [lat.pair(cu.classes[a], lat[l]) for l in lines] == [lat.pair(cu.classes[b], lat[l]) for l in lines]
    for a, b in combinations(new[0::2], 2):
        assert lat.pair(cu.classes[a], cu.classes[b]) == 0


def test_involutions(ctx):
    r = ctx.extension
    assert sorted(s for _, s in r.involutions) == [-1, 1]
    g = r.gamma
    assert g is not None and all(g[g[i]] == i for i in range(len(g)))
    m = r.curves.matrix()
    assert all(m[g[i]][g[j]] == m[i][j] for i in range(len(g)) for j in range(len(g)))


def test_cubic_shadow(ctx):
    cu = ctx.extension.cubic
    assert cu.ok
    assert len(cu.names) == 27
    assert all(cu.half_matrix[i][i] == -1 for i in range(27))


# -- combinatorial helpers on known graphs ------------------------------------


def petersen():
    vs = list(combinations(range(5), 2))
    return [[int(not set(a) & set(b)) for b in vs] for a in vs]


def schlaefli():
    """Meeting graph of the 27 lines a_i, b_j, c_ij of a cubic surface."""
    lines = [("a", i) for i in range(6)] + [("b", i) for i in range(6)] + [("c", p) for p in combinations(range(6), 2)]

    def meet(x, y):
        (s, u), (t, v) = x, y
        if x == y:
            return 0
        if {s, t} == {"a", "b"}:
            return int(u != v)
        if s == t == "c":
            return int(not set(u) & set(v))
        if s == t:
            return 0
        (_, k), (_, p) = (x, y) if s != "c" else (y, x)
        return int(k in p)

    return lines, [[meet(x, y) for y in lines] for x in lines]


def test_srg_parameters_on_known_graphs():
    assert strongly_regular_parameters(petersen()) == (10, 3, 0, 1)
    lines, adj = schlaefli()
    comp = [[int(i != j and not adj[i][j]) for j in range(27)] for i in range(27)]
    assert strongly_regular_parameters(comp) == (27, 16, 10, 8)
    assert strongly_regular_parameters(adj) == (27, 10, 1, 5)
    path = [[int(abs(i - j) == 1) for j in range(3)] for i in range(3)]
    assert strongly_regular_parameters(path) is None


def test_double_six_on_cubic_lines():
    lines, adj = schlaefli()
    assert is_double_six(adj, list(range(6)), list(range(6, 12)))
    assert not is_double_six(adj, list(range(6)), list(range(6, 11)) + [12])


# -- grid subsets ------------------------------------------------------------


def test_grid_group():
    g = grid_group()
    assert g.order() == 72 and g.is_transitive()


def test_cell_labels_round_trip(cfg):
    assert [parse_cells([cell_label(i)])[0] for i in range(9)] == list(range(9))
    assert len(cells(cfg)) == 9


def test_strata_in_distinct_orbits():
    r = degeneration_strata()
    assert r.distinct and len(r.strata) == 8
    # orbits of the 72-element group on k-subsets of nine cells
    assert sum(r.orbit_sizes[1]) == 9 and sum(r.orbit_sizes[2]) == 36
    assert r.orbit_sizes[1] == [9] and r.orbit_sizes[2] == [18, 18]
