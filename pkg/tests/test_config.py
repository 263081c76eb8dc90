import json

import pytest
from hypothesis import given, settings, strategies as st

from k3lab.config import (
    Configuration,
    ConfigurationError,
    check_33_property,
    fragments,
    fragments_and_quadrangles,
    from_matrix,
    gamma2_configuration,
    humbert_configuration,
    induced_on_cells,
    permutation_from_cycles,
    symmetry_group,
)
from k3lab.graphs import compose


def test_humbert_is_regular_of_degree_six():
    cfg = humbert_configuration()
    assert cfg.n == 24 and cfg.is_regular(6)


def test_gamma2_is_regular_of_degree_six_and_not_isomorphic():
    from k3lab.graphs import canonical_form

    g1, g2 = humbert_configuration(), gamma2_configuration()
    assert g2.is_regular(6)
    c1 = canonical_form(g1.adjacency_matrix(), [0] * 24)[0]
    c2 = canonical_form(g2.adjacency_matrix(), [0] * 24)[0]
    assert c1 != c2


def test_json_round_trip(tmp_path):
    cfg = humbert_configuration()
    path = tmp_path / "g.json"
    cfg.save(path)
    back = Configuration.load(path)
    assert back == cfg
    assert back.quartets == cfg.quartets


@pytest.mark.parametrize(
    "doc",
    [
        {"alpha": ["a"]},
        {"alpha": ["a"], "beta": ["b"], "edges": [["a", "c"]]},
        {"alpha": ["a"], "beta": ["b"], "edges": [["a", "b", "c"]]},
        {"alpha": ["a", "b"], "beta": ["b"], "edges": []},
        {"alpha": ["a"], "beta": ["b"], "edges": [], "quartets": {"alpha": [["x"]], "beta": [["b"]]}},
    ],
)
def test_malformed_documents_rejected(doc):
    with pytest.raises(ConfigurationError):
        Configuration.from_json(doc)


def test_invalid_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ConfigurationError):
        Configuration.load(p)


def test_edges_accept_either_orientation():
    a = Configuration.from_json({"alpha": ["a"], "beta": ["b"], "edges": [["b", "a"]]})
    assert a.adjacent(0, 1)


def test_fragment_and_quadrangle_counts():
    frag, proper, improper = fragments_and_quadrangles(humbert_configuration())
    assert (len(frag), len(proper), len(improper)) == (16, 18, 144)


def test_fragments_are_complete_bipartite():
    cfg = humbert_configuration()
    for f in fragments(cfg):
        al = [v for v in f if v < 12]
        be = [v for v in f if v >= 12]
        assert len(al) == len(be) == 3
        assert all(cfg.adjacent(u, v) for u in al for v in be)


def test_33_property():
    assert check_33_property(humbert_configuration()) == []
    viol = check_33_property(gamma2_configuration())
    assert viol
    labels = gamma2_configuration().labels
    witness = {"L1", "L3", "M1", "M3", "M4"}
    assert any({labels[v] for v in vs} <= witness for _, vs in viol)


def test_symmetry_group_order_and_closure():
    g = symmetry_group(humbert_configuration())
    assert g.order() == 1152
    assert g.is_transitive()
    elems = list(g)
    for p in elems[:20]:
        for q in elems[:: len(elems) // 7]:
            assert compose(p, q) in g


def test_side_preserving_subgroup_has_index_two():
    cfg = humbert_configuration()
    assert symmetry_group(cfg, swap_parts=False).order() * 2 == symmetry_group(cfg).order()


def test_cell_action_is_order_72():
    cfg = humbert_configuration()
    assert induced_on_cells(cfg, symmetry_group(cfg)).order() == 72


def test_permutation_from_cycles():
    cfg = from_matrix([[1, 0], [0, 1]])
    assert permutation_from_cycles(cfg, [[1, 2]], [[1, 2]]) == (1, 0, 3, 2)


@given(st.permutations(range(12)), st.permutations(range(12)))
@settings(max_examples=10, deadline=None)
def test_relabelled_configuration_has_same_counts(pa, pb):
    cfg = humbert_configuration()
    rows = [[cfg.adjacency[pa[i]][pb[j]] for j in range(12)] for i in range(12)]
    other = from_matrix(rows)
    assert len(fragments(other)) == 16
    assert check_33_property(other) == []
    assert json.loads(json.dumps(other.to_json()))["alpha"] == list(other.alpha)
