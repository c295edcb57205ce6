import json
import random

import networkx as nx
import pytest

import oracles
from snarkdom.graph import (
    A,
    B,
    C,
    D,
    ROLES,
    VertexSet,
    build_flower_snark,
    chromatic_index,
    copy_subset,
    copy_weights,
    decode,
    export_graph,
    girth,
    is_connected_induced,
    label,
    parse_label,
    vertex_id,
    weight_histogram,
)


def vs(g, *labels):
    return g.vertex_set(parse_label(x) for x in labels)


def induced_cycle_length(g, ids):
    """Length of the single cycle the ids induce, or None if they do not form one."""
    h = nx.Graph()
    h.add_nodes_from(ids)
    h.add_edges_from((u, v) for u, v in g.edges() if u in ids and v in ids)
    if not nx.is_connected(h) or any(d != 2 for _, d in h.degree):
        return None
    return h.number_of_nodes()


@pytest.mark.parametrize("n", range(3, 51))
def test_structure_invariants(n):
    g = build_flower_snark(n)
    assert g.num_vertices == 4 * n
    assert len(g.edges()) == 6 * n
    assert all(len(nb) == 3 for nb in g.adjacency)
    assert induced_cycle_length(g, {vertex_id(i, B) for i in range(n)}) == n
    cd = {vertex_id(i, r) for i in range(n) for r in (C, D)}
    assert induced_cycle_length(g, cd) == 2 * n
    for i in range(n):
        assert set(g.adjacency[vertex_id(i, A)]) == {vertex_id(i, r) for r in (B, C, D)}


@pytest.mark.parametrize("n", [3, 4, 5, 8, 13])
def test_matches_textbook_construction(n):
    g = build_flower_snark(n)
    ref = oracles.flower_snark_nx(n)
    assert {frozenset(e) for e in g.edges()} == {frozenset(e) for e in ref.edges}


def test_twist_edges():
    g = build_flower_snark(5)
    assert vertex_id(0, D) in g.adjacency[vertex_id(4, C)]
    assert vertex_id(0, C) in g.adjacency[vertex_id(4, D)]
    assert vertex_id(0, C) not in g.adjacency[vertex_id(4, C)]


def test_closed_neighbourhoods():
    g = build_flower_snark(4)
    for v, nb in enumerate(g.closed_neighborhoods):
        assert set(nb) == {v, *g.adjacency[v]}


def test_small_counts():
    g = build_flower_snark(3)
    assert (g.num_vertices, len(g.edges())) == (12, 18)


def test_rejects_small_n():
    with pytest.raises(ValueError):
        build_flower_snark(2)


def test_vertex_encoding_roundtrip():
    for v in range(40):
        i, role = decode(v)
        assert vertex_id(i, role) == v
        assert parse_label(label(v)) == v
    assert label(vertex_id(2, "a")) == "a^3"
    assert ROLES == "bacd"
    with pytest.raises(ValueError):
        parse_label("e^1")
    with pytest.raises(ValueError):
        parse_label("a^0")


def test_vertex_set_algebra():
    u = 12
    s = VertexSet.from_ids([0, 1, 5], u)
    t = VertexSet.from_ids([1, 2], u)
    assert (s | t).ids() == [0, 1, 2, 5]
    assert (s & t).ids() == [1]
    assert (s - t).ids() == [0, 5]
    assert len(s.complement()) == u - 3
    assert 5 in s and 6 not in s and 99 not in s
    assert s.add(7).remove(0).ids() == [1, 5, 7]
    with pytest.raises(ValueError):
        VertexSet.from_ids([12], u)
    with pytest.raises(ValueError):
        s | VertexSet.empty(16)


def test_copy_subset():
    g = build_flower_snark(4)
    full = VertexSet.full(g.num_vertices)
    assert copy_subset(g, full, 0) == vs(g, "b^1", "a^1", "c^1", "d^1")
    centres = g.vertex_set(vertex_id(i, A) for i in range(4))
    assert copy_subset(g, centres, 2) == vs(g, "a^3")
    assert len(copy_subset(g, VertexSet.empty(16), 3)) == 0
    with pytest.raises(IndexError):
        copy_subset(g, full, 4)


def test_copy_weights_on_known_sets():
    g3 = build_flower_snark(3)
    fig6 = vs(g3, "b^1", "c^1", "d^1", "a^2", "a^3")
    assert copy_weights(g3, fig6) == (3, 1, 1)
    g4 = build_flower_snark(4)
    fig8 = vs(g4, "d^1", "a^2", "b^2", "d^2", "d^3", "a^4", "c^4", "d^4")
    assert copy_weights(g4, fig8) == (1, 3, 1, 3)
    assert weight_histogram(g4, fig8) == (0, 2, 0, 2, 0)
    assert copy_weights(g4, VertexSet.empty(16)) == (0, 0, 0, 0)
    assert weight_histogram(g4, VertexSet.empty(16)) == (4, 0, 0, 0, 0)


@pytest.mark.parametrize("n", [3, 6, 11])
def test_copy_weight_sums(n):
    g = build_flower_snark(n)
    rng = random.Random(n)
    for _ in range(100):
        s = VertexSet(rng.getrandbits(g.num_vertices), g.num_vertices)
        w = copy_weights(g, s)
        assert sum(w) == len(s)
        h = weight_histogram(g, s)
        assert sum(h) == n
        assert sum(k * c for k, c in enumerate(h)) == len(s)


def test_connectivity_examples():
    g = build_flower_snark(4)
    assert is_connected_induced(g, vs(g, "b^1", "b^2"))
    assert not is_connected_induced(g, vs(g, "a^1", "a^2"))
    assert is_connected_induced(g, vs(g, "d^1", "a^2", "b^2", "d^2", "d^3", "a^4", "c^4", "d^4"))
    assert is_connected_induced(g, VertexSet.empty(16))
    assert is_connected_induced(g, vs(g, "c^3"))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_connectivity_against_union_find(n):
    g = build_flower_snark(n)
    ref = oracles.flower_snark_nx(n)
    rng = random.Random(100 + n)
    for _ in range(100):
        s = VertexSet(rng.getrandbits(g.num_vertices), g.num_vertices)
        assert is_connected_induced(g, s) == oracles.connected_union_find(ref, set(s))


def test_girth():
    assert girth(build_flower_snark(3)) == 3
    for n in (5, 7, 9):
        assert girth(build_flower_snark(n)) >= 5


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_girth_against_networkx(n):
    assert girth(build_flower_snark(n)) == nx.girth(oracles.flower_snark_nx(n))


@pytest.mark.parametrize("n,expected", [(4, 3), (5, 4), (6, 3), (7, 4)])
def test_chromatic_index(n, expected):
    assert chromatic_index(build_flower_snark(n)) == expected


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_chromatic_index_against_line_graph_colouring(n):
    ref = 3 if oracles.three_edge_colourable(oracles.flower_snark_nx(n)) else 4
    assert chromatic_index(build_flower_snark(n)) == ref


def test_export_dimacs():
    text = export_graph(build_flower_snark(3), "dimacs")
    lines = text.splitlines()
    assert lines[0] == "p edge 12 18"
    edges = [tuple(map(int, ln.split()[1:])) for ln in lines[1:]]
    assert len(edges) == 18 and edges == sorted(edges)
    assert all(1 <= u < v <= 12 for u, v in edges)


def test_export_json():
    data = json.loads(export_graph(build_flower_snark(3), "json"))
    assert data["n"] == 3
    assert len(data["edges"]) == 18
    assert data["vertices"][5] == {"id": 5, "copy": 1, "role": "a"}
    assert data["edges"] == sorted(data["edges"])


def test_export_adjlist():
    lines = export_graph(build_flower_snark(4), "adjlist").splitlines()
    assert len(lines) == 16
    assert all(len(ln.split(":")[1].split()) == 3 for ln in lines)


def test_export_unknown_format():
    with pytest.raises(ValueError):
        export_graph(build_flower_snark(3), "graphml")
