"""Isomorphism search: forced mappings, backtracking, and limits."""
from __future__ import annotations

import pytest

from amalgam import (
    BaseGraph,
    CapacityError,
    MsGraph,
    Vertex,
    build_graph,
    find_isomorphism,
    isomorphic,
)


def relabel(g: MsGraph, mapping: dict[str, str]) -> MsGraph:
    return build_graph(
        [(mapping[v.id], v.label) for v in g.base.vertices],
        [(mapping[e.src], mapping[e.dst], e.label) for e in g.base.edges],
        {a: mapping[v] for a, v in g.sources.items()},
    )


@pytest.fixture
def sentence() -> MsGraph:
    return build_graph(
        [("w", "wash"), ("r", "raven")],
        [("w", "r", "ARG0"), ("w", "r", "ARG1")],
        {"rt": "w"},
    )


def test_identical_graphs_map_identically(sentence):
    assert find_isomorphism(sentence, sentence) == {"w": "w", "r": "r"}


def test_relabeled_copy_is_isomorphic(sentence):
    other = relabel(sentence, {"w": "n1", "r": "n2"})
    mapping = find_isomorphism(sentence, other)
    assert mapping == {"w": "n1", "r": "n2"}


def test_vertex_order_does_not_matter(sentence):
    shuffled = build_graph(
        [("r", "raven"), ("w", "wash")],
        [("w", "r", "ARG1"), ("w", "r", "ARG0")],
        {"rt": "w"},
    )
    assert isomorphic(sentence, shuffled)


def test_source_labels_force_the_mapping():
    g = build_graph(["p", "q"], [("p", "q", "e")], {"A": "p", "B": "q"})
    h = build_graph(["x", "y"], [("x", "y", "e")], {"A": "x", "B": "y"})
    assert find_isomorphism(g, h) == {"p": "x", "q": "y"}
    # Same shape but the edge runs against the forced mapping.
    h_flipped = build_graph(["x", "y"], [("y", "x", "e")], {"A": "x", "B": "y"})
    assert not isomorphic(g, h_flipped)


def test_multi_label_vertices_must_match():
    stacked = build_graph(["u"], [], {"A": "u", "B": "u"})
    assert isomorphic(stacked, build_graph(["z"], [], {"A": "z", "B": "z"}))
    spread = build_graph(["u", "v"], [], {"A": "u", "B": "v"})
    assert not isomorphic(stacked, spread)  # vertex counts differ
    # Equal counts, same tau, but the labels sit on different vertices.
    g = build_graph(["u", "v"], [], {"A": "u", "B": "u"})
    h = build_graph(["u", "v"], [], {"A": "u", "B": "v"})
    assert not isomorphic(g, h)


def test_differing_taus_are_never_isomorphic():
    g = build_graph(["u"], [], {"A": "u"})
    h = build_graph(["u"], [], {"B": "u"})
    assert not isomorphic(g, h)


def test_node_labels_must_match():
    g = build_graph([("u", "L")], [], {"A": "u"})
    h = build_graph([("u", "M")], [], {"A": "u"})
    assert not isomorphic(g, h)


def test_edge_multiplicity_matters(sentence):
    single = build_graph(
        [("w", "wash"), ("r", "raven")], [("w", "r", "ARG0")], {"rt": "w"}
    )
    assert not isomorphic(sentence, single)


def test_unsourced_structure_uses_backtracking():
    triangle = build_graph(
        ["a", "b", "c"], [("a", "b", "e"), ("b", "c", "e"), ("c", "a", "e")], {}
    )
    rotated = build_graph(
        ["x", "y", "z"], [("y", "z", "e"), ("z", "x", "e"), ("x", "y", "e")], {}
    )
    mapping = find_isomorphism(triangle, rotated)
    assert mapping is not None
    for e in triangle.base.edges:
        assert (mapping[e.src], mapping[e.dst]) in {
            (f.src, f.dst) for f in rotated.base.edges
        }
    path = build_graph(["x", "y", "z"], [("x", "y", "e"), ("y", "z", "e")], {})
    assert not isomorphic(triangle, path)


def test_degree_profiles_prune():
    fan_out = build_graph(["a", "b", "c"], [("a", "b", "e"), ("a", "c", "e")], {})
    chain = build_graph(["a", "b", "c"], [("a", "b", "e"), ("b", "c", "e")], {})
    assert not isomorphic(fan_out, chain)


def test_loops_are_preserved():
    loop = build_graph(["a", "b"], [("a", "a", "e")], {})
    arc = build_graph(["a", "b"], [("a", "b", "e")], {})
    assert not isomorphic(loop, arc)
    assert isomorphic(loop, build_graph(["p", "q"], [("q", "q", "e")], {}))


def test_capacity_limit():
    big = MsGraph(BaseGraph(tuple(Vertex(f"v{i}") for i in range(65))), {})
    with pytest.raises(CapacityError):
        isomorphic(big, big)
    # The cap is a parameter, not a constant.
    assert isomorphic(big, big, max_vertices=65)
    small = build_graph(["a", "b", "c"], [], {})
    with pytest.raises(CapacityError):
        isomorphic(small, small, max_vertices=2)


def test_empty_graphs_are_isomorphic():
    assert find_isomorphism(MsGraph(), MsGraph()) == {}
