import pytest
from hypothesis import given
from hypothesis import strategies as st

from secindex.linking import (
    Linking,
    find_max_linking,
    max_linking_size,
    saturated_by_all_max_linkings,
)
from secindex.model import UnknownVertexError, VertexId, VertexKind

from .bruteforce import brute_force_max_linking
from .strategies import digraph_instances

# All source-to-sensor paths that can appear in a maximum linking of the
# chain fixture's full attack set.
CHAIN_MAX_LINKING_PATHS = {
    ("u1", "x1", "y1"),
    ("a_y1", "y1"),
    ("u2", "x2", "y2"),
    ("u2", "x2", "x3", "y3"),
    ("u2", "x2", "x3", "x4", "y3"),
}


def names(graph, path):
    return tuple(graph.name_of(v) for v in path)


def test_chain_linking_sizes(chain_graph):
    g = chain_graph
    u1, u2, ay1 = (g.vertex_named(n) for n in ("u1", "u2", "a_y1"))
    assert max_linking_size(g, {u1, ay1}, g.targets) == 1
    assert max_linking_size(g, {u1, u2, ay1}, g.targets) == 2
    assert max_linking_size(g, set(), g.targets) == 0
    assert max_linking_size(g, {u1, u2}, g.targets) == 2


def test_collider_linking_size(collider_graph):
    g = collider_graph
    assert max_linking_size(g, g.attack_set, g.targets) == 2


def test_witness_for_single_attack_vertex(chain_graph):
    g = chain_graph
    linking = find_max_linking(g, {g.vertex_named("a_y1")}, g.targets)
    assert [names(g, p) for p in linking.paths] == [("a_y1", "y1")]


def test_witness_for_full_attack_set(chain_graph):
    g = chain_graph
    linking = find_max_linking(g, g.attack_set, g.targets)
    assert linking.size == 2
    for path in linking.paths:
        assert names(g, path) in CHAIN_MAX_LINKING_PATHS


def test_empty_sources_give_empty_linking(chain_graph):
    linking = find_max_linking(chain_graph, set(), chain_graph.targets)
    assert linking == Linking()
    assert linking.size == 0


def test_witness_size_matches_max(chain_graph, collider_graph):
    for g in (chain_graph, collider_graph):
        linking = find_max_linking(g, g.attack_set, g.targets)
        assert linking.size == max_linking_size(g, g.attack_set, g.targets)


def test_find_max_linking_is_deterministic(chain_graph):
    g = chain_graph
    first = find_max_linking(g, g.attack_set, g.targets)
    second = find_max_linking(g, g.attack_set, g.targets)
    assert first == second


def test_unknown_vertices_rejected(chain_graph):
    ghost = VertexId(VertexKind.STATE, 99)
    with pytest.raises(UnknownVertexError):
        max_linking_size(chain_graph, {ghost}, chain_graph.targets)
    with pytest.raises(UnknownVertexError):
        max_linking_size(chain_graph, chain_graph.attack_set, {ghost})


def test_linking_type_rejects_bad_paths():
    a, b = VertexId(VertexKind.STATE, 0), VertexId(VertexKind.STATE, 1)
    with pytest.raises(ValueError):
        Linking([(a, b, a)])  # repeated vertex
    with pytest.raises(ValueError):
        Linking([(a, b), (b,)])  # shared vertex
    with pytest.raises(ValueError):
        Linking([()])  # empty path


def test_saturation_on_chain(chain_graph):
    g = chain_graph
    u1, u2, ay1 = (g.vertex_named(n) for n in ("u1", "u2", "a_y1"))
    assert saturated_by_all_max_linkings(g, {u1, ay1}, u1) is False
    assert saturated_by_all_max_linkings(g, {u1, u2, ay1}, u2) is True
    # A lone source that reaches the sensors is in every maximum linking.
    assert saturated_by_all_max_linkings(g, {u1}, u1) is True


def test_saturation_validates_membership(chain_graph):
    g = chain_graph
    u1, u2 = g.vertex_named("u1"), g.vertex_named("u2")
    with pytest.raises(ValueError):
        saturated_by_all_max_linkings(g, {u2}, u1)
    with pytest.raises(ValueError):
        saturated_by_all_max_linkings(g, {u1, g.vertex_named("x1")}, u1)


def _successor_ordinals(graph):
    return {
        src.ordinal: {dst.ordinal for s, dst in graph.edges if s == src}
        for src in graph.vertices
    }


@given(digraph_instances())
def test_max_linking_matches_exhaustive_enumeration(instance):
    graph, sources, targets = instance
    expected = brute_force_max_linking(
        _successor_ordinals(graph),
        {v.ordinal for v in sources},
        {v.ordinal for v in targets},
    )
    assert max_linking_size(graph, sources, targets) == expected


@given(digraph_instances())
def test_witness_is_a_valid_linking_of_maximum_size(instance):
    graph, sources, targets = instance
    linking = find_max_linking(graph, sources, targets)
    assert linking.size == max_linking_size(graph, sources, targets)
    for path in linking.paths:
        assert path[0] in sources
        assert path[-1] in targets
        edge_set = set(graph.edges)
        for pair in zip(path, path[1:]):
            assert pair in edge_set


@given(digraph_instances(), st.randoms(use_true_random=False))
def test_single_source_removal_drops_at_most_one(instance, rnd):
    graph, sources, targets = instance
    if not sources:
        return
    v = rnd.choice(sorted(sources))
    full = max_linking_size(graph, sources, targets)
    reduced = max_linking_size(graph, sources - {v}, targets)
    assert reduced in (full - 1, full)
