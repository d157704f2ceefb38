import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ulpa.errors import DuplicateLabel, EmptyRange, NotClosed, UnknownVertex
from ulpa.ultragraph import (
    Cycle,
    EdgeExit,
    SinkExit,
    Ultragraph,
    enumerate_cycles,
    exits_of_closed_path,
    lattice_closure,
    make_ultragraph,
    satisfies_condition_l,
    sinks,
    validate_ultragraph,
)


# -- validation ---------------------------------------------------------------


def test_valid_graph_accepted(g_mix):
    assert validate_ultragraph(g_mix) is g_mix


def test_empty_range_rejected():
    with pytest.raises(EmptyRange):
        make_ultragraph(["v"], ["e"], {"e": "v"}, {"e": []})


def test_unknown_source_rejected():
    with pytest.raises(UnknownVertex):
        make_ultragraph(["v"], ["e"], {"e": "z"}, {"e": ["v"]})


def test_unknown_range_vertex_rejected():
    with pytest.raises(UnknownVertex):
        make_ultragraph(["v"], ["e"], {"e": "v"}, {"e": ["z"]})


def test_duplicate_labels_rejected():
    with pytest.raises(DuplicateLabel):
        make_ultragraph(["v", "v"], [], {}, {})
    with pytest.raises(DuplicateLabel):
        make_ultragraph(["v"], ["v"], {"v": "v"}, {"v": ["v"]})


# -- lattice closure ----------------------------------------------------------


def brute_force_closure(g: Ultragraph) -> set[frozenset[str]]:
    """Independent oracle: saturate a worklist one pair at a time."""
    closure = {frozenset()} | {frozenset({v}) for v in g.vertices} | {g.range[e] for e in g.edges}
    queue = list(closure)
    while queue:
        a = queue.pop()
        for b in list(closure):
            for candidate in (a | b, a & b):
                if candidate not in closure:
                    closure.add(candidate)
                    queue.append(candidate)
    return closure


def test_lattice_mix(g_mix):
    expected = {frozenset(), frozenset({"v"}), frozenset({"w"}), frozenset({"v", "w"})}
    assert lattice_closure(g_mix) == expected == brute_force_closure(g_mix)


def test_lattice_single_vertex():
    g = make_ultragraph(["v"], [], {}, {})
    assert lattice_closure(g) == {frozenset(), frozenset({"v"})}


def test_lattice_ultra(g_ultra):
    subsets = {
        frozenset(c) for r in range(4) for c in itertools.combinations("uvw", r)
    }
    assert lattice_closure(g_ultra) == subsets == brute_force_closure(g_ultra)


def test_lattice_closure_idempotent_and_closed(sample_graph):
    closure = lattice_closure(sample_graph)
    for a in closure:
        for b in closure:
            assert a | b in closure
            assert a & b in closure
    for v in sample_graph.vertices:
        assert frozenset({v}) in closure
    for e in sample_graph.edges:
        assert sample_graph.range[e] in closure


@st.composite
def small_graphs(draw):
    n_vertices = draw(st.integers(1, 4))
    vertices = [f"v{i}" for i in range(n_vertices)]
    n_edges = draw(st.integers(0, 3))
    edges, source, range_ = [], {}, {}
    for i in range(n_edges):
        e = f"e{i}"
        edges.append(e)
        source[e] = draw(st.sampled_from(vertices))
        range_[e] = draw(st.sets(st.sampled_from(vertices), min_size=1))
    return make_ultragraph(vertices, edges, source, range_)


@settings(max_examples=40, deadline=None)
@given(small_graphs())
def test_lattice_closure_is_a_fixpoint(g):
    closure = lattice_closure(g)
    assert closure == brute_force_closure(g)
    again = {frozenset()} | closure
    for a in closure:
        for b in closure:
            again.add(a | b)
            again.add(a & b)
    assert again == closure


# -- sinks ---------------------------------------------------------------------


def test_sinks_examples(g_mix, g_loop):
    assert sinks(g_mix) == ["w"]
    assert sinks(g_loop) == []
    assert sinks(make_ultragraph(["v"], [], {}, {})) == ["v"]


# -- cycles ----------------------------------------------------------------------


def brute_force_cycles(g: Ultragraph) -> set[tuple[str, ...]]:
    """All source-distinct closed edge sequences up to length |vertices|,
    canonicalized by least rotation."""
    found = set()
    for length in range(1, len(g.vertices) + 1):
        for combo in itertools.product(g.edges, repeat=length):
            ok = all(g.source[combo[i + 1]] in g.range[combo[i]] for i in range(length - 1))
            ok = ok and g.source[combo[0]] in g.range[combo[-1]]
            sources = [g.source[e] for e in combo]
            ok = ok and len(set(sources)) == length
            if ok:
                rotations = [combo[i:] + combo[:i] for i in range(length)]
                found.add(min(rotations, key=lambda r: tuple(g.edge_index(e) for e in r)))
    return found


def test_cycles_examples(g_loop, g_chain, g_ultra):
    assert {c.edges for c in enumerate_cycles(g_loop)} == {("e",)}
    assert enumerate_cycles(g_chain) == []
    assert {c.edges for c in enumerate_cycles(g_ultra)} == {("e", "f")}


def test_cycles_match_brute_force(sample_graph):
    assert {c.edges for c in enumerate_cycles(sample_graph)} == brute_force_cycles(sample_graph)


# -- exits -------------------------------------------------------------------------


def test_exits_examples(g_mix, g_loop, g_loop2):
    assert exits_of_closed_path(g_mix, ("e",)) == [SinkExit(1, "w")]
    assert exits_of_closed_path(g_loop, ("e",)) == []
    assert exits_of_closed_path(g_loop2, ("e",)) == [EdgeExit(1, "f")]


def test_exits_requires_closed_path(g_chain):
    with pytest.raises(NotClosed):
        exits_of_closed_path(g_chain, ("e",))


def test_condition_l_examples(g_loop, g_mix, g_chain):
    ok, witness = satisfies_condition_l(g_loop)
    assert not ok and witness == Cycle(("e",))
    assert satisfies_condition_l(g_mix) == (True, None)
    assert satisfies_condition_l(g_chain) == (True, None)


def test_condition_l_agrees_with_cycle_scan(sample_graph):
    ok, _ = satisfies_condition_l(sample_graph)
    expected = all(
        exits_of_closed_path(sample_graph, c.edges) for c in enumerate_cycles(sample_graph)
    )
    assert ok == expected
