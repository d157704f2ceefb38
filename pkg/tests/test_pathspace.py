import itertools

import pytest

from ulpa.errors import InadmissibleWord, InvalidPath
from ulpa.freewords import FreeWord, reduce_letters, word_multiply
from ulpa.pathspace import (
    Cylinder,
    SetExpr,
    atoms_at_depth,
    cylinder_from,
    cylinder_is_empty,
    full_space,
    make_cylinder,
    refine_to_depth,
    set_equal,
    set_intersection,
    theta_apply,
    word_domain,
    word_is_admissible,
)


def enumerate_cylinders(g, max_depth):
    """Every well-formed cylinder with prefix length up to max_depth."""
    paths = [()]
    frontier = [()]
    for _ in range(max_depth):
        nxt = []
        for p in frontier:
            for e in g.edges:
                if not p or g.source[e] in g.range[p[-1]]:
                    nxt.append(p + (e,))
        paths.extend(nxt)
        frontier = nxt
    out = []
    for p in paths:
        allowed = g.range[p[-1]] if p else g.vertices
        out.extend(Cylinder(tuple(p), u) for u in allowed)
    return out


def admissible_words(g, max_len):
    letters = [(e, s) for e in g.edges for s in (1, -1)]
    seen = {()}
    out = [FreeWord()]
    for length in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=length):
            w = reduce_letters(combo)
            if len(w.letters) == length and w.letters not in seen and word_is_admissible(g, w.letters):
                seen.add(w.letters)
                out.append(w)
    return out


# -- construction ----------------------------------------------------------------


def test_cylinder_from_examples(g_mix, g_loop):
    assert cylinder_from(g_mix, ("e",), {"v", "w"}).cylinders == {
        Cylinder(("e",), "v"),
        Cylinder(("e",), "w"),
    }
    assert cylinder_from(g_mix, (), set()).is_empty()
    assert cylinder_from(g_loop, (), {"v"}).cylinders == {Cylinder((), "v")}


def test_cylinder_from_drops_missed_vertices(g_chain):
    # v is not in the range of e, so it drops out rather than erroring
    assert cylinder_from(g_chain, ("e",), {"v", "w"}).cylinders == {Cylinder(("e",), "w")}


def test_cylinder_validation(g_ultra):
    with pytest.raises(InvalidPath):
        make_cylinder(g_ultra, ("e",), "u")  # u is not in r(e)
    with pytest.raises(InvalidPath):
        cylinder_from(g_ultra, ("f", "e"), {"v"})  # f then e is fine; e then f is not
        cylinder_from(g_ultra, ("e", "e"), {"v"})


def test_well_formed_cylinders_are_nonempty(sample_graph):
    for c in enumerate_cylinders(sample_graph, 2):
        assert not cylinder_is_empty(sample_graph, c)


# -- refinement --------------------------------------------------------------------


def test_refine_examples(g_mix, g_loop):
    refined = refine_to_depth(g_mix, SetExpr([Cylinder((), "v")]), 1)
    assert refined.cylinders == {Cylinder(("e",), "v"), Cylinder(("e",), "w")}
    sink_point = SetExpr([Cylinder(("e",), "w")])
    assert refine_to_depth(g_mix, sink_point, 3).cylinders == sink_point.cylinders
    assert refine_to_depth(g_loop, SetExpr([Cylinder((), "v")]), 2).cylinders == {
        Cylinder(("e", "e"), "v")
    }


def test_refine_requires_depth_at_least_max(g_loop):
    with pytest.raises(ValueError):
        refine_to_depth(g_loop, SetExpr([Cylinder(("e",), "v")]), 0)


def test_refine_preserves_denotation(sample_graph):
    for c in enumerate_cylinders(sample_graph, 2):
        s = SetExpr([c])
        for depth in (2, 3, 4):
            assert set_equal(sample_graph, s, refine_to_depth(sample_graph, s, depth))


def test_atoms_partition_the_space(sample_graph):
    whole = full_space(sample_graph)
    for depth in (1, 2, 3):
        atoms = sorted(
            atoms_at_depth(sample_graph, whole.cylinders, depth),
            key=lambda c: (c.prefix, c.next),
        )
        assert set_equal(sample_graph, SetExpr(atoms), whole)
        for i, a in enumerate(atoms):
            for b in atoms[i + 1 :]:
                overlap = set_intersection(sample_graph, SetExpr([a]), SetExpr([b]))
                assert overlap.is_empty(), (a, b)


# -- equality ------------------------------------------------------------------------


def test_set_equal_examples(g_loop, g_mix):
    assert set_equal(g_loop, SetExpr([Cylinder((), "v")]), SetExpr([Cylinder(("e",), "v")]))
    assert set_equal(
        g_mix,
        SetExpr([Cylinder((), "v")]),
        SetExpr([Cylinder(("e",), "v"), Cylinder(("e",), "w")]),
    )
    assert not set_equal(g_mix, SetExpr([Cylinder((), "v")]), SetExpr([Cylinder((), "w")]))


# -- partial action -----------------------------------------------------------------


def test_theta_examples(g_chain, g_ultra):
    image = theta_apply(g_chain, (("e", 1),), SetExpr([Cylinder((), "w")]))
    assert image.cylinders == {Cylinder(("e",), "w")}
    s = SetExpr([Cylinder(("e",), "w")])
    assert theta_apply(g_chain, (), s).cylinders == s.cylinders
    with pytest.raises(InadmissibleWord):
        theta_apply(g_ultra, (("e", 1), ("f", -1)), full_space(g_ultra))


def test_theta_inverse_is_identity_on_domain(sample_graph):
    g = sample_graph
    for w in admissible_words(g, 2):
        if w.is_identity():
            continue
        domain = word_domain(g, w.inverse().letters)
        for c in enumerate_cylinders(g, 2):
            s = set_intersection(g, SetExpr([c]), domain)
            if s.is_empty():
                continue
            back = theta_apply(g, w.inverse().letters, theta_apply(g, w.letters, s))
            assert set_equal(g, back, s)


def test_theta_composition_law(sample_graph):
    g = sample_graph
    words = admissible_words(g, 2)
    cylinders = enumerate_cylinders(g, 2)
    for c in words:
        for t in words:
            ct = word_multiply(c, t)
            for cyl in cylinders:
                s = SetExpr([cyl])
                lhs = theta_apply(g, c.letters, theta_apply(g, t.letters, s))
                if word_is_admissible(g, ct.letters):
                    rhs = set_intersection(
                        g, theta_apply(g, ct.letters, s), word_domain(g, c.letters)
                    )
                else:
                    rhs = SetExpr()
                assert set_equal(g, lhs, rhs)
