import pytest

from corpus import random_nonzero_elements
from ulpa.errors import RingHasZeroDivisors, ZeroElement
from ulpa.leavitt import LeavittAlgebra
from ulpa.reduction import (
    CyclePowers,
    Factor,
    ScalarProjection,
    apply_factors,
    find_vertex_right_support,
    reduce_element,
    semiprime_square_witness,
    strip_ghost_edges,
)
from ulpa.rings import QQ, ZZ, Zmod
from ulpa.ultragraph import exits_of_closed_path, make_ultragraph


# -- vertex support -----------------------------------------------------------------


def test_find_vertex_examples(alg_mix, alg_ultra):
    assert find_vertex_right_support(alg_mix, alg_mix.p("w")) == "w"
    assert find_vertex_right_support(alg_mix, alg_mix.s("e")) == "v"  # first in scan order
    assert find_vertex_right_support(alg_ultra, alg_ultra.s("f")) == "u"


def test_find_vertex_rejects_zero(alg_mix):
    with pytest.raises(ZeroElement):
        find_vertex_right_support(alg_mix, alg_mix.zero())


def test_find_vertex_postcondition(sample_graph):
    alg = LeavittAlgebra(sample_graph, QQ)
    for expr, x in random_nonzero_elements(alg, 20, seed=3):
        v = find_vertex_right_support(alg, x)
        assert not (x * alg.p(v)).is_zero()


# -- ghost stripping -----------------------------------------------------------------


def test_strip_examples(alg_mix, alg_loop):
    y, xy = strip_ghost_edges(alg_mix, alg_mix.p(["v", "w"]))
    assert y == [] and xy == alg_mix.p(["v", "w"])

    y, xy = strip_ghost_edges(alg_mix, alg_mix.s_star("e"))
    assert y == ["e"] and xy == alg_mix.p(["v", "w"])

    y, xy = strip_ghost_edges(alg_loop, alg_loop.p("v") + alg_loop.s_star("e"))
    assert y == ["e"] and xy == alg_loop.s("e") + alg_loop.p("v")


def test_strip_output_is_positive_and_nonzero(sample_graph):
    from ulpa.pathspace import word_parts

    alg = LeavittAlgebra(sample_graph, QQ)
    for expr, x in random_nonzero_elements(alg, 30, seed=9):
        y, xy = strip_ghost_edges(alg, x)
        assert not xy.is_zero()
        product = x
        for e in y:
            product = product * alg.s(e)
        assert product == xy
        for word, f in xy.components.items():
            a, b = word_parts(alg.graph, word.letters)
            assert not b
            for cyl, _ in f.items():
                assert len(cyl.prefix) == len(a)


# -- reduction ------------------------------------------------------------------------


def test_reduce_projection_example(alg_chain):
    out = reduce_element(alg_chain, alg_chain.p("w"))
    assert out.mu == () and out.nu == ()
    assert out.form == ScalarProjection(QQ.one, frozenset({"w"}))


def test_reduce_strip_example(alg_mix):
    out = reduce_element(alg_mix, alg_mix.s("e") * alg_mix.s_star("e"))
    assert out.mu == (Factor("edge_star", "e"),)
    assert out.nu == (Factor("edge", "e"),)
    assert out.form == ScalarProjection(QQ.one, frozenset({"v", "w"}))


def test_reduce_cycle_example(alg_loop):
    out = reduce_element(alg_loop, alg_loop.p("v") + alg_loop.s("e"))
    assert out.mu == (Factor("edge", "e"),)
    assert out.nu == ()
    assert isinstance(out.form, CyclePowers)
    assert out.form.cycle == ("e",)
    assert out.form.coefficients == {1: QQ.one, 2: QQ.one}


def test_reduce_rejects_zero(alg_loop):
    with pytest.raises(ZeroElement):
        reduce_element(alg_loop, alg_loop.s("e") - alg_loop.s("e"))


def test_reduce_needs_vertex_factor_for_sink_outcomes(alg_mix):
    # p(v) + s(e) on the mixed graph reduces through the sink exit; the sink
    # emits nothing, so only a vertex projection can pin the result there.
    out = reduce_element(alg_mix, alg_mix.p("v") + alg_mix.s("e"))
    assert Factor("vertex", "w") in out.mu
    assert out.form == ScalarProjection(QQ.one, frozenset({"w"}))


def test_reduce_invariants_on_corpus(sample_graph):
    alg = LeavittAlgebra(sample_graph, QQ)
    for expr, x in random_nonzero_elements(alg, 40, seed=13):
        out = reduce_element(alg, x)
        sandwich = apply_factors(alg, out.mu, x, out.nu)
        assert not sandwich.is_zero()
        assert sandwich == out.form_element(alg)
        if isinstance(out.form, CyclePowers):
            assert exits_of_closed_path(alg.graph, out.form.cycle) == []
            assert all(k >= 1 for k in out.form.coefficients)


def test_reduce_through_a_wrap_around_exit():
    """Two loop edges at one vertex: the only exit of the path g comes from
    reading the successor index cyclically, and conjugating by g then the
    exit edge leaves the longer summand alive, so the recursion must keep
    going rather than stop at a projection."""
    g = make_ultragraph(["v"], ["g", "h"], {"g": "v", "h": "v"}, {"g": ["v"], "h": ["v"]})
    alg = LeavittAlgebra(g, QQ)
    x = alg.p("v") + alg.s("g") + alg.s_path(("g", "h"))
    out = reduce_element(alg, x)
    sandwich = apply_factors(alg, out.mu, x, out.nu)
    assert not sandwich.is_zero()
    assert sandwich == out.form_element(alg)
    assert isinstance(out.form, ScalarProjection)


def test_reduce_distinct_coefficients_on_two_sinks():
    """Both summand vertices are sinks, so no edge factor can separate them;
    the outcome needs a vertex projection."""
    g = make_ultragraph(["u", "w"], [], {}, {})
    alg = LeavittAlgebra(g, QQ)
    x = alg.p("u").scale(alg.scalar(2)) + alg.p("w").scale(alg.scalar(3))
    out = reduce_element(alg, x)
    assert out.nu == (Factor("vertex", "u"),)
    assert out.form == ScalarProjection(alg.scalar(2), frozenset({"u"}))


def test_reduce_equal_coefficients_need_no_factors():
    g = make_ultragraph(["u", "w"], [], {}, {})
    alg = LeavittAlgebra(g, QQ)
    x = alg.p(["u", "w"]).scale(alg.scalar(5))
    out = reduce_element(alg, x)
    assert out.mu == () and out.nu == ()
    assert out.form == ScalarProjection(alg.scalar(5), frozenset({"u", "w"}))


def test_reduce_on_a_deeper_mixed_graph():
    """A graph with two sinks, a branch vertex and a cycle exercises every
    branch of the recursion on a single corpus."""
    g = make_ultragraph(
        ["a", "b", "c", "d"],
        ["e1", "e2", "e3"],
        {"e1": "a", "e2": "b", "e3": "b"},
        {"e1": ["b", "c"], "e2": ["a"], "e3": ["c", "d"]},
    )
    alg = LeavittAlgebra(g, QQ)
    for expr, x in random_nonzero_elements(alg, 60, seed=77):
        out = reduce_element(alg, x)
        sandwich = apply_factors(alg, out.mu, x, out.nu)
        assert not sandwich.is_zero()
        assert sandwich == out.form_element(alg)
        if isinstance(out.form, CyclePowers):
            assert exits_of_closed_path(g, out.form.cycle) == []


def test_reduce_on_random_graphs():
    import random

    rng = random.Random(424242)
    for trial in range(12):
        nv = rng.randint(1, 4)
        vertices = [f"v{i}" for i in range(nv)]
        edges, source, range_ = [], {}, {}
        for j in range(rng.randint(0, 4)):
            e = f"e{j}"
            edges.append(e)
            source[e] = rng.choice(vertices)
            range_[e] = rng.sample(vertices, rng.randint(1, nv))
        g = make_ultragraph(vertices, edges, source, range_)
        alg = LeavittAlgebra(g, QQ)
        for expr, x in random_nonzero_elements(alg, 10, seed=trial):
            out = reduce_element(alg, x)
            sandwich = apply_factors(alg, out.mu, x, out.nu)
            assert not sandwich.is_zero()
            assert sandwich == out.form_element(alg)
            if isinstance(out.form, CyclePowers):
                assert exits_of_closed_path(g, out.form.cycle) == []


# -- semiprimeness ----------------------------------------------------------------------


def test_semiprime_examples(alg_chain, alg_loop, g_mix):
    witness = semiprime_square_witness(LeavittAlgebra(alg_chain.graph, ZZ), LeavittAlgebra(alg_chain.graph, ZZ).p("w"))
    assert witness.element == LeavittAlgebra(alg_chain.graph, ZZ).p("w")

    witness = semiprime_square_witness(alg_loop, alg_loop.s("e"))
    assert not (witness.element * witness.element).is_zero()

    with pytest.raises(RingHasZeroDivisors):
        alg6 = LeavittAlgebra(g_mix, Zmod(6))
        semiprime_square_witness(alg6, alg6.p("v"))


def test_semiprime_on_corpus(sample_graph):
    for ring in (ZZ, QQ):
        alg = LeavittAlgebra(sample_graph, ring)
        for expr, x in random_nonzero_elements(alg, 15, seed=21):
            witness = semiprime_square_witness(alg, x)
            assert not (witness.element * witness.element).is_zero()
