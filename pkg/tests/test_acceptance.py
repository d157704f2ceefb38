"""Acceptance criteria, one test per criterion, exact arithmetic throughout.

Each test prints one PASS line on success; any assertion failure marks the
criterion red.  Criteria with stated runtime budgets assert them.
"""

import itertools
import time
from fractions import Fraction

from corpus import random_nonzero_elements
from ulpa import samples
from ulpa.branching import (
    build_interval_system,
    build_rotation_variant,
    check_faithfulness_criterion,
    kernel_witness,
    probe_points,
    rep_apply,
)
from ulpa.freewords import FreeWord, reduce_letters, word_multiply
from ulpa.leavitt import LeavittAlgebra, render_expr
from ulpa.pathspace import (
    Cylinder,
    SetExpr,
    set_equal,
    set_intersection,
    theta_apply,
    word_domain,
    word_is_admissible,
)
from ulpa.permutative import (
    canonical_discrete_data,
    check_equivalence,
    permutative_to_branching,
    stratify,
)
from ulpa.reduction import (
    CyclePowers,
    ScalarProjection,
    apply_factors,
    factor_expr,
    reduce_element,
    semiprime_square_witness,
)
from ulpa.rings import QQ, ZZ, Zmod
from ulpa.ultragraph import exits_of_closed_path, lattice_closure

GRAPHS = ["G_LOOP", "G_LOOP2", "G_CHAIN", "G_MIX", "G_ULTRA"]
CORPUS_SIZE = 200


def _report(criterion: int, text: str):
    print(f"ACCEPTANCE {criterion}: PASS ({text})")


# -- criterion 1: relation suite -----------------------------------------------------


def test_criterion_1_relations():
    started = time.monotonic()
    checked = 0
    for name in GRAPHS:
        g = samples.load(name)
        for ring in (ZZ, QQ, Zmod(5)):
            report = LeavittAlgebra(g, ring).verify_relations()
            assert report["passed"], (name, ring.name, report["checks"])
            checked += len(report["checks"])
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"relation suite took {elapsed:.1f}s"
    _report(1, f"{checked} relation instances over Z, Q, Z/5 in {elapsed:.2f}s")


# -- criterion 2: nontriviality -------------------------------------------------------


def test_criterion_2_nontriviality():
    checked = 0
    for name in GRAPHS:
        g = samples.load(name)
        alg = LeavittAlgebra(g, QQ)
        for a in lattice_closure(g):
            if a:
                assert not alg.p(a).is_zero(), (name, a)
                checked += 1
        for e in g.edges:
            assert not alg.s(e).is_zero()
            assert not alg.s_star(e).is_zero()
            checked += 2
    _report(2, f"{checked} generators nonzero across all bundled graphs")


# -- criteria 3 and 4: reduction and semiprimeness --------------------------------------


def _corpus(ring, name, count=CORPUS_SIZE):
    return random_nonzero_elements(LeavittAlgebra(samples.load(name), ring), count)


def test_criterion_3_reduction():
    started = time.monotonic()
    outcomes = 0
    for name in GRAPHS:
        g = samples.load(name)
        alg = LeavittAlgebra(g, QQ)
        for expr, x in random_nonzero_elements(alg, CORPUS_SIZE):
            out = reduce_element(alg, x)
            sandwich = apply_factors(alg, out.mu, x, out.nu)
            assert not sandwich.is_zero()
            assert (sandwich - out.form_element(alg)).is_zero()
            if isinstance(out.form, CyclePowers):
                assert exits_of_closed_path(g, out.form.cycle) == []
            outcomes += 1
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"reduction corpus took {elapsed:.1f}s"
    _report(3, f"{outcomes} random nonzero elements reduced and verified in {elapsed:.1f}s")


def test_criterion_4_semiprime():
    squares = 0
    for name in GRAPHS:
        g = samples.load(name)
        for ring in (ZZ, QQ):
            alg = LeavittAlgebra(g, ring)
            for expr, x in random_nonzero_elements(alg, CORPUS_SIZE):
                witness = semiprime_square_witness(alg, x)
                assert not (witness.element * witness.element).is_zero()
                squares += 1
    _report(4, f"{squares} reduced sandwiches squared to nonzero over Z and Q")


# -- criterion 5: faithfulness dichotomy ---------------------------------------------------


def _nonzero_image_via_reduction(g, alg, bs, expr, x):
    """Complete check that the induced representation does not kill x.

    The reduced sandwich is nonzero on a point mass chosen from its form;
    pushing that point mass through the factor chain exhibits a vector on
    which x itself acts nonzero.
    """
    ring = alg.ring
    out = reduce_element(alg, x)
    if isinstance(out.form, ScalarProjection):
        dset = bs.d_of(out.form.vertices)
        assert not dset.is_empty()
        iv = dset.intervals[0]
        z0 = (iv.lo, iv.label)
    else:
        z0 = (Fraction(0), out.form.cycle[0])
    vec = {z0: ring.one}
    for factor in reversed(out.nu):
        vec = rep_apply(bs, ring, factor_expr(factor), vec)
    assert vec, "factor chain lost the witness point"
    vec = rep_apply(bs, ring, expr, vec)
    assert vec, "element annihilated its witness vector"
    for factor in reversed(out.mu):
        vec = rep_apply(bs, ring, factor_expr(factor), vec)
    assert vec, "sandwich annihilated its witness vector"


def test_criterion_5_faithfulness_dichotomy():
    # kernel witness side: the plain unit-block system on the loop
    g = samples.load("G_LOOP")
    alg = LeavittAlgebra(g, QQ)
    bs = build_interval_system(g)
    witness = kernel_witness(alg, bs, 50)
    assert render_expr(witness, g) == "s(e) - p({v})"
    assert not alg.eval_expr(witness).is_zero()
    for p in probe_points(bs):
        assert rep_apply(bs, QQ, witness, {p: QQ.one}) == {}

    # faithful side: rotation by 1/97 up to horizon 50
    rotation = build_rotation_variant(g, bs, 97)
    verdict = check_faithfulness_criterion(g, rotation, 50)
    assert verdict.faithful
    assert kernel_witness(alg, rotation, 50) is None
    corpus = random_nonzero_elements(alg, CORPUS_SIZE)
    for expr, x in corpus:
        _nonzero_image_via_reduction(g, alg, rotation, expr, x)

    # Condition (L) side: every corpus element survives the standard system
    g_mix = samples.load("G_MIX")
    alg_mix = LeavittAlgebra(g_mix, QQ)
    bs_mix = build_interval_system(g_mix)
    for expr, x in random_nonzero_elements(alg_mix, CORPUS_SIZE):
        _nonzero_image_via_reduction(g_mix, alg_mix, bs_mix, expr, x)
    _report(5, "kernel witness on the loop; rotation and Condition (L) systems kill nothing")


# -- criterion 6: partial-action axioms --------------------------------------------------------


def _admissible_words(g, max_len):
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


def _generator_cylinders(g, max_depth):
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


def test_criterion_6_partial_action_axioms():
    checked = 0
    for name in GRAPHS:
        g = samples.load(name)
        words = _admissible_words(g, 4)
        cylinders = _generator_cylinders(g, 3)
        for cyl in cylinders:
            s = SetExpr([cyl])
            assert set_equal(g, theta_apply(g, (), s), s)
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
                    assert set_equal(g, lhs, rhs), (name, c, t, cyl)
                    checked += 1
    _report(6, f"{checked} composition instances, words up to length 4, depth-3 cylinders")


# -- criterion 7: stratification ----------------------------------------------------------------


def test_criterion_7_stratification():
    g = samples.load("G_CHAIN")
    strat = stratify(g)
    assert strat.covered
    assert len(strat.levels) == 1
    assert {tuple(sorted(ex.vertices)) for ex in strat.levels[0].extremes} == {("v",), ("w",)}
    assert strat.levels[0].edges == ("e",)
    for name in ("G_LOOP", "G_MIX", "G_ULTRA"):
        strat = stratify(samples.load(name))
        assert not strat.covered and strat.levels == ()
    # golden files are compared field by field in test_permutative
    _report(7, "peeling covers the chain and nothing else among the bundled graphs")


# -- criterion 8: permutative round trip -----------------------------------------------------------


def test_criterion_8_permutative_round_trip():
    checked = 0
    for name in ("G_CHAIN", "G_MIX"):
        g = samples.load(name)
        pd = canonical_discrete_data(g)
        system, intertwiner = permutative_to_branching(g, pd)
        report = check_equivalence(g, pd, QQ)
        assert report["equivalent"], (name, report)
        assert set(intertwiner) == set(pd.points)
        checked += report["checked"]
    _report(8, f"intertwiner equation exact on {checked} generator/basis-vector pairs")


# -- criterion 9: oracle cross-check -----------------------------------------------------------------


def _brute_force_tables(g, ring, x, depth):
    """Independent normal form: expand every component to uniform depth
    using only the raw source and range maps."""
    tables = {}
    for word, f in x.homogeneous_components():
        acc = {}
        for cyl, co in f.items():
            stack = [(cyl.prefix, cyl.next)]
            while stack:
                prefix, nxt = stack.pop()
                emitted = [e for e in g.edges if g.source[e] == nxt]
                if not emitted or len(prefix) >= depth:
                    key = (prefix, nxt)
                    acc[key] = acc.get(key, ring.zero) + co
                else:
                    for e in emitted:
                        for u in g.range[e]:
                            stack.append((prefix + (e,), u))
        acc = {k: v for k, v in acc.items() if not v == ring.zero}
        if acc:
            tables[word.letters] = acc
    return tables


def test_criterion_9_oracle_cross_check():
    agreements = 0
    for name in GRAPHS:
        g = samples.load(name)
        alg = LeavittAlgebra(g, QQ)
        pairs = random_nonzero_elements(alg, 100, seed=99)
        for (ex, x), (ey, y) in zip(pairs[:50], pairs[50:]):
            fast = (x - y).is_zero()
            depth = 1 + max(
                [len(c.prefix) for _, f in x.homogeneous_components() for c, _ in f.items()]
                + [len(c.prefix) for _, f in y.homogeneous_components() for c, _ in f.items()]
                + [0]
            )
            brute = _brute_force_tables(g, QQ, x, depth) == _brute_force_tables(g, QQ, y, depth)
            assert fast == brute, (name, ex, ey)
            agreements += 1
    _report(9, f"{agreements} equality decisions agree with the brute-force normal form")
