"""Constructive reduction of nonzero algebra elements.

Every nonzero element can be multiplied on the left and right by
generator factors down to either a scalar multiple of a projection or a
combination of strictly positive powers of an exitless cycle.  The
procedure below mirrors the inductive argument that proves this:

1. right-multiply by edges until every graded component sits at a
   positive word with its support atoms exactly at the word's depth
   (no starred generator survives in any monomial description);
2. localize at a vertex, eliminate divergent path summands by starred
   left factors, and walk the remaining prefix chain;
3. at a closed path, an edge exit or a sink exit cuts the cycle terms
   away; with no exit the element is a combination of powers of the
   primitive exitless cycle.

Left/right factor sequences may contain vertex projections as well as
signed edges: a projection is unavoidable whenever the terminal form
must be pinned at a sink (a sink emits nothing, so no edge factor can
select it), and the correctness of every outcome is re-checked against
the equality oracle before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import RingHasZeroDivisors, ZeroElement
from .freewords import IDENTITY, FreeWord
from .leavitt import GeneratorExpr, LeavittAlgebra, PGen, SGen, SStarGen
from .pathspace import Cylinder, word_parts
from .skew import GradedElement
from .ultragraph import EdgeExit, SinkExit, exits_of_closed_path, is_closed

_MAX_ROUNDS = 10_000


# -- factors ------------------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """One multiplier: an edge generator, its star, or a vertex projection."""

    kind: str  # "edge" | "edge_star" | "vertex"
    label: str

    def __repr__(self):
        if self.kind == "edge":
            return self.label
        if self.kind == "edge_star":
            return f"{self.label}*"
        return f"p({self.label})"


def factor_element(alg: LeavittAlgebra, f: Factor) -> GradedElement:
    if f.kind == "edge":
        return alg.s(f.label)
    if f.kind == "edge_star":
        return alg.s_star(f.label)
    return alg.p(f.label)


def factor_expr(f: Factor) -> GeneratorExpr:
    if f.kind == "edge":
        return SGen(f.label)
    if f.kind == "edge_star":
        return SStarGen(f.label)
    return PGen(frozenset({f.label}))


def apply_factors(alg: LeavittAlgebra, mu: Sequence[Factor], x: GradedElement, nu: Sequence[Factor]) -> GradedElement:
    """The sandwich (Π mu) · x · (Π nu), factors taken in written order."""
    out = x
    for f in reversed(mu):
        out = factor_element(alg, f) * out
    for f in nu:
        out = out * factor_element(alg, f)
    return out


def _star_factors(path: Sequence[str]) -> list[Factor]:
    """Factors of s_path* in product order (last edge starred first)."""
    return [Factor("edge_star", e) for e in reversed(path)]


def _edge_factors(path: Sequence[str]) -> list[Factor]:
    return [Factor("edge", e) for e in path]


# -- outcomes ------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarProjection:
    coefficient: object
    vertices: frozenset[str]


@dataclass(frozen=True)
class CyclePowers:
    cycle: tuple[str, ...]
    coefficients: dict[int, object]


@dataclass(frozen=True)
class ReductionOutcome:
    mu: tuple[Factor, ...]
    nu: tuple[Factor, ...]
    form: ScalarProjection | CyclePowers

    def form_element(self, alg: LeavittAlgebra) -> GradedElement:
        if isinstance(self.form, ScalarProjection):
            return alg.p(self.form.vertices).scale(self.form.coefficient)
        out = alg.zero()
        power = alg.one()
        step = alg.s_path(self.form.cycle)
        top = max(self.form.coefficients)
        for i in range(1, top + 1):
            power = power * step
            if i in self.form.coefficients:
                out = out + power.scale(self.form.coefficients[i])
        return out


# -- vertex support ------------------------------------------------------------


def find_vertex_right_support(alg: LeavittAlgebra, x: GradedElement) -> str:
    """First vertex v in declaration order with x·p(v) nonzero."""
    if x.is_zero():
        raise ZeroElement("the zero element has no vertex support")
    for v in alg.graph.vertices:
        if not (x * alg.p(v)).is_zero():
            return v
    raise AssertionError("a nonzero element must have a supporting vertex")


# -- ghost stripping -----------------------------------------------------------


def _word_positive_part(alg: LeavittAlgebra, word: FreeWord) -> tuple[str, ...]:
    a, _ = word_parts(alg.graph, word.letters)
    return a


def _find_offense(alg: LeavittAlgebra, x: GradedElement):
    """First component carrying a starred letter or an atom deeper than its
    word, with the stripping edge that removes one layer of it."""
    g = alg.graph
    tables = x.atoms()
    for word in x.words():
        a, b = word_parts(g, word.letters)
        if b:
            return b[0]
        deep = [c for c in tables[word] if len(c.prefix) > len(a)]
        if deep:
            deepest = max(len(c.prefix) for c in deep)
            first = min(
                (c for c in deep if len(c.prefix) == deepest),
                key=lambda c: tuple(g.edge_index(e) for e in c.prefix),
            )
            return first.prefix[len(a)]
    return None


def strip_ghost_edges(alg: LeavittAlgebra, x: GradedElement) -> tuple[list[str], GradedElement]:
    """Right-multiply by edges until no monomial description of the element
    needs a starred generator.

    Afterwards every component word is a positive path and every support
    atom sits exactly at its word's depth.  Nonzeroness is preserved at
    each step: the component the stripping edge was drawn from survives
    the multiplication intact.
    """
    if x.is_zero():
        raise ZeroElement("cannot strip the zero element")
    applied: list[str] = []
    for _ in range(_MAX_ROUNDS):
        edge = _find_offense(alg, x)
        if edge is None:
            return applied, x
        x = x * alg.s(edge)
        applied.append(edge)
        if x.is_zero():
            raise AssertionError("stripping must preserve nonzeroness")
    raise AssertionError("ghost stripping did not terminate")


# -- the main recursion ---------------------------------------------------------


def _positive_words_chain(words: list[FreeWord]) -> tuple[FreeWord, FreeWord] | None:
    """First consecutive sorted pair that is not prefix-ordered, if any."""
    for w1, w2 in zip(words, words[1:]):
        if w2.letters[: len(w1.letters)] != w1.letters:
            return w1, w2
    return None


def _primitive_root(alg: LeavittAlgebra, path: tuple[str, ...]) -> tuple[str, ...]:
    g = alg.graph
    for p in range(1, len(path) + 1):
        if len(path) % p == 0 and is_closed(g, path[:p]):
            d = path[:p]
            if d * (len(path) // p) == path:
                return d
    raise AssertionError("closed path has no closed primitive root")


def reduce_element(alg: LeavittAlgebra, x: GradedElement) -> ReductionOutcome:
    """Reduce a nonzero element to a scalar projection or cycle powers.

    The returned factor sequences and form are verified against the
    equality oracle before returning.
    """
    if x.is_zero():
        raise ZeroElement("cannot reduce the zero element")
    g, ring = alg.graph, alg.ring
    original = x
    mu: list[Factor] = []
    nu: list[Factor] = []

    def finish(form) -> ReductionOutcome:
        outcome = ReductionOutcome(tuple(mu), tuple(nu), form)
        sandwich = apply_factors(alg, outcome.mu, original, outcome.nu)
        if sandwich.is_zero() or not sandwich == outcome.form_element(alg):
            raise AssertionError("reduction outcome failed oracle verification")
        return outcome

    for _ in range(_MAX_ROUNDS):
        stripped, x = strip_ghost_edges(alg, x)
        nu.extend(_edge_factors(stripped))
        tables = x.atoms()
        words = x.words()
        positive = [w for w in words if not w.is_identity()]

        if not positive:
            # projections only: x = Σ λ_u p_u over distinct vertices
            coeffs = tables[IDENTITY]
            values = set(coeffs.values())
            if len(values) == 1:
                (value,) = values
                return finish(ScalarProjection(value, frozenset(c.next for c in coeffs)))
            v = min((c.next for c in coeffs), key=g.vertex_index)
            nu.append(Factor("vertex", v))
            x = x * alg.p(v)
            value = x.atoms()[IDENTITY][Cylinder((), v)]
            return finish(ScalarProjection(value, frozenset({v})))

        if IDENTITY not in x.components:
            # no projection part: peel the shortest path summand from the left
            a1 = positive[0].letters
            path = tuple(e for e, _ in a1)
            mu[:0] = _star_factors(path)
            x = apply_factors(alg, _star_factors(path), x, [])
            continue

        violation = _positive_words_chain(positive)
        if violation is not None:
            # two path summands diverge: the starred shorter one kills the other
            u = tuple(e for e, _ in violation[0].letters)
            mu[:0] = _star_factors(u)
            x = apply_factors(alg, _star_factors(u), x, [])
            continue

        # prefix chain with a projection part: localize at a supporting vertex
        v = min((c.next for c in tables[IDENTITY]), key=g.vertex_index)
        localized = x * alg.p(v)
        if not (x - localized).is_zero():
            nu.append(Factor("vertex", v))
            x = localized
            continue
        if any(g.source[w.letters[0][0]] != v for w in positive):
            mu[:0] = [Factor("vertex", v)]
            x = alg.p(v) * x
            continue

        # every path summand is a closed path based at v extending the shortest
        c = tuple(e for e, _ in positive[0].letters)
        exits = exits_of_closed_path(g, c)
        edge_exits = [ex for ex in exits if isinstance(ex, EdgeExit)]
        sink_exits = [ex for ex in exits if isinstance(ex, SinkExit)]

        if edge_exits:
            ex = edge_exits[0]
            q = c[: ex.index] + (ex.edge,)
            mu[:0] = _star_factors(q)
            nu.extend(_edge_factors(q))
            x = apply_factors(alg, _star_factors(q), x, _edge_factors(q))
            continue

        if sink_exits:
            ex = sink_exits[0]
            q = c[: ex.index]
            left = [Factor("vertex", ex.vertex)] + _star_factors(q)
            mu[:0] = left
            nu.extend(_edge_factors(q))
            x = apply_factors(alg, left, x, _edge_factors(q))
            continue

        # no exit: powers of the primitive exitless cycle
        d = _primitive_root(alg, c)
        coeffs: dict[int, object] = {}
        beta = tables[IDENTITY][Cylinder((), v)]
        for w in positive:
            path = tuple(e for e, _ in w.letters)
            if len(path) % len(d) != 0 or d * (len(path) // len(d)) != path:
                raise AssertionError("exitless chain summand is not a cycle power")
            coeffs[len(path) // len(d) + 1] = tables[w][Cylinder(path, v)]
        coeffs[1] = beta
        mu[:0] = _edge_factors(d)
        x = apply_factors(alg, _edge_factors(d), x, [])
        if exits_of_closed_path(g, d):
            raise AssertionError("primitive root of an exitless path has an exit")
        return finish(CyclePowers(d, coeffs))

    raise AssertionError("reduction did not terminate")


# -- semiprimeness ---------------------------------------------------------------


@dataclass(frozen=True)
class SemiprimeWitness:
    outcome: ReductionOutcome
    element: GradedElement


def semiprime_square_witness(alg: LeavittAlgebra, x: GradedElement) -> SemiprimeWitness:
    """The reduced sandwich w = μxν together with the verified fact w² ≠ 0.

    Requires a coefficient ring without zero divisors: the projection case
    squares to the coefficient square times the projection, and the cycle
    case keeps its top graded component.
    """
    if alg.ring.has_zero_divisors:
        raise RingHasZeroDivisors(f"{alg.ring.name} has zero divisors")
    if x.is_zero():
        raise ZeroElement("cannot reduce the zero element")
    outcome = reduce_element(alg, x)
    w = apply_factors(alg, outcome.mu, x, outcome.nu)
    if (w * w).is_zero():
        raise AssertionError("square of a reduced nonzero element vanished")
    return SemiprimeWitness(outcome, w)
