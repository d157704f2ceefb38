"""Branching systems over exact rational interval carriers, the induced
representation on finite-support vectors, and the faithfulness machinery.

A branching system assigns to every edge a subset R_e of a carrier, to
every generalized vertex a subset D_A, and to every edge a bijection
f_e from D_range(e) onto R_e.  Here carriers are finite unions of
labeled rational half-open intervals; the D sets are stored per vertex
and every D_A is their union over A, which is the general form once the
lattice laws are required.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidSystem
from .intervals import (
    AffinePiece,
    Interval,
    IntervalSet,
    PiecewiseAffineMap,
    Point,
    compose,
    compose_chain,
    intersect,
    subtract,
    union,
)
from .leavitt import Add, GeneratorExpr, LeavittAlgebra, Mul, Neg, PGen, Scalar, SGen, SStarGen, Sub, product_expr
from .rings import Ring
from .ultragraph import Cycle, Ultragraph, enumerate_cycles, exits_of_closed_path, lattice_closure


@dataclass
class BranchingSystem:
    graph: Ultragraph
    R: dict[str, IntervalSet]
    D: dict[str, IntervalSet]
    f: dict[str, PiecewiseAffineMap]
    _valid: bool | None = field(default=None, compare=False, repr=False)

    def d_of(self, vertices: Iterable[str]) -> IntervalSet:
        return union(*(self.D[v] for v in vertices)) if vertices else IntervalSet()


def build_interval_system(g: Ultragraph) -> BranchingSystem:
    """The standard unit-interval system.

    Every edge gets the block [0,1) under its own label; a sink keeps its
    own block, a non-sink vertex is covered by the blocks of the edges it
    emits; f_e chops R_e into equal pieces, one per block of D_range(e),
    in declaration order.
    """
    one = Fraction(1)
    R = {e: IntervalSet([Interval(e, Fraction(0), one)]) for e in g.edges}
    D: dict[str, IntervalSet] = {}
    for v in g.vertices:
        if g.is_sink(v):
            D[v] = IntervalSet([Interval(v, Fraction(0), one)])
        else:
            D[v] = union(*(R[e] for e in g.emitted(v)))
    f = {}
    for e in g.edges:
        blocks: list[str] = []
        for v in g.sort_vertices(g.range[e]):
            if g.is_sink(v):
                blocks.append(v)
            else:
                blocks.extend(g.emitted(v))
        n = len(blocks)
        pieces = []
        for i, label in enumerate(blocks):
            lo, hi = Fraction(i, n), Fraction(i + 1, n)
            pieces.append(
                AffinePiece(Interval(label, Fraction(0), one), Interval(e, lo, hi), Fraction(1, n), lo)
            )
        f[e] = PiecewiseAffineMap(pieces)
    return BranchingSystem(g, R, D, f)


def validate_branching(g: Ultragraph, bs: BranchingSystem) -> dict:
    """Check every axiom by exact interval arithmetic.

    Also reports whether every nonempty generalized vertex has a nonempty
    D set, the standing hypothesis of the faithfulness criterion.
    """
    checks: list[dict] = []

    def record(axiom: str, instance: str, ok: bool):
        checks.append({"axiom": axiom, "instance": instance, "passed": ok})

    edges = list(g.edges)
    for i, e in enumerate(edges):
        for fedge in edges[i + 1 :]:
            record("1", f"R_{e} ∩ R_{fedge} = ∅", intersect(bs.R[e], bs.R[fedge]).is_empty())
    lattice = sorted(lattice_closure(g), key=lambda a: (len(a), sorted(a)))
    record("2", "D_∅ = ∅", bs.d_of(frozenset()).is_empty())
    for A in lattice:
        for B in lattice:
            da, db = bs.d_of(A), bs.d_of(B)
            record(
                "2",
                f"D_{set(A) or '∅'} ∩ D_{set(B) or '∅'}",
                intersect(da, db) == bs.d_of(A & B),
            )
            record(
                "2",
                f"D_{set(A) or '∅'} ∪ D_{set(B) or '∅'}",
                union(da, db) == bs.d_of(A | B),
            )
    for e in edges:
        record("3", f"R_{e} ⊆ D_s({e})", subtract(bs.R[e], bs.D[g.source[e]]).is_empty())
    for v in g.vertices:
        emitted = g.emitted(v)
        if emitted:
            record("4", f"D_{v} = ∪ R over {emitted}", bs.D[v] == union(*(bs.R[e] for e in emitted)))
    for e in edges:
        fe = bs.f.get(e)
        if fe is None:
            record("5", f"f_{e} present", False)
            continue
        dr = bs.d_of(g.range[e])
        record("5", f"f_{e} domain = D_r({e})", fe.domain() == dr)
        record("5", f"f_{e} image = R_{e}", fe.image() == bs.R[e])
        record("5", f"f_{e}∘f_{e}⁻¹ = id", compose(fe, fe.inverted()).is_identity())
        record("5", f"f_{e}⁻¹∘f_{e} = id", compose(fe.inverted(), fe).is_identity())
    d_nonempty = all(not bs.d_of(A).is_empty() for A in lattice if A)
    passed = all(c["passed"] for c in checks)
    bs._valid = passed
    return {"passed": passed, "checks": checks, "d_nonempty_hypothesis": d_nonempty}


def _require_valid(bs: BranchingSystem):
    if bs._valid is None:
        validate_branching(bs.graph, bs)
    if not bs._valid:
        raise InvalidSystem("branching system fails its axioms")


# -- induced representation ----------------------------------------------------

FinSuppVector = dict[Point, object]


def _vec_add(ring: Ring, a: FinSuppVector, b: FinSuppVector) -> FinSuppVector:
    out = dict(a)
    for p, co in b.items():
        out[p] = out.get(p, ring.zero) + co
    return {p: co for p, co in out.items() if not co == ring.zero}


def _vec_scale(ring: Ring, coeff, a: FinSuppVector) -> FinSuppVector:
    return {p: co for p, co in ((p, coeff * c) for p, c in a.items()) if not co == ring.zero}


def rep_apply(bs: BranchingSystem, ring: Ring, expr: GeneratorExpr, vec: FinSuppVector) -> FinSuppVector:
    """Apply the induced representation of an expression to a vector.

    A projection restricts support to its D set; an edge generator moves
    point masses through f_e (killing everything outside D_range(e)); a
    starred generator moves them back through f_e⁻¹; sums, products and
    scalars act by linearity and composition.
    """
    _require_valid(bs)
    g = bs.graph

    def go(node: GeneratorExpr, v: FinSuppVector) -> FinSuppVector:
        if isinstance(node, PGen):
            dset = bs.d_of(node.vertices)
            return {p: co for p, co in v.items() if dset.contains(p)}
        if isinstance(node, SGen):
            fe = bs.f[node.edge]
            out: FinSuppVector = {}
            for p, co in v.items():
                q = fe.apply(p)
                if q is not None:
                    out[q] = out.get(q, ring.zero) + co
            return {p: co for p, co in out.items() if not co == ring.zero}
        if isinstance(node, SStarGen):
            fe = bs.f[node.edge].inverted()
            out = {}
            for p, co in v.items():
                q = fe.apply(p)
                if q is not None:
                    out[q] = out.get(q, ring.zero) + co
            return {p: co for p, co in out.items() if not co == ring.zero}
        if isinstance(node, Scalar):
            coeff = ring.from_int(node.numerator)
            if node.denominator != 1:
                coeff = Fraction(node.numerator, node.denominator)
            return _vec_scale(ring, coeff, go(PGen(frozenset(g.vertices)), v))
        if isinstance(node, Neg):
            return _vec_scale(ring, -ring.one, go(node.operand, v))
        if isinstance(node, Add):
            return _vec_add(ring, go(node.left, v), go(node.right, v))
        if isinstance(node, Sub):
            return _vec_add(ring, go(node.left, v), _vec_scale(ring, -ring.one, go(node.right, v)))
        if isinstance(node, Mul):
            return go(node.left, go(node.right, v))
        raise TypeError(f"not an expression node: {node!r}")

    return go(expr, dict(vec))


def probe_points(bs: BranchingSystem) -> list[Point]:
    """Left endpoints and midpoints of every interval appearing anywhere in
    the system; a finite spanning family for its piecewise-affine dynamics."""
    intervals: list[Interval] = []
    for s in list(bs.R.values()) + list(bs.D.values()):
        intervals.extend(s.intervals)
    for fe in bs.f.values():
        for p in fe.pieces:
            intervals.extend((p.src, p.dst))
    points: set[Point] = set()
    for iv in intervals:
        points.add((iv.lo, iv.label))
        points.add(((iv.lo + iv.hi) / 2, iv.label))
    return sorted(points)


# -- rotation variants and faithfulness -----------------------------------------


def exitless_cycles(g: Ultragraph) -> list[Cycle]:
    return [c for c in enumerate_cycles(g) if not exits_of_closed_path(g, c.edges)]


def build_rotation_variant(g: Ultragraph, bs: BranchingSystem, q: int) -> BranchingSystem:
    """Replace the maps along every exitless cycle by rotation by 1/q.

    Along an exitless cycle every range is a single vertex emitting a
    single edge, so each D_range is one full block; rotating those blocks
    by the fixed rational makes every orbit of length below q fixed-point
    free.  A system without exitless cycles is returned unchanged.
    """
    if q < 1:
        raise ValueError("rotation denominator must be a positive integer")
    f = dict(bs.f)
    shift = Fraction(1, q)
    for c in exitless_cycles(g):
        for e in c.edges:
            dom = bs.f[e].domain()
            if len(dom.intervals) != 1:
                raise InvalidSystem("rotation variant expects the standard block system")
            block = dom.intervals[0]
            if (block.lo, block.hi) != (Fraction(0), Fraction(1)):
                raise InvalidSystem("rotation variant expects unit blocks")
            src, dst = block.label, e
            if shift == 1:
                pieces = [AffinePiece(Interval(src, Fraction(0), Fraction(1)),
                                      Interval(dst, Fraction(0), Fraction(1)), Fraction(1), Fraction(0))]
            else:
                pieces = [
                    AffinePiece(
                        Interval(src, Fraction(0), 1 - shift),
                        Interval(dst, shift, Fraction(1)),
                        Fraction(1),
                        shift,
                    ),
                    AffinePiece(
                        Interval(src, 1 - shift, Fraction(1)),
                        Interval(dst, Fraction(0), shift),
                        Fraction(1),
                        shift - 1,
                    ),
                ]
            f[e] = PiecewiseAffineMap(pieces)
    return BranchingSystem(g, dict(bs.R), dict(bs.D), f)


@dataclass(frozen=True)
class FaithfulnessVerdict:
    faithful: bool
    n_max: int
    witnesses: dict[tuple[str, ...], Point]
    failing_cycle: tuple[str, ...] | None = None
    identity_power: int | None = None
    covering_powers: tuple[int, ...] = ()


def _pick_point_avoiding(interval: Interval, bad: list[Fraction]) -> Fraction:
    inside = sorted({q for q in bad if interval.lo <= q < interval.hi})
    candidates = [interval.lo]
    landmarks = [interval.lo] + inside + [interval.hi]
    candidates.extend((a + b) / 2 for a, b in zip(landmarks, landmarks[1:]))
    for q in candidates:
        if interval.lo <= q < interval.hi and q not in inside:
            return q
    raise AssertionError("an interval cannot be covered by finitely many points")


def check_faithfulness_criterion(g: Ultragraph, bs: BranchingSystem, n_max: int) -> FaithfulnessVerdict:
    """Decide the finite-horizon faithfulness criterion.

    For every exitless cycle c the criterion for F = {1..n_max} asks for a
    point of D_range(c) moved by every power f_c^n, n ≤ n_max.  The fixed
    loci are exact interval sets, so the search is complete: either their
    complement is nonempty and a witness is produced, or the fixed loci
    cover the domain and the criterion fails, with the least power acting
    as the identity when one exists.
    """
    _require_valid(bs)
    if n_max < 1:
        raise ValueError("n_max must be a positive integer")
    empty = [v for v in g.vertices if bs.D[v].is_empty()]
    if empty:
        raise InvalidSystem(
            f"criterion requires nonempty D sets; empty at {empty[0]!r}"
        )
    witnesses: dict[tuple[str, ...], Point] = {}
    for c in exitless_cycles(g):
        fc = compose_chain([bs.f[e] for e in c.edges])
        domain = fc.domain()
        fixed_intervals: list[IntervalSet] = []
        fixed_points: list[Point] = []
        covering: list[int] = []
        uncovered = domain
        identity_power = None
        current = None
        for n in range(1, n_max + 1):
            current = fc if current is None else compose_chain([fc, current])
            full, isolated = current.fixed_points()
            if current.is_identity():
                identity_power = n
                break
            if not full.is_empty():
                shrunk = subtract(uncovered, full)
                if shrunk != uncovered:
                    covering.append(n)
                    uncovered = shrunk
            fixed_intervals.append(full)
            fixed_points.extend(isolated)
        if identity_power is not None:
            return FaithfulnessVerdict(
                False, n_max, witnesses, tuple(c.edges), identity_power, ()
            )
        if uncovered.is_empty():
            return FaithfulnessVerdict(
                False, n_max, witnesses, tuple(c.edges), None, tuple(covering)
            )
        interval = uncovered.intervals[0]
        bad = [q for q, label in fixed_points if label == interval.label]
        z0 = (_pick_point_avoiding(interval, bad), interval.label)
        current = None
        for n in range(1, n_max + 1):
            current = fc if current is None else compose_chain([fc, current])
            if current.apply(z0) == z0:
                raise AssertionError("witness point is moved by construction")
        witnesses[tuple(c.edges)] = z0
    return FaithfulnessVerdict(True, n_max, witnesses)


def kernel_witness(alg: LeavittAlgebra, bs: BranchingSystem, n_max: int) -> GeneratorExpr | None:
    """A nonzero algebra element annihilated by the induced representation,
    or None when the criterion holds up to the horizon.

    With a power of the exitless cycle acting as the identity the witness
    is s_c^j - p at the cycle base; when the fixed loci merely cover the
    domain the witness is the product of such differences over a covering
    family of powers.  Both facts are re-verified: the element is nonzero
    in the algebra and kills every probe vector.
    """
    g = alg.graph
    verdict = check_faithfulness_criterion(g, bs, n_max)
    if verdict.faithful:
        return None
    c = verdict.failing_cycle
    base = g.source[c[0]]

    def cycle_power(j: int) -> GeneratorExpr:
        return product_expr([SGen(e) for e in c] * j)

    if verdict.identity_power is not None:
        expr: GeneratorExpr = Sub(cycle_power(verdict.identity_power), PGen(frozenset({base})))
    else:
        factors = [Sub(cycle_power(n), PGen(frozenset({base}))) for n in verdict.covering_powers]
        expr = product_expr(factors)

    if alg.eval_expr(expr).is_zero():
        raise AssertionError("kernel witness must be nonzero in the algebra")
    for p in probe_points(bs):
        if rep_apply(bs, alg.ring, expr, {p: alg.ring.one}):
            raise AssertionError("kernel witness must annihilate every probe vector")
    return expr


# -- serialization ---------------------------------------------------------------

SCHEMA = "ulpa/branching-system/v1"


def _frac(text_or_value) -> str:
    return str(text_or_value)


def _interval_json(iv: Interval) -> list:
    return [_frac(iv.lo), _frac(iv.hi), iv.label]


def _interval_from_json(data: Sequence) -> Interval:
    lo, hi, label = data
    return Interval(str(label), Fraction(lo), Fraction(hi))


def system_to_json(bs: BranchingSystem) -> dict:
    return {
        "schema": SCHEMA,
        "R": {e: [_interval_json(iv) for iv in s.intervals] for e, s in bs.R.items()},
        "D": {v: [_interval_json(iv) for iv in s.intervals] for v, s in bs.D.items()},
        "f": {
            e: [
                {
                    "src": _interval_json(p.src),
                    "dst": _interval_json(p.dst),
                    "scale": _frac(p.scale),
                    "offset": _frac(p.offset),
                }
                for p in fe.pieces
            ]
            for e, fe in bs.f.items()
        },
    }


def system_from_json(g: Ultragraph, data: Mapping) -> BranchingSystem:
    if data.get("schema") != SCHEMA:
        raise InvalidSystem(f"expected schema {SCHEMA!r}")
    R = {e: IntervalSet(_interval_from_json(iv) for iv in ivs) for e, ivs in data["R"].items()}
    D = {v: IntervalSet(_interval_from_json(iv) for iv in ivs) for v, ivs in data["D"].items()}
    f = {}
    for e, pieces in data["f"].items():
        f[e] = PiecewiseAffineMap(
            AffinePiece(
                _interval_from_json(p["src"]),
                _interval_from_json(p["dst"]),
                Fraction(p["scale"]),
                Fraction(p["offset"]),
            )
            for p in pieces
        )
    missing = [e for e in g.edges if e not in R or e not in f] + [v for v in g.vertices if v not in D]
    if missing:
        raise InvalidSystem(f"system is missing entries for {missing}")
    return BranchingSystem(g, R, D, f)


def system_dumps(bs: BranchingSystem) -> str:
    return json.dumps(system_to_json(bs), indent=2, ensure_ascii=False)
