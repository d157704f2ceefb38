"""Permutative representation data, the extreme-vertex stratification, and
the transform from permutative data to a discrete branching system.

Representation modules are modeled as free modules with explicit finite
bases: the data records a basis index set, the sub-bases attached to
vertices and edges, and the basis bijections realizing the edge
generators.  Over a finite ultragraph that is the whole story; the
complement submodules that infinite emitters would contribute are
identically zero here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import B2BViolation, SetNotInLattice
from .leavitt import Add, GeneratorExpr, Mul, Neg, PGen, Scalar, SGen, SStarGen, Sub
from .rings import Ring
from .ultragraph import Ultragraph, enumerate_cycles


# -- stratification -----------------------------------------------------------


@dataclass(frozen=True)
class ExtremeVertex:
    vertices: frozenset[str]
    edge: str
    kind: str  # "final" when the set is the edge's range, "initial" its source


def isolated_vertices(
    g: Ultragraph, vertices: Iterable[str] | None = None, edges: Iterable[str] | None = None
) -> list[str]:
    """Vertices of the (sub)graph lying in no range and emitting nothing."""
    vs = list(vertices) if vertices is not None else list(g.vertices)
    es = list(edges) if edges is not None else list(g.edges)
    touched: set[str] = set()
    for e in es:
        touched.add(g.source[e])
        touched.update(g.range[e])
    return [v for v in g.sort_vertices(vs) if v not in touched]


def extreme_vertices(
    g: Ultragraph, vertices: Iterable[str] | None = None, edges: Iterable[str] | None = None
) -> list[ExtremeVertex]:
    """Range or source sets touched by exactly one edge of the (sub)graph."""
    es = list(edges) if edges is not None else list(g.edges)
    sources = {g.source[e] for e in es}
    out: list[ExtremeVertex] = []
    for e in es:
        rng = g.range[e]
        other_ranges = set().union(*(g.range[f] for f in es if f != e)) if len(es) > 1 else set()
        if not (rng & other_ranges) and not (rng & sources):
            out.append(ExtremeVertex(rng, e, "final"))
        src = frozenset({g.source[e]})
        other_sources = {g.source[f] for f in es if f != e}
        all_ranges = set().union(*(g.range[f] for f in es))
        if not (src & other_sources) and not (src & all_ranges):
            out.append(ExtremeVertex(src, e, "initial"))
    return out


@dataclass(frozen=True)
class StratificationLevel:
    extremes: tuple[ExtremeVertex, ...]
    edges: tuple[str, ...]
    isolated: tuple[str, ...]

    def vertex_union(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for ex in self.extremes:
            out |= ex.vertices
        return out


@dataclass(frozen=True)
class Stratification:
    initial_isolated: tuple[str, ...]
    levels: tuple[StratificationLevel, ...]
    terminated: bool
    covered: bool


def stratify(g: Ultragraph) -> Stratification:
    """Iteratively peel extreme vertices with their extreme edges.

    Each round removes the current extreme-vertex sets and edges, then any
    vertices this isolates; the peeling stops when no extreme vertex is
    left.  Coverage asks whether the peeled levels exhaust every vertex
    touched by an edge of the original graph (the level-zero isolated
    vertices do not count toward it).
    """
    i0 = tuple(isolated_vertices(g))
    current_vertices = [v for v in g.vertices if v not in set(i0)]
    current_edges = list(g.edges)
    levels: list[StratificationLevel] = []
    while True:
        extremes = extreme_vertices(g, current_vertices, current_edges)
        if not extremes:
            break
        edges = tuple(dict.fromkeys(g.sort_edges(ex.edge for ex in extremes)))
        peeled = set().union(*(ex.vertices for ex in extremes))
        current_vertices = [v for v in current_vertices if v not in peeled]
        current_edges = [e for e in current_edges if e not in set(edges)]
        iso = tuple(isolated_vertices(g, current_vertices, current_edges))
        current_vertices = [v for v in current_vertices if v not in set(iso)]
        levels.append(StratificationLevel(tuple(extremes), edges, iso))
    touched: set[str] = set()
    for e in g.edges:
        touched.add(g.source[e])
        touched.update(g.range[e])
    peeled_total: set[str] = set()
    for lvl in levels:
        peeled_total |= lvl.vertex_union()
        peeled_total.update(lvl.isolated)
    return Stratification(i0, tuple(levels), True, covered=(touched == peeled_total))


def esteaqui_hypothesis(g: Ultragraph) -> tuple[bool, Stratification]:
    """The combinatorial hypothesis under which every suitable
    representation is permutative: at least one peeling level exists and
    the levels cover everything an edge touches."""
    strat = stratify(g)
    return bool(strat.levels) and strat.covered, strat


# -- permutative data -----------------------------------------------------------


@dataclass(frozen=True)
class PermutativeData:
    """Basis data for a permutative representation on a free module."""

    points: tuple[str, ...]
    vertex_basis: Mapping[str, frozenset[str]]
    edge_basis: Mapping[str, frozenset[str]]
    edge_maps: Mapping[str, Mapping[str, str]]


def range_basis(g: Ultragraph, pd: PermutativeData, edge: str) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for v in g.range[edge]:
        out |= pd.vertex_basis.get(v, frozenset())
    return out


def validate_permutative(g: Ultragraph, pd: PermutativeData) -> PermutativeData:
    """Check the basis conditions; raise B2BViolation otherwise."""
    pool = set(pd.points)
    seen: set[str] = set()
    for v in g.vertices:
        bv = pd.vertex_basis.get(v, frozenset())
        if not bv <= pool:
            raise B2BViolation(f"basis of vertex {v!r} uses undeclared points")
        if bv & seen:
            raise B2BViolation(f"basis of vertex {v!r} overlaps another vertex basis")
        seen |= bv
    by_source: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in g.edges:
        be = pd.edge_basis.get(e, frozenset())
        if not be <= pd.vertex_basis.get(g.source[e], frozenset()):
            raise B2BViolation(f"basis of edge {e!r} is not inside its source basis")
        if be & by_source[g.source[e]]:
            raise B2BViolation(f"basis of edge {e!r} overlaps a sibling edge basis")
        by_source[g.source[e]] |= be
        mapping = dict(pd.edge_maps.get(e, {}))
        dom = range_basis(g, pd, e)
        if set(mapping) != dom:
            raise B2BViolation(f"map of edge {e!r} is not defined exactly on the range basis")
        if set(mapping.values()) != set(be) or len(set(mapping.values())) != len(mapping):
            raise B2BViolation(f"map of edge {e!r} is not a bijection onto the edge basis")
    return pd


def basis_for_generalized_vertex(g: Ultragraph, pd: PermutativeData, vertices: Iterable[str]) -> frozenset[str]:
    """The basis attached to a generalized vertex: the union over its
    members.  Respects the lattice: intersections and unions of vertex
    sets map to intersections and unions of bases."""
    vs = frozenset(vertices)
    unknown = [v for v in vs if v not in g._vindex]
    if unknown:
        raise SetNotInLattice(f"not a generalized vertex: unknown vertex {unknown[0]!r}")
    out: frozenset[str] = frozenset()
    for v in vs:
        out |= pd.vertex_basis.get(v, frozenset())
    return out


def permutative_rep_apply(
    g: Ultragraph, pd: PermutativeData, ring: Ring, expr: GeneratorExpr, vec: Mapping[str, object]
) -> dict[str, object]:
    """The representation determined directly by the basis data, acting on
    finitely supported vectors over the basis index set."""

    def clean(v: dict) -> dict:
        return {p: co for p, co in v.items() if not co == ring.zero}

    def go(node: GeneratorExpr, v: dict) -> dict:
        if isinstance(node, PGen):
            ba = basis_for_generalized_vertex(g, pd, node.vertices)
            return {p: co for p, co in v.items() if p in ba}
        if isinstance(node, SGen):
            mapping = pd.edge_maps.get(node.edge, {})
            out: dict[str, object] = {}
            for p, co in v.items():
                if p in mapping:
                    q = mapping[p]
                    out[q] = out.get(q, ring.zero) + co
            return clean(out)
        if isinstance(node, SStarGen):
            inverse = {q: p for p, q in pd.edge_maps.get(node.edge, {}).items()}
            out = {}
            for p, co in v.items():
                if p in inverse:
                    q = inverse[p]
                    out[q] = out.get(q, ring.zero) + co
            return clean(out)
        if isinstance(node, Scalar):
            coeff = ring.from_int(node.numerator)
            if node.denominator != 1:
                from fractions import Fraction

                coeff = Fraction(node.numerator, node.denominator)
            unit = go(PGen(frozenset(g.vertices)), v)
            return clean({p: coeff * co for p, co in unit.items()})
        if isinstance(node, Neg):
            return clean({p: -co for p, co in go(node.operand, v).items()})
        if isinstance(node, Add):
            out = dict(go(node.left, v))
            for p, co in go(node.right, v).items():
                out[p] = out.get(p, ring.zero) + co
            return clean(out)
        if isinstance(node, Sub):
            out = dict(go(node.left, v))
            for p, co in go(node.right, v).items():
                out[p] = out.get(p, ring.zero) - co
            return clean(out)
        if isinstance(node, Mul):
            return go(node.left, go(node.right, v))
        raise TypeError(f"not an expression node: {node!r}")

    return go(expr, dict(vec))


# -- discrete branching systems --------------------------------------------------


@dataclass
class DiscreteBranchingSystem:
    """A branching system on a finite discrete carrier."""

    graph: Ultragraph
    carrier: frozenset[str]
    R: dict[str, frozenset[str]]
    D: dict[str, frozenset[str]]
    f: dict[str, dict[str, str]]
    _valid: bool | None = field(default=None, compare=False, repr=False)

    def d_of(self, vertices: Iterable[str]) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for v in vertices:
            out |= self.D[v]
        return out


def validate_discrete(g: Ultragraph, ds: DiscreteBranchingSystem) -> dict:
    """The branching-system axioms, read over a discrete carrier."""
    checks: list[dict] = []

    def record(axiom: str, instance: str, ok: bool):
        checks.append({"axiom": axiom, "instance": instance, "passed": ok})

    edges = list(g.edges)
    for i, e in enumerate(edges):
        for fe in edges[i + 1 :]:
            record("1", f"R_{e} ∩ R_{fe} = ∅", not (ds.R[e] & ds.R[fe]))
    vs = list(g.vertices)
    for i, v in enumerate(vs):
        for w in vs[i + 1 :]:
            record("2", f"D_{v} ∩ D_{w} = ∅", not (ds.D[v] & ds.D[w]))
    for e in edges:
        record("3", f"R_{e} ⊆ D_s({e})", ds.R[e] <= ds.D[g.source[e]])
    for v in vs:
        emitted = g.emitted(v)
        if emitted:
            covered: frozenset[str] = frozenset()
            for e in emitted:
                covered |= ds.R[e]
            record("4", f"D_{v} = ∪ R over {emitted}", ds.D[v] == covered)
    for e in edges:
        mapping = ds.f[e]
        dom = ds.d_of(g.range[e])
        ok = set(mapping) == set(dom) and set(mapping.values()) == set(ds.R[e]) and len(
            set(mapping.values())
        ) == len(mapping)
        record("5", f"f_{e} bijective D_r({e}) → R_{e}", ok)
    passed = all(c["passed"] for c in checks)
    ds._valid = passed
    return {"passed": passed, "checks": checks}


def discrete_rep_apply(
    ds: DiscreteBranchingSystem, ring: Ring, expr: GeneratorExpr, vec: Mapping[str, object]
) -> dict[str, object]:
    """The representation induced by a discrete branching system."""
    g = ds.graph

    def clean(v: dict) -> dict:
        return {p: co for p, co in v.items() if not co == ring.zero}

    def go(node: GeneratorExpr, v: dict) -> dict:
        if isinstance(node, PGen):
            dset = ds.d_of(node.vertices)
            return {p: co for p, co in v.items() if p in dset}
        if isinstance(node, SGen):
            mapping = ds.f[node.edge]
            out: dict[str, object] = {}
            for p, co in v.items():
                if p in mapping:
                    q = mapping[p]
                    out[q] = out.get(q, ring.zero) + co
            return clean(out)
        if isinstance(node, SStarGen):
            inverse = {q: p for p, q in ds.f[node.edge].items()}
            out = {}
            for p, co in v.items():
                if p in inverse:
                    q = inverse[p]
                    out[q] = out.get(q, ring.zero) + co
            return clean(out)
        if isinstance(node, Scalar):
            coeff = ring.from_int(node.numerator)
            if node.denominator != 1:
                from fractions import Fraction

                coeff = Fraction(node.numerator, node.denominator)
            unit = go(PGen(frozenset(g.vertices)), v)
            return clean({p: coeff * co for p, co in unit.items()})
        if isinstance(node, Neg):
            return clean({p: -co for p, co in go(node.operand, v).items()})
        if isinstance(node, Add):
            out = dict(go(node.left, v))
            for p, co in go(node.right, v).items():
                out[p] = out.get(p, ring.zero) + co
            return clean(out)
        if isinstance(node, Sub):
            out = dict(go(node.left, v))
            for p, co in go(node.right, v).items():
                out[p] = out.get(p, ring.zero) - co
            return clean(out)
        if isinstance(node, Mul):
            return go(node.left, go(node.right, v))
        raise TypeError(f"not an expression node: {node!r}")

    return go(expr, dict(vec))


def permutative_to_branching(
    g: Ultragraph, pd: PermutativeData
) -> tuple[DiscreteBranchingSystem, dict[str, str]]:
    """Realize permutative data as a discrete branching system.

    The carrier is the basis index set, the R and D sets are the edge and
    vertex bases, and each f_e is the basis bijection.  The intertwiner
    sends the point mass at an index to the basis element it names; with
    this indexing it is the identity relabeling, and the induced
    representation of the system matches the one determined by the data
    on every basis vector (checked by the test suite generator by
    generator).
    """
    validate_permutative(g, pd)
    ds = DiscreteBranchingSystem(
        graph=g,
        carrier=frozenset(pd.points),
        R={e: frozenset(pd.edge_basis.get(e, frozenset())) for e in g.edges},
        D={v: frozenset(pd.vertex_basis.get(v, frozenset())) for v in g.vertices},
        f={e: dict(pd.edge_maps.get(e, {})) for e in g.edges},
    )
    report = validate_discrete(g, ds)
    if not report["passed"]:
        failing = [c for c in report["checks"] if not c["passed"]]
        raise B2BViolation(f"data does not induce a branching system: {failing[0]['instance']}")
    intertwiner = {p: p for p in pd.points}
    return ds, intertwiner


def check_equivalence(g: Ultragraph, pd: PermutativeData, ring: Ring) -> dict:
    """Exercise the intertwiner equation on every basis vector.

    Runs every projection generator (over the whole lattice) and every
    edge generator and its star through both representations: the one the
    data determines directly and the one induced by the derived discrete
    system.  With the identity intertwiner the two must agree exactly.
    """
    from .ultragraph import lattice_closure

    ds, intertwiner = permutative_to_branching(g, pd)
    generators: list[GeneratorExpr] = [PGen(frozenset(a)) for a in
                                       sorted(lattice_closure(g), key=lambda a: (len(a), sorted(a)))]
    for e in g.edges:
        generators.extend((SGen(e), SStarGen(e)))
    checked = 0
    for gen in generators:
        for x in pd.points:
            vec = {x: ring.one}
            through_system = discrete_rep_apply(ds, ring, gen, vec)
            through_data = permutative_rep_apply(g, pd, ring, gen, vec)
            mapped = {intertwiner[p]: co for p, co in through_system.items()}
            if mapped != through_data:
                return {"equivalent": False, "generator": repr(gen), "basis_vector": x,
                        "checked": checked}
            checked += 1
    return {"equivalent": True, "checked": checked}


def data_from_discrete_system(ds: DiscreteBranchingSystem) -> PermutativeData:
    """Read permutative data off the canonical point-mass basis of a
    discrete system (the inverse direction of the transform)."""
    points = tuple(sorted(ds.carrier))
    return PermutativeData(
        points=points,
        vertex_basis={v: frozenset(ds.D[v]) for v in ds.graph.vertices},
        edge_basis={e: frozenset(ds.R[e]) for e in ds.graph.edges},
        edge_maps={e: dict(ds.f[e]) for e in ds.graph.edges},
    )


# -- canonical finite data for a graph --------------------------------------------


def _zero_forced_vertices(g: Ultragraph) -> set[str]:
    """Vertices whose basis size is forced to zero by finiteness.

    Summing the size equations around any cycle forces every contribution
    branching off the cycle to vanish; vanishing then propagates down
    through ranges.
    """
    zero: set[str] = set()
    for c in enumerate_cycles(g):
        k = len(c.edges)
        for i, e in enumerate(c.edges):
            nxt = c.edges[(i + 1) % k]
            v_next = g.source[nxt]
            zero.update(g.range[e] - {v_next})
            for other in g.emitted(g.source[e]):
                if other != e:
                    zero.update(g.range[other])
    changed = True
    while changed:
        changed = False
        for u in list(zero):
            for e in g.emitted(u):
                for w in g.range[e]:
                    if w not in zero:
                        zero.add(w)
                        changed = True
    return zero


def canonical_discrete_data(g: Ultragraph) -> PermutativeData:
    """A canonical finite permutative datum for the graph.

    Basis sizes solve the branching equations: a surviving sink gets one
    point, a non-sink the sum over its edges of their range sizes; sizes
    forced to zero by a cycle stay zero.  Points are labeled vertex:index
    and the edge bijections map range bases onto consecutive slices of
    the source basis in declaration order.
    """
    zero = _zero_forced_vertices(g)
    sizes = {v: (0 if v in zero else 1) for v in g.vertices}
    for _ in range(len(g.vertices) + 5):
        nxt = dict(sizes)
        for v in g.vertices:
            if v in zero or g.is_sink(v):
                continue
            nxt[v] = sum(sum(sizes[u] for u in g.range[e]) for e in g.emitted(v))
        if nxt == sizes:
            break
        sizes = nxt
    else:
        raise AssertionError("basis size equations did not stabilize")

    vertex_basis = {
        v: frozenset(f"{v}:{i}" for i in range(sizes[v])) for v in g.vertices
    }
    points = tuple(p for v in g.vertices for p in sorted(vertex_basis[v]))

    def ordered(vs: frozenset[str]) -> list[str]:
        out = []
        for v in g.vertices:
            out.extend(sorted(vertex_basis[v] & vs, key=lambda p: int(p.rsplit(":", 1)[1])))
        return out

    edge_basis: dict[str, frozenset[str]] = {}
    edge_maps: dict[str, dict[str, str]] = {}
    for v in g.vertices:
        emitted = g.emitted(v)
        slots = [f"{v}:{i}" for i in range(sizes[v])]
        cursor = 0
        for e in emitted:
            block = sum(sizes[u] for u in g.range[e])
            mine = slots[cursor : cursor + block]
            cursor += block
            edge_basis[e] = frozenset(mine)
            domain = ordered(frozenset().union(*(vertex_basis[u] for u in g.range[e])))
            edge_maps[e] = dict(zip(domain, mine))
        if emitted and cursor != sizes[v]:
            raise AssertionError("edge blocks do not tile the source basis")
    return validate_permutative(
        g, PermutativeData(points, vertex_basis, edge_basis, edge_maps)
    )


# -- serialization -----------------------------------------------------------------

PD_SCHEMA = "ulpa/permutative-data/v1"


def data_to_json(pd: PermutativeData) -> dict:
    return {
        "schema": PD_SCHEMA,
        "B": list(pd.points),
        "B_v": {v: sorted(b) for v, b in pd.vertex_basis.items()},
        "B_e": {e: sorted(b) for e, b in pd.edge_basis.items()},
        "edge_maps": {e: dict(m) for e, m in pd.edge_maps.items()},
    }


def data_from_json(g: Ultragraph, data: Mapping) -> PermutativeData:
    if data.get("schema") != PD_SCHEMA:
        raise B2BViolation(f"expected schema {PD_SCHEMA!r}")
    raw_v = data.get("B_v", {})
    raw_e = data.get("B_e", {})
    raw_m = data.get("edge_maps", {})
    pd = PermutativeData(
        points=tuple(data["B"]),
        vertex_basis={v: frozenset(raw_v.get(v, ())) for v in g.vertices},
        edge_basis={e: frozenset(raw_e.get(e, ())) for e in g.edges},
        edge_maps={e: dict(raw_m.get(e, {})) for e in g.edges},
    )
    return validate_permutative(g, pd)


def data_dumps(pd: PermutativeData) -> str:
    return json.dumps(data_to_json(pd), indent=2, ensure_ascii=False)
