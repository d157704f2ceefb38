"""Finite ultragraphs: validation, the lattice of generalized vertices,
paths, cycles, exits and Condition (L).

An ultragraph is a directed graph whose edges have a single source vertex
but a nonempty *set* of range vertices.  Everything here is finite and
immutable after validation; all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DuplicateLabel, EmptyRange, InvalidPath, NotClosed, UnknownVertex


@dataclass(frozen=True)
class Ultragraph:
    """A finite ultragraph.

    Vertices and edges keep their declaration order; that order is the
    canonical scan order used by every deterministic algorithm downstream.
    Vertex and edge labels live in disjoint namespaces.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    source: Mapping[str, str]
    range: Mapping[str, frozenset[str]]
    _vindex: dict = field(default_factory=dict, compare=False, repr=False)
    _eindex: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._vindex.update({v: i for i, v in enumerate(self.vertices)})
        self._eindex.update({e: i for i, e in enumerate(self.edges)})

    # -- canonical orders ---------------------------------------------------

    def vertex_index(self, v: str) -> int:
        return self._vindex[v]

    def edge_index(self, e: str) -> int:
        return self._eindex[e]

    def sort_vertices(self, vs: Iterable[str]) -> list[str]:
        return sorted(vs, key=self.vertex_index)

    def sort_edges(self, es: Iterable[str]) -> list[str]:
        return sorted(es, key=self.edge_index)

    # -- structure ----------------------------------------------------------

    def emitted(self, v: str) -> list[str]:
        """Edges with source v, in declaration order."""
        return [e for e in self.edges if self.source[e] == v]

    def is_sink(self, v: str) -> bool:
        return all(self.source[e] != v for e in self.edges)


def make_ultragraph(
    vertices: Sequence[str],
    edges: Sequence[str],
    source: Mapping[str, str],
    range_: Mapping[str, Iterable[str]],
) -> Ultragraph:
    """Build and validate an ultragraph in one step."""
    g = Ultragraph(
        vertices=tuple(vertices),
        edges=tuple(edges),
        source=dict(source),
        range={e: frozenset(vs) for e, vs in range_.items()},
    )
    return validate_ultragraph(g)


def validate_ultragraph(g: Ultragraph) -> Ultragraph:
    """Check every structural invariant; return g unchanged when they hold.

    Raises DuplicateLabel, UnknownVertex or EmptyRange otherwise.
    """
    seen: set[str] = set()
    for v in g.vertices:
        if v in seen:
            raise DuplicateLabel(f"duplicate vertex label {v!r}")
        seen.add(v)
    for e in g.edges:
        if e in seen:
            raise DuplicateLabel(f"duplicate label {e!r}")
        seen.add(e)
    vset = set(g.vertices)
    for e in g.edges:
        if e not in g.source:
            raise UnknownVertex(f"edge {e!r} has no source")
        if g.source[e] not in vset:
            raise UnknownVertex(f"source {g.source[e]!r} of edge {e!r} is not a declared vertex")
        rng = g.range.get(e)
        if not rng:
            raise EmptyRange(f"edge {e!r} has empty range")
        for v in rng:
            if v not in vset:
                raise UnknownVertex(f"range vertex {v!r} of edge {e!r} is not declared")
    return g


def sinks(g: Ultragraph) -> list[str]:
    """Vertices emitting no edge, in declaration order."""
    return [v for v in g.vertices if g.is_sink(v)]


def lattice_closure(g: Ultragraph) -> set[frozenset[str]]:
    """The lattice of generalized vertices.

    Fixed-point closure of singletons and edge ranges under pairwise union
    and intersection.  The empty set is always a member.  For a finite
    ultragraph the closure of all singletons is the whole power set of the
    vertex set; the computation is kept as an explicit closure so the
    result is correct by construction rather than by that observation.
    """
    sets: set[frozenset[str]] = {frozenset()}
    sets.update(frozenset({v}) for v in g.vertices)
    sets.update(g.range[e] for e in g.edges)
    while True:
        new: set[frozenset[str]] = set()
        for a in sets:
            for b in sets:
                u = a | b
                if u not in sets:
                    new.add(u)
                i = a & b
                if i not in sets:
                    new.add(i)
        if not new:
            return sets
        sets |= new


# -- paths and cycles -------------------------------------------------------


def validate_path(g: Ultragraph, edges: Sequence[str]) -> tuple[str, ...]:
    """Check the consecutive source-in-range condition; return the path."""
    for e in edges:
        if e not in g._eindex:
            raise InvalidPath(f"unknown edge {e!r}")
    for a, b in zip(edges, edges[1:]):
        if g.source[b] not in g.range[a]:
            raise InvalidPath(f"source of {b!r} is not in the range of {a!r}")
    return tuple(edges)


def path_range(g: Ultragraph, path: Sequence[str]) -> frozenset[str]:
    """Range of a nonempty path (the range of its last edge)."""
    if not path:
        raise InvalidPath("empty path has no range")
    return g.range[path[-1]]


def path_source(g: Ultragraph, path: Sequence[str]) -> str:
    if not path:
        raise InvalidPath("empty path has no source")
    return g.source[path[0]]


def is_closed(g: Ultragraph, path: Sequence[str]) -> bool:
    """A nonempty path is closed when its source lies in its range."""
    return bool(path) and path_source(g, path) in path_range(g, path)


@dataclass(frozen=True)
class Cycle:
    """A closed path whose edge sources are pairwise distinct, stored in its
    lexicographically least rotation (by edge declaration order)."""

    edges: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)


def _canonical_rotation(g: Ultragraph, edges: Sequence[str]) -> tuple[str, ...]:
    n = len(edges)
    rotations = [tuple(edges[i:]) + tuple(edges[:i]) for i in range(n)]
    return min(rotations, key=lambda rot: tuple(g.edge_index(e) for e in rot))


def enumerate_cycles(g: Ultragraph) -> list[Cycle]:
    """All cycles, one representative per rotation class.

    Sources along a cycle are pairwise distinct, so the search depth is
    bounded by the number of vertices.
    """
    found: set[tuple[str, ...]] = set()

    def extend(path: list[str], used_sources: set[str]):
        last_range = g.range[path[-1]]
        if g.source[path[0]] in last_range:
            found.add(_canonical_rotation(g, path))
        for e in g.edges:
            sv = g.source[e]
            if sv in last_range and sv not in used_sources:
                path.append(e)
                used_sources.add(sv)
                extend(path, used_sources)
                used_sources.discard(sv)
                path.pop()

    for e in g.edges:
        extend([e], {g.source[e]})
    cycles = [Cycle(edges) for edges in found]
    cycles.sort(key=lambda c: (len(c.edges), tuple(g.edge_index(e) for e in c.edges)))
    return cycles


# -- exits and Condition (L) ------------------------------------------------


@dataclass(frozen=True)
class EdgeExit:
    """An alternative edge leaving the closed path at position index (1-based)."""

    index: int
    edge: str


@dataclass(frozen=True)
class SinkExit:
    """A sink inside the range at position index (1-based)."""

    index: int
    vertex: str


Exit = EdgeExit | SinkExit


def exits_of_closed_path(g: Ultragraph, path: Sequence[str]) -> list[Exit]:
    """All exits of a closed path.

    An exit at position i is either an edge e with source in the range of
    the i-th edge but e different from the (i+1)-th edge, or a sink inside
    that range.  The successor index wraps around: after the last edge the
    path is read as continuing with its first edge.
    """
    path = validate_path(g, path)
    if not is_closed(g, path):
        raise NotClosed("path is not closed")
    out: list[Exit] = []
    n = len(path)
    for i in range(n):
        rng = g.range[path[i]]
        successor = path[(i + 1) % n]
        for e in g.edges:
            if g.source[e] in rng and e != successor:
                out.append(EdgeExit(i + 1, e))
        for w in g.sort_vertices(rng):
            if g.is_sink(w):
                out.append(SinkExit(i + 1, w))
    return out


def satisfies_condition_l(g: Ultragraph) -> tuple[bool, Cycle | None]:
    """Whether every closed path has an exit, with a witness when not.

    Checking cycles suffices: a closed path without exit is a power of a
    cycle without exit, so an exitless closed path exists exactly when an
    exitless cycle does.
    """
    for c in enumerate_cycles(g):
        if not exits_of_closed_path(g, c.edges):
            return False, c
    return True, None
