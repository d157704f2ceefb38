"""Symbolic calculus on the path space of a finite ultragraph.

The path space consists of the infinite paths, the finite paths paired
with a sink in their final range, and the isolated sink points.  It is
never materialized: every computation works on *cylinders*, the canonical
prefix-plus-next-vertex subsets, and on finite disjoint unions of them.

A cylinder (a, u) denotes

* prefix a nonempty, u not a sink: the paths extending a whose next edge
  has source u;
* prefix a nonempty, u a sink:     the single point (a, u);
* prefix empty, u not a sink:      the paths starting at u;
* prefix empty, u a sink:          the single point (u, u).

Every well-formed cylinder is nonempty: a sink next-vertex pins a point,
and from a non-sink vertex of a finite graph some extension always exists
(it either reaches a sink or goes on forever).  Emptiness therefore only
arises during construction, when a requested next-vertex set misses the
prefix range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InadmissibleWord, InvalidPath
from .ultragraph import Ultragraph, validate_path


@dataclass(frozen=True)
class Cylinder:
    prefix: tuple[str, ...]
    next: str

    def __repr__(self):
        return f"[{''.join(self.prefix) or 'ε'}; {self.next}]"


def make_cylinder(g: Ultragraph, prefix: Sequence[str], nxt: str) -> Cylinder:
    """Validated cylinder: prefix a path and nxt in its range when nonempty."""
    prefix = validate_path(g, prefix)
    if nxt not in g._vindex:
        raise InvalidPath(f"unknown vertex {nxt!r}")
    if prefix and nxt not in g.range[prefix[-1]]:
        raise InvalidPath(f"vertex {nxt!r} is not in the range of {prefix[-1]!r}")
    return Cylinder(prefix, nxt)


def cylinder_key(g: Ultragraph, c: Cylinder):
    """Canonical sort key by declaration order."""
    return (len(c.prefix), tuple(g.edge_index(e) for e in c.prefix), g.vertex_index(c.next))


def cylinder_is_empty(g: Ultragraph, c: Cylinder) -> bool:
    """Always False for well-formed cylinders (see the module docstring)."""
    make_cylinder(g, c.prefix, c.next)
    return False


def refine_cylinder_once(g: Ultragraph, c: Cylinder) -> list[Cylinder]:
    """One refinement step: split a non-sink cylinder along its next edge.

    The children partition the parent exactly; sink cylinders are points
    and do not refine.
    """
    if g.is_sink(c.next):
        return [c]
    out = []
    for e in g.emitted(c.next):
        for u in g.sort_vertices(g.range[e]):
            out.append(Cylinder(c.prefix + (e,), u))
    return out


class SetExpr:
    """A finite set of pairwise-disjoint nonempty cylinders.

    Equality of SetExprs is equality of the denoted subsets of the path
    space, decided by refining both sides to a common depth.
    """

    __slots__ = ("cylinders",)

    def __init__(self, cylinders: Iterable[Cylinder] = ()):
        self.cylinders = frozenset(cylinders)

    def is_empty(self) -> bool:
        return not self.cylinders

    def max_depth(self) -> int:
        return max((len(c.prefix) for c in self.cylinders), default=0)

    def __repr__(self):
        return "{" + ", ".join(map(repr, sorted(self.cylinders, key=lambda c: (c.prefix, c.next)))) + "}"


def cylinder_from(g: Ultragraph, prefix: Sequence[str], next_vertices: Iterable[str]) -> SetExpr:
    """The set of paths with the given prefix whose next vertex lies in A.

    For a nonempty prefix this keeps one cylinder per vertex of A inside
    the prefix range; for the empty prefix, one per vertex of A.  Empty
    intersections simply drop out.
    """
    prefix = validate_path(g, prefix)
    vs = set(next_vertices)
    for v in vs:
        if v not in g._vindex:
            raise InvalidPath(f"unknown vertex {v!r}")
    if prefix:
        vs &= g.range[prefix[-1]]
    return SetExpr(Cylinder(prefix, v) for v in vs)


def full_space(g: Ultragraph) -> SetExpr:
    return cylinder_from(g, (), g.vertices)


def atoms_at_depth(g: Ultragraph, cylinders: Iterable[Cylinder], depth: int) -> set[Cylinder]:
    """Refine every cylinder until non-sink prefixes reach exactly depth.

    At a fixed depth the resulting atoms are pairwise equal-or-disjoint,
    which is what makes set and coefficient comparisons sound.
    """
    out: set[Cylinder] = set()
    stack = list(cylinders)
    while stack:
        c = stack.pop()
        if len(c.prefix) > depth:
            raise ValueError("depth is below an occurring prefix length")
        if g.is_sink(c.next) or len(c.prefix) == depth:
            out.add(c)
        else:
            stack.extend(refine_cylinder_once(g, c))
    return out


def refine_to_depth(g: Ultragraph, s: SetExpr, depth: int) -> SetExpr:
    """The same set, written with every non-sink cylinder at the given depth."""
    return SetExpr(atoms_at_depth(g, s.cylinders, depth))


def set_equal(g: Ultragraph, s1: SetExpr, s2: SetExpr) -> bool:
    d = max(s1.max_depth(), s2.max_depth())
    return atoms_at_depth(g, s1.cylinders, d) == atoms_at_depth(g, s2.cylinders, d)


def set_intersection(g: Ultragraph, s1: SetExpr, s2: SetExpr) -> SetExpr:
    d = max(s1.max_depth(), s2.max_depth())
    return SetExpr(atoms_at_depth(g, s1.cylinders, d) & atoms_at_depth(g, s2.cylinders, d))


def set_union(g: Ultragraph, s1: SetExpr, s2: SetExpr) -> SetExpr:
    d = max(s1.max_depth(), s2.max_depth())
    return SetExpr(atoms_at_depth(g, s1.cylinders, d) | atoms_at_depth(g, s2.cylinders, d))


# -- admissible words and the partial action --------------------------------


def split_positive_negative(letters: Sequence[tuple[str, int]]) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
    """Split a reduced word into (a, b) with the word equal to a · b⁻¹.

    Returns None when the word is not of that shape (a negative letter
    followed by a positive one).  The negative suffix read backwards gives
    the path b.
    """
    a: list[str] = []
    b_rev: list[str] = []
    for edge, sign in letters:
        if sign > 0:
            if b_rev:
                return None
            a.append(edge)
        else:
            b_rev.append(edge)
    return tuple(a), tuple(reversed(b_rev))


def word_parts(g: Ultragraph, letters: Sequence[tuple[str, int]]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """The (a, b) decomposition of an admissible word, or InadmissibleWord."""
    parts = split_positive_negative(letters)
    if parts is None:
        raise InadmissibleWord("word is not of the form (path)·(path)⁻¹")
    a, b = parts
    try:
        validate_path(g, a)
        validate_path(g, b)
    except InvalidPath as exc:
        raise InadmissibleWord(str(exc)) from exc
    if a and b and not (g.range[a[-1]] & g.range[b[-1]]):
        raise InadmissibleWord("the two path ranges do not intersect")
    return a, b


def word_is_admissible(g: Ultragraph, letters: Sequence[tuple[str, int]]) -> bool:
    try:
        word_parts(g, letters)
    except InadmissibleWord:
        return False
    return True


def word_domain(g: Ultragraph, letters: Sequence[tuple[str, int]]) -> SetExpr:
    """The subset of the path space attached to an admissible word.

    For the word a·b⁻¹ this is the set of paths extending a whose junction
    vertex lies in both ranges; empty-sided words degenerate to the prefix
    set of a, the source set of range(b), or the whole space.
    """
    a, b = word_parts(g, letters)
    if not a and not b:
        return full_space(g)
    if a:
        allowed = g.range[a[-1]]
        if b:
            allowed = allowed & g.range[b[-1]]
        return SetExpr(Cylinder(a, u) for u in allowed)
    return cylinder_from(g, (), g.range[b[-1]])


def theta_apply(g: Ultragraph, letters: Sequence[tuple[str, int]], s: SetExpr) -> SetExpr:
    """Image of s under the partial bijection of an admissible word.

    For the word a·b⁻¹ the map replaces the prefix b by a on the part of s
    lying in its domain; everything outside the domain is cut away.  The
    empty word acts as the identity.
    """
    a, b = word_parts(g, letters)
    if not a and not b:
        return SetExpr(s.cylinders)
    depth = max(len(b), s.max_depth())
    out = []
    for c in atoms_at_depth(g, s.cylinders, depth):
        if len(c.prefix) < len(b):
            continue  # a retained sink point shorter than b lies outside the domain
        if c.prefix[: len(b)] != b:
            continue
        junction = g.source[c.prefix[len(b)]] if len(c.prefix) > len(b) else c.next
        if a and junction not in g.range[a[-1]]:
            continue
        out.append(Cylinder(a + c.prefix[len(b):], c.next))
    return SetExpr(out)
