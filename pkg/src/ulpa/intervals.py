"""Exact rational interval arithmetic on labeled half-open intervals, and
piecewise-affine bijections between finite unions of them.

A point is a pair (rational, label); an interval [lo, hi) carries one
label.  All endpoints are Fractions, so every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[Fraction, str]


@dataclass(frozen=True)
class Interval:
    """Nonempty half-open labeled interval [lo, hi) × {label}."""

    label: str
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    def contains(self, q: Fraction) -> bool:
        return self.lo <= q < self.hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi})×{{{self.label}}}"


def _merge(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    """Canonical form: sorted, with overlapping or touching same-label
    intervals coalesced."""
    out: list[Interval] = []
    for iv in sorted(intervals, key=lambda i: (i.label, i.lo, i.hi)):
        if out and out[-1].label == iv.label and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(iv.label, out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return tuple(out)


class IntervalSet:
    """A finite union of labeled half-open intervals in canonical form."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        self.intervals = _merge(intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, point: Point) -> bool:
        q, label = point
        return any(iv.label == label and iv.contains(q) for iv in self.intervals)

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return " ∪ ".join(map(repr, self.intervals)) if self.intervals else "∅"


def union(*sets: IntervalSet) -> IntervalSet:
    out: list[Interval] = []
    for s in sets:
        out.extend(s.intervals)
    return IntervalSet(out)


def intersect(s1: IntervalSet, s2: IntervalSet) -> IntervalSet:
    out = []
    for a in s1.intervals:
        for b in s2.intervals:
            if a.label == b.label:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if lo < hi:
                    out.append(Interval(a.label, lo, hi))
    return IntervalSet(out)


def subtract(s1: IntervalSet, s2: IntervalSet) -> IntervalSet:
    out = []
    for a in s1.intervals:
        pieces = [(a.lo, a.hi)]
        for b in s2.intervals:
            if b.label != a.label:
                continue
            nxt = []
            for lo, hi in pieces:
                cut_lo, cut_hi = max(lo, b.lo), min(hi, b.hi)
                if cut_lo >= cut_hi:
                    nxt.append((lo, hi))
                    continue
                if lo < cut_lo:
                    nxt.append((lo, cut_lo))
                if cut_hi < hi:
                    nxt.append((cut_hi, hi))
            pieces = nxt
        out.extend(Interval(a.label, lo, hi) for lo, hi in pieces)
    return IntervalSet(out)


# -- piecewise-affine maps -----------------------------------------------------


@dataclass(frozen=True)
class AffinePiece:
    """One affine chart src → dst: x ↦ scale·x + offset, relabeled to dst.

    scale is positive so half-open orientation is preserved; the endpoint
    images must match the destination interval exactly.
    """

    src: Interval
    dst: Interval
    scale: Fraction
    offset: Fraction

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("piece scale must be positive")
        if self.scale * self.src.lo + self.offset != self.dst.lo:
            raise ValueError("piece endpoints disagree at lo")
        if self.scale * self.src.hi + self.offset != self.dst.hi:
            raise ValueError("piece endpoints disagree at hi")

    def apply(self, point: Point) -> Point | None:
        q, label = point
        if label != self.src.label or not self.src.contains(q):
            return None
        return (self.scale * q + self.offset, self.dst.label)

    def inverted(self) -> "AffinePiece":
        return AffinePiece(self.dst, self.src, 1 / self.scale, -self.offset / self.scale)


class PiecewiseAffineMap:
    """A bijection between two interval sets, given by disjoint affine charts."""

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[AffinePiece]):
        pieces = tuple(sorted(pieces, key=lambda p: (p.src.label, p.src.lo)))
        for a, b in zip(pieces, pieces[1:]):
            if a.src.label == b.src.label and b.src.lo < a.src.hi:
                raise ValueError("overlapping source charts")
        dsts = IntervalSet(p.dst for p in pieces)
        if sum(d.hi - d.lo for d in dsts.intervals) != sum(p.dst.hi - p.dst.lo for p in pieces):
            raise ValueError("overlapping destination charts")
        self.pieces = pieces

    def domain(self) -> IntervalSet:
        return IntervalSet(p.src for p in self.pieces)

    def image(self) -> IntervalSet:
        return IntervalSet(p.dst for p in self.pieces)

    def apply(self, point: Point) -> Point | None:
        for p in self.pieces:
            out = p.apply(point)
            if out is not None:
                return out
        return None

    def inverted(self) -> "PiecewiseAffineMap":
        return PiecewiseAffineMap(p.inverted() for p in self.pieces)

    def is_identity(self) -> bool:
        return all(
            p.scale == 1 and p.offset == 0 and p.src.label == p.dst.label for p in self.pieces
        )

    def fixed_points(self) -> tuple[IntervalSet, list[Point]]:
        """Pointwise-fixed locus: full charts and isolated solutions."""
        full: list[Interval] = []
        isolated: list[Point] = []
        for p in self.pieces:
            if p.src.label != p.dst.label:
                continue
            if p.scale == 1:
                if p.offset == 0:
                    full.append(p.src)
            else:
                q = p.offset / (1 - p.scale)
                if p.src.contains(q):
                    isolated.append((q, p.src.label))
        return IntervalSet(full), isolated


def compose(outer: PiecewiseAffineMap, inner: PiecewiseAffineMap) -> PiecewiseAffineMap:
    """outer ∘ inner, charts split along both decompositions."""
    pieces = []
    for pi in inner.pieces:
        for po in outer.pieces:
            if pi.dst.label != po.src.label:
                continue
            lo = max(pi.dst.lo, po.src.lo)
            hi = min(pi.dst.hi, po.src.hi)
            if lo >= hi:
                continue
            src_lo = (lo - pi.offset) / pi.scale
            src_hi = (hi - pi.offset) / pi.scale
            scale = po.scale * pi.scale
            offset = po.scale * pi.offset + po.offset
            pieces.append(
                AffinePiece(
                    Interval(pi.src.label, src_lo, src_hi),
                    Interval(po.dst.label, scale * src_lo + offset, scale * src_hi + offset),
                    scale,
                    offset,
                )
            )
    return PiecewiseAffineMap(pieces)


def compose_chain(maps: Sequence[PiecewiseAffineMap]) -> PiecewiseAffineMap:
    """maps[0] ∘ maps[1] ∘ … ∘ maps[-1]."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def power(f: PiecewiseAffineMap, n: int) -> PiecewiseAffineMap:
    out = f
    for _ in range(n - 1):
        out = compose(f, out)
    return out
