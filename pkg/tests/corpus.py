"""Reproducible random element corpora shared by tests and acceptance.

Elements are sums of one to four monomials s_a p_A s_b* with path lengths
at most three and integer coefficients in {-3..3} minus zero, drawn from
a seeded generator; accidental zeros are redrawn.
"""

from __future__ import annotations

import random

from ulpa.leavitt import Add, GeneratorExpr, LeavittAlgebra, Scalar, Mul
from ulpa.skew import GradedElement
from ulpa.ultragraph import Ultragraph

SEED = 20260808
MAX_PATH = 3


def all_paths(g: Ultragraph, max_len: int = MAX_PATH) -> list[tuple[str, ...]]:
    paths: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for e in g.edges:
                if not p or g.source[e] in g.range[p[-1]]:
                    nxt.append(p + (e,))
        paths.extend(nxt)
        frontier = nxt
    return paths


def random_nonzero_elements(
    alg: LeavittAlgebra, count: int, seed: int = SEED
) -> list[tuple[GeneratorExpr, GradedElement]]:
    """Pairs (expression, graded image), all nonzero, deterministic per seed."""
    g = alg.graph
    rng = random.Random(seed)
    paths = all_paths(g)
    out = []
    while len(out) < count:
        element = alg.zero()
        expr: GeneratorExpr | None = None
        for _ in range(rng.randint(1, 4)):
            a = rng.choice(paths)
            b = rng.choice(paths)
            vertices = frozenset(v for v in g.vertices if rng.random() < 0.6)
            lam = rng.choice([c for c in range(-3, 4) if c != 0])
            monomial = alg.monomial(a, vertices, b)
            if not monomial.vertices:
                continue
            term = Mul(Scalar(lam), monomial.as_expr())
            expr = term if expr is None else Add(expr, term)
            element = element + alg.monomial_image(monomial, alg.scalar(lam))
        if expr is None or element.is_zero():
            continue
        out.append((expr, element))
    return out
