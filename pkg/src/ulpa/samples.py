"""Bundled sample ultragraphs used throughout the test and acceptance
suites, defined through the DSL so the parser is exercised on import."""

from __future__ import annotations

from .parsing import parse_ultragraph_dsl
from .ultragraph import Ultragraph

DSL_SOURCES: dict[str, str] = {
    # one loop edge, no exit
    "G_LOOP": "ultragraph { vertices: v; edge e: v -> {v}; }",
    # two parallel loop edges, each an exit for the other
    "G_LOOP2": "ultragraph { vertices: v; edge e: v -> {v}; edge f: v -> {v}; }",
    # a single edge into a sink
    "G_CHAIN": "ultragraph { vertices: v, w; edge e: v -> {w}; }",
    # a loop whose range also holds a sink (a sink exit)
    "G_MIX": "ultragraph { vertices: v, w; edge e: v -> {v, w}; }",
    # a two-edge cycle with a proper ultragraph range
    "G_ULTRA": "ultragraph { vertices: u, v, w; edge e: u -> {v, w}; edge f: v -> {u}; }",
}


def load(name: str) -> Ultragraph:
    return parse_ultragraph_dsl(DSL_SOURCES[name])


def all_samples() -> dict[str, Ultragraph]:
    return {name: load(name) for name in DSL_SOURCES}


G_LOOP = load("G_LOOP")
G_LOOP2 = load("G_LOOP2")
G_CHAIN = load("G_CHAIN")
G_MIX = load("G_MIX")
G_ULTRA = load("G_ULTRA")
