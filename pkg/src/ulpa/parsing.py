"""Parsers for the ultragraph DSL and the element-expression grammar,
with source locations on every syntax error.

DSL:        ultragraph { vertices: v, w; edge e: v -> {v, w}; }
Expression: scalars (`2`, `-3/4`), `p({v,w})`, `p(v)`, `s(e)`, `s*(e)`,
            infix + - * and parentheses; whitespace is insignificant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, UnknownEdge, UnknownVertex
from .leavitt import Add, GeneratorExpr, Mul, Neg, PGen, Scalar, SGen, SStarGen, Sub
from .ultragraph import Ultragraph, make_ultragraph

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "number" | punctuation literal | "end"
    text: str
    line: int
    column: int


def _tokenize(text: str, punctuation: tuple[str, ...]) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        for punct in punctuation:
            if text.startswith(punct, i):
                tokens.append(Token(punct, punct, start_line, start_col))
                i += len(punct)
                col += len(punct)
                break
        else:
            if ch in _IDENT_START:
                j = i
                while j < n and text[j] in _IDENT_CONT:
                    j += 1
                tokens.append(Token("ident", text[i:j], start_line, start_col))
                col += j - i
                i = j
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(Token("number", text[i:j], start_line, start_col))
                col += j - i
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {expected}, found {tok.text or 'end of input'!r}",
                tok.line,
                tok.column,
                expected=expected,
            )
        return self.advance()


# -- ultragraph DSL ------------------------------------------------------------


def parse_ultragraph_dsl(text: str) -> Ultragraph:
    """Parse and validate an ultragraph description."""
    cur = _Cursor(_tokenize(text, ("->", "{", "}", ":", ",", ";")))
    header = cur.expect("ident", "'ultragraph'")
    if header.text != "ultragraph":
        raise ParseError(f"expected 'ultragraph', found {header.text!r}", header.line, header.column)
    cur.expect("{", "'{'")
    kw = cur.expect("ident", "'vertices'")
    if kw.text != "vertices":
        raise ParseError(f"expected 'vertices', found {kw.text!r}", kw.line, kw.column)
    cur.expect(":", "':'")
    vertices = [cur.expect("ident", "a vertex label").text]
    while cur.peek().kind == ",":
        cur.advance()
        vertices.append(cur.expect("ident", "a vertex label").text)
    cur.expect(";", "';'")
    edges: list[str] = []
    source: dict[str, str] = {}
    range_: dict[str, set[str]] = {}
    while cur.peek().kind == "ident":
        kw = cur.advance()
        if kw.text != "edge":
            raise ParseError(f"expected 'edge' or '}}', found {kw.text!r}", kw.line, kw.column)
        name = cur.expect("ident", "an edge label").text
        cur.expect(":", "':'")
        src = cur.expect("ident", "a source vertex").text
        cur.expect("->", "'->'")
        cur.expect("{", "'{'")
        targets = [cur.expect("ident", "a range vertex").text]
        while cur.peek().kind == ",":
            cur.advance()
            targets.append(cur.expect("ident", "a range vertex").text)
        cur.expect("}", "'}'")
        cur.expect(";", "';'")
        edges.append(name)
        source[name] = src
        range_[name] = set(targets)
    cur.expect("}", "'}'")
    cur.expect("end", "end of input")
    return make_ultragraph(vertices, edges, source, range_)


def render_ultragraph_dsl(g: Ultragraph) -> str:
    lines = [f"  vertices: {', '.join(g.vertices)};"]
    for e in g.edges:
        targets = ", ".join(g.sort_vertices(g.range[e]))
        lines.append(f"  edge {e}: {g.source[e]} -> {{{targets}}};")
    return "ultragraph {\n" + "\n".join(lines) + "\n}\n"


# -- element expressions ---------------------------------------------------------


def parse_element_expr(g: Ultragraph, text: str) -> GeneratorExpr:
    """Parse an element expression and resolve names against the graph."""
    cur = _Cursor(_tokenize(text, ("(", ")", "{", "}", ",", "+", "-", "*", "/")))

    def check_vertex(tok: Token) -> str:
        if tok.text not in g._vindex:
            raise UnknownVertex(f"unknown vertex {tok.text!r} at line {tok.line}, column {tok.column}")
        return tok.text

    def parse_atom() -> GeneratorExpr:
        tok = cur.peek()
        if tok.kind == "number":
            cur.advance()
            num = int(tok.text)
            if cur.peek().kind == "/":
                cur.advance()
                den = int(cur.expect("number", "a denominator").text)
                return Scalar(num, den)
            return Scalar(num)
        if tok.kind == "(":
            cur.advance()
            inner = parse_sum()
            cur.expect(")", "')'")
            return inner
        if tok.kind == "ident" and tok.text == "p":
            cur.advance()
            cur.expect("(", "'('")
            if cur.peek().kind == "{":
                cur.advance()
                vs = []
                if cur.peek().kind == "ident":
                    vs.append(check_vertex(cur.advance()))
                    while cur.peek().kind == ",":
                        cur.advance()
                        vs.append(check_vertex(cur.expect("ident", "a vertex label")))
                cur.expect("}", "'}'")
                cur.expect(")", "')'")
                return PGen(frozenset(vs))
            v = check_vertex(cur.expect("ident", "a vertex label"))
            cur.expect(")", "')'")
            return PGen(frozenset({v}))
        if tok.kind == "ident" and tok.text == "s":
            cur.advance()
            starred = False
            if cur.peek().kind == "*":
                cur.advance()
                starred = True
            cur.expect("(", "'('")
            name = cur.expect("ident", "an edge label")
            if name.text not in g._eindex:
                raise UnknownEdge(
                    f"unknown edge {name.text!r} at line {name.line}, column {name.column}"
                )
            cur.expect(")", "')'")
            return SStarGen(name.text) if starred else SGen(name.text)
        raise ParseError(
            f"expected a scalar, p(...), s(...), s*(...) or '(', found {tok.text or 'end of input'!r}",
            tok.line,
            tok.column,
            expected="an expression atom",
        )

    def parse_factor() -> GeneratorExpr:
        if cur.peek().kind == "-":
            tok = cur.advance()
            operand = parse_factor()
            if isinstance(operand, Scalar):
                return Scalar(-operand.numerator, operand.denominator)
            return Neg(operand)
        return parse_atom()

    def parse_product() -> GeneratorExpr:
        expr = parse_factor()
        while cur.peek().kind == "*":
            cur.advance()
            expr = Mul(expr, parse_factor())
        return expr

    def parse_sum() -> GeneratorExpr:
        expr = parse_product()
        while cur.peek().kind in ("+", "-"):
            op = cur.advance()
            rhs = parse_product()
            expr = Add(expr, rhs) if op.kind == "+" else Sub(expr, rhs)
        return expr

    expr = parse_sum()
    cur.expect("end", "end of input")
    return expr
