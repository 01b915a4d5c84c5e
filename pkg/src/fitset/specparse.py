"""Text forms for Fitting sets and H-functions.

Fitting sets::

    fitset := "trace(" classexpr ")" | "trivial" | "closure{" subgroups "}"
            | "meet(" fitset "," fitset ")" | "oprod(" fitset "," classexpr ")"

``subgroups`` is a ';'-separated list; each subgroup is a ','-separated list
of generators in cycle notation (commas inside parentheses belong to the
cycle).  On groups without a permutation representation a generator may be
written ``#k`` for element index k.

H-function files hold lines ``p <prime> := <fitset>``; the inline form is
``"2:=trace(nil);3:=trivial"``.
"""
from __future__ import annotations

import re
from pathlib import Path

from .classes import parse_classexpr_prefix
from .errors import ParseError
from .fitting_sets import FittingSet, fitset_closure, set_intersection, set_product, trace, trivial_fitset
from .group import FiniteGroup
from .hartley import HFunction
from .perm import parse_permutation


def _split_top(text: str, sep: str) -> list[tuple[int, str]]:
    """Split at ``sep`` outside brackets; keep each piece's start offset."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    return parts


def _element(G: FiniteGroup, token: str, text: str, pos: int) -> int:
    token = token.strip()
    if token.startswith("#"):
        try:
            x = int(token[1:])
        except ValueError:
            raise ParseError("bad element index", text, pos) from None
        if not 0 <= x < G.order:
            raise ParseError(f"element index {x} out of range", text, pos)
        return x
    if G.degree is None:
        raise ParseError("cycle notation needs a permutation group; use #k", text, pos)
    try:
        perm = parse_permutation(token, G.degree)
    except ParseError as exc:
        raise ParseError(f"bad generator {token!r}: {exc}", text, pos) from None
    try:
        return G.index_of(perm)
    except ValueError:
        raise ParseError(f"{token} is not an element of {G.name}", text, pos) from None


class _FitsetParser:
    def __init__(self, G: FiniteGroup, text: str):
        self.G = G
        self.lat = G.lattice
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def take(self, word: str) -> bool:
        self.skip()
        if self.text.startswith(word, self.pos):
            self.pos += len(word)
            return True
        return False

    def expect(self, tok: str):
        if not self.take(tok):
            self.error(f"expected {tok!r}")

    def classexpr(self):
        self.skip()
        x, self.pos = parse_classexpr_prefix(self.text, self.pos)
        return x

    def fitset(self) -> FittingSet:
        if self.take("trace("):
            x = self.classexpr()
            self.expect(")")
            return trace(self.lat, x)
        if self.take("trivial"):
            return trivial_fitset(self.lat)
        if self.take("meet("):
            a = self.fitset()
            self.expect(",")
            b = self.fitset()
            self.expect(")")
            return set_intersection(a, b)
        if self.take("oprod("):
            a = self.fitset()
            self.expect(",")
            x = self.classexpr()
            self.expect(")")
            return set_product(a, x)
        if self.take("closure{"):
            return self.closure()
        self.error("expected a Fitting-set expression")

    def closure(self) -> FittingSet:
        start = self.pos
        end = self.text.find("}", start)
        if end < 0:
            self.error("unclosed '{'")
        body = self.text[start:end]
        seeds = []
        for off, chunk in _split_top(body, ";"):
            gens = [_element(self.G, tok, self.text, start + off + o)
                    for o, tok in _split_top(chunk, ",") if tok.strip()]
            seeds.append(self.lat.id_of(self.G.generate(gens)))
        self.pos = end + 1
        F = fitset_closure(self.lat, seeds)
        F.label = f"closure{{{body.strip()}}}"
        return F


def parse_fitset(G: FiniteGroup, text: str) -> FittingSet:
    p = _FitsetParser(G, text)
    F = p.fitset()
    p.skip()
    if p.pos != len(text):
        p.error("trailing input")
    F.label = text.strip()
    return F


# '#' starts a comment unless it is an element index such as '#5'
_COMMENT = re.compile(r"(^|\s)#(?!\d).*$")
_HLINE = re.compile(r"p\s+(\d+)\s*:=\s*(.+)")
_HINLINE = re.compile(r"\s*(\d+)\s*:=\s*(.+)", re.S)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _build_h(G: FiniteGroup, items: list[tuple[int, str, str]], label: str) -> HFunction:
    values = {}
    for p, spec, where in items:
        if not _is_prime(p):
            raise ParseError(f"{where}: {p} is not a prime")
        if p in values:
            raise ParseError(f"{where}: prime {p} assigned twice")
        values[p] = parse_fitset(G, spec)
    return HFunction(G.lattice, values, label=label, provenance="parsed")


def parse_hfunction_text(G: FiniteGroup, text: str, label: str = "h") -> HFunction:
    items = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        m = _HLINE.fullmatch(line)
        if not m:
            raise ParseError(f"line {lineno}: expected 'p <prime> := <fitset>'")
        items.append((int(m.group(1)), m.group(2).strip(), f"line {lineno}"))
    return _build_h(G, items, label)


def parse_hfunction_inline(G: FiniteGroup, text: str) -> HFunction:
    items = []
    for off, chunk in _split_top(text, ";"):
        if not chunk.strip():
            continue
        m = _HINLINE.fullmatch(chunk)
        if not m:
            raise ParseError("expected '<prime>:=<fitset>'", text, off)
        items.append((int(m.group(1)), m.group(2).strip(), f"entry at {off}"))
    return _build_h(G, items, text.strip())


def read_hfunction(G: FiniteGroup, path: str | Path) -> HFunction:
    path = Path(path)
    return parse_hfunction_text(G, path.read_text(encoding="utf-8"), label=path.stem)
