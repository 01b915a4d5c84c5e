"""Permutations and cycle notation.

Points are 1-based in text and 0-based internally.  Products act on the
right: ``(a * b)(x) = b(a(x))``, so ``"(1 2)(2 3)"`` applies ``(1 2)`` first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"images {self.images} are not a bijection")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)


_CYCLE_CHARS = re.compile(r"[\s\d(),]*")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2 3)(4 5)"`` over points ``1..degree``.

    Points inside a cycle may be separated by spaces or commas.  Cycles need
    not be disjoint; they are composed left to right.
    """
    if degree < 1:
        raise ParseError(f"degree must be positive, got {degree}")
    if not _CYCLE_CHARS.fullmatch(text):
        bad = next(i for i, ch in enumerate(text) if not (ch.isspace() or ch.isdigit() or ch in "(),"))
        raise ParseError("unexpected character", text, bad)
    result = Permutation.identity(degree)
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError("expected '('", text, i)
        close = text.find(")", i + 1)
        if close < 0:
            raise ParseError("unclosed '('", text, i)
        inner = text[i + 1:close]
        if "(" in inner:
            raise ParseError("nested '('", text, i + 1 + inner.index("("))
        tokens = [t for t in re.split(r"[\s,]+", inner) if t]
        points = []
        for tok in tokens:
            p = int(tok)
            if not 1 <= p <= degree:
                raise ParseError(f"point {p} out of range 1..{degree}", text, i)
            if p - 1 in points:
                raise ParseError(f"point {p} repeated within one cycle", text, i)
            points.append(p - 1)
        if points:
            images = list(range(degree))
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
            result = result * Permutation(tuple(images))
        i = close + 1
    return result
