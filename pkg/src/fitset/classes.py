"""Abstract group classes as a small expression language.

A class expression is evaluated on *sections* ``H/K`` of one ambient group
(``K`` normal in ``H``, both subgroups in the ambient lattice).  Every normal
subgroup of ``H/K`` is ``L/K`` for some lattice member ``L``, so radicals and
residuals of sections never need a separate quotient group.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, ParseError, RefusedShape
from .group import FiniteGroup, Subgroup
from .lattice import SubgroupLattice, iter_bits
from .structure import is_prime_power_of

PRIMITIVES = ("triv", "all", "nil", "sol", "p", "p'", "sp'")


@dataclass(frozen=True)
class ClassExpr:
    kind: str
    p: int | None = None
    k: int | None = None
    left: "ClassExpr | None" = None
    right: "ClassExpr | None" = None

    @property
    def is_primitive(self) -> bool:
        return self.kind in PRIMITIVES

    @property
    def is_fitting(self) -> bool:
        if self.is_primitive or self.kind == "pow":
            return True
        return self.left.is_fitting and self.right.is_fitting

    @property
    def is_formation(self) -> bool:
        if self.is_primitive or self.kind == "pow":
            return True
        if self.kind == "meet":
            return self.left.is_formation and self.right.is_formation
        # prod: only products of two primitive formations
        return self.left.is_primitive and self.right.is_primitive

    def __str__(self) -> str:
        if self.kind in ("triv", "all", "nil", "sol"):
            return self.kind
        if self.kind in ("p", "p'", "sp'"):
            return f"{self.kind}({self.p})"
        if self.kind == "pow":
            return f"pow(nil,{self.k})"
        return f"{self.kind}({self.left},{self.right})"


TRIV = ClassExpr("triv")
ALL = ClassExpr("all")
NIL = ClassExpr("nil")
SOL = ClassExpr("sol")


def PGRP(p: int) -> ClassExpr:
    return ClassExpr("p", p=p)


def PPRIME(p: int) -> ClassExpr:
    return ClassExpr("p'", p=p)


def SOLPPRIME(p: int) -> ClassExpr:
    return ClassExpr("sp'", p=p)


def PROD(x: ClassExpr, y: ClassExpr) -> ClassExpr:
    return ClassExpr("prod", left=x, right=y)


def MEET(x: ClassExpr, y: ClassExpr) -> ClassExpr:
    return ClassExpr("meet", left=x, right=y)


def POW(k: int) -> ClassExpr:
    if k < 1:
        raise ValueError("pow(nil,k) needs k >= 1")
    return ClassExpr("pow", k=k)


def p_nilpotent_class(p: int) -> ClassExpr:
    """E_{p'}N_p: groups with a normal p-complement."""
    return PROD(PPRIME(p), PGRP(p))


# -- parsing -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek_word(self, word: str) -> bool:
        self.skip()
        return self.text.startswith(word, self.pos)

    def expect(self, tok: str):
        self.skip()
        if not self.text.startswith(tok, self.pos):
            self.error(f"expected {tok!r}")
        self.pos += len(tok)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def prime(self) -> int:
        at = self.pos
        v = self.integer()
        if v < 2 or any(v % d == 0 for d in range(2, int(v ** 0.5) + 1)):
            self.pos = at
            self.error(f"{v} is not a prime")
        return v

    def expr(self) -> ClassExpr:
        self.skip()
        for name, build in (("prod(", PROD), ("meet(", MEET)):
            if self.peek_word(name):
                self.pos += len(name)
                x = self.expr()
                self.expect(",")
                y = self.expr()
                self.expect(")")
                return build(x, y)
        if self.peek_word("pow("):
            self.pos += 4
            self.expect("nil")
            self.expect(",")
            at = self.pos
            k = self.integer()
            if k < 1:
                self.pos = at
                self.error("pow exponent must be at least 1")
            self.expect(")")
            return POW(k)
        for name, build in (("sp'(", SOLPPRIME), ("p'(", PPRIME), ("p(", PGRP)):
            if self.peek_word(name):
                self.pos += len(name)
                p = self.prime()
                self.expect(")")
                return build(p)
        for word, value in (("triv", TRIV), ("all", ALL), ("nil", NIL), ("sol", SOL)):
            if self.peek_word(word):
                self.pos += len(word)
                return value
        self.error("expected a class expression")


def parse_classexpr(text: str) -> ClassExpr:
    parser = _Parser(text)
    expr = parser.expr()
    parser.skip()
    if parser.pos != len(text):
        parser.error("trailing input")
    return expr


def parse_classexpr_prefix(text: str, pos: int) -> tuple[ClassExpr, int]:
    """Parse one expression starting at ``pos``; return it and the end position."""
    parser = _Parser(text)
    parser.pos = pos
    return parser.expr(), parser.pos


# -- inclusions ----------------------------------------------------------------

def known_inclusion(x: ClassExpr, y: ClassExpr) -> bool:
    """Hand-audited whitelist of inclusions X <= Y among the shipped shapes.

    Returns False when the inclusion is unknown, not when it is known to fail.
    """
    if x == y or x == TRIV or y == ALL:
        return True
    if x.kind == "p" and y.kind == "nil":
        return True
    if x.kind in ("p", "nil") and y == SOL:
        return True
    if x.kind == "pow" and y == SOL:
        return True
    if x == NIL and y.kind == "pow":
        return True
    if x.kind == "p" and y.kind == "pow":
        return True
    if x.kind == "pow" and y.kind == "pow":
        return x.k <= y.k
    if x.kind == "p" and y.kind in ("p'", "sp'"):
        return x.p != y.p
    if x.kind == "sp'" and (y == SOL or (y.kind == "p'" and y.p == x.p)):
        return True
    if y.kind == "prod" and y.right.kind == "p" and y == p_nilpotent_class(y.right.p):
        q = y.right.p
        if x == NIL or x.kind == "p" or (x.kind in ("p'", "sp'") and x.p == q):
            return True
    return False


# -- evaluation on sections ------------------------------------------------------

def _comm_span(lat: SubgroupLattice, a: int, b: int, k: int) -> int:
    key = ("comm", a, b, k)
    hit = lat._cache.get(key)
    if hit is not None:
        return hit
    G = lat.group
    A = lat.subgroups[a].elems
    B = lat.subgroups[b].elems
    vals = G.comm[A[:, None], B[None, :]].ravel()
    m = lat.masks[k]
    for v in set(vals.tolist()):
        m |= 1 << v
    out = lat.span(m)
    lat._cache[key] = out
    return out


def section_is_nilpotent(lat: SubgroupLattice, h: int, k: int) -> bool:
    cur = h
    while True:
        if cur == k:
            return True
        nxt = _comm_span(lat, cur, h, k)
        if nxt == cur:
            return False
        cur = nxt


def section_is_soluble(lat: SubgroupLattice, h: int, k: int) -> bool:
    cur = h
    while True:
        if cur == k:
            return True
        nxt = _comm_span(lat, cur, cur, k)
        if nxt == cur:
            return False
        cur = nxt


def _intermediate_normal(lat: SubgroupLattice, h: int, k: int) -> int:
    """Id-mask of L with K <= L and L normal in H."""
    return lat.normal_in[h] & lat.above[k]


def section_member(lat: SubgroupLattice, h: int, k: int, x: ClassExpr) -> bool:
    """Whether the section H/K (K normal in H) lies in class ``x``."""
    key = ("mem", h, k, x)
    hit = lat._cache.get(key)
    if hit is not None:
        return hit
    order = lat.order(h) // lat.order(k)
    kind = x.kind
    if kind == "triv":
        out = order == 1
    elif kind == "all":
        out = True
    elif kind == "p":
        out = is_prime_power_of(order, x.p)
    elif kind == "p'":
        out = order % x.p != 0
    elif kind == "sp'":
        out = order % x.p != 0 and section_is_soluble(lat, h, k)
    elif kind == "nil":
        out = section_is_nilpotent(lat, h, k)
    elif kind == "sol":
        out = section_is_soluble(lat, h, k)
    elif kind == "meet":
        out = section_member(lat, h, k, x.left) and section_member(lat, h, k, x.right)
    elif kind == "prod":
        r = section_radical(lat, h, k, x.left)
        out = section_member(lat, h, r, x.right)
    elif kind == "pow":
        if x.k == 1:
            out = section_is_nilpotent(lat, h, k)
        else:
            r = section_radical(lat, h, k, NIL)
            out = section_member(lat, h, r, POW(x.k - 1))
    else:  # pragma: no cover
        raise ValueError(kind)
    lat._cache[key] = out
    return out


def section_radical(lat: SubgroupLattice, h: int, k: int, x: ClassExpr) -> int:
    """Id of R with R/K the X-radical of H/K."""
    key = ("rad", h, k, x)
    hit = lat._cache.get(key)
    if hit is not None:
        return hit
    good = [l for l in iter_bits(_intermediate_normal(lat, h, k)) if section_member(lat, l, k, x)]
    r = lat.join_all(good) if good else k
    if not section_member(lat, r, k, x):
        raise ConsistencyError(f"join of normal {x}-subgroups is not in {x}; the class is not Fitting")
    lat._cache[key] = r
    return r


def section_residual(lat: SubgroupLattice, h: int, k: int, x: ClassExpr) -> int:
    """Id of R with R/K the X-residual of H/K."""
    key = ("res", h, k, x)
    hit = lat._cache.get(key)
    if hit is not None:
        return hit
    m = lat.masks[h]
    for l in iter_bits(_intermediate_normal(lat, h, k)):
        if section_member(lat, h, l, x):
            m &= lat.masks[l]
    r = lat.index[m]
    if not section_member(lat, h, r, x):
        raise ConsistencyError(f"quotient by the {x}-residual is not in {x}; the class is not a formation")
    lat._cache[key] = r
    return r


# -- public API on groups and subgroups -------------------------------------------

def _locate(obj: FiniteGroup | Subgroup) -> tuple[SubgroupLattice, int]:
    if isinstance(obj, FiniteGroup):
        lat = obj.lattice
        return lat, lat.top_id
    lat = obj.group.lattice
    return lat, lat.id_of(obj)


def _require_fitting(x: ClassExpr):
    if not x.is_fitting:
        raise RefusedShape(f"{x} is not flagged as a Fitting class")


def class_member(obj: FiniteGroup | Subgroup, x: ClassExpr) -> bool:
    _require_fitting(x)
    lat, h = _locate(obj)
    return section_member(lat, h, 0, x)


def class_radical(obj: FiniteGroup | Subgroup, x: ClassExpr) -> Subgroup:
    _require_fitting(x)
    lat, h = _locate(obj)
    return lat.subgroups[section_radical(lat, h, 0, x)]


def class_residual(obj: FiniteGroup | Subgroup, x: ClassExpr) -> Subgroup:
    if not x.is_formation:
        raise RefusedShape(f"{x} is not flagged as a formation")
    lat, h = _locate(obj)
    return lat.subgroups[section_residual(lat, h, 0, x)]


def nilpotent_length(obj: FiniteGroup | Subgroup) -> int | None:
    """Length of the lower nilpotent series H > H^N > (H^N)^N > ... > 1.

    Each term is the stable end of the previous term's lower central series.
    Returns None if the series stalls above 1 (non-soluble).
    """
    lat, h = _locate(obj)
    length = 0
    while h != 0:
        cur = h
        while True:
            nxt = _comm_span(lat, cur, h, 0)
            if nxt == cur:
                break
            cur = nxt
        if cur == h:
            return None
        h = cur
        length += 1
    return length
