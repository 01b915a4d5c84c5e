"""Named small groups built from permutation generators."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .group import FiniteGroup, group_from_generators
from .perm import Permutation

# Named groups whose order is above the default bound; built with an explicit bound.
LARGE_ORDER_BOUND = 1000


def _cycle(points: list[int], degree: int) -> Permutation:
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return Permutation(tuple(images))


@dataclass(frozen=True)
class Recipe:
    degree: int
    gens: tuple[Permutation, ...]


def cyclic(n: int) -> Recipe:
    if n == 1:
        return Recipe(1, ())
    return Recipe(n, (_cycle(list(range(n)), n),))


def dihedral(order: int) -> Recipe:
    n = order // 2
    if n == 2:
        return direct(cyclic(2), cyclic(2))
    rot = _cycle(list(range(n)), n)
    ref = Permutation(tuple((n - i) % n for i in range(n)))
    return Recipe(n, (rot, ref))


def symmetric(n: int) -> Recipe:
    if n == 1:
        return cyclic(1)
    return Recipe(n, (_cycle([0, 1], n), _cycle(list(range(n)), n)))


def alternating(n: int) -> Recipe:
    if n < 3:
        return cyclic(1)
    return Recipe(n, tuple(_cycle([0, 1, k], n) for k in range(2, n)))


def _regular(elements: list, mul: Callable) -> Callable:
    index = {e: i for i, e in enumerate(elements)}

    def right_mult(g):
        return Permutation(tuple(index[mul(e, g)] for e in elements))
    return right_mult


def quaternion8() -> Recipe:
    """Regular representation of the unit quaternions {+-1, +-i, +-j, +-k}."""
    # (sign, basis) with basis 0=1, 1=i, 2=j, 3=k
    table = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}

    def mul(a, b):
        s, e = table[(a[1], b[1])]
        return (a[0] * b[0] * s, e)

    elements = [(s, e) for s in (1, -1) for e in range(4)]
    right = _regular(elements, mul)
    return Recipe(8, (right((1, 1)), right((1, 2))))


def sl23() -> Recipe:
    """SL(2,3) acting on the eight nonzero row vectors of F_3^2."""
    vectors = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def act(m):
        (a, b), (c, d) = m
        return Permutation(tuple(index[((x * a + y * c) % 3, (x * b + y * d) % 3)] for x, y in vectors))
    return Recipe(8, (act(((1, 1), (0, 1))), act(((0, 2), (1, 0)))))


def asl24() -> Recipe:
    """ASL(2,4) = F_4^2 : SL(2,4) on the 16 points of the affine plane over F_4."""
    # F_4 = {0, 1, w, w+1} encoded 0..3 with bit arithmetic; w^2 = w + 1
    def fmul(a, b):
        r = 0
        for i in range(2):
            if b >> i & 1:
                r ^= a << i
        if r & 4:
            r ^= 0b111
        return r

    points = list(itertools.product(range(4), repeat=2))
    index = {p: i for i, p in enumerate(points)}

    def affine(m, t):
        (a, b), (c, d) = m
        return Permutation(tuple(
            index[(fmul(x, a) ^ fmul(y, c) ^ t[0], fmul(x, b) ^ fmul(y, d) ^ t[1])] for x, y in points))
    w = 2
    gens = (affine(((1, 1), (0, 1)), (0, 0)),
            affine(((w, 0), (0, fmul(w, w))), (0, 0)),
            affine(((0, 1), (1, 0)), (0, 0)),
            affine(((1, 0), (0, 1)), (1, 0)))
    return Recipe(16, gens)


def direct(*parts: Recipe) -> Recipe:
    """Direct product on disjoint point sets."""
    degree = sum(r.degree for r in parts)
    gens = []
    shift = 0
    for r in parts:
        for g in r.gens:
            images = list(range(degree))
            for i, v in enumerate(g.images):
                images[shift + i] = shift + v
            gens.append(Permutation(tuple(images)))
        shift += r.degree
    return Recipe(degree, tuple(gens))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    recipe: str
    expected_order: int
    build_recipe: Callable[[], Recipe]

    def build(self, order_bound: int | None = None) -> FiniteGroup:
        r = self.build_recipe()
        G = group_from_generators(list(r.gens), degree=r.degree, order_bound=order_bound, name=self.name)
        if G.order != self.expected_order:
            raise AssertionError(f"{self.name}: built order {G.order}, expected {self.expected_order}")
        return G


def _entries() -> list[CatalogEntry]:
    out = [CatalogEntry(f"C{n}", f"cyclic {n}", n, lambda n=n: cyclic(n)) for n in range(1, 13)]
    C = cyclic
    out += [
        CatalogEntry("V4", "cyclic 2 x cyclic 2", 4, lambda: direct(C(2), C(2))),
        CatalogEntry("S3", "symmetric 3", 6, lambda: symmetric(3)),
        CatalogEntry("D8", "dihedral 8", 8, lambda: dihedral(8)),
        CatalogEntry("Q8", "quaternion 8", 8, quaternion8),
        CatalogEntry("C2xC4", "cyclic 2 x cyclic 4", 8, lambda: direct(C(2), C(4))),
        CatalogEntry("C2xC2xC2", "cyclic 2 cubed", 8, lambda: direct(C(2), C(2), C(2))),
        CatalogEntry("C3xC3", "cyclic 3 x cyclic 3", 9, lambda: direct(C(3), C(3))),
        CatalogEntry("D10", "dihedral 10", 10, lambda: dihedral(10)),
        CatalogEntry("D12", "dihedral 12", 12, lambda: dihedral(12)),
        CatalogEntry("A4", "alternating 4", 12, lambda: alternating(4)),
        CatalogEntry("C2xS3", "cyclic 2 x symmetric 3", 12, lambda: direct(C(2), symmetric(3))),
        CatalogEntry("D16", "dihedral 16", 16, lambda: dihedral(16)),
        CatalogEntry("C2xD8", "cyclic 2 x dihedral 8", 16, lambda: direct(C(2), dihedral(8))),
        CatalogEntry("C3xS3", "cyclic 3 x symmetric 3", 18, lambda: direct(C(3), symmetric(3))),
        CatalogEntry("S4", "symmetric 4", 24, lambda: symmetric(4)),
        CatalogEntry("SL(2,3)", "sl23", 24, sl23),
        CatalogEntry("C2xA4", "cyclic 2 x alternating 4", 24, lambda: direct(C(2), alternating(4))),
        CatalogEntry("S3xS3", "symmetric 3 x symmetric 3", 36, lambda: direct(symmetric(3), symmetric(3))),
        CatalogEntry("C3xA4", "cyclic 3 x alternating 4", 36, lambda: direct(C(3), alternating(4))),
        CatalogEntry("A5", "alternating 5", 60, lambda: alternating(5)),
        CatalogEntry("S5", "symmetric 5", 120, lambda: symmetric(5)),
    ]
    return out


CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _entries()}
LARGE: dict[str, CatalogEntry] = {
    "ASL(2,4)": CatalogEntry("ASL(2,4)", "affine special linear 2 over F4", 960, asl24),
}


@lru_cache(maxsize=None)
def get_group(name: str) -> FiniteGroup:
    """Cached catalog group; lattices attached to it are cached too."""
    if name in CATALOG:
        return CATALOG[name].build()
    if name in LARGE:
        return LARGE[name].build(order_bound=LARGE_ORDER_BOUND)
    raise KeyError(f"unknown catalog group {name!r}; known: {', '.join(CATALOG)}")


def build_catalog(max_order: int | None = None) -> list[FiniteGroup]:
    """Catalog groups with order <= max_order, in (order, listing) order."""
    entries = [e for e in CATALOG.values() if max_order is None or e.expected_order <= max_order]
    entries.sort(key=lambda e: e.expected_order)
    return [get_group(e.name) for e in entries]
