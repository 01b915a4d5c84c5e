"""Fitting sets of a fixed ambient group, materialized as id-masks over its lattice."""
from __future__ import annotations

from dataclasses import dataclass

from .classes import ClassExpr, section_member
from .errors import ConsistencyError, RefusedShape
from .group import FiniteGroup, Subgroup
from .lattice import SubgroupLattice, iter_bits


def _lattice(obj) -> SubgroupLattice:
    if isinstance(obj, SubgroupLattice):
        return obj
    if isinstance(obj, FiniteGroup):
        return obj.lattice
    raise TypeError(f"expected a group or lattice, got {type(obj).__name__}")


class FittingSet:
    """An explicit set of subgroup ids of one lattice.

    Construction does not verify the axioms; the module functions that build
    Fitting sets guarantee them, and :func:`verify_fitting_set` checks them.
    """

    __slots__ = ("lattice", "members", "provenance", "label")

    def __init__(self, lattice: SubgroupLattice, members: int, provenance: str = "explicit", label: str = ""):
        self.lattice = lattice
        self.members = members
        self.provenance = provenance
        self.label = label

    @property
    def group(self) -> FiniteGroup:
        return self.lattice.group

    @property
    def ids(self) -> list[int]:
        return list(iter_bits(self.members))

    def subgroups(self) -> list[Subgroup]:
        return [self.lattice.subgroups[i] for i in iter_bits(self.members)]

    def __contains__(self, item) -> bool:
        i = self.lattice.id_of(item)
        return bool(self.members >> i & 1)

    def __len__(self) -> int:
        return self.members.bit_count()

    def __eq__(self, other) -> bool:
        return isinstance(other, FittingSet) and other.lattice is self.lattice and other.members == self.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "FittingSet") -> bool:
        return self.members & other.members == self.members

    def __and__(self, other: "FittingSet") -> "FittingSet":
        return set_intersection(self, other)

    def __repr__(self) -> str:
        tag = self.label or self.provenance
        return f"FittingSet({tag}, {len(self)} members of {self.group.name})"


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    message: str


def conj_class_mask(lat: SubgroupLattice, i: int) -> int:
    key = ("cls", i)
    hit = lat._cache.get(key)
    if hit is None:
        hit = sum(1 << j for j in lat.conj_classes[int(lat.class_of[i])])
        lat._cache[key] = hit
    return hit


def verify_fitting_set(lat, members: int) -> Violation | None:
    """Check the three axioms exhaustively; return the first violation found."""
    lat = _lattice(lat)
    if members == 0:
        return Violation("nonempty", (), "the set is empty")
    for s in iter_bits(members):
        missing = lat.normal_in[s] & ~members
        if missing:
            t = next(iter_bits(missing))
            return Violation("normal-subgroups", (s, t), f"subgroup {t} is normal in member {s} but not a member")
    ids = list(iter_bits(members))
    for a, s in enumerate(ids):
        for t in ids[a + 1:]:
            j = lat.join(s, t)
            if lat.is_normal_in(s, j) and lat.is_normal_in(t, j) and not members >> j & 1:
                return Violation("normal-products", (s, t, j),
                                 f"members {s} and {t} are normal in their product {j}, which is not a member")
    for s in ids:
        missing = conj_class_mask(lat, s) & ~members
        if missing:
            t = next(iter_bits(missing))
            g = lat.conjugating_element(s, t)
            return Violation("conjugation", (s, t, g), f"member {s} conjugates to non-member {t} by element {g}")
    return None


def satisfies_product_axiom_variant(lat, members: int) -> bool:
    """Product axiom in the form: S, T members normal in some U with U = ST implies ST is a member."""
    lat = _lattice(lat)
    for u in range(lat.size):
        normal_members = lat.normal_in[u] & members
        ids = list(iter_bits(normal_members))
        for a, s in enumerate(ids):
            for t in ids[a:]:
                j = lat.join(s, t)
                if j == u and not members >> j & 1:
                    return False
    return True


def is_fitting_set(lat, members: int) -> bool:
    return verify_fitting_set(lat, members) is None


def trivial_fitset(G) -> FittingSet:
    return FittingSet(_lattice(G), 1, "explicit", "trivial")


def all_fitset(G) -> FittingSet:
    lat = _lattice(G)
    return FittingSet(lat, lat.full_ids, "explicit", "trace(all)")


def fitset_closure(lat, seed) -> FittingSet:
    """Least Fitting set containing the given subgroup ids."""
    lat = _lattice(lat)
    mem = 1
    for i in seed:
        mem |= 1 << lat.id_of(i)
    while True:
        new = mem
        for s in iter_bits(mem):
            new |= lat.normal_in[s] | conj_class_mask(lat, s)
        ids = list(iter_bits(new))
        for a, s in enumerate(ids):
            for t in ids[a + 1:]:
                j = lat.join(s, t)
                if not new >> j & 1 and lat.is_normal_in(s, j) and lat.is_normal_in(t, j):
                    new |= 1 << j
        if new == mem:
            return FittingSet(lat, mem, "closure")
        mem = new


def _require_fitting(x: ClassExpr):
    if not x.is_fitting:
        raise RefusedShape(f"{x} is not flagged as a Fitting class")


def trace(G, x: ClassExpr) -> FittingSet:
    """All subgroups belonging to class ``x``."""
    _require_fitting(x)
    lat = _lattice(G)
    mem = 0
    for h in range(lat.size):
        if section_member(lat, h, 0, x):
            mem |= 1 << h
    return FittingSet(lat, mem, "trace", f"trace({x})")


def radical_id(lat: SubgroupLattice, h: int, members: int) -> int:
    key = ("srad", h, members)
    hit = lat._cache.get(key)
    if hit is not None:
        return hit
    good = lat.normal_in[h] & members
    r = lat.join_all(iter_bits(good))
    if not members >> r & 1:
        raise ConsistencyError(f"join of the normal members of subgroup {h} is not a member")
    lat._cache[key] = r
    return r


def set_radical(H: Subgroup | FiniteGroup, F: FittingSet) -> Subgroup:
    """H_F: the join of the normal subgroups of H that belong to F."""
    lat = F.lattice
    h = lat.top_id if isinstance(H, FiniteGroup) else lat.id_of(H)
    return lat.subgroups[radical_id(lat, h, F.members)]


def set_product(F: FittingSet, x: ClassExpr) -> FittingSet:
    """F o X = {H : H / H_F in X}."""
    _require_fitting(x)
    lat = F.lattice
    mem = 0
    for h in range(lat.size):
        if section_member(lat, h, radical_id(lat, h, F.members), x):
            mem |= 1 << h
    return FittingSet(lat, mem, "product", f"oprod({F.label or F.provenance},{x})")


def set_intersection(F1: FittingSet, F2: FittingSet) -> FittingSet:
    if F1.lattice is not F2.lattice:
        raise ValueError("Fitting sets of different groups")
    label = f"meet({F1.label or F1.provenance},{F2.label or F2.provenance})"
    return FittingSet(F1.lattice, F1.members & F2.members, "intersection", label)


def loose_product(F: FittingSet | int, x: ClassExpr, lat: SubgroupLattice | None = None) -> int:
    """{H : some normal L of H lies in F with H/L in X}, as an id-mask (no closure)."""
    if isinstance(F, FittingSet):
        lat, members = F.lattice, F.members
    else:
        members = F
    mem = 0
    for h in range(lat.size):
        for l in iter_bits(lat.normal_in[h] & members):
            if section_member(lat, h, l, x):
                mem |= 1 << h
                break
    return mem
