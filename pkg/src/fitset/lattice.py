"""Full subgroup lattice of a finite group.

Subgroups are interned: one id per element set, ids sorted by (order, sorted
element tuple), so id 0 is the trivial subgroup and the last id is the group.
Sets of subgroups are Python ints used as bitmasks over ids ("id-masks").
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from . import _kernels, config
from .errors import SubgroupCapExceeded
from .group import FiniteGroup, Subgroup, indices_from_mask, mask_from_bool

_ZOBRIST_SEED = 0x5EED_F17


def iter_bits(mask: int):
    """Yield indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class SubgroupLattice:
    def __init__(self, group: FiniteGroup, entries: list[tuple[int, tuple[int, ...]]]):
        n = group.order
        entries.sort(key=lambda e: (e[0].bit_count(), tuple(indices_from_mask(e[0], n))))
        self.group = group
        self.subgroups = [Subgroup(group, m, g) for m, g in entries]
        self.masks = [m for m, _ in entries]
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.orders = np.array([m.bit_count() for m in self.masks], dtype=np.int64)
        self.size = len(self.masks)
        members = np.zeros((self.size, n), dtype=np.bool_)
        for i, m in enumerate(self.masks):
            members[i, indices_from_mask(m, n)] = True
        self.members = members
        self._build_relations()
        self._cache: dict = {}

    # -- construction ------------------------------------------------------

    def _build_relations(self):
        G = self.group
        n = G.order
        members = self.members
        sizes = members.sum(axis=1)
        offsets = np.zeros(self.size + 1, dtype=np.int64)
        offsets[1:] = np.cumsum(sizes)
        flat = np.flatnonzero(members.ravel()) % n
        rng = np.random.default_rng(_ZOBRIST_SEED)
        keys = rng.integers(0, np.iinfo(np.uint64).max, size=n, dtype=np.uint64, endpoint=True)
        hashes = np.bitwise_xor.reduceat(keys[flat], offsets[:-1]) if self.size else np.zeros(0, np.uint64)
        order_ids = np.argsort(hashes, kind="stable").astype(np.int64)
        sorted_hash = hashes[order_ids]
        action = _kernels.conj_action(G.conj, members, flat.astype(np.int64), offsets, keys,
                                      sorted_hash, order_ids)
        if (action < 0).any():
            raise AssertionError("conjugate of an interned subgroup is missing from the lattice")
        self.action = action
        self.action.setflags(write=False)

        full_ids = (1 << self.size) - 1
        self.normalizers = [mask_from_bool(action[i] == i) for i in range(self.size)]
        # sub[i, j]: subgroup j is contained in subgroup i
        m = members.astype(np.float32)
        inter = m @ m.T
        sub = inter == sizes[None, :]
        self._sub = sub
        # j normal in i (and j <= i): i lies inside N(j)
        norm_members = np.zeros_like(members)
        for j, nm in enumerate(self.normalizers):
            norm_members[j, indices_from_mask(nm, n)] = True
        nmf = norm_members.astype(np.float32)
        i_in_norm_j = (m @ nmf.T) == sizes[:, None]
        normal_in = sub & i_in_norm_j
        self.below = [mask_from_bool(sub[i]) for i in range(self.size)]      # ids contained in i
        self.above = [mask_from_bool(sub[:, j]) for j in range(self.size)]   # ids containing j
        self.normal_in = [mask_from_bool(normal_in[i]) for i in range(self.size)]
        self.full_ids = full_ids

        classes = {}
        for i in range(self.size):
            orbit = tuple(sorted(set(int(v) for v in action[i])))
            classes.setdefault(orbit, None)
        self.conj_classes = sorted(classes, key=lambda c: c[0])
        self.class_of = np.empty(self.size, dtype=np.int64)
        for k, c in enumerate(self.conj_classes):
            self.class_of[list(c)] = k

    # -- basic lookups -------------------------------------------------------

    @property
    def top_id(self) -> int:
        return self.size - 1

    @property
    def top(self) -> Subgroup:
        return self.subgroups[-1]

    @property
    def bottom(self) -> Subgroup:
        return self.subgroups[0]

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def id_of(self, H: Subgroup | int) -> int:
        if isinstance(H, Subgroup):
            return self.index[H.mask]
        return int(H)

    def order(self, i: int) -> int:
        return int(self.orders[i])

    def contains(self, big: int, small: int) -> bool:
        return bool(self.below[big] >> small & 1)

    def is_normal_in(self, small: int, big: int) -> bool:
        return bool(self.normal_in[big] >> small & 1)

    def meet(self, i: int, j: int) -> int:
        return self.index[self.masks[i] & self.masks[j]]

    def join(self, i: int, j: int) -> int:
        return lowest_bit(self.above[i] & self.above[j])

    def join_all(self, ids) -> int:
        common = self.full_ids
        for i in ids:
            common &= self.above[i]
        return lowest_bit(common)

    def span(self, elem_mask: int) -> int:
        """Id of the least subgroup containing the element set ``elem_mask``."""
        for i, m in enumerate(self.masks):
            if m & elem_mask == elem_mask:
                return i
        raise AssertionError("unreachable: the whole group contains every subset")

    def conjugate(self, i: int, g: int) -> int:
        return int(self.action[i, g])

    def conjugates(self, i: int, within: int | None = None) -> int:
        """Id-mask of conjugates of ``i`` by elements of subgroup ``within`` (default: G)."""
        row = self.action[i]
        if within is not None:
            row = row[self.subgroups[within].elems]
        return sum(1 << int(v) for v in set(row.tolist()))

    def conjugating_element(self, i: int, j: int) -> int | None:
        hits = np.flatnonzero(self.action[i] == j)
        return int(hits[0]) if hits.size else None

    # -- normality -----------------------------------------------------------

    @cached_property
    def normal_ids(self) -> list[int]:
        return [i for i in range(self.size) if self.is_normal_in(i, self.top_id)]

    @cached_property
    def maximal_normal_ids(self) -> list[int]:
        proper = [i for i in self.normal_ids if i != self.top_id]
        return [i for i in proper
                if not any(j != i and self.contains(j, i) for j in proper)]

    def normal_closure(self, i: int, within: int) -> int:
        return self.join_all(iter_bits(self.conjugates(i, within)))

    def subnormal_chain(self, i: int) -> list[int] | None:
        """Chain G = N0 > N1 > ... > H of successive normal closures, or None."""
        chain = [self.top_id]
        while True:
            nxt = self.normal_closure(i, chain[-1])
            if nxt == chain[-1]:
                return chain if nxt == i else None
            chain.append(nxt)

    @cached_property
    def subnormal_ids(self) -> list[int]:
        return [i for i in range(self.size) if self.subnormal_chain(i) is not None]

    def subnormal_in(self, i: int, within: int) -> bool:
        """Whether ``i`` is subnormal in subgroup ``within`` (requires i <= within)."""
        cur = within
        while True:
            nxt = self.normal_closure(i, cur)
            if nxt == cur:
                return nxt == i
            cur = nxt

    def maximal_subgroups(self, i: int) -> list[int]:
        out = []
        for j in iter_bits(self.below[i] & ~(1 << i)):
            if self.above[j] & self.below[i] == (1 << i) | (1 << j):
                out.append(j)
        return out


def all_subgroups(G: FiniteGroup, cap: int | None = None) -> SubgroupLattice:
    """Enumerate every subgroup: cyclic seeds, then joins with cyclics to fixpoint."""
    cap = config.SUBGROUP_CAP if cap is None else cap
    n = G.order
    found: dict[int, tuple[int, ...]] = {1: ()}
    cyclic: list[tuple[int, int]] = []  # (mask, generator)
    for x in range(n):
        m = mask_from_bool(_kernels.generate(G.mul, [x]))
        if m not in found:
            found[m] = (x,) if x else ()
            cyclic.append((m, x))
    queue = list(found)
    qi = 0
    while qi < len(queue):
        S = queue[qi]
        qi += 1
        gens = found[S]
        for cm, x in cyclic:
            if cm & S == cm:
                continue
            J = mask_from_bool(_kernels.generate(G.mul, list(gens) + [x]))
            if J not in found:
                found[J] = gens + (x,)
                queue.append(J)
                if len(found) > cap:
                    raise SubgroupCapExceeded(cap, len(found))
    return SubgroupLattice(G, list(found.items()))


def generated_subgroup(G: FiniteGroup, seed) -> Subgroup:
    return G.generate(seed)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    lat = G.lattice
    return lat.is_normal_in(lat.id_of(H), lat.top_id)


def is_subnormal(G: FiniteGroup, H: Subgroup) -> bool:
    lat = G.lattice
    return lat.subnormal_chain(lat.id_of(H)) is not None


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    lat = H.group.lattice
    return lat.subgroups[lat.conjugate(lat.id_of(H), g)]


def are_conjugate(H1: Subgroup, H2: Subgroup) -> int | None:
    """An element g with H1^g = H2, or None."""
    lat = H1.group.lattice
    return lat.conjugating_element(lat.id_of(H1), lat.id_of(H2))


def lattice_dump(lat: SubgroupLattice) -> dict:
    """JSON-ready description: ids, orders, generators, normality, Hasse edges, classes."""
    subs = []
    normal = set(lat.normal_ids)
    subnormal = set(lat.subnormal_ids)
    for i, H in enumerate(lat.subgroups):
        subs.append({
            "id": i,
            "order": H.order,
            "generators": H.generator_labels(),
            "normal": i in normal,
            "subnormal": i in subnormal,
            "class": int(lat.class_of[i]),
        })
    edges = [[j, i] for i in range(lat.size) for j in lat.maximal_subgroups(i)]
    return {
        "group": lat.group.name,
        "order": lat.group.order,
        "subgroups": subs,
        "inclusion_edges": edges,
        "conjugacy_classes": [list(c) for c in lat.conj_classes],
    }
