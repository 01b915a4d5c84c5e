"""Structural subgroups computed directly from the Cayley table.

Nothing here needs the subgroup lattice, so these routines also serve as an
independent check on lattice scans (and work on groups whose lattice would be
too large to enumerate).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from .errors import NotNormalError
from .group import FiniteGroup, Subgroup, group_from_table, mask_from_bool


def prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime_power_of(n: int, p: int) -> bool:
    return p_part(n, p) == n


def trivial(G: FiniteGroup) -> Subgroup:
    return G.subgroup(1)


def whole(G: FiniteGroup) -> Subgroup:
    return G.subgroup(G.full_mask)


def normal_closure(G: FiniteGroup, S: Subgroup | np.ndarray) -> Subgroup:
    elems = S.elems if isinstance(S, Subgroup) else np.asarray(S)
    return G.generate(np.unique(G.conj[:, elems]))


def commutator(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    vals = np.unique(G.comm[np.ix_(A.elems, B.elems)])
    return G.generate(vals)


def _series(G: FiniteGroup, step) -> list[Subgroup]:
    chain = [whole(G)]
    while True:
        nxt = step(chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    return _series(G, lambda D: commutator(G, D, D))


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    top = whole(G)
    return _series(G, lambda L: commutator(G, L, top))


def structural_series(G: FiniteGroup) -> tuple[list[Subgroup], list[Subgroup]]:
    """Derived and lower central series, each run until it stabilizes."""
    return derived_series(G), lower_central_series(G)


def is_soluble(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].order == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1].order == 1


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    seen = np.zeros(G.order, dtype=np.bool_)
    out = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(G.conj[:, x])
        seen[cls] = True
        out.append(cls)
    return out


def p_core(G: FiniteGroup, p: int) -> Subgroup:
    """O_p(G): the elements whose normal closure is a p-group."""
    keep = []
    for cls in conjugacy_classes(G):
        if is_prime_power_of(int(G.element_orders[cls[0]]), p):
            N = G.generate(cls)
            if is_prime_power_of(N.order, p):
                keep.extend(int(x) for x in cls)
    return G.generate(sorted(keep))


def fitting_subgroup(G: FiniteGroup) -> Subgroup:
    """F(G), the product of the p-cores over primes dividing |G|."""
    elems: list[int] = []
    for p in prime_divisors(G.order):
        elems.extend(int(x) for x in p_core(G, p).elems)
    return G.generate(sorted(set(elems)))


def centralizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    e = S.elems
    ok = np.all(G.mul[:, e] == G.mul[e, :].T, axis=1)
    return G.subgroup(mask_from_bool(ok))


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    member = np.zeros(G.order, dtype=np.bool_)
    member[S.elems] = True
    ok = np.all(member[G.conj[:, S.elems]], axis=1)
    return G.subgroup(mask_from_bool(ok))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return normalizer(G, H).order == G.order


def conjugate(G: FiniteGroup, S: Subgroup, g: int) -> Subgroup:
    """S^g = g^-1 S g."""
    img = np.zeros(G.order, dtype=np.bool_)
    img[G.conj[g, S.elems]] = True
    return G.subgroup(mask_from_bool(img))


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """Grow a p-subgroup one factor of p at a time inside its normalizer."""
    target = p_part(G.order, p)
    P = trivial(G)
    while P.order < target:
        N = normalizer(G, P)
        step = None
        for x in N.elems:
            if x in P:
                continue
            y = int(x)
            for _ in range(p - 1):
                y = int(G.mul[y, x])
            if y in P:
                step = int(x)
                break
        assert step is not None, "Cauchy step failed"
        P = G.generate(list(P.generators()) + [step])
    return P


def all_sylow(G: FiniteGroup, p: int) -> list[Subgroup]:
    P = sylow_subgroup(G, p)
    seen = {}
    for g in range(G.order):
        Q = conjugate(G, P, g)
        seen.setdefault(Q.mask, Q)
    return [seen[m] for m in sorted(seen)]


@dataclass(frozen=True)
class QuotientMap:
    source: FiniteGroup
    kernel: Subgroup
    target: FiniteGroup
    projection: np.ndarray
    section: np.ndarray

    def image(self, H: Subgroup) -> Subgroup:
        img = np.zeros(self.target.order, dtype=np.bool_)
        img[self.projection[H.elems]] = True
        return self.target.subgroup(mask_from_bool(img))

    def preimage(self, V: Subgroup) -> Subgroup:
        member = np.zeros(self.target.order, dtype=np.bool_)
        member[V.elems] = True
        return self.source.subgroup(mask_from_bool(member[self.projection]))


def quotient(G: FiniteGroup, N: Subgroup, name: str | None = None) -> QuotientMap:
    """G/N with cosets indexed by their minimal-index representative."""
    if not is_normal(G, N):
        raise NotNormalError(f"subgroup of order {N.order} is not normal in {G.name}")
    ne = N.elems
    projection = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if projection[x] >= 0:
            continue
        projection[G.mul[x, ne]] = len(reps)
        reps.append(x)
    section = np.asarray(reps, dtype=np.int64)
    table = projection[G.mul[np.ix_(section, section)]]
    target = group_from_table(table, order_bound=max(G.order, 1), name=name or f"{G.name}/N{N.order}")
    projection.setflags(write=False)
    section.setflags(write=False)
    return QuotientMap(G, N, target, projection, section)


def subgroup_from_elems(G: FiniteGroup, elems) -> Subgroup:
    member = np.zeros(G.order, dtype=np.bool_)
    member[np.asarray(elems, dtype=np.int64)] = True
    return G.subgroup(mask_from_bool(member))


def is_n_constrained(G: FiniteGroup) -> bool:
    """C_G(F(G)) <= F(G)."""
    F = fitting_subgroup(G)
    return centralizer(G, F) <= F
