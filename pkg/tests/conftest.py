import itertools

import pytest

from fitset.catalog import build_catalog, get_group
from fitset.group import FiniteGroup


def names_up_to(max_order):
    return [G.name for G in build_catalog(max_order)]


@pytest.fixture
def S3():
    return get_group("S3")


@pytest.fixture
def S4():
    return get_group("S4")


@pytest.fixture
def A5():
    return get_group("A5")


def elements_of_order(G: FiniteGroup, k: int) -> list[int]:
    return [x for x in range(G.order) if G.element_orders[x] == k]


def subgroup_by_order(G: FiniteGroup, order: int) -> list[int]:
    lat = G.lattice
    return [i for i in range(lat.size) if lat.order(i) == order]


def closed_subsets(G: FiniteGroup) -> set[frozenset]:
    """Every subset containing the identity that is closed under multiplication (brute force)."""
    out = set()
    rest = list(range(1, G.order))
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            s = (0,) + combo
            ss = set(s)
            if all(int(G.mul[a, b]) in ss for a in s for b in s):
                out.add(frozenset(s))
    return out
