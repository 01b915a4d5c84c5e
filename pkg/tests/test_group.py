from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import elements_of_order, names_up_to
from fitset.catalog import get_group
from fitset.errors import NotAGroupError, NotNormalError, OrderBoundExceeded, ParseError
from fitset.group import group_from_generators, group_from_table, parse_group_text
from fitset.perm import Permutation, parse_permutation
from fitset.structure import (all_sylow, centralizer, derived_series, fitting_subgroup, is_nilpotent, is_soluble,
                              lower_central_series, quotient, sylow_subgroup, trivial, whole)


def perms(degree, *texts):
    return [parse_permutation(t, degree) for t in texts]


def bfs_closure_order(gens, degree):
    """Independent oracle: closure over tuples without any table."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                prod = tuple(g.images[i] for i in e)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("gens,degree,order", [
    (("(1 2)", "(1 2 3)"), 3, 6),
    ((), 4, 1),
    (("(1 2 3 4)",), 4, 4),
    (("(1 2)", "(1 2 3 4 5)"), 5, 120),
])
def test_generated_orders(gens, degree, order):
    G = group_from_generators(perms(degree, *gens), degree=degree)
    assert G.order == order == bfs_closure_order(perms(degree, *gens), degree)
    assert G.perms[0] == Permutation.identity(degree)


def test_order_bound_reports_partial_size():
    with pytest.raises(OrderBoundExceeded) as info:
        group_from_generators(perms(5, "(1 2)", "(1 2 3 4 5)"), order_bound=50)
    assert info.value.bound == 50 and info.value.reached > 50


@st.composite
def perm_gens(draw):
    degree = draw(st.integers(1, 5))
    k = draw(st.integers(0, 3))
    return degree, [Permutation(tuple(draw(st.permutations(range(degree))))) for _ in range(k)]


@settings(max_examples=40, deadline=None)
@given(perm_gens())
def test_closure_is_a_group(data):
    degree, gens = data
    G = group_from_generators(gens, degree=degree)
    n = G.order
    assert n == bfs_closure_order(gens, degree)
    mul = G.mul
    # associativity on all triples
    lhs = mul[mul[:, :, None], np.arange(n)[None, None, :]]
    rhs = mul[np.arange(n)[:, None, None], mul[None, :, :]]
    assert (lhs == rhs).all()
    assert (mul[np.arange(n), G.inv] == 0).all() and (mul[G.inv, np.arange(n)] == 0).all()
    # element orders match repeated multiplication
    for x in range(n):
        y, k = x, 1
        while y != 0:
            y, k = int(mul[y, x]), k + 1
        assert G.element_orders[x] == k


def test_table_trivial_and_z2():
    assert group_from_table([[0]]).order == 1
    assert group_from_table([[0, 1], [1, 0]]).order == 2


def test_table_of_s3_matches_generated():
    G = get_group("S3")
    # relabel elements by a permutation fixing 0 and rebuild the table row by row
    relabel = [0, 5, 3, 1, 4, 2]
    back = np.argsort(relabel)
    rows = [[relabel[G.mul[back[a], back[b]]] for b in range(6)] for a in range(6)]
    T = group_from_table(rows)
    assert Counter(T.element_orders.tolist()) == Counter(G.element_orders.tolist())


def test_table_failure_names_triple():
    rows = [[0, 1, 2], [1, 0, 0], [2, 0, 1]]
    with pytest.raises(NotAGroupError):
        group_from_table(rows)
    # a Latin-square loop of order 5 where every element is an involution
    bad_assoc = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroupError, match="triple"):
        group_from_table(bad_assoc)


def test_group_file_forms():
    G = parse_group_text("# S3\ndegree 3\ngen (1 2)\ngen (1 2 3)\n")
    assert G.order == 6
    T = parse_group_text("order 2\nrow 0 1\nrow 1 0  # swap\n")
    assert T.order == 2
    with pytest.raises(ParseError):
        parse_group_text("degree 3\ngen (1 2)\norder 2\nrow 0 1\nrow 1 0\n")
    with pytest.raises(ParseError):
        parse_group_text("gen (1 2)\n")
    with pytest.raises(ParseError):
        parse_group_text("")


# -- quotients -------------------------------------------------------------------

def coset_oracle(G, N):
    """Multiply cosets as element sets; return element orders of G/N."""
    ne = set(N.elems.tolist())
    cosets = {}
    for x in range(G.order):
        key = frozenset(int(G.mul[x, n]) for n in ne)
        cosets.setdefault(key, x)
    ident = frozenset(ne)
    orders = []
    for c, x in cosets.items():
        k, y = 1, x
        while frozenset(int(G.mul[y, n]) for n in ne) != ident:
            y, k = int(G.mul[y, x]), k + 1
        orders.append(k)
    return sorted(orders)


def test_quotient_s4_by_fitting():
    G = get_group("S4")
    qm = quotient(G, fitting_subgroup(G))
    assert qm.target.order == 6
    assert sorted(qm.target.element_orders.tolist()) == [1, 2, 2, 2, 3, 3] == coset_oracle(G, fitting_subgroup(G))


@pytest.mark.parametrize("name", names_up_to(60))
def test_quotient_homomorphism(name):
    G = get_group(name)
    for N in (trivial(G), whole(G), fitting_subgroup(G), derived_series(G)[-1]):
        qm = quotient(G, N)
        pr = qm.projection
        assert qm.target.order == G.order // N.order
        assert (pr[G.mul] == qm.target.mul[pr[:, None], pr[None, :]]).all()
        assert (pr[qm.section] == np.arange(qm.target.order)).all()
        assert set(np.flatnonzero(pr == 0).tolist()) == set(N.elems.tolist())
        # representatives are the least index in each coset
        for t, r in enumerate(qm.section):
            assert r == np.flatnonzero(pr == t).min()
        assert sorted(qm.target.element_orders.tolist()) == coset_oracle(G, N)


def test_quotient_rejects_non_normal():
    G = get_group("S3")
    t = G.generate([elements_of_order(G, 2)[0]])
    with pytest.raises(NotNormalError):
        quotient(G, t)


# -- series and structural subgroups --------------------------------------------------

def test_series_examples():
    S3 = get_group("S3")
    assert [H.order for H in derived_series(S3)] == [6, 3, 1]
    assert is_soluble(S3) and not is_nilpotent(S3)
    assert [H.order for H in derived_series(get_group("C6"))] == [6, 1]
    A5 = get_group("A5")
    assert [H.order for H in derived_series(A5)] == [60]
    assert not is_soluble(A5)
    assert [H.order for H in lower_central_series(get_group("D8"))] == [8, 2, 1]


def lattice_fitting(G):
    """Oracle: the largest normal nilpotent subgroup found by scanning the lattice."""
    lat = G.lattice
    cands = [lat[i] for i in lat.normal_ids if is_nilpotent(group_of(lat[i]))]
    best = max(cands, key=lambda H: H.order)
    assert all(H <= best for H in cands)
    return best


def group_of(H):
    G = H.group
    e = H.elems
    pos = {int(x): i for i, x in enumerate(e)}
    rows = [[pos[int(G.mul[a, b])] for b in e] for a in e]
    return group_from_table(rows)


@pytest.mark.parametrize("name", names_up_to(60))
def test_fitting_subgroup_matches_scan(name):
    G = get_group(name)
    assert fitting_subgroup(G) == lattice_fitting(G)


def test_fitting_examples():
    assert fitting_subgroup(get_group("S4")).order == 4
    assert fitting_subgroup(get_group("A5")).order == 1
    assert fitting_subgroup(get_group("Q8")).order == 8


@pytest.mark.parametrize("name", names_up_to(60))
def test_sylow_is_lattice_class(name):
    G = get_group(name)
    lat = G.lattice
    for p in {2, 3, 5, 7}:
        syl = all_sylow(G, p)
        pa = 1
        while G.order % (pa * p) == 0:
            pa *= p
        assert sylow_subgroup(G, p).order == pa
        scan = [lat[i] for i in range(lat.size) if lat.order(i) == pa]
        assert sorted(H.mask for H in syl) == sorted(H.mask for H in scan)
        assert len(syl) % p == 1 and (G.order // pa) % len(syl) == 0


def test_sylow_examples():
    assert len(all_sylow(get_group("S4"), 2)) == 3
    assert sylow_subgroup(get_group("S3"), 5).order == 1
    assert len(all_sylow(get_group("S3"), 3)) == 1


def test_centralizer():
    S4 = get_group("S4")
    F = fitting_subgroup(S4)
    assert centralizer(S4, trivial(S4)) == whole(S4)
    C = centralizer(S4, F)
    assert C == F
    # elementwise oracle
    assert set(C.elems.tolist()) == {g for g in range(24) if all(S4.mul[g, s] == S4.mul[s, g] for s in F.elems)}
    C6 = get_group("C6")
    assert centralizer(C6, whole(C6)) == whole(C6)
