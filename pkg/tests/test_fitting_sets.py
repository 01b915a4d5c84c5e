import pytest

from conftest import names_up_to, subgroup_by_order
from fitset.catalog import get_group
from fitset.classes import ALL, MEET, NIL, PGRP, POW, SOL, section_member
from fitset.errors import ConsistencyError
from fitset.fitting_sets import (FittingSet, all_fitset, fitset_closure, is_fitting_set, loose_product, radical_id,
                                 satisfies_product_axiom_variant, set_intersection, set_product, set_radical, trace,
                                 trivial_fitset, verify_fitting_set)
from fitset.structure import fitting_subgroup


def ids_mask(ids):
    return sum(1 << i for i in ids)


def test_verify_examples(S3):
    lat = S3.lattice
    a3 = subgroup_by_order(S3, 3)[0]
    assert verify_fitting_set(lat, ids_mask([0, a3, lat.top_id])) is None
    t = subgroup_by_order(S3, 2)[0]
    v = verify_fitting_set(lat, ids_mask([0, t]))
    assert v.axiom == "conjugation"
    s, t2, g = v.witness
    assert lat.conjugate(s, g) == t2
    assert verify_fitting_set(lat, 1) is None
    assert verify_fitting_set(lat, 0).axiom == "nonempty"


def test_verify_reports_normal_subgroup_axiom(S4):
    lat = S4.lattice
    F = fitting_subgroup(S4)
    assert verify_fitting_set(lat, ids_mask([lat.id_of(F)])).axiom == "normal-subgroups"


def test_verify_reports_product_axiom(S3):
    # all subgroups of S3 except S3 itself: no two members are both normal in their join
    lat = S3.lattice
    assert verify_fitting_set(lat, lat.full_ids & ~(1 << lat.top_id)) is None
    V4 = get_group("V4")
    lv = V4.lattice
    two = subgroup_by_order(V4, 2)
    v = verify_fitting_set(lv, ids_mask([0] + two[:2]))
    assert v.axiom == "normal-products" and v.witness[2] == lv.top_id


def test_closure_examples(S3):
    lat = S3.lattice
    assert fitset_closure(lat, [0]).members == 1
    t = subgroup_by_order(S3, 2)
    assert fitset_closure(lat, [t[0]]).ids == [0] + t
    a3 = subgroup_by_order(S3, 3)[0]
    assert fitset_closure(lat, [a3]).ids == [0, a3]


@pytest.mark.parametrize("name", names_up_to(24))
def test_closure_is_least(name):
    """Closure equals the intersection of all Fitting sets containing the seed, among traces and closures."""
    lat = get_group(name).lattice
    for i in range(lat.size):
        C = fitset_closure(lat, [i])
        assert is_fitting_set(lat, C.members)
        for j in C.ids:
            assert fitset_closure(lat, [j]) <= C


def test_trace_examples(S3, S4):
    assert len(trace(S3, NIL)) == 5
    assert trace(S4, ALL).members == S4.lattice.full_ids
    lat = S4.lattice
    two = [i for i in range(lat.size) if lat.order(i) in (1, 2, 4, 8)]
    assert trace(S4, PGRP(2)).ids == two


def test_radical_examples(S3, S4):
    assert set_radical(S4, trace(S4, NIL)) == fitting_subgroup(S4)
    lat = S4.lattice
    F = trace(S4, NIL)
    for i in F.ids:
        assert set_radical(lat[i], F) == lat[i]
    t = subgroup_by_order(S3, 2)[0]
    assert set_radical(S3, fitset_closure(S3.lattice, [t])).order == 1


def test_radical_tripwire(S3):
    lat = S3.lattice
    bad = ids_mask(subgroup_by_order(S3, 2))  # no trivial subgroup, no joins
    with pytest.raises(ConsistencyError):
        radical_id(lat, lat.top_id, bad)


def test_product_examples(S4):
    lat = S4.lattice
    assert set_product(trivial_fitset(S4), NIL) == trace(S4, NIL)
    assert set_product(trace(S4, SOL), ALL).members == lat.full_ids
    P = set_product(trace(S4, NIL), NIL)
    assert P.members == lat.full_ids & ~(1 << lat.top_id)


def per_subgroup_product(F, x):
    """Oracle: quotient each H by its F-radical explicitly and test x on the quotient group."""
    from fitset.structure import quotient
    from fitset.classes import class_member
    lat = F.lattice
    out = 0
    for h in range(lat.size):
        H = lat[h]
        sub = subgroup_as_group(H)
        r = radical_id(lat, h, F.members)
        kernel = sub.subgroup(sum(1 << sub_pos(H, int(e)) for e in lat[r].elems))
        Q = quotient(sub, kernel).target
        if class_member(Q, x):
            out |= 1 << h
    return out


def sub_pos(H, e):
    return int(list(H.elems).index(e))


def subgroup_as_group(H):
    from fitset.group import group_from_table
    G = H.group
    e = [int(v) for v in H.elems]
    pos = {x: i for i, x in enumerate(e)}
    return group_from_table([[pos[int(G.mul[a, b])] for b in e] for a in e])


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "D12", "SL(2,3)"])
@pytest.mark.parametrize("x", [NIL, POW(2), PGRP(2)])
def test_product_matches_explicit_quotients(name, x):
    lat = get_group(name).lattice
    for F in (trivial_fitset(lat), trace(lat, NIL), trace(lat, PGRP(3))):
        assert set_product(F, x).members == per_subgroup_product(F, x)


def test_intersection_and_loose_examples(S4):
    F = trace(S4, NIL)
    assert set_intersection(F, F) == F
    assert set_intersection(F, trace(S4, PGRP(2))) == trace(S4, MEET(NIL, PGRP(2))) == trace(S4, PGRP(2))
    assert loose_product(F, NIL) == set_product(F, NIL).members


@pytest.mark.parametrize("name", names_up_to(60))
def test_axiom_readings_agree_on_traces(name):
    lat = get_group(name).lattice
    for x in (NIL, SOL, PGRP(2), PGRP(3), POW(2)):
        T = trace(lat, x)
        assert verify_fitting_set(lat, T.members) is None
        assert satisfies_product_axiom_variant(lat, T.members)


def test_fittingset_value_semantics(S4):
    a = trace(S4, NIL)
    b = FittingSet(S4.lattice, a.members)
    assert a == b and hash(a) == hash(b)
    assert trivial_fitset(S4) <= a <= all_fitset(S4)
    assert S4.lattice[0] in a
    assert not section_member(S4.lattice, S4.lattice.top_id, 0, NIL)
