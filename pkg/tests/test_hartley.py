import pytest

from conftest import names_up_to, subgroup_by_order
from fitset.catalog import get_group
from fitset.classes import ALL, NIL, PGRP, SOL
from fitset.errors import HypothesisRefused
from fitset.fitting_sets import radical_id, set_intersection, set_product, trace, trivial_fitset
from fitset.hartley import (HFunction, check_membership_criterion, check_nilpotent_lift_membership,
                            check_radical_quotient, h_radical, h_radical_id, hartley_set, hs, hs_is_fitting_set,
                            integrate, is_full, is_integrated, make_full_integrated)
from fitset.structure import fitting_subgroup


def has_normal_complement(lat, h, p):
    """Oracle: H has a normal subgroup whose order is the p'-part of |H|."""
    n = lat.order(h)
    while n % p == 0:
        n //= p
    return any(lat.order(k) == n for k in range(lat.size) if lat.is_normal_in(k, h))


def test_trivial_h_gives_nilpotent_trace(S4):
    assert hs(HFunction.constant(trivial_fitset(S4))) == trace(S4, NIL)


@pytest.mark.parametrize("name", names_up_to(24))
def test_constant_h_gives_product_with_nil(name):
    lat = get_group(name).lattice
    for F in (trace(lat, NIL), trace(lat, PGRP(2)), trace(lat, SOL)):
        assert hs(HFunction.constant(F)) == set_product(F, NIL)


def test_mixed_h_gives_two_nilpotent_subgroups(S4):
    lat = S4.lattice
    h = HFunction(lat, {2: trivial_fitset(lat), 3: trace(lat, ALL)})
    expected = sum(1 << i for i in range(lat.size) if has_normal_complement(lat, i, 2))
    assert hs(h).members == expected


def test_flags_examples(S4):
    lat = S4.lattice
    triv = HFunction.constant(trivial_fitset(lat))
    assert is_integrated(triv) and is_full(triv)
    h = HFunction(lat, {2: trace(lat, ALL), 3: trivial_fitset(lat)})
    assert not is_integrated(h)
    assert is_integrated(HFunction.constant(trace(lat, NIL)))


def test_integrate_examples(S4):
    lat = S4.lattice
    triv = HFunction.constant(trivial_fitset(lat))
    assert integrate(triv) == triv
    h = HFunction(lat, {2: trace(lat, ALL), 3: trivial_fitset(lat)})
    hi = integrate(h)
    assert hi(2) == set_intersection(trace(lat, ALL), hs(h))
    assert hs(hi) == hs(h) and is_integrated(hi)


def test_make_full_integrated_examples(S4):
    lat = S4.lattice
    triv = HFunction.constant(trivial_fitset(lat))
    assert make_full_integrated(triv) == triv
    h = HFunction.constant(trace(lat, NIL))
    hf = make_full_integrated(h)
    assert hs(hf) == hs(h)
    assert hs(h).members == lat.full_ids & ~(1 << lat.top_id)
    assert is_full(hf) and is_integrated(hf)
    with pytest.raises(ValueError):
        make_full_integrated(h, residual="X")


def test_h_radical_examples(S4):
    lat = S4.lattice
    assert h_radical(HFunction.constant(trivial_fitset(lat))).order == 1
    hf = make_full_integrated(HFunction.constant(trace(lat, NIL)))
    assert h_radical(hf) == fitting_subgroup(S4)
    base = HFunction(lat, {2: trace(lat, PGRP(2)), 3: trivial_fitset(lat)})
    clipped = HFunction(lat, {2: set_intersection(trace(lat, PGRP(2)), hs(base)), 3: trivial_fitset(lat)})
    assert h_radical(make_full_integrated(clipped)) == fitting_subgroup(S4)


def test_h_radical_refuses_unconverted(S4):
    lat = S4.lattice
    h = HFunction(lat, {2: trace(lat, ALL), 3: trivial_fitset(lat)})
    with pytest.raises(HypothesisRefused):
        h_radical_id(h)


def test_structural_checks_on_s4(S4):
    lat = S4.lattice
    hf = make_full_integrated(HFunction.constant(trace(lat, NIL)))
    a4 = subgroup_by_order(S4, 12)[0]
    assert radical_id(lat, lat.top_id, hs(hf).members) == a4
    assert check_radical_quotient(hf).ok
    assert check_nilpotent_lift_membership(hf).ok
    assert lat[a4] in hs(hf)
    assert check_membership_criterion(hf).ok


def test_membership_criterion_refuses_unconstrained(A5):
    h = HFunction.constant(trivial_fitset(A5))
    with pytest.raises(HypothesisRefused):
        check_membership_criterion(h)


def test_primes_outside_the_order_are_dropped(S3):
    lat = S3.lattice
    h = HFunction(lat, {5: trace(lat, ALL), 2: trace(lat, NIL)})
    assert h.dropped == [5] and h.primes == [2, 3]
    assert h(5) == trivial_fitset(lat)
    assert hs(h) == hs(HFunction(lat, {2: trace(lat, NIL)}))


@pytest.mark.parametrize("name", names_up_to(24))
def test_conversions_preserve_hartley_set(name):
    lat = get_group(name).lattice
    for h in (HFunction.constant(trace(lat, NIL)), HFunction(lat, {2: trace(lat, ALL)}),
              HFunction(lat, {3: trace(lat, PGRP(3)), 2: trace(lat, SOL)})):
        H = hs(h)
        assert hs_is_fitting_set(h)
        info = hartley_set(h)
        assert info.set == H and info.integrated == is_integrated(h)
        for res in ("E", "S"):
            hf = make_full_integrated(h, residual=res)
            assert hs(hf) == H and is_full(hf) and is_integrated(hf)
        assert make_full_integrated(h, "E") == make_full_integrated(h, "S")
