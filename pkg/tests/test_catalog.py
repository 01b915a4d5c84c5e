import pytest

from conftest import elements_of_order
from fitset.catalog import CATALOG, LARGE, build_catalog, get_group
from fitset.structure import fitting_subgroup, is_nilpotent, is_soluble

REQUIRED = [f"C{n}" for n in range(1, 13)] + ["S3", "S4", "A4", "A5", "D8", "D10", "D12", "Q8", "SL(2,3)",
                                             "C2xS3", "C3xS3"]


def test_required_entries_present():
    assert set(REQUIRED) <= set(CATALOG)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_expected_order(name):
    assert get_group(name).order == CATALOG[name].expected_order


def test_catalog_is_deterministic_and_filtered():
    a = [G.name for G in build_catalog(24)]
    assert a == [G.name for G in build_catalog(24)]
    assert all(get_group(n).order <= 24 for n in a)
    orders = [get_group(n).order for n in a]
    assert orders == sorted(orders)


def test_quaternion_has_one_involution():
    Q8 = get_group("Q8")
    assert Q8.order == 8 and len(elements_of_order(Q8, 2)) == 1
    assert len(elements_of_order(Q8, 4)) == 6


def test_sl23_structure():
    G = get_group("SL(2,3)")
    assert len(elements_of_order(G, 2)) == 1
    assert fitting_subgroup(G).order == 8 and is_soluble(G)


@pytest.mark.parametrize("name,soluble,nilpotent", [("S4", True, False), ("A5", False, False), ("Q8", True, True),
                                                    ("D12", True, False), ("S5", False, False)])
def test_solubility(name, soluble, nilpotent):
    G = get_group(name)
    assert is_soluble(G) == soluble and is_nilpotent(G) == nilpotent


def test_dihedral_orders():
    for n in (8, 10, 12, 16):
        G = get_group(f"D{n}")
        assert len(elements_of_order(G, n // 2)) > 0
        assert len(elements_of_order(G, 2)) >= n // 2


def test_large_entry_needs_explicit_bound():
    entry = LARGE["ASL(2,4)"]
    with pytest.raises(Exception):
        entry.build()
    assert get_group("ASL(2,4)").order == 960


def test_unknown_name():
    with pytest.raises(KeyError):
        get_group("M11")
