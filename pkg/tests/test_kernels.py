import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import names_up_to
from fitset import _kernels
from fitset.catalog import CATALOG
from fitset.lattice import all_subgroups


def fresh(name):
    return CATALOG[name].build()


@pytest.mark.parametrize("name", names_up_to(120))
def test_backends_build_identical_lattices(name):
    with _kernels.using_backend("numpy"):
        a = all_subgroups(fresh(name))
        orders_a = _kernels.element_orders(a.group.mul)
    with _kernels.using_backend("numba"):
        b = all_subgroups(fresh(name))
        orders_b = _kernels.element_orders(b.group.mul)
    assert a.masks == b.masks
    assert np.array_equal(a.action, b.action)
    assert np.array_equal(orders_a, orders_b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(names_up_to(60)), st.lists(st.integers(0, 10 ** 6), max_size=3))
def test_generate_agrees(name, raw):
    G = CATALOG[name].build()
    gens = np.asarray([r % G.order for r in raw], dtype=np.int64)
    with _kernels.using_backend("numpy"):
        a = _kernels.generate(G.mul, gens)
    with _kernels.using_backend("numba"):
        b = _kernels.generate(G.mul, gens)
    assert np.array_equal(a, b)


def test_backend_switch_validates():
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")
    before = _kernels.backend()
    with _kernels.using_backend("numpy"):
        assert _kernels.backend() == "numpy"
    assert _kernels.backend() == before


def test_benchmark_script_runs(capsys):
    import runpy
    from pathlib import Path
    bench = runpy.run_path(str(Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"))
    assert bench["main"](["--groups", "S3", "--repeat", "1"]) == 0
    out = capsys.readouterr().out
    assert "lattice" in out and "median numpy/numba ratio" in out
