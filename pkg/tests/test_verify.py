import pytest

from fitset.verify import SUITES, VerificationRun, iter_claims, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes_on_small_scope(suite):
    run = run_suite(suite, max_order=12)
    assert run.ok, [r.to_json() for r in run.failures()[:3]]
    assert run.counts()["pass"] > 0


def test_axioms_on_trivial_group():
    run = run_suite("axioms", groups=["C1"])
    assert run.ok and all(r.group == "C1" for r in run.results)


def test_corollary_power_nil_on_s4():
    run = run_suite("corollaries", groups=["S4"])
    claims = list(iter_claims(run, "power_nil_2_injectors"))
    assert [c.status for c in claims] == ["pass"]
    assert run.ok


def test_failures_are_data():
    run = VerificationRun("axioms", {})
    run.record("x", False, "G", "s", {"w": 1})
    run.record("y", None, "G")
    run.record("z", True, "G")
    assert not run.ok and run.counts() == {"pass": 1, "fail": 1, "skipped": 1}
    assert run.to_json()["results"][0]["witness"] == {"w": 1}
    assert "wall_time" not in run.to_json()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nonsense")
