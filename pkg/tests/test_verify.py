import pytest

from minrep.verify import SUITE_NAMES, run_suite


def test_suite_names_closed_set():
    assert SUITE_NAMES == (
        "eigen",
        "orth",
        "genfun",
        "commute",
        "kernel",
        "inversion",
        "all",
    )
    with pytest.raises(ValueError):
        run_suite("nope")


def test_eigen_suite_counting():
    results = run_suite("eigen", max_j=2)
    assert len(results) == 4 * 3 * 3
    assert all(r.passed for r in results)
    assert all(r.tol == 0.0 for r in results)


@pytest.mark.parametrize("name", ["kernel", "inversion", "genfun"])
def test_numeric_suites_pass(name):
    results = run_suite(name)
    assert results
    for r in results:
        assert r.passed, f"{r.suite}/{r.name}: {r.measured} > {r.tol}"
        assert r.claim  # every check carries its claim text


@pytest.mark.slow
def test_orth_suite_passes():
    results = run_suite("orth")
    assert all(r.passed for r in results)
    # exact Mano checks first, numeric Lambda checks after
    assert [r.tol for r in results[:6]] == [0.0] * 6
    assert all(r.tol == 1e-8 for r in results[6:])
