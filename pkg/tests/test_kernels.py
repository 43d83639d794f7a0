import numpy as np
import pytest

from effalg import kernels
from effalg.core import GridAlgebra


@pytest.fixture()
def grid_tables():
    E = GridAlgebra(4, 2)
    return E.sum_table, E.ominus_table, E.leq_table


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_clean_tables_have_no_violations(grid_tables, backend, monkeypatch):
    if backend == "numba" and not kernels.HAS_NUMBA:
        pytest.skip("numba unavailable")
    monkeypatch.setenv("EA_KERNELS", backend)
    S, omi, leq = grid_tables
    assert kernels.backend() == backend
    assert kernels.associativity_violation(S) is None
    assert kernels.cancellation_violation(S) is None
    assert kernels.mackey_witness(S, omi, leq, 3, 7) is not None


def test_backends_agree_on_broken_tables(grid_tables, monkeypatch):
    if not kernels.HAS_NUMBA:
        pytest.skip("numba unavailable")
    S, omi, leq = grid_tables
    rng = np.random.default_rng(1)
    for _ in range(10):
        bad = S.copy()
        i, j = rng.integers(0, S.shape[0], 2)
        bad[i, j] = int(rng.integers(0, S.shape[0]))
        results = {}
        for backend in ("numpy", "numba"):
            monkeypatch.setenv("EA_KERNELS", backend)
            results[backend] = (
                kernels.associativity_violation(bad) is None,
                kernels.cancellation_violation(bad) is None,
            )
        assert results["numpy"] == results["numba"]


def test_map_additivity_backends_agree(grid_tables, monkeypatch):
    E = GridAlgebra(4, 2)
    S = E.sum_table
    good = np.minimum(E.coords, E.coords[E.index_of([4, 0])]) @ E.strides
    bad = good.copy()
    bad[7] = E.one
    for backend in ("numpy", "numba") if kernels.HAS_NUMBA else ("numpy",):
        monkeypatch.setenv("EA_KERNELS", backend)
        assert kernels.map_additivity_violation(S, good) is None
        assert kernels.map_additivity_violation(S, bad) is not None


def test_env_flag_rejects_unknown(monkeypatch):
    monkeypatch.setenv("EA_KERNELS", "cuda")
    with pytest.raises(ValueError):
        kernels.backend()


def test_normality_kernel(grid_tables, monkeypatch):
    S, omi, leq = grid_tables
    n = S.shape[0]
    projections = np.array([0, n - 1])
    in_p = np.zeros(n, dtype=bool)
    in_p[[0, n - 1]] = True
    for backend in ("numpy", "numba") if kernels.HAS_NUMBA else ("numpy",):
        monkeypatch.setenv("EA_KERNELS", backend)
        assert kernels.normality_violation(S, omi, leq, projections, in_p) is None
        # dropping the unit from P makes d = 1 a violation witness
        smaller = np.zeros(n, dtype=bool)
        smaller[0] = True
        assert kernels.normality_violation(
            S, omi, leq, np.array([0, n - 1]), smaller) is not None
