from fractions import Fraction

import numpy as np
import pytest

from effalg import instances, kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger jit compilation once so timed suites measure the scans only
    S = np.array([[0, 1], [1, -1]], dtype=np.int32)
    kernels.associativity_violation(S)
    kernels.cancellation_violation(S)
    kernels.mackey_witness(S, np.array([[0, -1], [1, 0]], dtype=np.int32),
                           np.array([[True, True], [False, True]]), 0, 1)


@pytest.fixture(scope="session")
def bool3():
    return instances.make_boolean(3)


@pytest.fixture(scope="session")
def mv42():
    return instances.make_mv_product(4, 2)


@pytest.fixture(scope="session")
def mv83():
    return instances.make_mv_product(8, 3)


@pytest.fixture(scope="session")
def l8():
    return instances.make_mv_product(8, 1)


@pytest.fixture(scope="session")
def mo2():
    return instances.make_mo2()


@pytest.fixture(scope="session")
def hsum_l8():
    left = instances.make_mv_product(8, 1)
    right = instances.make_mv_product(8, 1)
    ident = [Fraction(i, 8) for i in range(9)]
    return instances.make_horizontal_sum(left, right, ident, ident)


@pytest.fixture(scope="session")
def matrix2():
    return instances.make_matrix(2)


@pytest.fixture(scope="session")
def matrix3():
    return instances.make_matrix(3)
