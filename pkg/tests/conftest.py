# tests/conftest.py
import random

import pytest

from whittaker_scattering.finite_field import FqDescriptor
from whittaker_scattering.local_field import TameLocalDatum, standard_pair
from whittaker_scattering.tate_factors import AdditiveCharData, nontrivial_quadratic_characters


@pytest.fixture(scope="session")
def f7():
    """The prime field F_7."""
    return FqDescriptor(7)


@pytest.fixture(scope="session")
def f9():
    """F_9 = F_3[X]/(X^2 + 1)."""
    return FqDescriptor(3, 2, [1, 0, 1])


@pytest.fixture(scope="session")
def f25():
    """F_25 = F_5[X]/(X^2 + 2)."""
    return FqDescriptor(5, 2, [1, 0, 2])


@pytest.fixture(scope="session")
def datum7():
    """q = 7, n = 3."""
    return TameLocalDatum(FqDescriptor(7), 3)


@pytest.fixture(scope="session")
def datum13():
    """q = 13, n = 3."""
    return TameLocalDatum(FqDescriptor(13), 3)


@pytest.fixture(scope="session")
def datum11():
    """q = 11, n = 5."""
    return TameLocalDatum(FqDescriptor(11), 5)


@pytest.fixture(params=["datum7", "datum13", "datum11"])
def any_datum(request):
    """Each acceptance datum in turn."""
    return request.getfixturevalue(request.param)


@pytest.fixture
def thetas(datum7):
    """theta_u, theta_+, theta_- at q = 7."""
    return nontrivial_quadratic_characters(datum7)


@pytest.fixture
def psi0(datum7):
    """Additive character of conductor 0 at q = 7."""
    return AdditiveCharData.standard(datum7, 0)


@pytest.fixture
def pair7(datum7):
    """The standard isotropic pair at q = 7, n = 3."""
    return standard_pair(datum7)


@pytest.fixture
def rng():
    """Seeded randomness so the suite is deterministic."""
    return random.Random(20240607)
