from fractions import Fraction

import pytest

from whittaker_scattering.cyclo import CycloNum, root_of_unity
from whittaker_scattering.exceptions import DimensionMismatchError, IncompatibleModulusError
from whittaker_scattering.linalg import (
    Matrix,
    identity,
    is_scalar,
    mat_add,
    mat_mul,
    rank,
    scalar_mul,
    trace,
)

N = 12


def _m(rows):
    return Matrix.from_rows([[CycloNum.from_rational(N, v) if not isinstance(v, CycloNum) else v for v in r] for r in rows])


def test_construction_and_access():
    """Test shape, indexing and row access."""
    A = _m([[1, 2, 3], [4, 5, 6]])
    assert A.shape == (2, 3)
    assert A[1, 2] == 6
    assert A.to_rows()[0] == [1, 2, 3]
    assert A.modulus == N


def test_bad_construction():
    """Test shape and modulus mismatches are rejected."""
    with pytest.raises(DimensionMismatchError):
        Matrix(2, 2, [CycloNum.one(N)] * 3)
    with pytest.raises(DimensionMismatchError):
        _m([[1, 2], [3]])
    with pytest.raises(IncompatibleModulusError):
        Matrix(1, 2, [CycloNum.one(N), CycloNum.one(5)])


def test_add_and_multiply():
    """Test sums, products and the identity."""
    A = _m([[1, 2], [3, 4]])
    B = _m([[0, 1], [1, 0]])
    assert mat_add(A, B) == _m([[1, 3], [4, 4]])
    assert mat_mul(A, B) == _m([[2, 1], [4, 3]])
    assert A * identity(2, N) == A
    assert A - A == _m([[0, 0], [0, 0]])
    with pytest.raises(DimensionMismatchError):
        mat_mul(A, _m([[1, 2, 3]]))
    with pytest.raises(DimensionMismatchError):
        mat_add(A, _m([[1, 2, 3]]))


def test_scalar_and_trace():
    """Test scalar multiplication by rationals and roots of unity, and the trace."""
    z = root_of_unity(N, 1)
    A = _m([[1, 2], [3, 4]])
    assert trace(A) == 5
    assert trace(scalar_mul(z, A)) == 5 * z
    assert scalar_mul(Fraction(1, 2), A)[0, 1] == 1
    with pytest.raises(DimensionMismatchError):
        trace(_m([[1, 2]]))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 2], [2, 4]], 1),
        ([[1, 2], [3, 4]], 2),
        ([[0, 0], [0, 0]], 0),
        ([[0, 1, 2], [0, 2, 4], [1, 0, 0]], 2),
    ],
)
def test_rank(rows, expected):
    """Test exact rank over Q."""
    assert rank(_m(rows)) == expected


def test_rank_over_cyclotomic():
    """Test the rows (1, z) and (z, z^2) are dependent."""
    z = root_of_unity(N, 1)
    assert rank(_m([[1, z], [z, z * z]])) == 1
    assert rank(_m([[1, z], [z, 1]])) == 2


def test_is_scalar():
    """Test scalar detection returns the scalar or None."""
    three = CycloNum.from_rational(N, 3)
    assert is_scalar(_m([[three, 0], [0, three]])) == 3
    assert is_scalar(_m([[three, 0], [0, 1]])) is None
    assert is_scalar(_m([[3, 1], [0, 3]])) is None
    assert is_scalar(_m([[0, 0], [0, 0]])) == 0
