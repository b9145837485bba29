import pytest

from whittaker_scattering.cyclo import CycloNum
from whittaker_scattering.exceptions import DomainError
from whittaker_scattering.finite_field import FqDescriptor


def test_prime_field_generators(f7):
    """Test the generator is the smallest primitive residue."""
    assert f7.generator == f7.element(3)
    assert FqDescriptor(3).generator == FqDescriptor(3).element(2)
    assert FqDescriptor(13).generator == FqDescriptor(13).element(2)


def test_prime_field_arithmetic(f7):
    """Test F_7 arithmetic and discrete logs."""
    three, five = f7.element(3), f7.element(5)
    assert three * five == f7.one
    assert three + five == f7.element(1)
    assert three.inv() == five
    assert f7.dlog(f7.element(2)) == 2
    assert f7.gen_power(-1) == five


def test_dlog_inverts_gen_power(f9, f25):
    """Test dlog and gen_power are inverse bijections on F_q*."""
    for field in (f9, f25):
        exponents = [field.dlog(u) for u in field.units()]
        assert sorted(exponents) == list(range(field.q - 1))
        for k in range(field.q - 1):
            assert field.dlog(field.gen_power(k)) == k
        assert field.multiplicative_order(field.generator) == field.q - 1


def test_extension_field_trace(f9):
    """Test Tr(a + bX) = 2a in F_9 = F_3[X]/(X^2 + 1)."""
    for x in f9.elements():
        a, _ = x.coeffs
        assert f9.trace_to_prime_field(x) == (2 * a) % 3


def test_extension_field_frobenius(f25):
    """Test x^q = x for every x and X^2 = -2 in F_25."""
    for x in f25.elements():
        assert x ** 25 == x
    X = f25.element([0, 1])
    assert X * X == f25.element(-2)


def test_invalid_fields():
    """Test bad characteristics and defining polynomials are rejected."""
    with pytest.raises(DomainError):
        FqDescriptor(9)
    with pytest.raises(DomainError):
        FqDescriptor(2)
    with pytest.raises(DomainError):
        FqDescriptor(3, 2)
    with pytest.raises(DomainError):
        FqDescriptor(5, 2, [1, 0, 1])
    with pytest.raises(DomainError):
        FqDescriptor(7).dlog(FqDescriptor(7).zero)


def test_quadratic_gauss_sum(f7):
    """Test G(quadratic)^2 = chi(-1) q, i.e. -7 for q = 7 and +13 for q = 13."""
    G = f7.gauss_sum(3)
    assert G * G == -7
    f13 = FqDescriptor(13)
    G13 = f13.gauss_sum(6)
    assert G13 * G13 == 13


def test_trivial_gauss_sum(f7, f9):
    """Test G(trivial) = -1."""
    assert f7.gauss_sum(0) == -1
    assert f9.gauss_sum(0) == -1


def test_gauss_abs_square(f7, f9):
    """Test |G(k)|^2 = q for every nontrivial k."""
    for field in (f7, f9):
        for k in range(1, field.q - 1):
            G = field.gauss_sum(k)
            assert G * G.conj() == field.q


def test_gauss_twist(f7, f9):
    """Test G(k, w) = chi_k(w)^-1 G(k)."""
    for field in (f7, f9):
        for k in range(field.q - 1):
            for w in field.units():
                assert field.gauss_sum(k, w) == field.residue_mult_value(-k, w) * field.gauss_sum(k)


def test_gauss_sum_zero_twist_rejected(f7):
    """Test a zero twist is outside the domain."""
    with pytest.raises(DomainError):
        f7.gauss_sum(1, 0)


def test_sqrt_q(f7, f9, f25):
    """Test sqrt(q) squares to q and embeds positively."""
    for field in (f7, f9, f25):
        root = field.sqrt_q()
        assert root * root == field.q
        assert abs(root.complex_embed() - field.q ** 0.5) < 1e-9
    assert f9.sqrt_q() == 3
    assert isinstance(f7.sqrt_q(), CycloNum)
