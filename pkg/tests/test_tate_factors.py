import itertools
from fractions import Fraction

import pytest

from whittaker_scattering.cyclo import CycloNum, root_of_unity
from whittaker_scattering.exceptions import DivisionByZeroError, DomainError, PoleError
from whittaker_scattering.local_field import TameLocalDatum
from whittaker_scattering.tate_factors import (
    AdditiveCharData,
    FaultInjection,
    LaurentPoly,
    LaurentRat,
    TameMultChar,
    all_tame_characters,
    epsilon_factor,
    evaluate,
    gamma_factor,
    gamma_value,
    l_factor,
    nontrivial_quadratic_characters,
    reflect,
    shift,
    variable_at,
)


def _const(datum, value):
    return LaurentRat.constant(value if isinstance(value, CycloNum) else CycloNum.from_rational(datum.N, value))


def _characters(datum):
    step = root_of_unity(datum.N, datum.N // (datum.q - 1))
    return [TameMultChar(datum, k, w) for k in range(datum.q - 1) for w in (CycloNum.one(datum.N), step)]


def _psis(datum):
    return [AdditiveCharData(datum, e, datum.field.generator) for e in (-1, 0, 1, 2)]


def test_laurent_rat_cancels(datum7):
    """Test (1 - X^2)/(1 - X) reduces to 1 + X."""
    N = datum7.N
    one = CycloNum.one(N)
    num = LaurentPoly(N, {0: one, 2: -one})
    den = LaurentPoly(N, {0: one, 1: -one})
    assert LaurentRat(num, den) == LaurentRat(LaurentPoly(N, {0: one, 1: one}))


def test_laurent_rat_arithmetic(datum7):
    """Test f / f = 1, f - f = 0 and inverses of monomials."""
    N = datum7.N
    f = l_factor(TameMultChar.unramified(datum7, 2))
    one = _const(datum7, 1)
    assert f / f == one
    assert (f - f).num.is_zero()
    x = LaurentRat.monomial(CycloNum.from_rational(N, 3), 2)
    assert x * x.inv() == one
    assert x ** -2 == LaurentRat.monomial(CycloNum.from_rational(N, Fraction(1, 9)), -4)
    with pytest.raises(DivisionByZeroError):
        (f - f).inv()


def test_pole_order_and_evaluate(datum7):
    """Test L(s, 1) has a simple pole at s = 0 and evaluates to 1/(1 - q^-s) elsewhere."""
    L = l_factor(TameMultChar.trivial(datum7))
    assert L.pole_order(CycloNum.one(datum7.N)) == 1
    with pytest.raises(PoleError) as exc_info:
        evaluate(L, 0, datum7)
    assert exc_info.value.order == 1
    assert evaluate(L, 1, datum7) == Fraction(7, 6)


def test_variable_at(datum7):
    """Test X = q^-s at integer and half-integer points."""
    assert variable_at(datum7, Fraction(1, 2)) == datum7.sqrt_q.inv()
    assert variable_at(datum7, -1) == 7
    assert variable_at(datum7, 1, exponent_scale=3) == Fraction(1, 343)
    with pytest.raises(DomainError):
        variable_at(datum7, Fraction(1, 3))


def test_character_basics(datum7, thetas):
    """Test the three nontrivial quadratic characters."""
    theta_u, theta_plus, theta_minus = thetas
    assert not theta_u.is_ramified() and theta_u.is_nontrivial_quadratic()
    assert theta_plus.conductor == theta_minus.conductor == 1
    assert theta_plus(datum7.uniformizer) == 1
    assert theta_minus(datum7.uniformizer) == -1
    assert theta_plus(datum7.element(0, 3)) == -1
    assert theta_plus.at_minus_one() == -1
    assert theta_u.at_minus_one() == 1
    assert (theta_plus * theta_minus) == theta_u
    assert TameMultChar.trivial(datum7).is_quadratic()
    assert not TameMultChar.trivial(datum7).is_nontrivial_quadratic()


def test_all_tame_characters(datum7):
    """Test the default enumeration has (q - 1)^2 characters."""
    chars = all_tame_characters(datum7)
    assert len(chars) == 36
    assert len(set(chars)) == 36
    assert len(all_tame_characters(datum7, w_order=2)) == 12


def test_additive_twist(datum7, psi0):
    """Test psi_c has conductor e(psi) - v(c)."""
    c = datum7.element(2, 3)
    twisted = psi0.twisted(c)
    assert twisted.conductor == -2
    assert twisted.twist == datum7.field.element(3)
    assert psi0.scaled_by_n().twist == datum7.field.element(3)
    with pytest.raises(DomainError):
        AdditiveCharData(datum7, 0, datum7.field.zero)


def test_epsilon_degree(datum7):
    """Test eps is a monomial of X-degree e(chi) - e(psi)."""
    for chi, psi in itertools.product(_characters(datum7), _psis(datum7)):
        eps = epsilon_factor(chi, psi)
        assert eps.is_monomial()
        assert list(eps.num.terms) == [chi.conductor - psi.conductor]


def test_epsilon_reflection(datum7):
    """Test eps(1 - s, chi^-1, psi) = chi(-1) / eps(s, chi, psi)."""
    for chi, psi in itertools.product(_characters(datum7), _psis(datum7)):
        left = reflect(epsilon_factor(chi.inv(), psi), datum7)
        assert left == epsilon_factor(chi, psi).inv().scale(chi.at_minus_one())


def test_epsilon_additive_twist(datum7):
    """Test eps(s, chi, psi_c) = chi(c) |c|^(s - 1/2) eps(s, chi, psi)."""
    cs = [datum7.element(1), datum7.element(-1, 3), datum7.element(2, 5)]
    for chi, psi, c in itertools.product(_characters(datum7), _psis(datum7), cs):
        factor = LaurentRat.monomial(chi(c) * datum7.sqrt_q ** c.valuation, c.valuation)
        assert epsilon_factor(chi, psi.twisted(c)) == factor * epsilon_factor(chi, psi)


def test_epsilon_shift(datum7):
    """Test eps(s + 1, chi, psi) = q^(e(psi) - e(chi)) eps(s, chi, psi)."""
    for chi, psi in itertools.product(_characters(datum7), _psis(datum7)):
        eps = epsilon_factor(chi, psi)
        scale = CycloNum.from_rational(datum7.N, Fraction(7) ** (psi.conductor - chi.conductor))
        assert shift(eps, datum7, 1) == eps.scale(scale)


def test_gamma_functional_equation(any_datum):
    """Test gamma(s, chi, psi) gamma(1 - s, chi^-1, psi) = chi(-1)."""
    datum = any_datum
    psi = AdditiveCharData.standard(datum, 1)
    for chi in _characters(datum):
        product = gamma_factor(chi, psi) * reflect(gamma_factor(chi.inv(), psi), datum)
        assert product == _const(datum, chi.at_minus_one())


def test_gamma_at_one_unramified(datum7, thetas, psi0):
    """Test gamma(1, theta_u, psi) = 4/7 at q = 7."""
    assert gamma_value(thetas[0], psi0, 1) == Fraction(4, 7)


def test_gamma_ramified_unitary(datum7, thetas, psi0):
    """Test |gamma(1/2, theta, psi)| = 1 for ramified theta."""
    for theta in thetas[1:]:
        value = gamma_value(theta, psi0, Fraction(1, 2))
        assert value * value.conj() == 1


def test_gamma_value_is_memoised(datum7, thetas, psi0):
    """Test repeated evaluation hits the datum's memo."""
    first = gamma_value(thetas[1], psi0, 1)
    assert any(key[0] == "gamma" for key in datum7.memo)
    assert gamma_value(thetas[1], psi0, 1) is first


@pytest.mark.parametrize("s", [0, Fraction(1, 2), 1, 2])
def test_gamma_value_matches_gamma_factor(datum7, s):
    """Test pointwise gamma values agree with the reduced rational function, poles included."""
    for chi, psi in itertools.product(_characters(datum7), _psis(datum7)):
        try:
            expected = evaluate(gamma_factor(chi, psi), s, datum7)
        except PoleError:
            with pytest.raises(PoleError):
                gamma_value(chi, psi, s)
            continue
        assert gamma_value(chi, psi, s) == expected


def test_fault_injection_breaks_reflection(datum7, thetas, psi0):
    """Test doubling the Gauss sum breaks eps(1 - s, chi^-1) eps(s, chi) = chi(-1)."""
    fault = FaultInjection(gauss_scale=2)
    theta = thetas[1]
    left = reflect(epsilon_factor(theta.inv(), psi0, fault), datum7)
    right = epsilon_factor(theta, psi0, fault).inv().scale(theta.at_minus_one())
    assert left != right


def test_quadratic_characters_over_f25(f25):
    """Test the quadratic characters and the reflection law over a non-prime residue field."""
    datum = TameLocalDatum(f25, 3)
    chars = nontrivial_quadratic_characters(datum)
    assert all(chi.is_nontrivial_quadratic() for chi in chars)
    assert chars[1].at_minus_one() == 1
    psi = AdditiveCharData.standard(datum, 0)
    for chi in chars:
        product = gamma_factor(chi, psi) * reflect(gamma_factor(chi.inv(), psi), datum)
        assert product == _const(datum, chi.at_minus_one())
