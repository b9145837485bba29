"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1), i.e. as
polynomials over QQ reduced modulo the Nth cyclotomic polynomial. Reduction is
always modulo Phi_N, never X^N - 1, so the ring is a field and exact equality of
coefficient vectors decides equality of values.
"""

import cmath
import logging
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Tuple, Union

import numpy as np
from sympy import Poly, QQ, ZZ, divisors, totient
from sympy import Rational as SympyRational
from sympy.abc import x as _x
from sympy.polys.polyerrors import NotInvertible

from .exceptions import DivisionByZeroError, DomainError, IncompatibleModulusError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, SympyRational]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> Poly:
    """Return Phi_N over ZZ, by exact division of X^N - 1 by the Phi_d with d | N, d < N."""
    if N < 1:
        raise DomainError(f"cyclotomic modulus must be positive, got {N}")
    quotient = Poly(_x**N - 1, _x, domain=ZZ)
    for d in divisors(N):
        if d < N:
            quotient = quotient.exquo(cyclotomic_polynomial(d))
    return quotient


@lru_cache(maxsize=None)
def _reduction_poly(N: int) -> Poly:
    return cyclotomic_polynomial(N).set_domain(QQ)


@lru_cache(maxsize=None)
def euler_phi(N: int) -> int:
    return int(totient(N))


def _fraction(value: Scalar) -> Fraction:
    if isinstance(value, SympyRational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, _RationalABC):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def _to_qq(value: Scalar):
    value = _fraction(value)
    return QQ(value.numerator, value.denominator)


class CycloNum:
    """An immutable element of Q(zeta_N)."""

    __slots__ = ("modulus", "_poly")

    def __init__(self, modulus: int, poly: Poly):
        self.modulus = modulus
        self._poly = poly

    @classmethod
    def _reduced(cls, modulus: int, poly: Poly) -> "CycloNum":
        return cls(modulus, poly.rem(_reduction_poly(modulus)))

    @classmethod
    def from_rational(cls, modulus: int, value: Scalar) -> "CycloNum":
        return cls(modulus, Poly.from_dict({(0,): _to_qq(value)}, _x, domain=QQ))

    @classmethod
    def from_coeffs(cls, modulus: int, coeffs: Iterable[Scalar]) -> "CycloNum":
        """Build from power-basis coordinates, lowest power first."""
        terms = {(i,): _to_qq(c) for i, c in enumerate(coeffs) if c != 0}
        return cls._reduced(modulus, Poly.from_dict(terms or {(0,): QQ(0)}, _x, domain=QQ))

    @classmethod
    def zero(cls, modulus: int) -> "CycloNum":
        return cls.from_rational(modulus, 0)

    @classmethod
    def one(cls, modulus: int) -> "CycloNum":
        return cls.from_rational(modulus, 1)

    @property
    def degree(self) -> int:
        return euler_phi(self.modulus)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        """Power-basis coordinates of length phi(N), lowest power first."""
        high_first = [_fraction(c) for c in self._poly.all_coeffs()]
        low_first = list(reversed(high_first))
        return tuple(low_first + [Fraction(0)] * (self.degree - len(low_first)))

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.modulus != self.modulus:
                raise IncompatibleModulusError(
                    f"Q(zeta_{self.modulus}) and Q(zeta_{other.modulus}) do not mix"
                )
            return other
        if isinstance(other, (_RationalABC, SympyRational)):
            return CycloNum.from_rational(self.modulus, other)
        return NotImplemented

    def __add__(self, other) -> "CycloNum":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.modulus, self._poly + other._poly)

    __radd__ = __add__

    def __sub__(self, other) -> "CycloNum":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.modulus, self._poly - other._poly)

    def __rsub__(self, other) -> "CycloNum":
        return (-self) + other

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.modulus, -self._poly)

    def __mul__(self, other) -> "CycloNum":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum._reduced(self.modulus, self._poly * other._poly)

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Multiplicative inverse by extended Euclid against Phi_N."""
        if self.is_zero():
            raise DivisionByZeroError(f"inverse of zero in Q(zeta_{self.modulus})")
        if self.is_rational():
            return CycloNum.from_rational(self.modulus, 1 / self.rational_value())
        try:
            inverse = self._poly.invert(_reduction_poly(self.modulus))
        except NotInvertible as exc:  # Phi_N is irreducible, so this means a bug upstream
            raise DivisionByZeroError(str(exc)) from exc
        return CycloNum._reduced(self.modulus, inverse)

    def __truediv__(self, other) -> "CycloNum":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other) -> "CycloNum":
        return self.inv() * other

    def __pow__(self, exponent: int) -> "CycloNum":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = CycloNum.one(self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "CycloNum":
        """Galois automorphism zeta -> zeta^-1 (complex conjugation)."""
        N = self.modulus
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                key = ((-i) % N,)
                terms[key] = terms.get(key, QQ(0)) + _to_qq(c)
        if not terms:
            return self
        return CycloNum._reduced(N, Poly.from_dict(terms, _x, domain=QQ))

    def is_zero(self) -> bool:
        return bool(self._poly.is_zero)

    def is_rational(self) -> bool:
        return bool(self._poly.is_zero or self._poly.degree() == 0)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self!r} is not rational")
        return self.coeffs[0]

    def complex_embed(self) -> complex:
        """Floating value at zeta_N = exp(2*pi*i/N); display and sign checks only."""
        high_first = [float(c) for c in reversed(self.coeffs)]
        return complex(np.polyval(high_first, cmath.exp(2j * cmath.pi / self.modulus)))

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.modulus == other.modulus and self._poly == other._poly
        if isinstance(other, (_RationalABC, SympyRational)):
            return self.is_rational() and self.coeffs[0] == _fraction(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.modulus, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z^{i}")
        return f"CycloNum[{self.modulus}]({' + '.join(terms) or '0'})"


@lru_cache(maxsize=None)
def root_of_unity(N: int, k: int) -> CycloNum:
    """Return zeta_N^k, with k reduced mod N."""
    return CycloNum._reduced(N, Poly.from_dict({(k % N,): QQ(1)}, _x, domain=QQ))


def embed_root(N: int, order: int, k: int) -> CycloNum:
    """Return zeta_order^k inside Q(zeta_N); order must divide N."""
    if N % order:
        raise IncompatibleModulusError(f"zeta_{order} does not live in Q(zeta_{N})")
    return root_of_unity(N, (N // order) * k)
