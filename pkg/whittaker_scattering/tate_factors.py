"""Tate L-, epsilon- and gamma-factors of tame characters, exactly, in X = q^-s.

Conventions: e(psi) is the least k with psi trivial on P^k, so psi_c has conductor
e(psi) - v(c). The additive character (e, twist) is x -> psi0(pi^-e * twist * x),
where psi0 has conductor 0 and psi0(pi^-1 u) = zeta_p^Tr(u). With these,

    eps(s, chi, psi) = chi(twist) * (chi(pi) sqrt(q) X)^-e * E0(chi),

E0 = 1 for unramified chi and E0 = chi(pi) G(chi^-1) X for conductor one.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple, Union

from .cyclo import CycloNum, embed_root
from .exceptions import DivisionByZeroError, DomainError, IncompatibleModulusError, PoleError

if TYPE_CHECKING:
    from .finite_field import FqElem
    from .local_field import FStarElem, TameLocalDatum

logger = logging.getLogger(__name__)

Exact = Union[int, Fraction, CycloNum]


# --- Laurent polynomials and rational functions over Q(zeta_N) -------------

def _dense_divmod(num: List[CycloNum], den: List[CycloNum]) -> Tuple[List[CycloNum], List[CycloNum]]:
    """Long division of dense polynomials (lowest degree first, no trailing zeros)."""
    modulus = den[0].modulus
    remainder = list(num)
    quotient = [CycloNum.zero(modulus)] * max(len(num) - len(den) + 1, 1)
    lead_inv = den[-1].inv()
    while len(remainder) >= len(den) and remainder:
        shift = len(remainder) - len(den)
        factor = remainder[-1] * lead_inv
        quotient[shift] = factor
        for i, c in enumerate(den):
            remainder[shift + i] = remainder[shift + i] - factor * c
        while remainder and remainder[-1].is_zero():
            remainder.pop()
    return quotient, remainder


def _dense_gcd(a: List[CycloNum], b: List[CycloNum]) -> List[CycloNum]:
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    lead_inv = a[-1].inv()
    return [c * lead_inv for c in a]


class LaurentPoly:
    """A finite sum of c_e X^e, e in Z, with CycloNum coefficients."""

    __slots__ = ("modulus", "terms")

    def __init__(self, modulus: int, terms: Optional[Dict[int, CycloNum]] = None):
        self.modulus = modulus
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def monomial(cls, coeff: CycloNum, exponent: int = 0) -> "LaurentPoly":
        return cls(coeff.modulus, {exponent: coeff})

    @classmethod
    def from_dense(cls, modulus: int, coeffs: List[CycloNum], shift: int = 0) -> "LaurentPoly":
        return cls(modulus, {shift + i: c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return min(self.terms)

    @property
    def high(self) -> int:
        return max(self.terms)

    def dense(self) -> Tuple[int, List[CycloNum]]:
        """(m, [a_0, a_1, ...]) with self = X^m (a_0 + a_1 X + ...) and a_0 != 0."""
        low = self.low
        zero = CycloNum.zero(self.modulus)
        return low, [self.terms.get(e, zero) for e in range(low, self.high + 1)]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return LaurentPoly(self.modulus, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.modulus, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms: Dict[int, CycloNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                product = c1 * c2
                terms[e1 + e2] = terms[e1 + e2] + product if e1 + e2 in terms else product
        return LaurentPoly(self.modulus, terms)

    def substitute(self, scale: CycloNum, sign: int = 1) -> "LaurentPoly":
        """Replace X by scale * X^sign."""
        return LaurentPoly(self.modulus, {sign * e: c * scale**e for e, c in self.terms.items()})

    def __call__(self, value: CycloNum) -> CycloNum:
        total = CycloNum.zero(self.modulus)
        for e, c in self.terms.items():
            total = total + c * value**e
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return " + ".join(f"({c!r})X^{e}" for e, c in sorted(self.terms.items())) or "0"


class LaurentRat:
    """num/den with num a Laurent polynomial and den a polynomial with den(0) = 1.

    Common factors are cancelled by an exact gcd, so the representation is unique
    and structural equality is value equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Optional[LaurentPoly] = None):
        if den is None:
            den = LaurentPoly.monomial(CycloNum.one(num.modulus))
        if den.is_zero():
            raise DivisionByZeroError("rational function with zero denominator")
        if num.modulus != den.modulus:
            raise IncompatibleModulusError("numerator and denominator live in different fields")
        self.num, self.den = self._canonical(num, den)

    @staticmethod
    def _canonical(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
        modulus = den.modulus
        if num.is_zero():
            return num, LaurentPoly.monomial(CycloNum.one(modulus))
        num_shift, num_dense = num.dense()
        den_shift, den_dense = den.dense()
        common = _dense_gcd(num_dense, den_dense)
        if len(common) > 1:
            num_dense, _ = _dense_divmod(num_dense, common)
            den_dense, _ = _dense_divmod(den_dense, common)
        scale = den_dense[0].inv()
        num_dense = [c * scale for c in num_dense]
        den_dense = [c * scale for c in den_dense]
        return (
            LaurentPoly.from_dense(modulus, num_dense, num_shift - den_shift),
            LaurentPoly.from_dense(modulus, den_dense),
        )

    @classmethod
    def constant(cls, value: CycloNum) -> "LaurentRat":
        return cls(LaurentPoly.monomial(value))

    @classmethod
    def monomial(cls, coeff: CycloNum, exponent: int) -> "LaurentRat":
        return cls(LaurentPoly.monomial(coeff, exponent))

    @property
    def modulus(self) -> int:
        return self.den.modulus

    def is_monomial(self) -> bool:
        return len(self.num.terms) == 1 and self.den.terms.keys() == {0}

    def __mul__(self, other: "LaurentRat") -> "LaurentRat":
        return LaurentRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "LaurentRat") -> "LaurentRat":
        return self * other.inv()

    def __add__(self, other: "LaurentRat") -> "LaurentRat":
        return LaurentRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "LaurentRat":
        return LaurentRat(-self.num, self.den)

    def __sub__(self, other: "LaurentRat") -> "LaurentRat":
        return self + (-other)

    def inv(self) -> "LaurentRat":
        if self.num.is_zero():
            raise DivisionByZeroError("inverse of the zero rational function")
        return LaurentRat(self.den, self.num)

    def __pow__(self, exponent: int) -> "LaurentRat":
        base = self if exponent >= 0 else self.inv()
        result = LaurentRat.constant(CycloNum.one(self.modulus))
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def scale(self, value: CycloNum) -> "LaurentRat":
        return LaurentRat(self.num * LaurentPoly.monomial(value), self.den)

    def substitute(self, scale: CycloNum, sign: int = 1) -> "LaurentRat":
        """Replace X by scale * X^sign, e.g. X -> q^-1 X^-1 for s -> 1 - s."""
        return LaurentRat(self.num.substitute(scale, sign), self.den.substitute(scale, sign))

    def pole_order(self, value: CycloNum) -> int:
        """Multiplicity of X = value as a root of the reduced denominator."""
        if value.is_zero():
            return max(-self.num.low, 0)
        order = 0
        _, den = self.den.dense()
        linear = [-value, CycloNum.one(value.modulus)]
        while len(den) > 1:
            quotient, remainder = _dense_divmod(den, linear)
            if remainder:
                break
            den, order = quotient, order + 1
        return order

    def evaluate_at(self, value: CycloNum) -> CycloNum:
        order = self.pole_order(value)
        if order:
            raise PoleError(order, repr(value))
        return self.num(value) / self.den(value)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentRat) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"LaurentRat(({self.num!r}) / ({self.den!r}))"


def variable_at(datum: "TameLocalDatum", s: Union[int, Fraction], exponent_scale: int = 1) -> CycloNum:
    """q^(-exponent_scale * s) for integer or half-integer s."""
    twice = Fraction(s) * 2 * exponent_scale
    if twice.denominator != 1:
        raise DomainError(f"only integer and half-integer points are supported, got s = {s}")
    return datum.sqrt_q ** (-int(twice))


def evaluate(f: LaurentRat, s: Union[int, Fraction], datum: "TameLocalDatum", exponent_scale: int = 1) -> CycloNum:
    """Exact value of f at X = q^-s (or Y = q^(-exponent_scale*s))."""
    try:
        return f.evaluate_at(variable_at(datum, s, exponent_scale))
    except PoleError as exc:
        raise PoleError(exc.order, f"s = {s}") from exc


# --- characters -------------------------------------------------------------

@dataclass(frozen=True)
class TameMultChar:
    """A character of F* of conductor <= 1.

    On units it is t -> zeta_{q-1}^(k dlog t); at the uniformizer it takes w_value.
    """

    datum: "TameLocalDatum" = dataclass_field(compare=False, repr=False)
    k: int
    w_value: CycloNum

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % (self.datum.q - 1))
        if self.w_value.modulus != self.datum.N:
            raise IncompatibleModulusError(f"chi(pi) must lie in Q(zeta_{self.datum.N})")

    @classmethod
    def trivial(cls, datum: "TameLocalDatum") -> "TameMultChar":
        return cls(datum, 0, CycloNum.one(datum.N))

    @classmethod
    def unramified(cls, datum: "TameLocalDatum", w_value: Exact) -> "TameMultChar":
        return cls(datum, 0, _as_cyclo(datum, w_value))

    @property
    def conductor(self) -> int:
        return 0 if self.k == 0 else 1

    def is_ramified(self) -> bool:
        return self.k != 0

    def is_trivial(self) -> bool:
        return self.k == 0 and self.w_value == 1

    def is_quadratic(self) -> bool:
        """chi^2 = 1; includes the trivial character."""
        return (self * self).is_trivial()

    def is_nontrivial_quadratic(self) -> bool:
        return self.is_quadratic() and not self.is_trivial()

    def __mul__(self, other: "TameMultChar") -> "TameMultChar":
        return TameMultChar(self.datum, self.k + other.k, self.w_value * other.w_value)

    def inv(self) -> "TameMultChar":
        return TameMultChar(self.datum, -self.k, self.w_value.inv())

    def __pow__(self, exponent: int) -> "TameMultChar":
        return TameMultChar(self.datum, self.k * exponent, self.w_value**exponent)

    def unit_value(self, u: "FqElem") -> CycloNum:
        return self.datum.field.residue_mult_value(self.k, u)

    def __call__(self, x: "FStarElem") -> CycloNum:
        return self.unit_value(x.unit) * self.w_value**x.valuation

    def at_minus_one(self) -> CycloNum:
        return CycloNum.from_rational(self.datum.N, -1 if self.k % 2 else 1)

    def label(self) -> str:
        return f"k={self.k},w={self.w_value!r}"


@dataclass(frozen=True)
class AdditiveCharData:
    """psi(x) = psi0(pi^-e * twist * x); e is the conductor e(psi)."""

    datum: "TameLocalDatum" = dataclass_field(compare=False, repr=False)
    e: int
    twist: "FqElem"

    def __post_init__(self):
        if self.twist.is_zero():
            raise DomainError("the twist of an additive character must be a unit")

    @classmethod
    def standard(cls, datum: "TameLocalDatum", e: int = 0) -> "AdditiveCharData":
        return cls(datum, e, datum.field.one)

    @property
    def conductor(self) -> int:
        return self.e

    def twisted(self, c: "FStarElem") -> "AdditiveCharData":
        """psi_c : x -> psi(c x)."""
        return AdditiveCharData(self.datum, self.e - c.valuation, self.twist * c.unit)

    def scaled_by_n(self) -> "AdditiveCharData":
        """psi_n; same conductor because n is a unit."""
        return AdditiveCharData(self.datum, self.e, self.twist * self.datum.field.element(self.datum.n))

    def label(self) -> str:
        return f"e={self.e},twist={list(self.twist.coeffs)}"


def _as_cyclo(datum: "TameLocalDatum", value: Exact) -> CycloNum:
    return value if isinstance(value, CycloNum) else CycloNum.from_rational(datum.N, value)


def nontrivial_quadratic_characters(datum: "TameLocalDatum") -> List[TameMultChar]:
    """[theta_u, theta_+, theta_-]: unramified, then ramified with theta(pi) = +1, -1."""
    half = (datum.q - 1) // 2
    return [
        TameMultChar.unramified(datum, -1),
        TameMultChar(datum, half, CycloNum.one(datum.N)),
        TameMultChar(datum, half, CycloNum.from_rational(datum.N, -1)),
    ]


def all_tame_characters(datum: "TameLocalDatum", w_order: Optional[int] = None) -> List[TameMultChar]:
    """Every tame character with chi(pi) a w_order-th root of unity (default q - 1)."""
    w_order = w_order or datum.q - 1
    return [
        TameMultChar(datum, k, embed_root(datum.N, w_order, j))
        for k in range(datum.q - 1)
        for j in range(w_order)
    ]


# --- factors ----------------------------------------------------------------

@dataclass(frozen=True)
class FaultInjection:
    """Deliberate corruption of the epsilon path, used to prove the suite can fail."""

    gauss_scale: int = 1


NO_FAULT = FaultInjection()


def l_factor(chi: TameMultChar) -> LaurentRat:
    """1/(1 - chi(pi) X) if chi is unramified, else 1."""
    N = chi.datum.N
    one = CycloNum.one(N)
    if chi.is_ramified():
        return LaurentRat.constant(one)
    den = LaurentPoly(N, {0: one, 1: -chi.w_value})
    return LaurentRat(LaurentPoly.monomial(one), den)


def _epsilon_monomial(chi: TameMultChar, psi: AdditiveCharData, fault: FaultInjection) -> Tuple[CycloNum, int]:
    datum = chi.datum
    coeff = chi.unit_value(psi.twist) * (chi.w_value * datum.sqrt_q) ** (-psi.e)
    if chi.is_ramified():
        coeff = coeff * chi.w_value * datum.field.gauss_sum(-chi.k, 1) * fault.gauss_scale
    return coeff, chi.conductor - psi.e


def epsilon_factor(chi: TameMultChar, psi: AdditiveCharData, fault: FaultInjection = NO_FAULT) -> LaurentRat:
    """The Tate local constant, a monomial c X^m with m = e(chi) - e(psi)."""
    coeff, exponent = _epsilon_monomial(chi, psi, fault)
    return LaurentRat.monomial(coeff, exponent)


def reflect(f: LaurentRat, datum: "TameLocalDatum") -> LaurentRat:
    """f(1 - s): substitute X -> q^-1 X^-1."""
    return f.substitute(CycloNum.from_rational(datum.N, Fraction(1, datum.q)), -1)


def shift(f: LaurentRat, datum: "TameLocalDatum", t: int) -> LaurentRat:
    """f(s + t): substitute X -> q^-t X."""
    return f.substitute(CycloNum.from_rational(datum.N, Fraction(1, datum.q) ** t), 1)


def gamma_factor(chi: TameMultChar, psi: AdditiveCharData, fault: FaultInjection = NO_FAULT) -> LaurentRat:
    """eps(s, chi, psi) L(1 - s, chi^-1) / L(s, chi)."""
    datum = chi.datum
    return epsilon_factor(chi, psi, fault) * reflect(l_factor(chi.inv()), datum) / l_factor(chi)


def gamma_value(chi: TameMultChar, psi: AdditiveCharData, s: Union[int, Fraction]) -> CycloNum:
    """gamma(s, chi, psi) at an integer or half-integer point, memoised on the datum.

    Evaluated term by term: eps(s) * (1 - chi(pi) q^-s) / (1 - chi(pi)^-1 q^(s-1)),
    the L-factors being 1 for ramified chi. The two linear factors have no common zero.
    """
    datum = chi.datum
    key = ("gamma", chi, psi.e, psi.twist.coeffs, Fraction(s))
    if key in datum.memo:
        return datum.memo[key]
    x = variable_at(datum, s)
    coeff, exponent = _epsilon_monomial(chi, psi, NO_FAULT)
    value = coeff * x**exponent
    if not chi.is_ramified():
        den = 1 - chi.w_value.inv() * variable_at(datum, 1 - Fraction(s))
        if den.is_zero():
            raise PoleError(1, f"s = {s}")
        value = value * (1 - chi.w_value * x) / den
    datum.memo[key] = value
    return value
