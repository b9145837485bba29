"""Residue field F_q, discrete logs, residue characters and Gauss sums.

F_q is modelled as F_p[X]/(m) with m given highest degree first, the convention of
sympy's galoistools. For f = 1 the placeholder m = X makes reduction keep the
constant term, so prime fields need no special casing. Elements carry their
coordinates lowest power first.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import ZZ, isprime, legendre_symbol, primefactors
from sympy.polys.galoistools import (
    gf_add,
    gf_gcd,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_strip,
    gf_sub,
)

from .cyclo import CycloNum, embed_root, root_of_unity
from .exceptions import DomainError

logger = logging.getLogger(__name__)

ElemSpec = Union[int, Sequence[int], "FqElem"]


@dataclass(frozen=True)
class FqElem:
    coeffs: Tuple[int, ...]
    field: "FqDescriptor" = dataclass_field(compare=False, repr=False)

    def _gf(self) -> List[int]:
        return gf_strip([ZZ(c) for c in reversed(self.coeffs)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        """Base-p encoding sum c_i p^i; used as a canonical order and table key."""
        return sum(c * self.field.p ** i for i, c in enumerate(self.coeffs))

    def __add__(self, other: "FqElem") -> "FqElem":
        return self.field._wrap(gf_add(self._gf(), other._gf(), self.field.p, ZZ))

    def __sub__(self, other: "FqElem") -> "FqElem":
        return self.field._wrap(gf_sub(self._gf(), other._gf(), self.field.p, ZZ))

    def __neg__(self) -> "FqElem":
        return self.field._wrap(gf_neg(self._gf(), self.field.p, ZZ))

    def __mul__(self, other: "FqElem") -> "FqElem":
        fld = self.field
        return fld._wrap(gf_rem(gf_mul(self._gf(), other._gf(), fld.p, ZZ), fld.modulus_poly, fld.p, ZZ))

    def __pow__(self, exponent: int) -> "FqElem":
        fld = self.field
        if exponent < 0:
            return self.inv() ** (-exponent)
        return fld._wrap(gf_pow_mod(self._gf(), exponent, fld.modulus_poly, fld.p, ZZ))

    def inv(self) -> "FqElem":
        if self.is_zero():
            raise DomainError("0 has no inverse in F_q")
        return self ** (self.field.q - 2)

    def __repr__(self) -> str:
        if self.field.f == 1:
            return f"FqElem({self.coeffs[0]} mod {self.field.p})"
        return f"FqElem({list(self.coeffs)} in F_{self.field.q})"


def _is_irreducible(modulus_poly: List[int], p: int) -> bool:
    """Rabin-style test: gcd(X^(p^k) - X, m) = 1 for every k <= deg(m)/2."""
    degree = len(modulus_poly) - 1
    X = [ZZ(1), ZZ(0)]
    for k in range(1, degree // 2 + 1):
        frobenius = gf_pow_mod(X, p**k, modulus_poly, p, ZZ)
        if gf_gcd(gf_sub(frobenius, X, p, ZZ), modulus_poly, p, ZZ) != [ZZ(1)]:
            return False
    return True


class FqDescriptor:
    """The residue field F_q of the local field, with precomputed discrete logs."""

    def __init__(
        self,
        p: int,
        f: int = 1,
        modulus_poly: Optional[Sequence[int]] = None,
        generator: Optional[ElemSpec] = None,
        cyclo_modulus: Optional[int] = None,
    ):
        if p < 3 or not isprime(p):
            raise DomainError(f"residue characteristic must be an odd prime, got {p}")
        if f < 1:
            raise DomainError(f"residue degree must be positive, got {f}")
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus_poly = self._validated_modulus(modulus_poly)
        self.cyclo_modulus = cyclo_modulus or lcm(4, p, self.q - 1)
        if self.cyclo_modulus % lcm(4, p, self.q - 1):
            raise DomainError(f"Q(zeta_{self.cyclo_modulus}) cannot hold the residue characters of F_{self.q}")

        self.generator = self.element(generator) if generator is not None else find_generator(self)
        if self.multiplicative_order(self.generator) != self.q - 1:
            raise DomainError(f"{self.generator!r} does not generate F_{self.q}*")

        self._exp_table: List[FqElem] = []
        self._log_table: Dict[Tuple[int, ...], int] = {}
        power = self.one
        for exponent in range(self.q - 1):
            self._exp_table.append(power)
            self._log_table[power.coeffs] = exponent
            power = power * self.generator
        self._gauss_cache: Dict[Tuple[int, Tuple[int, ...]], CycloNum] = {}
        logger.debug("built F_%d with generator %r and a %d-entry dlog table", self.q, self.generator, self.q - 1)

    def _validated_modulus(self, modulus_poly: Optional[Sequence[int]]) -> List[int]:
        if self.f == 1:
            if modulus_poly is not None and len(modulus_poly) != 2:
                raise DomainError("for f = 1 the defining polynomial must be linear")
            return [ZZ(1), ZZ(0)]
        if modulus_poly is None:
            raise DomainError(f"a defining polynomial of degree {self.f} is required for f > 1")
        poly = [ZZ(c % self.p) for c in modulus_poly]
        if len(poly) != self.f + 1 or poly[0] != 1:
            raise DomainError(f"defining polynomial must be monic of degree {self.f}: {list(modulus_poly)}")
        if not _is_irreducible(poly, self.p):
            raise DomainError(f"{list(modulus_poly)} is reducible over F_{self.p}")
        return poly

    def _wrap(self, gf_poly: List[int]) -> FqElem:
        low_first = [int(c) % self.p for c in reversed(gf_poly)]
        return FqElem(tuple(low_first + [0] * (self.f - len(low_first))), self)

    def element(self, spec: ElemSpec) -> FqElem:
        """Coerce an int (a residue in F_p) or a coordinate list (lowest power first)."""
        if isinstance(spec, FqElem):
            return spec
        if isinstance(spec, int):
            return self._wrap([ZZ(spec % self.p)])
        coeffs = [int(c) % self.p for c in spec]
        if len(coeffs) > self.f:
            raise DomainError(f"{list(spec)} has more than {self.f} coordinates")
        return FqElem(tuple(coeffs + [0] * (self.f - len(coeffs))), self)

    @property
    def zero(self) -> FqElem:
        return self.element(0)

    @property
    def one(self) -> FqElem:
        return self.element(1)

    def elements(self) -> List[FqElem]:
        """All of F_q in canonical (base-p encoding) order."""
        result = []
        for code in range(self.q):
            digits = []
            for _ in range(self.f):
                code, digit = divmod(code, self.p)
                digits.append(digit)
            result.append(FqElem(tuple(digits), self))
        return result

    def units(self) -> List[FqElem]:
        return self.elements()[1:]

    def multiplicative_order(self, x: FqElem) -> int:
        if x.is_zero():
            raise DomainError("0 has no multiplicative order")
        order = self.q - 1
        for prime in primefactors(self.q - 1):
            while order % prime == 0 and (x ** (order // prime)) == self.one:
                order //= prime
        return order

    def gen_power(self, exponent: int) -> FqElem:
        return self._exp_table[exponent % (self.q - 1)]

    def dlog(self, x: FqElem) -> int:
        if x.is_zero():
            raise DomainError("dlog(0) is undefined")
        return self._log_table[x.coeffs]

    def trace_to_prime_field(self, x: FqElem) -> int:
        """Tr_{F_q/F_p}(x) = sum of x^(p^i), i < f."""
        total = x
        conjugate = x
        for _ in range(1, self.f):
            conjugate = conjugate ** self.p
            total = total + conjugate
        assert total.is_prime_field(), f"trace of {x!r} left F_p"
        return total.coeffs[0]

    def residue_additive_value(self, x: FqElem) -> CycloNum:
        """zeta_p^Tr(x), the residue shadow of the conductor-zero additive character."""
        return embed_root(self.cyclo_modulus, self.p, self.trace_to_prime_field(x))

    def residue_mult_value(self, k: int, x: FqElem) -> CycloNum:
        """zeta_{q-1}^(k*dlog x)."""
        if x.is_zero():
            raise DomainError("multiplicative characters are not evaluated at 0")
        return embed_root(self.cyclo_modulus, self.q - 1, k * self.dlog(x))

    def gauss_sum(self, k: int, w: ElemSpec = 1) -> CycloNum:
        """sum over t in F_q* of zeta_{q-1}^(k dlog t) * zeta_p^Tr(w t)."""
        w = self.element(w)
        if w.is_zero():
            raise DomainError("Gauss sums are twisted by units only")
        key = (k % (self.q - 1), w.coeffs)
        if key not in self._gauss_cache:
            N = self.cyclo_modulus
            mult_step, add_step = N // (self.q - 1), N // self.p
            total = CycloNum.zero(N)
            for exponent, t in enumerate(self._exp_table):
                total = total + root_of_unity(
                    N, mult_step * k * exponent + add_step * self.trace_to_prime_field(w * t)
                )
            self._gauss_cache[key] = total
        return self._gauss_cache[key]

    def sqrt_p(self) -> CycloNum:
        """The positive square root of p, from the quadratic Gauss sum of F_p."""
        N = self.cyclo_modulus
        tau = CycloNum.zero(N)
        for t in range(1, self.p):
            tau = tau + legendre_symbol(t, self.p) * embed_root(N, self.p, t)
        if self.p % 4 == 3:
            tau = tau * embed_root(N, 4, -1)
        return tau

    def sqrt_q(self) -> CycloNum:
        root = self.sqrt_p() ** self.f
        if root * root != self.q or root.complex_embed().real <= 0:
            raise DomainError(f"failed to build a positive square root of {self.q}")
        return root

    def __repr__(self) -> str:
        return f"FqDescriptor(p={self.p}, f={self.f}, q={self.q})"


def find_generator(desc: FqDescriptor) -> FqElem:
    """Smallest element, in base-p encoding order, of multiplicative order q - 1."""
    for candidate in desc.units():
        if desc.multiplicative_order(candidate) == desc.q - 1:
            logger.debug("generator of F_%d*: %r", desc.q, candidate)
            return candidate
    raise AssertionError(f"F_{desc.q}* has no generator")
