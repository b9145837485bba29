"""The tame local field modulo 1 + P, the quotient F*/F*^n and the nth power Hilbert symbol.

An element of F* is modelled as pi^v * u with u a unit residue; every character in
use has conductor at most one, so nothing finer than 1 + P is ever needed. Classes
in F*/F*^n are pairs (a, b) = (v mod n, dlog(u) mod n).
"""

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from .cyclo import CycloNum, embed_root
from .exceptions import DomainError
from .finite_field import ElemSpec, FqDescriptor, FqElem
from .tate_factors import TameMultChar

logger = logging.getLogger(__name__)


class TameLocalDatum:
    """Ambient arithmetic context: residue field, cover degree n, modulus N and sqrt(q)."""

    def __init__(self, field: FqDescriptor, n: int):
        if n < 3 or n % 2 == 0:
            raise DomainError(f"cover degree must be odd and at least 3, got {n}")
        if (field.q - 1) % n:
            raise DomainError(f"n = {n} does not divide q - 1 = {field.q - 1}; only the tame case is supported")
        self.field = field
        self.n = n
        self.p = field.p
        self.f = field.f
        self.q = field.q
        self.N = field.cyclo_modulus
        self.sqrt_q = field.sqrt_q()
        self.memo: Dict[Any, Any] = {}
        self._isotropics: Optional[List["Subgroup"]] = None
        self._pairs: Optional[List["IsotropicPair"]] = None
        logger.info("tame datum p=%d f=%d q=%d n=%d N=%d", self.p, self.f, self.q, n, self.N)

    @property
    def uniformizer(self) -> "FStarElem":
        return FStarElem(1, self.field.one)

    def element(self, valuation: int, unit: ElemSpec = 1) -> "FStarElem":
        return FStarElem(valuation, self.field.element(unit))

    def classes(self) -> List["ClassModN"]:
        """(Z/n)^2 in lexicographic order."""
        return [ClassModN(a, b, self.n) for a in range(self.n) for b in range(self.n)]

    def nonsquare_unit(self) -> FqElem:
        return self.field.generator

    def __repr__(self) -> str:
        return f"TameLocalDatum(q={self.q}, n={self.n})"


@dataclass(frozen=True)
class FStarElem:
    """x = pi^valuation * unit, modulo 1 + P."""

    valuation: int
    unit: FqElem

    def __post_init__(self):
        if self.unit.is_zero():
            raise DomainError("the unit part of an element of F* must be nonzero")

    def __mul__(self, other: "FStarElem") -> "FStarElem":
        return FStarElem(self.valuation + other.valuation, self.unit * other.unit)

    def inv(self) -> "FStarElem":
        return FStarElem(-self.valuation, self.unit.inv())

    def __pow__(self, exponent: int) -> "FStarElem":
        return FStarElem(self.valuation * exponent, self.unit**exponent)

    def __neg__(self) -> "FStarElem":
        return FStarElem(self.valuation, -self.unit)

    def label(self) -> str:
        return f"{self.valuation}:{list(self.unit.coeffs) if self.unit.field.f > 1 else self.unit.coeffs[0]}"


@dataclass(frozen=True, order=True)
class ClassModN:
    """An element (a, b) of F*/F*^n, additive notation."""

    a: int
    b: int
    n: int = dataclass_field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)

    def __add__(self, other: "ClassModN") -> "ClassModN":
        return ClassModN(self.a + other.a, self.b + other.b, self.n)

    def __neg__(self) -> "ClassModN":
        return ClassModN(-self.a, -self.b, self.n)

    def __sub__(self, other: "ClassModN") -> "ClassModN":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "ClassModN":
        return ClassModN(scalar * self.a, scalar * self.b, self.n)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self) -> str:
        return f"({self.a},{self.b})"


Subgroup = FrozenSet[ClassModN]


def class_of(datum: TameLocalDatum, x: FStarElem) -> ClassModN:
    return ClassModN(x.valuation, datum.field.dlog(x.unit), datum.n)


def lift(datum: TameLocalDatum, cls: ClassModN) -> FStarElem:
    """Canonical lift pi^a * g^b."""
    return FStarElem(cls.a, datum.field.gen_power(cls.b))


def _symbol_exponent(datum: TameLocalDatum, x: FStarElem, y: FStarElem) -> int:
    """e with (x, y) = zeta_n^e, from the tame symbol (-1)^(vx vy) x^vy y^-vx."""
    fld = datum.field
    vx, vy = x.valuation, y.valuation
    minus_one = (datum.q - 1) // 2
    return (vx * vy * minus_one + vy * fld.dlog(x.unit) - vx * fld.dlog(y.unit)) % datum.n


def hilbert_symbol(datum: TameLocalDatum, x: FStarElem, y: FStarElem) -> CycloNum:
    return embed_root(datum.N, datum.n, _symbol_exponent(datum, x, y))


def pairing_exponent(x: ClassModN, y: ClassModN) -> int:
    """The symbol on classes: (x, y) = zeta_n^(a'b - ab') since n | (q-1)/2."""
    return (y.a * x.b - x.a * y.b) % x.n


def eta_character(datum: TameLocalDatum, x: FStarElem) -> TameMultChar:
    """eta_x : y -> (x, y), a character of order dividing n and conductor <= 1."""
    k = -x.valuation * ((datum.q - 1) // datum.n)
    return TameMultChar(datum, k, hilbert_symbol(datum, x, datum.uniformizer))


def _span(gens: List[ClassModN], n: int) -> Subgroup:
    zero = ClassModN(0, 0, n)
    elements = {zero}
    for g in gens:
        elements = {x + i * g for x in elements for i in range(n)}
    return frozenset(elements)


def _is_isotropic(subgroup: Subgroup) -> bool:
    return all(pairing_exponent(x, y) == 0 for x in subgroup for y in subgroup)


def _generators(subgroup: Subgroup) -> List[ClassModN]:
    """Greedy generating set, scanning elements in canonical order."""
    n = next(iter(subgroup)).n
    gens: List[ClassModN] = []
    span = _span([], n)
    for x in sorted(subgroup):
        if x not in span:
            gens.append(x)
            span = _span(gens, n)
    return gens


def enumerate_maximal_isotropics(datum: TameLocalDatum) -> List[Subgroup]:
    """All order-n subgroups of (Z/n)^2 on which the pairing is trivial, canonically ordered."""
    if datum._isotropics is None:
        n = datum.n
        cyclic = {_span([x], n) for x in datum.classes()}
        subgroups = {frozenset(x + y for x in h1 for y in h2) for h1, h2 in itertools.product(cyclic, repeat=2)}
        found = [s for s in subgroups if len(s) == n and _is_isotropic(s)]
        datum._isotropics = sorted(found, key=lambda s: sorted(s))
        logger.debug("%d maximal isotropic subgroups for n=%d", len(found), n)
    return datum._isotropics


@dataclass(frozen=True)
class IsotropicPair:
    """(J, K) with J x K = F*/F*^n and k -> eta_k|_J injective on K."""

    J_gens: Tuple[ClassModN, ...]
    K_gens: Tuple[ClassModN, ...]
    J_elements: Tuple[ClassModN, ...]
    K_elements: Tuple[ClassModN, ...]

    @classmethod
    def from_subgroups(cls, J: Subgroup, K: Subgroup) -> "IsotropicPair":
        return cls(tuple(_generators(J)), tuple(_generators(K)), tuple(sorted(J)), tuple(sorted(K)))

    @property
    def n(self) -> int:
        return len(self.K_elements)

    def label(self) -> str:
        return f"J=<{','.join(map(repr, self.J_gens))}> K=<{','.join(map(repr, self.K_gens))}>"


def _is_complementary(J: Subgroup, K: Subgroup) -> bool:
    n = len(J)
    return J & K == {ClassModN(0, 0, n)} and len({x + y for x in J for y in K}) == n * n


def _restriction_injective(J: Subgroup, K: Subgroup) -> bool:
    return all(k.is_zero() or any(pairing_exponent(k, j) for j in J) for k in K)


def isotropic_pairs(datum: TameLocalDatum) -> List[IsotropicPair]:
    if datum._pairs is None:
        isotropics = enumerate_maximal_isotropics(datum)
        pairs = [
            IsotropicPair.from_subgroups(J, K)
            for J, K in itertools.product(isotropics, repeat=2)
            if _is_complementary(J, K) and _restriction_injective(J, K)
        ]
        assert pairs, f"no isotropic pair for {datum!r}"
        datum._pairs = pairs
        logger.debug("%d ordered isotropic pairs for n=%d", len(pairs), datum.n)
    return datum._pairs


def standard_pair(datum: TameLocalDatum) -> IsotropicPair:
    """J = units, K = <pi>."""
    n = datum.n
    units = frozenset(ClassModN(0, b, n) for b in range(n))
    powers_of_pi = frozenset(ClassModN(a, 0, n) for a in range(n))
    pair = IsotropicPair.from_subgroups(units, powers_of_pi)
    assert pair in isotropic_pairs(datum)
    return pair


def select_pairs(datum: TameLocalDatum, policy: str) -> List[IsotropicPair]:
    """'standard', 'all', or a decimal index into isotropic_pairs."""
    if policy == "standard":
        return [standard_pair(datum)]
    pairs = isotropic_pairs(datum)
    if policy == "all":
        return list(pairs)
    try:
        index = int(policy)
    except ValueError:
        raise DomainError(f"unknown pair policy {policy!r}") from None
    if not 0 <= index < len(pairs):
        raise DomainError(f"pair index {index} out of range 0..{len(pairs) - 1}")
    return [pairs[index]]


def gram_table(datum: TameLocalDatum) -> Tuple[List[List[int]], List[List[int]]]:
    """Pairing exponents on the generators (pi, g), and on all of (Z/n)^2 in canonical order."""
    gens = [datum.uniformizer, datum.element(0, datum.field.generator)]
    small = [[_symbol_exponent(datum, x, y) for y in gens] for x in gens]
    classes = datum.classes()
    full = [[pairing_exponent(x, y) for y in classes] for x in classes]
    return small, full


def pairing_radical(datum: TameLocalDatum) -> List[ClassModN]:
    classes = datum.classes()
    return [x for x in classes if all(pairing_exponent(x, y) == 0 for y in classes)]
