"""Partial gamma factors, the scattering matrix and what it says about Whittaker models.

For a nontrivial quadratic theta the intertwining operator at s = 0 acts on the
n-dimensional space of psi-Whittaker functionals by the matrix

    M(a, b) = gamma_J(1, theta * eta_{b - a}, psi, -(a + b)),   a, b in K,

written additively on F*/F*^n. Normalised by gamma(1, theta, psi) it is an
involution whose eigenspace dimensions are the Whittaker dimensions of the two
constituents.
"""

import enum
import logging
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Tuple

from .cyclo import CycloNum
from .exceptions import DomainError, IdentityViolation, NormalizationError
from .linalg import Matrix, identity, is_scalar, mat_add, mat_mul, rank, scalar_mul, trace
from .local_field import (
    ClassModN,
    FStarElem,
    IsotropicPair,
    TameLocalDatum,
    eta_character,
    hilbert_symbol,
    lift,
)
from .tate_factors import (
    AdditiveCharData,
    LaurentRat,
    TameMultChar,
    evaluate,
    gamma_factor,
    gamma_value,
)

logger = logging.getLogger(__name__)

Lift = Callable[[TameLocalDatum, ClassModN], FStarElem]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


class Action(enum.Enum):
    FIX = "Fix"
    SWAP = "Swap"


class UnramifiedLabels(NamedTuple):
    v1: str
    v2: str
    v1_sign: int
    v2_sign: int


PI_PLUS = "pi+"
PI_MINUS = "pi-"


@dataclass
class ScatteringReport:
    pair: IsotropicPair
    theta: TameMultChar
    psi: AdditiveCharData
    c: FStarElem
    matrix: Matrix
    gamma_1: CycloNum
    trace: CycloNum
    normalized: Matrix
    dim_plus: int
    dim_minus: int
    theta_c: int
    checks: List[CheckResult] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def _require_nontrivial_quadratic(theta: TameMultChar) -> None:
    if not theta.is_nontrivial_quadratic():
        raise DomainError(f"expected a nontrivial quadratic character, got {theta.label()}")


def _sign(value: CycloNum) -> int:
    if value == 1:
        return 1
    if value == -1:
        return -1
    raise DomainError(f"{value!r} is not a sign")


def partial_gamma(
    chi: TameMultChar,
    psi: AdditiveCharData,
    k: ClassModN,
    pair: IsotropicPair,
    s,
    lift_of: Lift = lift,
) -> CycloNum:
    """gamma_J(s, chi, psi, k) = n^-1 sum over j in J of gamma(s, chi eta_j, psi) eta_k(j)."""
    if k not in pair.K_elements:
        raise DomainError(f"{k!r} is not in K")
    datum = chi.datum
    k_lift = lift_of(datum, k)
    total = CycloNum.zero(datum.N)
    for j in pair.J_elements:
        j_lift = lift_of(datum, j)
        total = total + gamma_value(chi * eta_character(datum, j_lift), psi, s) * hilbert_symbol(datum, k_lift, j_lift)
    return total * Fraction(1, len(pair.J_elements))


def _scattering_matrix(theta: TameMultChar, psi: AdditiveCharData, pair: IsotropicPair, lift_of: Lift) -> Matrix:
    _require_nontrivial_quadratic(theta)
    datum = theta.datum
    entries = []
    for a in pair.K_elements:
        for b in pair.K_elements:
            chi = theta * eta_character(datum, lift_of(datum, b - a))
            entries.append(partial_gamma(chi, psi, -(a + b), pair, 1, lift_of))
    return Matrix(len(pair.K_elements), len(pair.K_elements), entries)


def scattering_matrix(theta: TameMultChar, psi: AdditiveCharData, pair: IsotropicPair) -> Matrix:
    return _scattering_matrix(theta, psi, pair, lift)


def psi_c_matrix(theta: TameMultChar, psi: AdditiveCharData, c: FStarElem, pair: IsotropicPair) -> Matrix:
    """|c|^-1/2 M(theta, psi_c), the matrix of the operator on psi_c-functionals."""
    return scalar_mul(theta.datum.sqrt_q ** c.valuation, scattering_matrix(theta, psi.twisted(c), pair))


def normalized_operator(theta: TameMultChar, psi: AdditiveCharData, c: FStarElem, pair: IsotropicPair) -> Matrix:
    gamma_1 = gamma_value(theta, psi, 1)
    if gamma_1.is_zero():
        raise NormalizationError(f"gamma(1, {theta.label()}, {psi.label()}) vanishes")
    return scalar_mul(gamma_1.inv(), psi_c_matrix(theta, psi, c, pair))


def eigen_ranks(A: Matrix) -> Tuple[int, int]:
    """Ranks of the projections (I + A)/2 and (I - A)/2."""
    one = identity(A.rows, A.modulus)
    half = Fraction(1, 2)
    return rank(scalar_mul(half, one + A)), rank(scalar_mul(half, one - A))


def whittaker_dims(theta: TameMultChar, psi: AdditiveCharData, c: FStarElem, pair: IsotropicPair) -> Tuple[int, int]:
    """(dim Wh_psi_c(pi+), dim Wh_psi_c(pi-)) by exact rank, checked against (n +- theta(c))/2."""
    A = normalized_operator(theta, psi, c, pair)
    dims = eigen_ranks(A)
    theta_c = _sign(theta(c))
    total = whittaker_total_dim(theta.datum)
    if sum(dims) != total:
        raise IdentityViolation("involution", f"eigenspace ranks {dims} do not add up to {total}")
    expected = ((total + theta_c) // 2, (total - theta_c) // 2)
    if dims != expected:
        raise IdentityViolation(
            "closed_form_dims",
            f"ranks {dims} != {expected} for theta={theta.label()} psi={psi.label()} c={c.label()}",
        )
    return dims


def whittaker_total_dim(datum: TameLocalDatum) -> int:
    """dim Wh_psi of the full principal series, [F*:F*^n]^1/2.

    The index is n * |F_q* / F_q*^n| / |n|_F, and |n|_F = 1 in the tame case.
    """
    index = datum.n * math.gcd(datum.n, datum.q - 1)
    root = math.isqrt(index)
    if root * root != index:
        raise DomainError(f"[F*:F*^n] = {index} is not a square")
    return root


def inverse_plancherel(chi: TameMultChar, psi: AdditiveCharData) -> LaurentRat:
    """chi^n(-1) gamma(1 + ns, chi^n, psi_n) gamma(1 - ns, chi^-n, psi_n), in Y = q^-ns."""
    datum = chi.datum
    n = datum.n
    psi_n = psi.scaled_by_n()
    chi_n = chi**n
    one_over_q = CycloNum.from_rational(datum.N, Fraction(1, datum.q))
    forward = gamma_factor(chi_n, psi_n).substitute(one_over_q, 1)
    backward = gamma_factor(chi_n.inv(), psi_n).substitute(one_over_q, -1)
    return (forward * backward).scale(chi_n.at_minus_one())


def plancherel(chi: TameMultChar, psi: AdditiveCharData) -> LaurentRat:
    return inverse_plancherel(chi, psi).inv()


def inverse_plancherel_at_zero(chi: TameMultChar, psi: AdditiveCharData) -> CycloNum:
    return evaluate(inverse_plancherel(chi, psi), 0, chi.datum, exponent_scale=chi.datum.n)


def reducibility_test(chi: TameMultChar) -> bool:
    """I(sigma) is reducible iff chi^n is a nontrivial quadratic character of F*."""
    return (chi**chi.datum.n).is_nontrivial_quadratic()


def knapp_stein_reducible(chi: TameMultChar, psi: AdditiveCharData) -> bool:
    """sigma ~ sigma^w and the inverse Plancherel measure is analytic at s = 0."""
    if not (chi ** (2 * chi.datum.n)).is_trivial():
        return False
    return inverse_plancherel(chi, psi).pole_order(CycloNum.one(chi.datum.N)) == 0


def conductor_sum_parts(theta: TameMultChar, datum: TameLocalDatum) -> Tuple[Fraction, Fraction]:
    """Sum of q^-e(theta eta) over unramified eta, then over ramified eta, eta in (F*/F*^n)^."""
    if not theta.is_ramified():
        raise DomainError("the conductor sum is only an identity for ramified theta")
    unramified = ramified = Fraction(0)
    for cls in datum.classes():
        eta = eta_character(datum, lift(datum, cls))
        term = Fraction(1, datum.q ** (theta * eta).conductor)
        if eta.is_ramified():
            ramified += term
        else:
            unramified += term
    return unramified, ramified


def conductor_sum_check(theta: TameMultChar, datum: TameLocalDatum) -> bool:
    unramified, ramified = conductor_sum_parts(theta, datum)
    return (unramified + ramified) / datum.n**2 == Fraction(1, datum.q)


def gl2_action_predict(theta: TameMultChar, c: FStarElem) -> Action:
    """Conjugating pi+ by diag(1, c) fixes it iff theta(c) = 1."""
    _require_nontrivial_quadratic(theta)
    return Action.FIX if _sign(theta(c)) == 1 else Action.SWAP


def gl2_action_consistent(theta: TameMultChar, psi: AdditiveCharData, c: FStarElem, pair: IsotropicPair) -> bool:
    """The dimensions under psi_c are those under psi, exchanged exactly when the action swaps."""
    base = whittaker_dims(theta, psi, theta.datum.element(0), pair)
    twisted = whittaker_dims(theta, psi, c, pair)
    if gl2_action_predict(theta, c) is Action.FIX:
        return twisted == base
    return twisted == base[::-1]


def unramified_labels(e_psi: int) -> UnramifiedLabels:
    """Labels of the spherical constituents V1, V2 of theta_u, and their eigenvalue signs."""
    v1_sign = -1 if e_psi % 2 else 1
    if e_psi % 2 == 0:
        return UnramifiedLabels(PI_PLUS, PI_MINUS, v1_sign, -v1_sign)
    return UnramifiedLabels(PI_MINUS, PI_PLUS, v1_sign, -v1_sign)


def unramified_labels_consistent(theta_u: TameMultChar, psi: AdditiveCharData, c: FStarElem) -> bool:
    """Relabelling under psi -> psi_c agrees with the GL2 fix/swap prediction."""
    before = unramified_labels(psi.conductor)
    after = unramified_labels(psi.twisted(c).conductor)
    if gl2_action_predict(theta_u, c) is Action.FIX:
        return after == before
    return (after.v1, after.v2) == (before.v2, before.v1)


def normalizer_compare(theta: TameMultChar, psi: AdditiveCharData) -> int:
    """r = theta(n) gamma(1, theta, psi_n) / gamma(1, theta, psi); r^2 must be 1."""
    _require_nontrivial_quadratic(theta)
    datum = theta.datum
    n_unit = datum.element(0, datum.n)
    r = theta(n_unit) * gamma_value(theta, psi.scaled_by_n(), 1) / gamma_value(theta, psi, 1)
    if r * r != 1:
        raise IdentityViolation("normalizer_compare", f"r = {r!r} for theta={theta.label()} psi={psi.label()}")
    return _sign(r)


def nth_power_shift(datum: TameLocalDatum) -> FStarElem:
    """(pi g)^n, a nontrivial element of F*^n."""
    return (datum.uniformizer * datum.element(0, datum.field.generator)) ** datum.n


def lift_invariance(theta: TameMultChar, psi: AdditiveCharData, pair: IsotropicPair) -> bool:
    """Moving every lift by an nth power leaves the scattering matrix unchanged."""
    shift_by = nth_power_shift(theta.datum)

    def shifted(datum: TameLocalDatum, cls: ClassModN) -> FStarElem:
        return lift(datum, cls) * shift_by

    return _scattering_matrix(theta, psi, pair, shifted) == scattering_matrix(theta, psi, pair)


def analyze(theta: TameMultChar, psi: AdditiveCharData, c: FStarElem, pair: IsotropicPair) -> ScatteringReport:
    """Matrix, trace, normalised operator and dimensions for one (theta, psi, c, pair)."""
    _require_nontrivial_quadratic(theta)
    datum = theta.datum
    n = whittaker_total_dim(datum)
    matrix = psi_c_matrix(theta, psi, c, pair)
    gamma_1 = gamma_value(theta, psi, 1)
    theta_c = _sign(theta(c))
    tr = trace(matrix)
    A = normalized_operator(theta, psi, c, pair)
    dim_plus, dim_minus = eigen_ranks(A)
    expected_dims = ((n + theta_c) // 2, (n - theta_c) // 2)
    identity_n = identity(n, datum.N)
    tag = f"theta={theta.label()} psi={psi.label()} c={c.label()}"

    checks = []
    expected_trace = gamma_1 * theta_c
    checks.append(CheckResult("trace_theorem", tr == expected_trace, f"{tag}: trace {tr!r} vs {expected_trace!r}"))
    square = mat_mul(matrix, matrix)
    checks.append(CheckResult("involution", square == scalar_mul(gamma_1 * gamma_1, identity_n), f"{tag}: M^2 != gamma^2 I"))
    checks.append(CheckResult("not_scalar", is_scalar(A) is None, f"{tag}: normalised operator is scalar"))
    annihilates = mat_mul(mat_add(identity_n, A), mat_add(identity_n, scalar_mul(-1, A)))
    rank_trace_ok = (
        dim_plus + dim_minus == n
        and trace(A) == dim_plus - dim_minus
        and is_scalar(annihilates) == 0
    )
    checks.append(CheckResult("rank_trace", rank_trace_ok, f"{tag}: ranks ({dim_plus}, {dim_minus}), trace {trace(A)!r}"))
    checks.append(
        CheckResult("closed_form_dims", (dim_plus, dim_minus) == expected_dims, f"{tag}: ranks ({dim_plus}, {dim_minus}) vs {expected_dims}")
    )
    generic = (dim_plus > dim_minus) == (theta_c == 1)
    checks.append(CheckResult("generic_summand", generic, f"{tag}: pi+ generic summand mismatch"))

    report = ScatteringReport(
        pair=pair,
        theta=theta,
        psi=psi,
        c=c,
        matrix=matrix,
        gamma_1=gamma_1,
        trace=tr,
        normalized=A,
        dim_plus=dim_plus,
        dim_minus=dim_minus,
        theta_c=theta_c,
        checks=checks,
    )
    for check in checks:
        if not check.passed:
            logger.warning("%s failed: %s", check.name, check.witness)
    logger.debug("analyzed %s: dims (%d, %d)", tag, dim_plus, dim_minus)
    return report
