"""The invariant suite: every identity the library relies on, checked by exact equality."""

import itertools
import logging
import random
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .cyclo import CycloNum, root_of_unity
from .exceptions import IdentityViolation, PoleError
from .linalg import scalar_mul, trace
from .local_field import (
    FStarElem,
    IsotropicPair,
    TameLocalDatum,
    class_of,
    eta_character,
    hilbert_symbol,
    isotropic_pairs,
    lift,
    pairing_radical,
)
from .tate_factors import (
    NO_FAULT,
    AdditiveCharData,
    FaultInjection,
    LaurentRat,
    TameMultChar,
    all_tame_characters,
    epsilon_factor,
    gamma_factor,
    gamma_value,
    nontrivial_quadratic_characters,
    reflect,
    shift,
)
from .whittaker import (
    CheckResult,
    ScatteringReport,
    analyze,
    conductor_sum_check,
    eigen_ranks,
    gl2_action_consistent,
    gl2_action_predict,
    Action,
    inverse_plancherel,
    inverse_plancherel_at_zero,
    knapp_stein_reducible,
    lift_invariance,
    normalizer_compare,
    partial_gamma,
    psi_c_matrix,
    reducibility_test,
    unramified_labels_consistent,
)

logger = logging.getLogger(__name__)

CHECK_NAMES = (
    "cyclo_field_laws",
    "gauss_abs_square",
    "gauss_reflection",
    "gauss_twist",
    "hilbert_bilinear",
    "hilbert_antisymmetric",
    "hilbert_kernel",
    "hilbert_minus_one",
    "hilbert_nondegenerate",
    "epsilon_eq_1",
    "epsilon_eq_2",
    "epsilon_eq_3",
    "epsilon_eq_5",
    "gamma_functional_equation",
    "fourier_inversion",
    "trace_theorem",
    "involution",
    "not_scalar",
    "rank_trace",
    "closed_form_dims",
    "choice_independence",
    "plancherel_analytic",
    "plancherel_consistency",
    "knapp_stein",
    "conductor_sum",
    "normalizer_compare",
    "gl2_action",
    "unramified_labels",
    "lift_invariance",
)

Case = Tuple[bool, str]


def _verdict(name: str, cases: Iterable[Case]) -> CheckResult:
    count = 0
    for ok, witness in cases:
        count += 1
        if not ok:
            logger.warning("%s failed: %s", name, witness)
            return CheckResult(name, False, witness)
    if not count:
        logger.warning("%s exercised no cases", name)
        return CheckResult(name, False, "no cases exercised")
    return CheckResult(name, True, f"{count} cases")


def representative_cs(datum: TameLocalDatum) -> List[FStarElem]:
    """1, a non-square unit, pi and pi times a non-square: representatives of F*/F*^2."""
    g = datum.field.generator
    return [datum.element(0), datum.element(0, g), datum.element(1), datum.element(1, g)]


class InvariantSuite:
    """Runs the named checks over a datum; the plan fixes characters, psi's, c's and pairs."""

    def __init__(
        self,
        datum: TameLocalDatum,
        psi_conductors: Sequence[int] = (0, 1),
        cs: Optional[Sequence[FStarElem]] = None,
        pairs: Optional[Sequence[IsotropicPair]] = None,
        psi_twist=None,
        fault: FaultInjection = NO_FAULT,
        seed: int = 0,
        fourier_samples: int = 20,
    ):
        self.datum = datum
        self.thetas = nontrivial_quadratic_characters(datum)
        twist = datum.field.element(psi_twist) if psi_twist is not None else datum.field.one
        self.psis = [AdditiveCharData(datum, e, twist) for e in psi_conductors]
        self.cs = list(cs) if cs is not None else representative_cs(datum)
        self.pairs = list(pairs) if pairs is not None else isotropic_pairs(datum)[:1]
        self.fault = fault
        self.rng = random.Random(seed)
        self.fourier_samples = fourier_samples
        self._reports: Optional[List[ScatteringReport]] = None

    # --- helpers -----------------------------------------------------------

    def _epsilon_characters(self) -> List[TameMultChar]:
        datum = self.datum
        step = root_of_unity(datum.N, datum.N // (datum.q - 1))
        return [TameMultChar(datum, k, w) for k in range(datum.q - 1) for w in (CycloNum.one(datum.N), step)]

    def _epsilon_conductors(self) -> List[AdditiveCharData]:
        twist = self.psis[0].twist
        return [AdditiveCharData(self.datum, e, twist) for e in (-1, 0, 1, 2)]

    def _eq2_elements(self) -> List[FStarElem]:
        g = self.datum.field.generator
        return [
            self.datum.element(1),
            self.datum.element(-1),
            self.datum.element(0, g),
            self.datum.element(1, g),
            self.datum.element(-2, g**3),
        ]

    def _random_elements(self, count: int) -> List[FStarElem]:
        datum = self.datum
        return [
            FStarElem(self.rng.randint(-3, 3), datum.field.gen_power(self.rng.randrange(datum.q - 1)))
            for _ in range(count)
        ]

    def reports(self) -> List[ScatteringReport]:
        if self._reports is None:
            self._reports = [
                analyze(theta, psi, c, pair)
                for theta, psi, c, pair in itertools.product(self.thetas, self.psis, self.cs, self.pairs)
            ]
        return self._reports

    def _constant(self, value) -> LaurentRat:
        return LaurentRat.constant(CycloNum.from_rational(self.datum.N, value) if not isinstance(value, CycloNum) else value)

    # --- cyclotomic and residue field -------------------------------------

    def check_cyclo_field_laws(self) -> CheckResult:
        datum = self.datum
        N = datum.N
        degree = CycloNum.zero(N).degree

        def sample() -> CycloNum:
            return CycloNum.from_coeffs(N, [self.rng.randint(-3, 3) for _ in range(degree)])

        def cases():
            for _ in range(5):
                a, b, c = sample(), sample(), sample()
                yield (a * b) * c == a * (b * c), f"associativity fails for {a!r}, {b!r}, {c!r}"
                yield a * (b + c) == a * b + a * c, f"distributivity fails for {a!r}, {b!r}, {c!r}"
                yield (a * b).conj() == a.conj() * b.conj(), f"conj not multiplicative at {a!r}, {b!r}"
                yield a.conj().conj() == a, f"conj not an involution at {a!r}"
                if not a.is_zero():
                    yield a * a.inv() == 1, f"a * a^-1 != 1 for {a!r}"
            for k in range(N):
                yield root_of_unity(N, k) ** N == 1, f"zeta_{N}^{k} has order not dividing {N}"

        return _verdict("cyclo_field_laws", cases())

    def check_gauss_abs_square(self) -> CheckResult:
        fld = self.datum.field

        def cases():
            for k in range(1, fld.q - 1):
                G = fld.gauss_sum(k)
                yield G * G.conj() == fld.q, f"|G(k={k})|^2 = {G * G.conj()!r} != {fld.q}"

        return _verdict("gauss_abs_square", cases())

    def check_gauss_reflection(self) -> CheckResult:
        fld = self.datum.field
        minus_one = fld.element(-1)

        def cases():
            for k in range(1, fld.q - 1):
                expected = fld.residue_mult_value(k, minus_one) * fld.q
                product = fld.gauss_sum(k) * fld.gauss_sum(-k)
                yield product == expected, f"G({k}) G({-k}) = {product!r} != {expected!r}"

        return _verdict("gauss_reflection", cases())

    def check_gauss_twist(self) -> CheckResult:
        fld = self.datum.field

        def cases():
            for k in range(fld.q - 1):
                base = fld.gauss_sum(k)
                for w in fld.units():
                    expected = fld.residue_mult_value(-k, w) * base
                    yield fld.gauss_sum(k, w) == expected, f"twist law fails at k={k}, w={w!r}"

        return _verdict("gauss_twist", cases())

    # --- Hilbert symbol ----------------------------------------------------

    def _class_lifts(self) -> List[FStarElem]:
        return [lift(self.datum, cls) for cls in self.datum.classes()]

    def check_hilbert_bilinear(self) -> CheckResult:
        datum = self.datum
        lifts = self._class_lifts()
        extra = self._random_elements(len(lifts))

        def cases():
            for x, x2 in zip(lifts, extra):
                for y in lifts:
                    left = hilbert_symbol(datum, x * x2, y)
                    right = hilbert_symbol(datum, x, y) * hilbert_symbol(datum, x2, y)
                    yield left == right, f"(xx', y) != (x, y)(x', y) at x={x}, x'={x2}, y={y}"

        return _verdict("hilbert_bilinear", cases())

    def check_hilbert_antisymmetric(self) -> CheckResult:
        datum = self.datum
        lifts = self._class_lifts() + self._random_elements(10)

        def cases():
            for x, y in itertools.product(lifts, repeat=2):
                yield hilbert_symbol(datum, x, y) * hilbert_symbol(datum, y, x) == 1, f"(x,y)(y,x) != 1 at {x}, {y}"
            for x in lifts:
                yield hilbert_symbol(datum, x, -x) == 1, f"(x, -x) != 1 at {x}"

        return _verdict("hilbert_antisymmetric", cases())

    def check_hilbert_kernel(self) -> CheckResult:
        datum = self.datum
        lifts = self._class_lifts()

        def cases():
            for x in lifts:
                trivial = all(hilbert_symbol(datum, x, y) == 1 for y in lifts)
                yield trivial == class_of(datum, x).is_zero(), f"kernel mismatch at {x}"
            for x in self._random_elements(5):
                yield class_of(datum, x**datum.n).is_zero(), f"{x}^n is not in the kernel"

        return _verdict("hilbert_kernel", cases())

    def check_hilbert_minus_one(self) -> CheckResult:
        datum = self.datum
        minus_one = datum.element(0, -1)

        def cases():
            for x in self._class_lifts():
                yield hilbert_symbol(datum, x, minus_one) == 1, f"(x, -1) != 1 at {x}"

        return _verdict("hilbert_minus_one", cases())

    def check_hilbert_nondegenerate(self) -> CheckResult:
        radical = pairing_radical(self.datum)
        ok = radical == self.datum.classes()[:1]
        return _verdict("hilbert_nondegenerate", [(ok, f"radical {radical}")])

    # --- epsilon and gamma factors ----------------------------------------

    def check_epsilon_eq_1(self) -> CheckResult:
        """eps(1 - s, chi^-1, psi) = chi(-1) eps(s, chi, psi)^-1."""
        datum = self.datum

        def cases():
            for chi, psi in itertools.product(self._epsilon_characters(), self._epsilon_conductors()):
                left = reflect(epsilon_factor(chi.inv(), psi, self.fault), datum)
                right = epsilon_factor(chi, psi, self.fault).inv().scale(chi.at_minus_one())
                yield left == right, f"chi={chi.label()} psi={psi.label()}: {left!r} != {right!r}"

        return _verdict("epsilon_eq_1", cases())

    def check_epsilon_eq_2(self) -> CheckResult:
        """eps(s, chi, psi_c) = chi(c) |c|^(s - 1/2) eps(s, chi, psi)."""
        datum = self.datum

        def cases():
            for chi, psi in itertools.product(self._epsilon_characters(), self._epsilon_conductors()):
                for c in self._eq2_elements():
                    left = epsilon_factor(chi, psi.twisted(c), self.fault)
                    factor = LaurentRat.monomial(chi(c) * datum.sqrt_q**c.valuation, c.valuation)
                    right = factor * epsilon_factor(chi, psi, self.fault)
                    yield left == right, f"chi={chi.label()} psi={psi.label()} c={c.label()}"

        return _verdict("epsilon_eq_2", cases())

    def check_epsilon_eq_3(self) -> CheckResult:
        """eps(s + 1, chi, psi) = q^(e(psi) - e(chi)) eps(s, chi, psi)."""
        datum = self.datum

        def cases():
            for chi, psi in itertools.product(self._epsilon_characters(), self._epsilon_conductors()):
                eps = epsilon_factor(chi, psi, self.fault)
                scale = CycloNum.from_rational(datum.N, Fraction(datum.q) ** (psi.conductor - chi.conductor))
                yield shift(eps, datum, 1) == eps.scale(scale), f"chi={chi.label()} psi={psi.label()}"

        return _verdict("epsilon_eq_3", cases())

    def check_epsilon_eq_5(self) -> CheckResult:
        """eps(1 - s, chi^-1, psi) eps(1 + s, chi, psi) = chi(-1) q^(e(psi) - e(chi))."""
        datum = self.datum

        def cases():
            for chi, psi in itertools.product(self._epsilon_characters(), self._epsilon_conductors()):
                left = reflect(epsilon_factor(chi.inv(), psi, self.fault), datum) * shift(
                    epsilon_factor(chi, psi, self.fault), datum, 1
                )
                expected = chi.at_minus_one() * Fraction(datum.q) ** (psi.conductor - chi.conductor)
                yield left == self._constant(expected), f"chi={chi.label()} psi={psi.label()}: {left!r}"

        return _verdict("epsilon_eq_5", cases())

    def check_gamma_functional_equation(self) -> CheckResult:
        """gamma(s, chi, psi) gamma(1 - s, chi^-1, psi) = chi(-1)."""
        datum = self.datum

        def cases():
            for chi, psi in itertools.product(self._epsilon_characters(), self._epsilon_conductors()):
                product = gamma_factor(chi, psi, self.fault) * reflect(gamma_factor(chi.inv(), psi, self.fault), datum)
                yield product == self._constant(chi.at_minus_one()), f"chi={chi.label()} psi={psi.label()}"

        return _verdict("gamma_functional_equation", cases())

    # --- partial gamma factors and the scattering matrix -------------------

    def _fourier_characters(self) -> List[TameMultChar]:
        """Random tame characters whose twists by eta_j all avoid poles at s = 1."""
        datum = self.datum
        chosen: List[TameMultChar] = []
        attempts = 0
        while len(chosen) < self.fourier_samples and attempts < 50 * self.fourier_samples:
            attempts += 1
            chi = TameMultChar(
                datum,
                self.rng.randrange(datum.q - 1),
                root_of_unity(datum.N, (datum.N // (datum.q - 1)) * self.rng.randrange(datum.q - 1)),
            )
            psi = self.psis[0]
            try:
                for pair in self.pairs:
                    for j in pair.J_elements:
                        gamma_value(chi * eta_character(datum, lift(datum, j)), psi, 1)
            except PoleError:
                continue
            chosen.append(chi)
        return chosen

    def check_fourier_inversion(self) -> CheckResult:
        def cases():
            for chi in self._fourier_characters():
                for psi, pair, s in itertools.product(self.psis, self.pairs, (Fraction(1, 2), 1)):
                    try:
                        total = CycloNum.zero(self.datum.N)
                        for k in pair.K_elements:
                            total = total + partial_gamma(chi, psi, k, pair, s)
                        expected = gamma_value(chi, psi, s)
                    except PoleError:
                        continue
                    yield total == expected, f"chi={chi.label()} psi={psi.label()} s={s} {pair.label()}"

        return _verdict("fourier_inversion", cases())

    def _analyze_check(self, name: str) -> CheckResult:
        def cases():
            for report in self.reports():
                check = next(c for c in report.checks if c.name == name)
                yield check.passed, check.witness

        return _verdict(name, cases())

    def check_trace_theorem(self) -> CheckResult:
        return self._analyze_check("trace_theorem")

    def check_involution(self) -> CheckResult:
        return self._analyze_check("involution")

    def check_not_scalar(self) -> CheckResult:
        return self._analyze_check("not_scalar")

    def check_rank_trace(self) -> CheckResult:
        return self._analyze_check("rank_trace")

    def check_closed_form_dims(self) -> CheckResult:
        return self._analyze_check("closed_form_dims")

    def check_choice_independence(self) -> CheckResult:
        """Trace and ranks agree across every valid isotropic pair."""
        all_pairs = isotropic_pairs(self.datum)

        def cases():
            for theta, psi in itertools.product(self.thetas, self.psis):
                gamma_1_inv = gamma_value(theta, psi, 1).inv()
                for c in self.cs:
                    seen = None
                    for pair in all_pairs:
                        matrix = psi_c_matrix(theta, psi, c, pair)
                        invariants = (trace(matrix), eigen_ranks(scalar_mul(gamma_1_inv, matrix)))
                        if seen is None:
                            seen = invariants
                        witness = f"theta={theta.label()} psi={psi.label()} c={c.label()}: {pair.label()} gives {invariants} vs {seen}"
                        yield invariants == seen, witness

        return _verdict("choice_independence", cases())

    # --- Plancherel measure and reducibility -------------------------------

    def check_plancherel_analytic(self) -> CheckResult:
        one = CycloNum.one(self.datum.N)

        def cases():
            for theta, psi in itertools.product(self.thetas, self.psis):
                order = inverse_plancherel(theta, psi).pole_order(one)
                yield order == 0, f"theta={theta.label()} psi={psi.label()}: pole of order {order} at s = 0"

        return _verdict("plancherel_analytic", cases())

    def check_plancherel_consistency(self) -> CheckResult:
        """theta(-1) mu^-1(sigma_theta, 0) = gamma(1, theta, psi)^2."""

        def cases():
            for theta, psi in itertools.product(self.thetas, self.psis):
                left = theta.at_minus_one() * inverse_plancherel_at_zero(theta, psi)
                gamma_1 = gamma_value(theta, psi, 1)
                yield left == gamma_1 * gamma_1, f"theta={theta.label()} psi={psi.label()}: {left!r}"

        return _verdict("plancherel_consistency", cases())

    def check_knapp_stein(self) -> CheckResult:
        psi = self.psis[0]

        def cases():
            for chi in all_tame_characters(self.datum):
                yield reducibility_test(chi) == knapp_stein_reducible(chi, psi), f"chi={chi.label()}"

        return _verdict("knapp_stein", cases())

    def check_conductor_sum(self) -> CheckResult:
        def cases():
            for theta in self.thetas:
                if theta.is_ramified():
                    yield conductor_sum_check(theta, self.datum), f"theta={theta.label()}"

        return _verdict("conductor_sum", cases())

    def check_normalizer_compare(self) -> CheckResult:
        def cases():
            for theta, psi in itertools.product(self.thetas, self.psis):
                try:
                    sign = normalizer_compare(theta, psi)
                except IdentityViolation as exc:
                    yield False, exc.witness
                else:
                    logger.debug("normalizer sign %+d for theta=%s psi=%s", sign, theta.label(), psi.label())
                    yield True, ""

        return _verdict("normalizer_compare", cases())

    # --- GL2 action, unramified labels and lifts ---------------------------

    def check_gl2_action(self) -> CheckResult:
        datum = self.datum

        def cases():
            for theta in self.thetas:
                for c in self.cs:
                    predicted = gl2_action_predict(theta, c)
                    yield (predicted is Action.FIX) == (theta(c) == 1), f"theta={theta.label()} c={c.label()}"
                    yield gl2_action_consistent(theta, self.psis[0], c, self.pairs[0]), (
                        f"theta={theta.label()} c={c.label()}: dims do not follow {predicted.value}"
                    )
                for x in self._random_elements(3):
                    yield gl2_action_predict(theta, x * x) is Action.FIX, f"square {x * x} not fixed"

        return _verdict("gl2_action", cases())

    def check_unramified_labels(self) -> CheckResult:
        theta_u = self.thetas[0]

        def cases():
            for psi in self.psis:
                for c in representative_cs(self.datum):
                    yield unramified_labels_consistent(theta_u, psi, c), f"psi={psi.label()} c={c.label()}"

        return _verdict("unramified_labels", cases())

    def check_lift_invariance(self) -> CheckResult:
        def cases():
            for theta, pair in itertools.product(self.thetas, self.pairs):
                yield lift_invariance(theta, self.psis[0], pair), f"theta={theta.label()} {pair.label()}"

        return _verdict("lift_invariance", cases())

    # --- driver ------------------------------------------------------------

    def run(self, names: Sequence[str] = CHECK_NAMES) -> List[CheckResult]:
        results = []
        for name in names:
            check: Callable[[], CheckResult] = getattr(self, f"check_{name}")
            result = check()
            logger.debug("%s: %s (%s)", name, "pass" if result.passed else "FAIL", result.witness)
            results.append(result)
        failed = [r.name for r in results if not r.passed]
        logger.info("suite on %r: %d/%d passed", self.datum, len(results) - len(failed), len(results))
        return results
