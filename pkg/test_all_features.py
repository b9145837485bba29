# test_all_features.py

from whittaker_scattering import (
    AdditiveCharData,
    FqDescriptor,
    TameLocalDatum,
    analyze,
    gram_table,
    hilbert_symbol,
    isotropic_pairs,
    nontrivial_quadratic_characters,
    standard_pair,
)
from whittaker_scattering.tate_factors import gamma_factor, gamma_value
from whittaker_scattering.verification import InvariantSuite
from whittaker_scattering.whittaker import (
    conductor_sum_parts,
    inverse_plancherel_at_zero,
    normalizer_compare,
    unramified_labels,
)


def print_report(report, indent=""):
    """Helper function to print one scattering report."""
    print(f"{indent}theta {report.theta.label()} | psi {report.psi.label()} | c {report.c.label()}")
    print(f"{indent}  gamma(1) = {report.gamma_1!r}")
    print(f"{indent}  trace    = {report.trace!r}")
    print(f"{indent}  dims     = ({report.dim_plus}, {report.dim_minus})")
    for check in report.checks:
        print(f"{indent}  - {check.name}: {'ok' if check.passed else check.witness}")


def show_residue_field(datum):
    print("\n=== Residue Field ===")
    field = datum.field
    print(f"F_{field.q}* generated by {field.generator!r}")
    for k in range(field.q - 1):
        G = field.gauss_sum(k)
        print(f"G({k}) G({k})^* = {G * G.conj()!r}")


def show_hilbert_pairing(datum):
    print("\n=== Hilbert Pairing ===")
    small, full = gram_table(datum)
    print(f"exponents on (pi, g): {small}")
    pi = datum.uniformizer
    g = datum.element(0, datum.field.generator)
    print(f"(pi, g) = {hilbert_symbol(datum, pi, g)!r}")
    print(f"{len(isotropic_pairs(datum))} isotropic pairs, standard {standard_pair(datum).label()}")
    for row in full:
        print("  " + " ".join(map(str, row)))


def show_gamma_factors(datum):
    print("\n=== Gamma Factors ===")
    psi = AdditiveCharData.standard(datum, 0)
    for theta in nontrivial_quadratic_characters(datum):
        print(f"theta {theta.label()}")
        print(f"  gamma(s) = {gamma_factor(theta, psi)!r}")
        print(f"  gamma(1) = {gamma_value(theta, psi, 1)!r}")
        print(f"  theta(-1) mu^-1(0) = {theta.at_minus_one() * inverse_plancherel_at_zero(theta, psi)!r}")
        print(f"  normalizer sign {normalizer_compare(theta, psi):+d}")
        if theta.is_ramified():
            print(f"  conductor sum parts {conductor_sum_parts(theta, datum)}")


def show_scattering(datum):
    print("\n=== Scattering Matrices ===")
    pair = standard_pair(datum)
    g = datum.field.generator
    for e in (0, 1):
        psi = AdditiveCharData.standard(datum, e)
        print(f"\npsi of conductor {e}: unramified labels {unramified_labels(e)}")
        for theta in nontrivial_quadratic_characters(datum):
            for c in (datum.element(0), datum.element(0, g), datum.element(1)):
                print_report(analyze(theta, psi, c, pair), "  ")


def show_invariants(datum):
    print("\n=== Invariant Suite ===")
    for result in InvariantSuite(datum).run():
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {result.name}: {result.witness}")


def main():
    datum = TameLocalDatum(FqDescriptor(7), 3)
    try:
        show_residue_field(datum)
        show_hilbert_pairing(datum)
        show_gamma_factors(datum)
        show_scattering(datum)
        show_invariants(datum)
    except Exception as e:
        print(f"Error: {e}")
        raise


if __name__ == "__main__":
    main()
