import pytest

from whittaker_scattering.local_field import isotropic_pairs
from whittaker_scattering.tate_factors import FaultInjection
from whittaker_scattering.verification import CHECK_NAMES, InvariantSuite, _verdict, representative_cs


def test_check_names_are_unique():
    """Test every named check exists exactly once on the suite."""
    assert len(CHECK_NAMES) == len(set(CHECK_NAMES)) == 29
    for name in CHECK_NAMES:
        assert callable(getattr(InvariantSuite, f"check_{name}"))


def test_verdict():
    """Test the verdict stops at the first failure and rejects an empty run."""
    assert _verdict("x", [(True, "a"), (True, "b")]).witness == "2 cases"
    empty = _verdict("x", [])
    assert not empty.passed
    assert empty.witness == "no cases exercised"
    result = _verdict("x", [(True, "a"), (False, "b"), (False, "c")])
    assert not result.passed
    assert result.witness == "b"


def test_representative_cs(datum7):
    """Test the representatives cover F*/F*^2."""
    cs = representative_cs(datum7)
    assert [(c.valuation, c.unit) for c in cs] == [
        (0, datum7.field.one),
        (0, datum7.field.generator),
        (1, datum7.field.one),
        (1, datum7.field.generator),
    ]


def test_full_suite_q7(datum7):
    """Test every check passes on q = 7, n = 3."""
    results = InvariantSuite(datum7).run()
    assert [r.name for r in results] == list(CHECK_NAMES)
    failed = [(r.name, r.witness) for r in results if not r.passed]
    assert failed == []


@pytest.mark.parametrize(
    "names",
    [
        ("hilbert_bilinear", "hilbert_nondegenerate", "conductor_sum", "closed_form_dims", "normalizer_compare"),
    ],
)
def test_selected_checks_q11(datum11, names):
    """Test a selection of checks on q = 11, n = 5."""
    results = InvariantSuite(datum11, psi_conductors=(0,), cs=representative_cs(datum11)[:2]).run(names)
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_selected_checks_q13(datum13):
    """Test the scattering checks over three isotropic pairs at q = 13."""
    suite = InvariantSuite(datum13, psi_conductors=(1,), pairs=isotropic_pairs(datum13)[:3])
    results = suite.run(("trace_theorem", "involution", "rank_trace", "closed_form_dims", "lift_invariance", "plancherel_consistency"))
    assert all(r.passed for r in results)


def test_fault_is_detected(datum7):
    """Test a doubled Gauss sum fails the epsilon reflection law."""
    suite = InvariantSuite(datum7, fault=FaultInjection(gauss_scale=2))
    (result,) = suite.run(("epsilon_eq_1",))
    assert not result.passed
    assert "chi=" in result.witness
    (clean,) = suite.run(("trace_theorem",))
    assert clean.passed


def test_choice_independence_covers_the_plan(datum7):
    """Test every theta, psi and c is compared across all twelve pairs."""
    (result,) = InvariantSuite(datum7).run(("choice_independence",))
    assert result.passed
    assert result.witness == f"{3 * 2 * 4 * 12} cases"


def test_choice_independence_q13(datum13):
    """Test pair independence for every theta and c at q = 13 with e(psi) = 1."""
    (result,) = InvariantSuite(datum13, psi_conductors=(1,)).run(("choice_independence",))
    assert result.passed, result.witness
    assert result.witness == f"{3 * 4 * 12} cases"
