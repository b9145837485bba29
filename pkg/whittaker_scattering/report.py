"""Report documents: exact values as coefficient strings, JSON round trip, text rendering."""

import json
from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .config import AnalysisConfig
from .cyclo import CycloNum
from .linalg import Matrix
from .local_field import TameLocalDatum, enumerate_maximal_isotropics, gram_table, isotropic_pairs, pairing_radical, standard_pair
from .whittaker import CheckResult, ScatteringReport

APPROX_DIGITS = 12


class ExactValue(BaseModel):
    """An element of Q(zeta_N): power-basis coordinates as 'p/q' strings, plus a float preview."""

    model_config = ConfigDict(frozen=True)

    modulus: int
    coeffs: List[str]
    approx: List[float] = Field(min_length=2, max_length=2)

    @classmethod
    def from_cyclo(cls, z: CycloNum) -> "ExactValue":
        approx = z.complex_embed()
        return cls(
            modulus=z.modulus,
            coeffs=[str(c) for c in z.coeffs],
            approx=[round(approx.real, APPROX_DIGITS) + 0.0, round(approx.imag, APPROX_DIGITS) + 0.0],
        )

    def to_cyclo(self) -> CycloNum:
        return CycloNum.from_coeffs(self.modulus, [Fraction(c) for c in self.coeffs])

    def text(self) -> str:
        z = self.to_cyclo()
        if z.is_rational():
            return str(z.rational_value())
        re_part, im_part = self.approx
        return f"{re_part:+.6f}{im_part:+.6f}i"


class MatrixData(BaseModel):
    rows: int
    cols: int
    entries: List[ExactValue]

    @classmethod
    def from_matrix(cls, A: Matrix) -> "MatrixData":
        return cls(rows=A.rows, cols=A.cols, entries=[ExactValue.from_cyclo(e) for e in A.entries])

    def to_matrix(self) -> Matrix:
        return Matrix(self.rows, self.cols, [e.to_cyclo() for e in self.entries])


class CheckData(BaseModel):
    name: str
    passed: bool
    witness: str = ""

    @classmethod
    def from_result(cls, result: CheckResult) -> "CheckData":
        return cls(name=result.name, passed=result.passed, witness=result.witness)


class ConfigurationReport(BaseModel):
    theta: str
    psi: str
    c: str
    pair: str
    matrix: MatrixData
    gamma_1: ExactValue
    trace: ExactValue
    theta_c: int
    dim_plus: int
    dim_minus: int
    closed_form: List[int]
    checks: List[CheckData]

    @classmethod
    def from_scattering(cls, report: ScatteringReport) -> "ConfigurationReport":
        n = report.matrix.rows
        return cls(
            theta=report.theta.label(),
            psi=report.psi.label(),
            c=report.c.label(),
            pair=report.pair.label(),
            matrix=MatrixData.from_matrix(report.matrix),
            gamma_1=ExactValue.from_cyclo(report.gamma_1),
            trace=ExactValue.from_cyclo(report.trace),
            theta_c=report.theta_c,
            dim_plus=report.dim_plus,
            dim_minus=report.dim_minus,
            closed_form=[(n + report.theta_c) // 2, (n - report.theta_c) // 2],
            checks=[CheckData.from_result(c) for c in report.checks],
        )


def _class_labels(elements) -> List[str]:
    return [repr(x) for x in sorted(elements)]


class PairingReport(BaseModel):
    n: int
    generator_exponents: List[List[int]]
    gram: List[List[int]]
    classes: List[str]
    isotropics: List[List[str]]
    pairs: List[str]
    standard_pair: str
    radical: List[str]

    @classmethod
    def from_datum(cls, datum: TameLocalDatum) -> "PairingReport":
        small, full = gram_table(datum)
        return cls(
            n=datum.n,
            generator_exponents=small,
            gram=full,
            classes=_class_labels(datum.classes()),
            isotropics=[_class_labels(s) for s in enumerate_maximal_isotropics(datum)],
            pairs=[pair.label() for pair in isotropic_pairs(datum)],
            standard_pair=standard_pair(datum).label(),
            radical=_class_labels(pairing_radical(datum)),
        )


class SuiteSummary(BaseModel):
    total: int
    passed: int
    failed: List[str]

    @classmethod
    def from_checks(cls, checks: List[CheckData]) -> "SuiteSummary":
        failed = sorted({c.name for c in checks if not c.passed})
        return cls(total=len(checks), passed=sum(c.passed for c in checks), failed=failed)


class ReportDocument(BaseModel):
    command: str
    config: AnalysisConfig
    configurations: List[ConfigurationReport] = Field(default_factory=list)
    checks: List[CheckData] = Field(default_factory=list)
    pairing: Optional[PairingReport] = None
    summary: SuiteSummary

    @property
    def all_passed(self) -> bool:
        return not self.summary.failed

    def to_machine(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_machine(cls, text: str) -> "ReportDocument":
        return cls.model_validate_json(text)

    def to_text(self) -> str:
        cfg = self.config
        lines = [
            f"whittaker-scattering {self.command}: p={cfg.p} f={cfg.f} n={cfg.n} q={cfg.p ** cfg.f}",
        ]
        for conf in self.configurations:
            lines.append("")
            lines.append(f"theta {conf.theta} | psi {conf.psi} | c {conf.c} | theta(c) = {conf.theta_c:+d}")
            lines.append(f"  pair      {conf.pair}")
            lines.append(f"  gamma(1)  {conf.gamma_1.text()}")
            lines.append(f"  trace     {conf.trace.text()}")
            lines.append(f"  dims      ({conf.dim_plus}, {conf.dim_minus})  closed form {tuple(conf.closed_form)}")
            for i in range(conf.matrix.rows):
                row = conf.matrix.entries[i * conf.matrix.cols:(i + 1) * conf.matrix.cols]
                lines.append("  | " + "  ".join(f"{e.approx[0]:+.4f}{e.approx[1]:+.4f}i" for e in row) + " |")
            for check in conf.checks:
                lines.append(f"  [{'PASS' if check.passed else 'FAIL'}] {check.name}" + ("" if check.passed else f": {check.witness}"))
        if self.pairing is not None:
            pairing = self.pairing
            lines.append("")
            lines.append(f"pairing exponents on (pi, g): {pairing.generator_exponents}")
            lines.append("gram table over " + " ".join(pairing.classes) + ":")
            lines.extend("  " + " ".join(str(e) for e in row) for row in pairing.gram)
            lines.append(f"maximal isotropic subgroups: {len(pairing.isotropics)}")
            lines.extend("  {" + ", ".join(s) + "}" for s in pairing.isotropics)
            lines.append(f"isotropic pairs: {len(pairing.pairs)} (standard: {pairing.standard_pair})")
            lines.extend(f"  {i}: {label}" for i, label in enumerate(pairing.pairs))
            lines.append(f"radical: {', '.join(pairing.radical)}")
        if self.checks:
            lines.append("")
            for check in self.checks:
                status = "PASS" if check.passed else "FAIL"
                lines.append(f"[{status}] {check.name}: {check.witness}")
        lines.append("")
        verdict = "all passed" if self.all_passed else "FAILED: " + ", ".join(self.summary.failed)
        lines.append(f"{self.summary.passed}/{self.summary.total} checks passed; {verdict}")
        return "\n".join(lines) + "\n"
