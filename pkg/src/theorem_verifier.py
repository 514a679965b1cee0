"""
Theorem Verifier - Runs every identity of the interval DGLA at a fixed truncation

Checks D^2 = 0 on generators, flatness of a and b, the unit-time endpoint of
the flow generated by e, the flow ODE and curvature along the flow, flatness
preservation for random degree 0 generators, uniqueness of the drift, the
curvature ODE, the Bernoulli table and the basis dimension counts.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from basis_oracle import bracketing_rank
from bernoulli import BernoulliTable, bernoulli_upto, recurrence_residuals, series_product
from derivations import check_square_zero, curvature, ls_differential
from expression_parser import dumps, element_to_records
from flow import (
    FlowProblem,
    curvature_along_flow,
    curvature_ode_residual,
    flow_closed_form,
    flow_residual,
    sample_times,
    solve_drift,
)
from lie_algebra import (
    DEFAULT_ALPHABET,
    Alphabet,
    LieElement,
    TruncationContext,
    basis_enumerate,
)
from random_elements import RandomLieSampler

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity check; residual is kept only when nonzero"""

    name: str
    passed: bool
    residual: Optional[LieElement] = None
    detail: str = ""

    @classmethod
    def from_residual(cls, name: str, residual: LieElement, detail: str = "") -> "CheckResult":
        if residual.is_zero():
            return cls(name, True, None, detail)
        return cls(name, False, residual, detail)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "residual": element_to_records(self.residual) if self.residual is not None else None,
        }


@dataclass(frozen=True)
class VerificationReport:
    max_length: int
    checks: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_length": self.max_length,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "check": c.name,
                    "status": "pass" if c.passed else "FAIL",
                    "detail": c.detail,
                    "residual": c.residual.to_expression() if c.residual is not None else "",
                }
                for c in self.checks
            ],
            columns=["check", "status", "detail", "residual"],
        )

    def render(self, output_format: str = "human") -> str:
        if output_format == "json":
            return dumps(self.to_dict())
        table = self.to_frame().to_string(index=False, max_colwidth=None)
        passed = sum(c.passed for c in self.checks)
        return f"{table}\n\nN={self.max_length}: {passed}/{len(self.checks)} checks passed"


@dataclass(frozen=True)
class VerificationSettings:
    max_length: int = 6
    alphabet: Alphabet = DEFAULT_ALPHABET
    perturbations: Tuple[Tuple[int, Fraction], ...] = ()
    seed: int = 20240601
    flatness_samples: int = 50
    basis_check_length: int = 4
    bernoulli_check_length: int = 20


class TheoremVerifier:
    """
    Builds the interval differential at the configured truncation (optionally
    with perturbed Bernoulli numbers) and checks every identity against it.
    """

    def __init__(self, settings: VerificationSettings):
        """Initialize the verifier and the differential under test"""
        self.settings = settings
        self.context = TruncationContext(settings.max_length, settings.alphabet)
        size = max(settings.max_length, settings.bernoulli_check_length)
        self.exact_table = bernoulli_upto(size)
        self.table: BernoulliTable = self.exact_table.perturbed(dict(settings.perturbations))
        self.differential = ls_differential(self.context, self.table)
        self.a = LieElement.generator("a", self.context)
        self.b = LieElement.generator("b", self.context)
        self.e = LieElement.generator("e", self.context)

    def run(self) -> VerificationReport:
        """
        Run the full suite.

        Returns:
            VerificationReport; report.passed is the overall verdict
        """
        checks: List[CheckResult] = []
        for step in (
            self._square_zero,
            self._generators_flat,
            self._flow_endpoint,
            self._flow_samples,
            self._flatness_preservation,
            self._uniqueness,
            self._curvature_ode,
            self._bernoulli,
            self._basis_counts,
        ):
            results = step()
            for result in results:
                if result.passed:
                    logger.info(f"check {result.name}: pass")
                else:
                    logger.warning(f"check {result.name}: FAIL {result.detail}")
            checks.extend(results)
        report = VerificationReport(self.settings.max_length, tuple(checks))
        passed = len(checks) - len(report.failures())
        logger.info(f"verification at N={self.settings.max_length} finished: {passed}/{len(checks)} passed")
        return report

    def _problem(self, v: LieElement, u0: LieElement) -> FlowProblem:
        return FlowProblem(v, u0, self.differential, self.context)

    def _square_zero(self) -> List[CheckResult]:
        return [
            CheckResult.from_residual(f"square_zero[{check.generator}]", check.residual)
            for check in check_square_zero(self.differential)
        ]

    def _generators_flat(self) -> List[CheckResult]:
        return [
            CheckResult.from_residual(f"flat[{name}]", curvature(self.differential, x))
            for name, x in (("a", self.a), ("b", self.b))
        ]

    def _flow_endpoint(self) -> List[CheckResult]:
        endpoint = flow_closed_form(self._problem(self.e, self.a), 1)
        return [CheckResult.from_residual("flow_endpoint", endpoint - self.b, "u(1) - b for v=e, u0=a")]

    def _flow_samples(self) -> List[CheckResult]:
        problem = self._problem(self.e, self.a)
        results = []
        for t in sample_times():
            results.append(CheckResult.from_residual(f"flow_residual[t={t}]", flow_residual(problem, t)))
        for t in sample_times():
            results.append(
                CheckResult.from_residual(f"curvature_along_flow[t={t}]", curvature_along_flow(problem, t))
            )
        return results

    def _flatness_preservation(self) -> List[CheckResult]:
        sampler = RandomLieSampler(self.context, seed=self.settings.seed)
        generators = [sampler.flow_generator(3) for _ in range(self.settings.flatness_samples)]
        results = []
        for name, u0 in (("a", self.a), ("b", self.b)):
            failure = None
            for v in generators:
                residual = curvature_along_flow(self._problem(v, u0), 1)
                if not residual.is_zero():
                    failure = (v, residual)
                    break
            detail = f"{len(generators)} random degree 0 generators, t=1"
            if failure is None:
                results.append(CheckResult(f"flatness_preserved[u0={name}]", True, None, detail))
            else:
                v, residual = failure
                results.append(
                    CheckResult(f"flatness_preserved[u0={name}]", False, residual, f"v = {v.to_expression()}")
                )
        return results

    def _uniqueness(self) -> List[CheckResult]:
        drift = solve_drift(self.e, self.a, self.b, self.exact_table)
        value = self.differential.generator_values["e"]
        return [CheckResult.from_residual("unique_drift", value - drift, "d(e) minus the drift carrying a to b")]

    def _curvature_ode(self) -> List[CheckResult]:
        residual = curvature_ode_residual(self._problem(self.e, self.a))
        failing = next((c for c in residual.coefficients if not c.is_zero()), None)
        if failing is None:
            return [CheckResult("curvature_ode", True, None, "f' = d^2(e) - ad_e f")]
        return [CheckResult("curvature_ode", False, failing, "lowest nonzero coefficient in t")]

    def _bernoulli(self) -> List[CheckResult]:
        table = self.table
        size = self.settings.bernoulli_check_length
        problems = []
        if any(recurrence_residuals(table)):
            problems.append("recurrence")
        if table[1] != Fraction(-1, 2):
            problems.append("B_1 != -1/2")
        if any(table[i] for i in range(3, len(table), 2)):
            problems.append("odd entries")
        product = series_product(table, size)
        if product != [Fraction(1)] + [Fraction(0)] * (size - 1):
            problems.append("series product")
        detail = ", ".join(problems) if problems else f"B_0..B_{table.n}"
        return [CheckResult("bernoulli_table", not problems, None, detail)]

    def _basis_counts(self) -> List[CheckResult]:
        context = self.context
        limit = min(context.max_length, self.settings.basis_check_length)
        degrees = context.alphabet.degrees
        mismatches = []
        for length in range(1, limit + 1):
            for degree in range(length * min(degrees), length * max(degrees) + 1):
                count = len(basis_enumerate(context, length, degree))
                rank = bracketing_rank(context, length, degree)
                if count != rank:
                    mismatches.append(f"(length {length}, degree {degree}): {count} != {rank}")
        detail = "; ".join(mismatches) if mismatches else f"lengths 1..{limit}"
        return [CheckResult("basis_counts", not mismatches, None, detail)]
