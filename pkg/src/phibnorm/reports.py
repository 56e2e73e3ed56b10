"""Check reports and counterexample records.

Margin conventions, used uniformly by every checker in the package:

* inequality checks (lhs >= rhs): margin = lhs - rhs,
* equality checks (lhs == rhs):   margin = -|lhs - rhs|,

aggregated by ``min`` over all samples, so the worst margin is commutative
under any partition of the sample budget.  A report fails exactly when
``worst_margin < -tolerance``.

Some sub-checks carry a stricter criterion than the report-level tolerance
(strict monotonicity, exact evenness).  Those escalate a violating margin
below ``-2 * tolerance`` so the single report-level rule stays truthful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

Number = float
Witness = Union[float, tuple[float, ...]]

PASS = "pass"
FAIL = "fail"

#: Axiom and probe identifiers accepted by report producers.
AXIOM_IDS = (
    "bN1",
    "bN2",
    "bN3",
    "bN4",
    "bN5-monotone",
    "bN5-limit",
    "tnorm-axioms",
    "phi-axioms",
    "power-inequality",
)

PROBE_IDS = (
    "tnorm-continuity",
    "lemma1-certificate",
    "completeness-probe",
    "compactness-probe",
    "openness-probe",
    "bounded-probe",
)


@dataclass(frozen=True)
class CounterExample:
    """Shrunk witness of a failed check.

    ``variables`` holds the bound variables of the violated statement
    (vectors as tuples, scalars as floats); ``lhs`` and ``rhs`` are both
    sides of the inequality or equality re-evaluated at the witness, so the
    record is self-certifying.  ``part`` names the sub-check for compound
    reports (e.g. "commutativity" inside tnorm-axioms).
    """

    variables: Mapping[str, Witness]
    lhs: float
    rhs: float
    part: str = ""

    def as_dict(self) -> dict:
        return {
            "variables": {k: list(v) if isinstance(v, tuple) else v for k, v in self.variables.items()},
            "lhs": self.lhs,
            "rhs": self.rhs,
            "part": self.part,
        }


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one quantified property check."""

    axiom_id: str
    verdict: str  # PASS or FAIL
    samples_run: int
    worst_margin: float
    tolerance: float
    counterexample: Optional[CounterExample] = None
    notes: tuple[str, ...] = ()
    details: Mapping[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def as_dict(self) -> dict:
        return {
            "axiom_id": self.axiom_id,
            "verdict": self.verdict,
            "samples_run": self.samples_run,
            "worst_margin": self.worst_margin,
            "tolerance": self.tolerance,
            "counterexample": self.counterexample.as_dict() if self.counterexample else None,
            "notes": list(self.notes),
            "details": dict(self.details),
        }


def verdict_for(worst_margin: float, tolerance: float) -> str:
    return FAIL if worst_margin < -tolerance else PASS


def escalate(margin: float, violated: bool, tolerance: float) -> float:
    """Force a sub-check violation below the report-level fail threshold.

    Used when a sub-check is stricter than ``tolerance``: a margin that the
    sub-check rejects must read as a failure at the report level as well.
    """
    if violated:
        return min(margin, -2.0 * tolerance)
    return margin


def make_report(
    axiom_id: str,
    samples_run: int,
    worst_margin: float,
    tolerance: float,
    counterexample: Optional[CounterExample] = None,
    notes: tuple[str, ...] = (),
    details: Optional[Mapping[str, object]] = None,
) -> CheckReport:
    return CheckReport(
        axiom_id=axiom_id,
        verdict=verdict_for(worst_margin, tolerance),
        samples_run=samples_run,
        worst_margin=float(worst_margin),
        tolerance=tolerance,
        counterexample=counterexample,
        notes=notes,
        details=dict(details or {}),
    )
