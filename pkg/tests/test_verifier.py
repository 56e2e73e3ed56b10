"""Verifier engine: margins, witnesses, shrinking, determinism."""

import pytest

from phibnorm import (
    CounterExample,
    DomainError,
    SamplerConfig,
    check_axiom,
    make_example_norm,
    rational_power_norm,
    run_full_suite,
    shrink,
)
from phibnorm.verifier import SUITE_AXIOMS, aggregate_passed, evaluate_axiom_at


def broken_norm():
    return rational_power_norm(2.0, K=1.0)


class TestCheckAxiom:
    def test_rational_triangle_passes(self):
        norm = make_example_norm("rational", p=1)
        report = check_axiom(norm, "bN4", SamplerConfig(seed=0, budget=10_000, vector_dim=2))
        assert report.passed

    def test_exponential_triangle_passes(self):
        norm = make_example_norm("exponential", p=0.5)
        report = check_axiom(norm, "bN4", SamplerConfig(seed=0, budget=10_000, vector_dim=2))
        assert report.passed

    def test_broken_norm_fails_triangle_with_shrunk_witness(self):
        report = check_axiom(broken_norm(), "bN4", SamplerConfig(seed=0, budget=10_000, vector_dim=1))
        assert not report.passed
        ce = report.counterexample
        assert ce is not None
        # witness self-certifies with a macroscopic gap
        lhs, rhs, margin = evaluate_axiom_at(broken_norm(), "bN4", ce.variables, part=ce.part)
        assert margin < -1e-9
        assert rhs - lhs >= 0.1

    def test_unknown_axiom_rejected(self):
        norm = make_example_norm("rational", p=1)
        with pytest.raises(DomainError):
            check_axiom(norm, "bN7", SamplerConfig(budget=10))

    def test_power_inequality_axiom(self):
        norm = make_example_norm("rational", p=0.5)
        assert check_axiom(norm, "power-inequality", SamplerConfig(budget=5000)).passed
        report = check_axiom(broken_norm(), "power-inequality", SamplerConfig(budget=5000))
        assert not report.passed

    def test_every_fail_report_carries_a_self_certifying_witness(self):
        sampler = SamplerConfig(seed=1, budget=5000, vector_dim=1)
        for axiom in ("bN4", "power-inequality"):
            report = check_axiom(broken_norm(), axiom, sampler)
            assert not report.passed
            ce = report.counterexample
            _, _, margin = evaluate_axiom_at(broken_norm(), axiom, ce.variables, part=ce.part)
            assert margin < -report.tolerance


class TestFullSuite:
    def test_example_norms_pass_everything(self):
        for kind, p in (("rational", 0.5), ("exponential", 1.0)):
            norm = make_example_norm(kind, p)
            reports = run_full_suite(norm, SamplerConfig(seed=0, budget=5000, vector_dim=2))
            assert aggregate_passed(reports), [(r.axiom_id, r.worst_margin) for r in reports if not r.passed]

    def test_suite_covers_all_axioms_plus_continuity(self):
        norm = make_example_norm("rational", p=1)
        reports = run_full_suite(norm, SamplerConfig(budget=500))
        ids = [r.axiom_id for r in reports]
        assert ids[: len(SUITE_AXIOMS)] == list(SUITE_AXIOMS)
        assert ids[-1] == "tnorm-continuity"

    def test_small_constant_rejected_before_sampling(self):
        with pytest.raises(DomainError):
            rational_power_norm(2.0, K=0.5)

    def test_broken_norm_fails_aggregate(self):
        reports = run_full_suite(broken_norm(), SamplerConfig(seed=0, budget=5000))
        assert not aggregate_passed(reports)
        failed = {r.axiom_id for r in reports if not r.passed}
        assert "bN4" in failed

    def test_continuity_modes(self):
        norm = make_example_norm("rational", p=1)
        sampler = SamplerConfig(budget=200)
        warn = run_full_suite(norm, sampler, continuity="warn")
        assert any(r.axiom_id == "tnorm-continuity" and r.notes for r in warn)
        skip = run_full_suite(norm, sampler, continuity="skip")
        assert all(r.axiom_id != "tnorm-continuity" for r in skip)
        strict = run_full_suite(norm, sampler, continuity="strict")
        gated = [r for r in strict if r.axiom_id == "tnorm-continuity"]
        assert gated and not gated[0].notes


class TestDeterminism:
    def test_identical_config_identical_reports(self):
        norm = make_example_norm("rational", p=0.5)
        sampler = SamplerConfig(seed=7, budget=3000, vector_dim=2)
        first = run_full_suite(norm, sampler)
        second = run_full_suite(norm, sampler)
        assert first == second

    def test_worker_count_does_not_change_reports(self):
        norm = make_example_norm("exponential", p=1)
        sampler = SamplerConfig(seed=7, budget=3000, vector_dim=2)
        assert run_full_suite(norm, sampler, workers=1) == run_full_suite(norm, sampler, workers=4)

    def test_budget_growth_is_monotone(self):
        # samples are a prefix: a failure can only get worse with more budget
        small = check_axiom(broken_norm(), "bN4", SamplerConfig(seed=5, budget=2000))
        large = check_axiom(broken_norm(), "bN4", SamplerConfig(seed=5, budget=8000))
        assert not small.passed and not large.passed
        assert large.worst_margin <= small.worst_margin

    def test_passing_margins_monotone_too(self):
        norm = make_example_norm("rational", p=1)
        small = check_axiom(norm, "bN3", SamplerConfig(seed=5, budget=2000))
        large = check_axiom(norm, "bN3", SamplerConfig(seed=5, budget=8000))
        assert large.worst_margin <= small.worst_margin


class TestShrink:
    def test_shrinking_preserves_violation_and_reduces_magnitudes(self):
        witness = CounterExample(
            {"x": (3.7,), "y": (2.1,), "s": 5.3, "t": 0.9}, 0.0, 0.0, part="b-triangle"
        )
        _, _, margin = evaluate_axiom_at(broken_norm(), "bN4", witness.variables)
        assert margin < -1e-9  # the input violates
        shrunk = shrink(broken_norm(), "bN4", witness)
        _, _, after = evaluate_axiom_at(broken_norm(), "bN4", shrunk.variables)
        assert after < -1e-9
        for name in ("x", "y"):
            assert abs(shrunk.variables[name][0]) <= abs(witness.variables[name][0])
        for name in ("s", "t"):
            assert abs(shrunk.variables[name]) <= abs(witness.variables[name])

    def test_minimal_witness_is_a_fixed_point(self):
        witness = CounterExample({"x": (1.0,), "y": (1.0,), "s": 1.0, "t": 1.0}, 1 / 3, 0.5, part="b-triangle")
        shrunk = shrink(broken_norm(), "bN4", witness)
        assert dict(shrunk.variables) == dict(witness.variables)

    def test_non_violating_input_rejected(self):
        witness = CounterExample({"x": (0.0,), "y": (0.0,), "s": 1.0, "t": 1.0}, 1.0, 1.0, part="b-triangle")
        with pytest.raises(DomainError):
            shrink(broken_norm(), "bN4", witness)

    def test_shrink_keeps_ninety_percent_of_the_violation(self):
        witness = CounterExample({"x": (3.7,), "y": (2.1,), "s": 5.3, "t": 0.9}, 0.0, 0.0, part="b-triangle")
        _, _, margin0 = evaluate_axiom_at(broken_norm(), "bN4", witness.variables)
        shrunk = shrink(broken_norm(), "bN4", witness)
        _, _, margin1 = evaluate_axiom_at(broken_norm(), "bN4", shrunk.variables)
        assert -margin1 >= 0.9 * -margin0

    def test_shrink_is_deterministic(self):
        witness = CounterExample({"x": (3.7,), "y": (2.1,), "s": 5.3, "t": 0.9}, 0.0, 0.0, part="b-triangle")
        assert shrink(broken_norm(), "bN4", witness) == shrink(broken_norm(), "bN4", witness)
