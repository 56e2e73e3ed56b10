"""Finite-dimensional probes: separation constants, completeness, compactness."""

import numpy as np
import pytest

from phibnorm import (
    CertificateError,
    DomainError,
    build_basis,
    box_set,
    estimate_lemma1_constants,
    finite_set,
    make_example_norm,
    probe_compactness,
    probe_completeness,
    rational_power_norm,
    standard_basis,
    unbounded_ray,
    verify_lemma1_certificate,
)
from phibnorm.algebra import custom_tnorm
from phibnorm.findim import Lemma1Estimate, bolzano_subsequence, l1_sphere_grid
from phibnorm.fuzzynorm import FuzzyNorm, CrispNorm, membership
from phibnorm.algebra import abs_power, standard_intersection


def min_l2_on_l1_sphere_2d() -> float:
    """Independent oracle: minimise ||(b, 1-b)|| over b in [0, 1] by brute
    force, then refine by golden-section; signs do not change the norm."""
    bs = np.linspace(0.0, 1.0, 100_001)
    norms = np.sqrt(bs ** 2 + (1.0 - bs) ** 2)
    i = int(np.argmin(norms))
    lo, hi = bs[max(0, i - 1)], bs[min(len(bs) - 1, i + 1)]
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    for _ in range(200):
        c = b - phi * (b - a)
        d = a + phi * (b - a)
        fc = np.sqrt(c ** 2 + (1 - c) ** 2)
        fd = np.sqrt(d ** 2 + (1 - d) ** 2)
        if fc < fd:
            b = d
        else:
            a = c
    best = 0.5 * (a + b)
    return float(np.sqrt(best ** 2 + (1 - best) ** 2))


class TestBasis:
    def test_standard_basis_certified(self):
        basis = standard_basis(3)
        assert basis.certified_independent
        assert basis.gram_det == pytest.approx(1.0)

    def test_near_dependent_pair_not_certified(self):
        basis = build_basis([[1.0, 0.0], [1.0, 1e-12]])
        assert not basis.certified_independent

    def test_too_many_vectors_rejected(self):
        with pytest.raises(DomainError):
            build_basis([[1.0], [2.0]])


class TestSphereGrid:
    def test_one_dimensional_sphere_is_plus_minus_one(self):
        grid = l1_sphere_grid(1, 8)
        assert sorted(map(tuple, grid)) == [(-1.0,), (1.0,)]

    def test_every_point_has_unit_l1_norm(self):
        for n, m in ((2, 16), (3, 8)):
            grid = l1_sphere_grid(n, m)
            assert np.allclose(np.abs(grid).sum(axis=1), 1.0)

    def test_no_duplicate_points(self):
        grid = l1_sphere_grid(2, 8)
        assert len({tuple(row) for row in grid}) == len(grid)

    def test_resolution_floor(self):
        with pytest.raises(DomainError):
            l1_sphere_grid(2, 4)


class TestEstimator:
    def test_matches_the_constrained_minimisation_oracle(self):
        norm = make_example_norm("rational", p=1)  # K = 2, l2 base
        est = estimate_lemma1_constants(norm, standard_basis(2), grid_resolution=64, c_grid=[0.1])
        min_norm = min_l2_on_l1_sphere_2d()
        assert min_norm == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-9)
        expected_max = 0.2 / (0.2 + min_norm)
        assert est.c == 0.1
        assert est.max_membership == pytest.approx(expected_max, abs=1e-12)
        assert est.delta == pytest.approx(1.0 - expected_max, abs=1e-12)
        assert tuple(abs(b) for b in est.worst_beta) == pytest.approx((0.5, 0.5))

    def test_one_vector_basis(self):
        norm = make_example_norm("rational", p=1)
        est = estimate_lemma1_constants(norm, build_basis([[1.0]]), c_grid=[0.1])
        assert abs(est.worst_beta[0]) == 1.0
        assert est.max_membership == pytest.approx(membership(norm, [1.0], 0.2), abs=1e-12)

    def test_uncertified_basis_rejected(self):
        norm = make_example_norm("rational", p=1)
        with pytest.raises(DomainError):
            estimate_lemma1_constants(norm, build_basis([[1.0, 0.0], [1.0, 1e-12]]))

    def test_no_qualifying_c_raises(self):
        norm = make_example_norm("rational", p=1)
        with pytest.raises(CertificateError):
            estimate_lemma1_constants(norm, standard_basis(2), c_grid=[1e6])

    def test_smaller_c_gives_larger_delta(self):
        norm = make_example_norm("rational", p=1)
        deltas = [
            estimate_lemma1_constants(norm, standard_basis(2), c_grid=[c]).delta
            for c in (0.5, 0.1, 0.02)
        ]
        assert deltas == sorted(deltas)


class TestCertificate:
    def test_certificate_re_verifies_at_4x(self):
        for kind, p in (("rational", 1.0), ("exponential", 0.5)):
            norm = make_example_norm(kind, p)
            basis = standard_basis(2)
            est = estimate_lemma1_constants(norm, basis, grid_resolution=64, c_grid=[0.1])
            report = verify_lemma1_certificate(norm, basis, est, refinement=4, alpha_sets=10_000, seed=0)
            assert report.passed
            assert report.worst_margin >= -1e-9

    def test_tampered_delta_fails_with_witness(self):
        norm = make_example_norm("rational", p=1)
        basis = standard_basis(2)
        est = estimate_lemma1_constants(norm, basis, grid_resolution=64, c_grid=[0.1])
        tampered = Lemma1Estimate(
            c=est.c, delta=min(0.999, 2 * est.delta),
            worst_beta=est.worst_beta, grid_resolution=est.grid_resolution,
        )
        report = verify_lemma1_certificate(norm, basis, tampered, refinement=2, alpha_sets=1000, seed=0)
        assert not report.passed
        assert report.counterexample is not None

    def test_scalar_and_normalised_forms_agree(self):
        # the rescale identity links the unnormalised and normalised forms
        norm = make_example_norm("rational", p=0.5)
        basis = standard_basis(3)
        mat = basis.matrix()
        rng = np.random.default_rng(11)
        for _ in range(200):
            alpha = rng.standard_normal(3)
            s = np.abs(alpha).sum()
            point = (alpha[:, None] * mat).sum(axis=0)
            c = 0.3
            lhs = membership(norm, point, norm.K * c / (1.0 / s) ** 0.5)
            rhs = membership(norm, point / s, norm.K * c)
            assert lhs == pytest.approx(rhs, abs=1e-9)


class TestCompleteness:
    def test_both_builtin_kinds_pass(self):
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=1)
            report = probe_completeness(norm, standard_basis(2), trials=20, seed=0, tol=1e-6)
            assert report.passed
            assert report.details["max_coordinate_error"] <= 1e-6

    def test_injected_divergent_trial_fails_at_cauchy_stage(self):
        norm = make_example_norm("rational", p=1)
        report = probe_completeness(norm, standard_basis(2), trials=5, seed=0, inject_divergent=True)
        assert not report.passed
        assert report.counterexample.part == "cauchy-detection"

    def test_discontinuous_tnorm_rejected_by_the_gate(self):
        def drastic(a, b):
            if a == 1.0:
                return b
            if b == 1.0:
                return a
            return 0.0

        norm = FuzzyNorm(kind="rational", p=1.0, K=2.0, phi=abs_power(1.0),
                         tnorm=custom_tnorm(drastic), base=CrispNorm("l2"))
        with pytest.raises(DomainError):
            probe_completeness(norm, standard_basis(2), trials=2, seed=0)

    def test_classification_does_not_change_numerics(self):
        # the classical reduction (K = 1) runs the same code path as K = 2
        reduced = FuzzyNorm(kind="rational", p=1.0, K=1.0, phi=abs_power(1.0),
                            tnorm=standard_intersection(), base=CrispNorm("l2"))
        general = make_example_norm("rational", p=1)
        a = probe_completeness(reduced, standard_basis(1), trials=10, seed=3)
        b = probe_completeness(general, standard_basis(1), trials=10, seed=3)
        assert a == b


class TestCompactness:
    def test_box_sequences_yield_convergent_subsequences(self):
        norm = make_example_norm("rational", p=1)
        report = probe_compactness(norm, box_set([0, 0, 0], [1, 1, 1]), sequence_samples=20, seed=0, horizon=500)
        assert report.passed
        assert all(n >= 3 for n in report.details["subsequence_lengths"])

    def test_finite_set_pigeonhole(self):
        norm = make_example_norm("rational", p=1)
        spec = finite_set([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [2.0, 2.0], [3.0, -1.0]])
        report = probe_compactness(norm, spec, sequence_samples=5, seed=0, horizon=100)
        assert report.passed

    def test_ray_witnesses_diverge(self):
        norm = make_example_norm("rational", p=1)
        report = probe_compactness(norm, unbounded_ray([1.0, 0.0, 0.0]), seed=0, horizon=2000)
        assert report.passed
        witnesses = report.details["witness_ts"]
        assert witnesses == sorted(witnesses)

    def test_extracted_indices_strictly_increase(self):
        rng = np.random.default_rng(2)
        pts = rng.uniform(0.0, 1.0, (300, 3))
        picked, limit, diameters = bolzano_subsequence(pts, np.zeros(3), np.ones(3))
        assert all(b > a for a, b in zip(picked, picked[1:]))
        assert all(b <= a + 1e-12 for a, b in zip(diameters, diameters[1:]))
        assert np.all(limit >= 0.0) and np.all(limit <= 1.0)

    def test_box_validation(self):
        with pytest.raises(DomainError):
            box_set([1.0], [0.0])
