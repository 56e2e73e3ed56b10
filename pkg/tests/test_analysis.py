"""Sequence and set diagnostics."""

import numpy as np
import pytest

from phibnorm import (
    DomainError,
    ball_contains,
    check_cauchy,
    check_convergence,
    check_fuzzy_bounded,
    divergent_ray,
    explicit_list,
    geometric_approach,
    make_example_norm,
    membership,
    probe_openness,
)
from phibnorm.analysis import CAUCHY_ONLY, CONVERGES, NOT_CAUCHY


@pytest.fixture
def norm():
    return make_example_norm("rational", p=1)


class TestSequenceGen:
    def test_geometric_block_matches_formula(self):
        seq = geometric_approach([1.0, 1.0], [1.0, 0.0], 0.5, horizon=10)
        block = seq.block(3, 4)
        assert block[0] == pytest.approx([1.0 + 0.5 ** 3, 1.0])
        assert block[1] == pytest.approx([1.0 + 0.5 ** 4, 1.0])

    def test_ratio_must_be_contractive(self):
        with pytest.raises(DomainError):
            geometric_approach([0.0], [1.0], 1.0)

    def test_horizon_floor(self):
        with pytest.raises(DomainError):
            divergent_ray([1.0], horizon=1)

    def test_explicit_list_bounds(self):
        seq = explicit_list([[0.0], [1.0], [2.0]])
        assert seq.horizon == 3
        with pytest.raises(DomainError):
            seq.block(1, 4)


class TestConvergence:
    def test_geometric_approach_converges(self, norm):
        # N(x_n - x*, t) = t / (t + 2**-n) climbs to 1
        seq = geometric_approach([1.0, 1.0], [1.0, 0.0], 0.5, horizon=60)
        verdict = check_convergence(norm, seq, [1.0, 1.0], t_grid=[0.01, 1.0, 100.0], tol=1e-6)
        assert verdict.verdict == CONVERGES
        assert verdict.limit == (1.0, 1.0)

    def test_constant_sequence_converges(self, norm):
        seq = explicit_list([[2.0, 3.0]] * 20)
        verdict = check_convergence(norm, seq, [2.0, 3.0], t_grid=[1.0], tol=1e-6)
        assert verdict.verdict == CONVERGES
        assert all(v == 1.0 for _, v in verdict.evidence)

    def test_divergent_ray_is_not_cauchy(self, norm):
        seq = divergent_ray([1.0, 0.0], horizon=60)
        verdict = check_convergence(norm, seq, [0.0, 0.0], t_grid=[0.01, 1.0, 100.0], tol=1e-6)
        assert verdict.verdict == NOT_CAUCHY

    def test_empty_grid_rejected(self, norm):
        seq = divergent_ray([1.0], horizon=10)
        with pytest.raises(DomainError):
            check_convergence(norm, seq, [0.0], t_grid=[], tol=1e-6)

    def test_wrong_candidate_is_not_converges(self, norm):
        seq = geometric_approach([1.0], [1.0], 0.5, horizon=60)
        verdict = check_convergence(norm, seq, [3.0], t_grid=[0.01, 1.0], tol=1e-6)
        assert verdict.verdict != CONVERGES

    def test_convergence_implies_cauchy(self, norm):
        sequences = [
            geometric_approach([1.0, 1.0], [1.0, 0.0], 0.5, horizon=100),
            geometric_approach([0.0, -2.0], [0.3, 0.4], -0.7, horizon=100),
            explicit_list([[5.0]] * 50),
        ]
        candidates = [[1.0, 1.0], [0.0, -2.0], [5.0]]
        for seq, cand in zip(sequences, candidates):
            conv = check_convergence(norm, seq, cand, t_grid=[0.1, 1.0], tol=1e-4)
            assert conv.verdict == CONVERGES
            cauchy = check_cauchy(norm, seq, t_grid=[0.1, 1.0], tol=1e-4)
            assert cauchy.verdict == CAUCHY_ONLY

    def test_scaling_compatibility(self, norm):
        # if x_n -> x then c x_n -> c x once the grid is rescaled by phi(c)
        c = 3.0
        seq = geometric_approach([1.0, -1.0], [0.5, 0.5], 0.6, horizon=120)
        scaled = geometric_approach([c * 1.0, c * -1.0], [c * 0.5, c * 0.5], 0.6, horizon=120)
        grid = [0.1, 1.0, 10.0]
        phi_c = c  # phi = |.|**1 for this norm
        base = check_convergence(norm, seq, [1.0, -1.0], t_grid=grid, tol=1e-4)
        lifted = check_convergence(norm, scaled, [c, -c], t_grid=[t * phi_c for t in grid], tol=1e-4)
        assert base.verdict == CONVERGES and lifted.verdict == CONVERGES
        for (_, v1), (_, v2) in zip(base.evidence, lifted.evidence):
            assert v1 == pytest.approx(v2, abs=1e-9)


class TestCauchy:
    def test_geometric_increments_are_cauchy(self, norm):
        seq = geometric_approach([0.0], [1.0], 0.5, horizon=200)
        assert check_cauchy(norm, seq, tol=1e-6).verdict == CAUCHY_ONLY

    def test_divergent_ray_detected(self, norm):
        assert check_cauchy(norm, divergent_ray([1.0, 0.0], horizon=200), tol=1e-6).verdict == NOT_CAUCHY

    def test_harmonic_partial_sums_documented_limitation(self, norm):
        # slow divergence is invisible at a finite horizon under a loose
        # tolerance; the window margin still shows it clearly
        horizon = 200
        partials = np.cumsum(1.0 / np.arange(1, horizon + 1))
        seq = explicit_list([[s, 0.0] for s in partials])
        tol = 0.3
        verdict = check_cauchy(norm, seq, t_grid=[1.0], tol=tol, horizon=horizon)
        assert verdict.verdict == CAUCHY_ONLY

        # oracle: the worst window increment is H(200) - H(181), evaluated
        # through the membership formula at t = 1
        window_start = horizon - horizon // 10 + 1
        worst_increment = partials[horizon - 1] - partials[window_start - 1]
        expected_gap = 1.0 - 1.0 / (1.0 + worst_increment)
        assert verdict.worst_gap == pytest.approx(expected_gap, abs=1e-12)
        assert 0.05 < verdict.worst_gap < tol  # visible, yet under the tolerance


class TestBalls:
    def test_known_inside_point(self, norm):
        # N = 1/1.5 ~ 0.667 > 0.5
        assert ball_contains(norm, [0.0], 0.5, 1.0, [0.5]) is True

    def test_center_always_inside(self, norm):
        for alpha in (0.1, 0.5, 0.9):
            for t in (0.01, 1.0, 100.0):
                assert ball_contains(norm, [2.0, -1.0], alpha, t, [2.0, -1.0])

    def test_known_outside_point(self, norm):
        # N = 1/3 < 0.5
        assert ball_contains(norm, [0.0], 0.5, 1.0, [2.0]) is False

    def test_parameter_validation(self, norm):
        with pytest.raises(DomainError):
            ball_contains(norm, [0.0], 1.5, 1.0, [0.0])
        with pytest.raises(DomainError):
            ball_contains(norm, [0.0], 0.5, -1.0, [0.0])

    def test_ball_nesting(self, norm):
        rng = np.random.default_rng(4)
        for _ in range(50):
            y = rng.normal(size=2) * 3
            if ball_contains(norm, [0.0, 0.0], 0.3, 0.5, y):
                assert ball_contains(norm, [0.0, 0.0], 0.6, 2.0, y)


class TestOpenness:
    def test_balls_are_open(self, norm):
        predicate = lambda y: ball_contains(norm, [0.0, 0.0], 0.5, 1.0, y)
        report = probe_openness(norm, predicate, [[0.0, 0.0], [0.2, 0.1]])
        assert report.passed

    def test_singleton_is_not_open(self, norm):
        predicate = lambda y: bool(np.all(np.asarray(y) == 0.0))
        report = probe_openness(norm, predicate, [[0.0]])
        assert not report.passed

    def test_empty_probe_list_passes_vacuously(self, norm):
        report = probe_openness(norm, lambda y: False, [])
        assert report.passed

    def test_probe_outside_set_rejected(self, norm):
        with pytest.raises(DomainError):
            probe_openness(norm, lambda y: False, [[1.0]])


class TestBounded:
    def test_witness_just_past_the_solved_threshold(self, norm):
        # t/(t+5) > 0.5 iff t > 5; t = 6 qualifies
        assert membership(norm, [3.0, 4.0], 6.0) > 0.5
        bounded, witness = check_fuzzy_bounded(norm, [[0.0, 0.0], [3.0, 4.0]], 0.5)
        assert bounded
        assert 5.0 < witness < 6.5
        for point in ([0.0, 0.0], [3.0, 4.0]):
            assert membership(norm, point, witness) > 0.5

    def test_zero_vector_bounded_at_any_time(self, norm):
        bounded, witness = check_fuzzy_bounded(norm, [[0.0]], 0.5)
        assert bounded
        assert witness == pytest.approx(1e-9)

    def test_growing_prefixes_need_growing_witnesses(self, norm):
        witnesses = []
        for m in (10, 100, 1000):
            pts = [[float(n), 0.0] for n in range(1, m + 1)]
            bounded, witness = check_fuzzy_bounded(norm, pts, 0.5)
            assert bounded
            witnesses.append(witness)
            assert witness > m  # p = 1: threshold must top the farthest norm
        assert witnesses == sorted(witnesses)

    def test_monotone_in_r(self, norm):
        pts = [[3.0, 4.0], [1.0, 1.0]]
        _, t_strict = check_fuzzy_bounded(norm, pts, 0.25)
        _, t_loose = check_fuzzy_bounded(norm, pts, 0.75)
        assert t_loose <= t_strict

    def test_validation(self, norm):
        with pytest.raises(DomainError):
            check_fuzzy_bounded(norm, [], 0.5)
        with pytest.raises(DomainError):
            check_fuzzy_bounded(norm, [[1.0]], 1.5)
