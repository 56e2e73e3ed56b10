"""Membership structures: built-in families, rescale identity, reduction."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phibnorm import (
    CrispNorm,
    DomainError,
    FuzzyNorm,
    abs_power,
    algebraic_product,
    classify_reduction,
    make_example_norm,
    membership,
    rational_power_norm,
    scalar_rescale_identity,
    standard_intersection,
)
from phibnorm.fuzzynorm import limit_time, power_inequality_sides

# desk-scale coordinates: zero or magnitude >= 1e-150, so squared sums
# never underflow to an exact zero norm
coords = st.lists(
    st.floats(min_value=-1e3, max_value=1e3, allow_nan=False).map(
        lambda v: 0.0 if abs(v) < 1e-150 else v
    ),
    min_size=1,
    max_size=4,
)
positive_t = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False)


class TestCrispNorm:
    def test_kinds_on_a_known_vector(self):
        v = [3.0, -4.0]
        assert CrispNorm("l1").value(v) == pytest.approx(7.0)
        assert CrispNorm("l2").value(v) == pytest.approx(5.0)
        assert CrispNorm("l-infinity").value(v) == pytest.approx(4.0)

    def test_unknown_kind_rejected(self):
        with pytest.raises(DomainError):
            CrispNorm("l3")

    @given(x=coords)
    def test_zero_iff_zero_vector(self, x):
        for kind in ("l1", "l2", "l-infinity"):
            norm = CrispNorm(kind)
            assert norm.value([0.0] * len(x)) == 0.0
            if any(c != 0.0 for c in x):
                assert norm.value(x) > 0.0

    @given(x=coords, c=st.floats(min_value=-100, max_value=100, allow_nan=False))
    @settings(deadline=None)
    def test_homogeneity(self, x, c):
        for kind in ("l1", "l2", "l-infinity"):
            norm = CrispNorm(kind)
            assert norm.value([c * v for v in x]) == pytest.approx(abs(c) * norm.value(x), rel=1e-12, abs=1e-9)

    @given(x=coords, y=coords)
    @settings(deadline=None)
    def test_triangle_inequality(self, x, y):
        size = min(len(x), len(y))
        a, b = x[:size], y[:size]
        for kind in ("l1", "l2", "l-infinity"):
            norm = CrispNorm(kind)
            lhs = norm.value([p + q for p, q in zip(a, b)])
            assert lhs <= norm.value(a) + norm.value(b) + 1e-9


class TestMembership:
    def test_rational_amounts_to_time_over_time_plus_norm(self):
        norm = make_example_norm("rational", p=1)
        assert membership(norm, [1.0], 1.0) == pytest.approx(0.5)

    def test_zero_vector_gives_one(self):
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=0.5)
            assert membership(norm, [0.0, 0.0], 0.7) == 1.0

    def test_exponential_closed_form(self):
        norm = make_example_norm("exponential", p=1)
        assert membership(norm, [1.0], 1.0) == pytest.approx(0.36787944117, abs=1e-9)

    def test_nonpositive_time_gives_exact_zero(self):
        for norm in (
            make_example_norm("rational", p=1),
            make_example_norm("exponential", p=0.5),
            rational_power_norm(2.0, K=1.0),
        ):
            assert membership(norm, [5.0], -3.0) == 0.0
            assert membership(norm, [5.0], 0.0) == 0.0

    def test_nan_rejected(self):
        norm = make_example_norm("rational", p=1)
        with pytest.raises(DomainError):
            membership(norm, [float("nan")], 1.0)
        with pytest.raises(DomainError):
            membership(norm, [1.0], float("nan"))

    @given(x=coords, t=positive_t)
    @settings(deadline=None)
    def test_values_stay_in_unit_interval(self, x, t):
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=0.5)
            assert 0.0 <= membership(norm, x, t) <= 1.0

    @given(x=coords, t1=positive_t, t2=positive_t)
    @settings(deadline=None)
    def test_monotone_in_t(self, x, t1, t2):
        lo, hi = min(t1, t2), max(t1, t2)
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=0.5)
            assert membership(norm, x, lo) <= membership(norm, x, hi) + 1e-15

    def test_strictly_decreasing_in_base_norm(self):
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=0.5)
            values = [membership(norm, [b], 1.0) for b in (0.5, 1.0, 2.0, 4.0)]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_limit_surrogate_reaches_one(self):
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=0.25)
            for x in ([0.0], [1.0], [100.0], [1e6]):
                assert membership(norm, x, limit_time(norm, x)) >= 1.0 - 1e-6


class TestScalarRescale:
    def test_half_power_example(self):
        norm = make_example_norm("rational", p=0.5)
        lhs, rhs = scalar_rescale_identity(norm, [1.0], 2.0, 4.0)
        assert lhs == pytest.approx(0.5)
        assert rhs == pytest.approx(0.5)

    def test_unit_scalar_is_exact(self):
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=0.5)
            lhs, rhs = scalar_rescale_identity(norm, [2.0, 1.0], 3.0, 1.0)
            assert lhs == rhs

    def test_sign_flip_matches(self):
        norm = make_example_norm("exponential", p=1)
        lhs, rhs = scalar_rescale_identity(norm, [2.0], 3.0, -1.0)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_zero_scalar_rejected(self):
        norm = make_example_norm("rational", p=1)
        with pytest.raises(DomainError):
            scalar_rescale_identity(norm, [1.0], 1.0, 0.0)

    @given(
        x=coords,
        t=positive_t,
        c=st.floats(min_value=-1e3, max_value=1e3, allow_nan=False).filter(lambda v: abs(v) > 1e-3),
    )
    @settings(deadline=None)
    def test_identity_within_tolerance(self, x, t, c):
        for kind in ("rational", "exponential"):
            norm = make_example_norm(kind, p=0.5)
            lhs, rhs = scalar_rescale_identity(norm, x, t, c)
            assert lhs == pytest.approx(rhs, abs=1e-9)


class TestClassification:
    def test_unit_constant_abs_phi_reduces(self):
        norm = FuzzyNorm(kind="rational", p=1.0, K=1.0, phi=abs_power(1.0),
                         tnorm=standard_intersection(), base=CrispNorm("l2"))
        assert classify_reduction(norm) == "bs-fuzzy-norm"

    def test_fractional_power_does_not_reduce(self):
        assert classify_reduction(make_example_norm("rational", p=0.5)) == "strict-phi-b-norm"

    def test_large_constant_does_not_reduce(self):
        norm = FuzzyNorm(kind="exponential", p=1.0, K=2.0, phi=abs_power(1.0),
                         tnorm=algebraic_product(), base=CrispNorm("l2"))
        assert classify_reduction(norm) == "strict-phi-b-norm"


class TestConstruction:
    def test_example_constants(self):
        assert make_example_norm("rational", p=1).K == pytest.approx(2.0)
        assert make_example_norm("exponential", p=0.5).K == pytest.approx(1.41421356, abs=1e-8)

    def test_default_tnorm_pairing(self):
        assert make_example_norm("rational", p=1).tnorm.kind == "standard-intersection"
        assert make_example_norm("exponential", p=1).tnorm.kind == "algebraic-product"

    def test_out_of_range_power_rejected(self):
        with pytest.raises(DomainError):
            make_example_norm("rational", p=1.5)
        with pytest.raises(DomainError):
            make_example_norm("exponential", p=0.0)

    def test_small_constant_rejected_at_construction(self):
        with pytest.raises(DomainError):
            FuzzyNorm(kind="rational", p=1.0, K=0.5, phi=abs_power(1.0),
                      tnorm=standard_intersection(), base=CrispNorm("l2"))

    def test_mismatched_phi_rejected(self):
        with pytest.raises(DomainError):
            FuzzyNorm(kind="rational", p=0.5, K=2.0 ** 0.5, phi=abs_power(1.0),
                      tnorm=standard_intersection(), base=CrispNorm("l2"))


class TestPowerInequality:
    @given(
        x=st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        y=st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        p=st.floats(min_value=0.05, max_value=1.0, allow_nan=False),
    )
    @settings(deadline=None)
    def test_holds_for_unit_interval_powers(self, x, y, p):
        lhs, rhs = power_inequality_sides(2.0 ** p, p, x, y)
        assert lhs <= rhs + 1e-12

    def test_fails_for_quadratic_exponent(self):
        # |1+1|**2 = 4 > 1 + 1 at K = 1, and |1+3|**2 = 16 > 4 + 9 even at K = 4
        lhs, rhs = power_inequality_sides(1.0, 2.0, 1.0, 1.0)
        assert lhs > rhs
        lhs, rhs = power_inequality_sides(2.0 ** 2, 2.0, 1.0, 3.0)
        assert lhs > rhs


def test_math_cross_check_of_frozen_values():
    # independent evaluation of the frozen expectations used above
    assert 1.0 / (1.0 + 1.0) == 0.5
    assert abs(math.exp(-1.0) - 0.36787944117) < 1e-9
    assert 2.0 / (2.0 + abs(4.0) ** 0.5) == 0.5
    assert np.sqrt(2.0) == pytest.approx(1.41421356, abs=1e-8)
