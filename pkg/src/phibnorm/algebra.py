"""Triangular norms on the unit interval and admissible scalar-rescaling functions.

A t-norm is a binary operation on [0, 1] that is associative, commutative,
monotone in both arguments and has identity 1.  A scalar-rescaling function
``phi`` is an even real function with phi(1) = 1, strictly increasing and
continuous on (0, inf), vanishing at 0 and unbounded at infinity.  Both are
the raw material for fuzzy strong phi-b-norms; this module evaluates them
and checks their defining laws by seeded sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .reports import CheckReport, CounterExample, escalate, make_report

# Kinds of built-in t-norms.
STANDARD_INTERSECTION = "standard-intersection"
ALGEBRAIC_PRODUCT = "algebraic-product"
BOUNDED_DIFFERENCE = "bounded-difference"

# Kinds of built-in phi families.
PHI_ABS = "abs"
PHI_ABS_POWER = "abs-power"
PHI_RATIONAL_EVEN = "rational-even"

_UNIT_SLACK = 1e-12
_CORNERS = np.array([0.0, 1.0, 0.5, 1.0 - 1e-9])


@dataclass(frozen=True)
class TNorm:
    """A binary operation on the unit interval, built-in or user-supplied.

    Custom operations are accepted without proof; ``check_tnorm_axioms`` is
    the gate that decides whether they deserve the name.
    """

    kind: str
    fn: Optional[Callable[[float, float], float]] = None
    name: str = ""

    def __post_init__(self) -> None:
        builtin = (STANDARD_INTERSECTION, ALGEBRAIC_PRODUCT, BOUNDED_DIFFERENCE)
        if self.kind not in builtin and self.kind != "custom":
            raise DomainError(f"unknown t-norm kind {self.kind!r}")
        if self.kind == "custom" and self.fn is None:
            raise DomainError("custom t-norm requires a payload function")

    @property
    def label(self) -> str:
        return self.name or self.kind


def standard_intersection() -> TNorm:
    return TNorm(STANDARD_INTERSECTION)


def algebraic_product() -> TNorm:
    return TNorm(ALGEBRAIC_PRODUCT)


def bounded_difference() -> TNorm:
    return TNorm(BOUNDED_DIFFERENCE)


def custom_tnorm(fn: Callable[[float, float], float], name: str = "custom") -> TNorm:
    return TNorm("custom", fn=fn, name=name)


def _check_unit(value: float, label: str) -> float:
    if np.isnan(value):
        raise DomainError(f"{label} is NaN")
    if value < -_UNIT_SLACK or value > 1.0 + _UNIT_SLACK:
        raise DomainError(f"{label}={value!r} outside [0, 1]")
    return min(1.0, max(0.0, float(value)))


def tnorm_eval(tnorm: TNorm, a: float, b: float) -> float:
    """Evaluate ``a * b`` for the given t-norm.

    Inputs must lie in [0, 1] up to 1e-12 rounding slack.  The result is
    clamped into [0, 1] only when it overshoots by at most 1e-12; larger
    excursions of a custom operation are returned as-is so the axiom
    checker can report them as range violations.
    """
    a = _check_unit(a, "a")
    b = _check_unit(b, "b")
    if tnorm.kind == STANDARD_INTERSECTION:
        return min(a, b)
    if tnorm.kind == ALGEBRAIC_PRODUCT:
        return a * b
    if tnorm.kind == BOUNDED_DIFFERENCE:
        return max(0.0, a + b - 1.0)
    value = float(tnorm.fn(a, b))
    if -_UNIT_SLACK <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + _UNIT_SLACK:
        return 1.0
    return value


def tnorm_eval_many(tnorm: TNorm, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorised twin of ``tnorm_eval`` (no input validation)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if tnorm.kind == STANDARD_INTERSECTION:
        return np.minimum(a, b)
    if tnorm.kind == ALGEBRAIC_PRODUCT:
        return a * b
    if tnorm.kind == BOUNDED_DIFFERENCE:
        return np.maximum(0.0, a + b - 1.0)
    flat_a = np.ravel(a)
    flat_b = np.broadcast_to(b, a.shape).ravel() if b.shape != a.shape else np.ravel(b)
    out = np.fromiter((tnorm.fn(float(x), float(y)) for x, y in zip(flat_a, flat_b)), dtype=float, count=flat_a.size)
    out = np.where((out < 0.0) & (out >= -_UNIT_SLACK), 0.0, out)
    out = np.where((out > 1.0) & (out <= 1.0 + _UNIT_SLACK), 1.0, out)
    return out.reshape(a.shape)


def _unit_samples(budget: int, seed: int, columns: int) -> np.ndarray:
    """Deterministic unit-interval samples: fixed corner grid then a
    prefix-stable uniform block, so enlarging the budget only appends."""
    rng = np.random.default_rng([seed, 0xA1])
    corners = np.stack(np.meshgrid(*([_CORNERS] * columns), indexing="ij"), axis=-1).reshape(-1, columns)
    random_block = rng.random((budget, columns))
    return np.concatenate([corners, random_block], axis=0)


def _sanitize(margins: np.ndarray) -> np.ndarray:
    return np.where(np.isnan(margins), -np.inf, margins)


def check_tnorm_axioms(tnorm: TNorm, budget: int = 10_000, seed: int = 0) -> CheckReport:
    """Sample commutativity, associativity, identity, monotonicity and range.

    Failures are report contents, never exceptions.  The worst margin is the
    minimum over every sub-check and sample; for the built-in operations it
    is exactly 0.
    """
    if budget < 1:
        raise DomainError("budget must be >= 1")
    tol = 1e-9
    samples = _unit_samples(budget, seed, 4)
    a, b, c, d = samples[:, 0], samples[:, 1], samples[:, 2], samples[:, 3]

    t_ab = tnorm_eval_many(tnorm, a, b)
    t_ba = tnorm_eval_many(tnorm, b, a)
    t_ab_c = tnorm_eval_many(tnorm, t_ab, c)
    t_bc = tnorm_eval_many(tnorm, b, c)
    t_a_bc = tnorm_eval_many(tnorm, a, t_bc)
    t_a1 = tnorm_eval_many(tnorm, a, np.ones_like(a))
    lo_ab, hi_ab = np.minimum(a, b), np.maximum(a, b)
    lo_cd, hi_cd = np.minimum(c, d), np.maximum(c, d)
    t_lo = tnorm_eval_many(tnorm, lo_ab, lo_cd)
    t_hi = tnorm_eval_many(tnorm, hi_ab, hi_cd)

    parts = {
        "range": (_sanitize(np.minimum(t_ab, 1.0 - t_ab)), t_ab, np.zeros_like(t_ab)),
        "commutativity": (_sanitize(-np.abs(t_ab - t_ba)), t_ab, t_ba),
        "associativity": (_sanitize(-np.abs(t_ab_c - t_a_bc)), t_ab_c, t_a_bc),
        "identity": (_sanitize(-np.abs(t_a1 - a)), t_a1, a),
        "monotonicity": (_sanitize(t_hi - t_lo), t_hi, t_lo),
    }

    worst = np.inf
    witness = None
    for part, (margins, lhs, rhs) in parts.items():
        idx = int(np.argmin(margins))
        if margins[idx] < worst:
            worst = float(margins[idx])
            if part == "monotonicity":
                variables = {
                    "a": float(lo_ab[idx]), "b": float(hi_ab[idx]),
                    "c": float(lo_cd[idx]), "d": float(hi_cd[idx]),
                }
            else:
                variables = {"a": float(a[idx]), "b": float(b[idx]), "c": float(c[idx])}
            witness = CounterExample(variables, float(lhs[idx]), float(rhs[idx]), part=part)

    worst += 0.0  # normalise -0.0
    counterexample = witness if worst < -tol else None
    return make_report("tnorm-axioms", samples.shape[0], worst, tol, counterexample)


def check_continuity_at_one(tnorm: TNorm, grid=(0.1, 0.01, 0.001)) -> CheckReport:
    """Continuity modulus of * at (1, 1) on a shrinking square family.

    For each eps in ``grid`` (strictly decreasing, in (0, 1]) computes
    ``sup |1 - a*b|`` over a lattice on [1-eps, 1]^2.  Passes when the
    moduli are non-increasing and the final one is <= 10 * eps_final.
    """
    grid = [float(e) for e in grid]
    if not grid or any(not 0.0 < e <= 1.0 for e in grid):
        raise DomainError("grid entries must lie in (0, 1]")
    if any(grid[i + 1] >= grid[i] for i in range(len(grid) - 1)):
        raise DomainError("grid must be strictly decreasing")

    mesh = 33
    moduli = []
    evals = 0
    for eps in grid:
        side = np.linspace(1.0 - eps, 1.0, mesh)
        aa, bb = np.meshgrid(side, side, indexing="ij")
        vals = tnorm_eval_many(tnorm, aa.ravel(), bb.ravel())
        moduli.append(float(np.max(np.abs(1.0 - vals))))
        evals += mesh * mesh

    worst = 10.0 * grid[-1] - moduli[-1]
    for prev, cur in zip(moduli, moduli[1:]):
        worst = min(worst, prev - cur)
    worst += 0.0
    counterexample = None
    if worst < -1e-12:
        counterexample = CounterExample(
            {"epsilon": grid[-1]}, moduli[-1], 10.0 * grid[-1], part="modulus-decay"
        )
    return make_report(
        "tnorm-continuity", evals, worst, 1e-12, counterexample,
        details={"epsilons": grid, "moduli": moduli},
    )


@dataclass(frozen=True)
class Phi:
    """An admissible scalar-rescaling function.

    Built-in families:

    * ``abs``:                |alpha|
    * ``abs-power`` (p > 0):  |alpha| ** p
    * ``rational-even`` (n):  2 * alpha**(2n) / (|alpha| + 1)

    Custom functions are accepted without proof and gated by
    ``check_phi_axioms``.
    """

    kind: str
    p: Optional[float] = None
    n: Optional[int] = None
    fn: Optional[Callable[[float], float]] = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind == PHI_ABS_POWER:
            if self.p is None or not self.p > 0:
                raise DomainError("abs-power requires p > 0")
        elif self.kind == PHI_RATIONAL_EVEN:
            if self.n is None or int(self.n) < 1:
                raise DomainError("rational-even requires a positive integer n")
        elif self.kind == "custom":
            if self.fn is None:
                raise DomainError("custom phi requires a payload function")
        elif self.kind != PHI_ABS:
            raise DomainError(f"unknown phi kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == PHI_ABS_POWER:
            return f"abs-power(p={self.p})"
        if self.kind == PHI_RATIONAL_EVEN:
            return f"rational-even(n={self.n})"
        return self.kind

    def is_abs_like(self) -> bool:
        """True when this phi equals |alpha| (abs, or abs-power with p=1)."""
        return self.kind == PHI_ABS or (self.kind == PHI_ABS_POWER and self.p == 1.0)


def phi_abs() -> Phi:
    return Phi(PHI_ABS)


def abs_power(p: float) -> Phi:
    return Phi(PHI_ABS_POWER, p=float(p))


def rational_even(n: int) -> Phi:
    return Phi(PHI_RATIONAL_EVEN, n=int(n))


def custom_phi(fn: Callable[[float], float], name: str = "custom") -> Phi:
    return Phi("custom", fn=fn, name=name)


def phi_eval(phi: Phi, alpha: float) -> float:
    if not np.isfinite(alpha):
        raise DomainError(f"alpha={alpha!r} is not finite")
    return float(phi_eval_many(phi, np.asarray([alpha], dtype=float))[0])


def phi_eval_many(phi: Phi, alpha: np.ndarray) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    if phi.kind == PHI_ABS:
        return np.abs(alpha)
    if phi.kind == PHI_ABS_POWER:
        return np.abs(alpha) ** phi.p
    if phi.kind == PHI_RATIONAL_EVEN:
        return 2.0 * alpha ** (2 * phi.n) / (np.abs(alpha) + 1.0)
    return np.fromiter((phi.fn(float(x)) for x in np.ravel(alpha)), dtype=float, count=alpha.size).reshape(alpha.shape)


# Desk-scale surrogates for the two limits of the growth axiom: the values at
# 10**-1 .. 10**-12 must sink below this ceiling, and the values on the growth
# grid must climb past this floor.
ZERO_LIMIT_CEILING = 0.5
GROWTH_FLOOR = 2.0

_DEFAULT_GROWTH_GRID = tuple(float(x) for x in np.logspace(0.0, 6.0, 13))


def default_growth_grid() -> tuple[float, ...]:
    return _DEFAULT_GROWTH_GRID


def check_phi_axioms(
    phi: Phi,
    budget: int = 10_000,
    growth_grid=None,
    seed: int = 0,
) -> CheckReport:
    """Check evenness, phi(1)=1, strict increase + sampled continuity on
    (0, inf), nonnegativity, and the two bounded limit surrogates.

    Evenness and phi(1)=1 are held to 1e-12; strictness and the limit
    surrogates are escalated so their violations fail the 1e-9 report rule.
    """
    if budget < 1:
        raise DomainError("budget must be >= 1")
    growth_grid = [float(g) for g in (growth_grid if growth_grid is not None else _DEFAULT_GROWTH_GRID)]
    if any(growth_grid[i + 1] <= growth_grid[i] for i in range(len(growth_grid) - 1)):
        raise DomainError("growth grid must be increasing")
    if growth_grid[-1] < 1e6:
        raise DomainError("growth grid must reach at least 1e6")

    tol = 1e-9
    rng_raw = np.random.default_rng([seed, 0xF1]).random((budget, 3))
    # Symmetric heavy-tailed-ish magnitudes: log-uniform over [1e-6, 1e3].
    mags = 10.0 ** (-6.0 + 9.0 * rng_raw[:, 0])
    signs = np.where(rng_raw[:, 1] < 0.5, -1.0, 1.0)
    alphas = signs * mags

    entries = []  # (margin, part, variables, lhs, rhs)
    samples_run = 0

    def add(margin, part, variables, lhs, rhs):
        entries.append((float(margin), part, variables, float(lhs), float(rhs)))

    # phi1: evenness, exact to 1e-12.
    pos = phi_eval_many(phi, alphas)
    neg = phi_eval_many(phi, -alphas)
    samples_run += 2 * budget
    diffs = np.abs(pos - neg)
    idx = int(np.argmax(diffs))
    add(escalate(-diffs[idx], diffs[idx] > 1e-12, tol), "evenness",
        {"alpha": float(alphas[idx])}, neg[idx], pos[idx])

    # phi2: phi(1) = 1, exact to 1e-12.
    at_one = phi_eval(phi, 1.0)
    samples_run += 1
    add(escalate(-abs(at_one - 1.0), abs(at_one - 1.0) > 1e-12, tol), "unit-value",
        {"alpha": 1.0}, at_one, 1.0)

    # Nonnegativity on every sampled point.
    idx = int(np.argmin(pos))
    add(float(pos[idx]), "nonnegativity", {"alpha": float(alphas[idx])}, pos[idx], 0.0)

    # phi3 strictness: x < y in (0, inf) must give phi(x) < phi(y).
    xs = mags
    ys = mags * (1.0 + 10.0 ** (-3.0 + 4.0 * rng_raw[:, 2]))
    fx = phi_eval_many(phi, xs)
    fy = phi_eval_many(phi, ys)
    samples_run += 2 * budget
    gaps = fy - fx
    idx = int(np.argmin(gaps))
    add(escalate(gaps[idx], gaps[idx] <= 0.0, tol), "strict-increase",
        {"x": float(xs[idx]), "y": float(ys[idx])}, fy[idx], fx[idx])

    # phi3 sampled continuity: shrinking increments must die out.
    probes = np.array([0.03, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0])
    extra = 10.0 ** (-2.0 + 4.0 * np.random.default_rng([seed, 0xF2]).random(min(32, budget)))
    probes = np.concatenate([probes, extra])
    h_grid = (1e-2, 1e-4, 1e-6)
    for x in probes:
        mods = []
        for h in h_grid:
            up = abs(phi_eval(phi, x + h) - phi_eval(phi, x))
            down = abs(phi_eval(phi, x) - phi_eval(phi, x - h)) if x - h > 0 else up
            mods.append(max(up, down))
            samples_run += 3
        threshold = max(1e-4 * (1.0 + abs(phi_eval(phi, x))), 1e-2 * mods[0])
        violated = mods[-1] > threshold
        add(escalate(threshold - mods[-1], violated, tol), "continuity",
            {"x": float(x), "h": h_grid[-1]}, mods[-1], threshold)

    # phi4 toward zero: values at 10**-1 .. 10**-12 non-increasing and small.
    small = phi_eval_many(phi, 10.0 ** -np.arange(1, 13, dtype=float))
    samples_run += small.size
    steps = small[:-1] - small[1:]
    idx = int(np.argmin(steps))
    add(escalate(steps[idx], steps[idx] < -1e-12, tol), "zero-limit-monotone",
        {"alpha": float(10.0 ** -(idx + 1))}, small[idx], small[idx + 1])
    add(escalate(ZERO_LIMIT_CEILING - small[-1], small[-1] > ZERO_LIMIT_CEILING, tol),
        "zero-limit-small", {"alpha": 1e-12}, small[-1], ZERO_LIMIT_CEILING)

    # phi4 toward infinity: strictly increasing along the growth grid and
    # definitively past the unit value by its far end.
    grown = phi_eval_many(phi, np.asarray(growth_grid))
    samples_run += grown.size
    g_steps = grown[1:] - grown[:-1]
    idx = int(np.argmin(g_steps))
    add(escalate(g_steps[idx], g_steps[idx] <= 0.0, tol), "growth-monotone",
        {"alpha": growth_grid[idx + 1]}, grown[idx + 1], grown[idx])
    add(escalate(grown[-1] - GROWTH_FLOOR, grown[-1] < GROWTH_FLOOR, tol),
        "growth-reach", {"alpha": growth_grid[-1]}, grown[-1], GROWTH_FLOOR)

    worst_entry = min(entries, key=lambda e: e[0])
    worst = worst_entry[0] + 0.0
    counterexample = None
    if worst < -tol:
        counterexample = CounterExample(worst_entry[2], worst_entry[3], worst_entry[4], part=worst_entry[1])
    return make_report("phi-axioms", samples_run, worst, tol, counterexample)
