"""Finite-dimensional structure probes.

Three instruments:

* a separation-constant estimator: on the l1 coefficient sphere of a
  certified-independent basis, find c > 0 and delta in (0, 1) with
  N(sum beta_i x_i, K c) <= 1 - delta for every grid beta, plus a
  re-verification of the certificate on a refined grid and on random
  unnormalised scalar sets through the phi(1/s) rescaling;
* a completeness probe: constructed Cauchy sequences must be detected
  Cauchy and traced back to their built-in limits;
* a compactness probe: closed bounded boxes yield convergent
  subsequences by coordinate bisection, finite sets by pigeonhole, and
  unbounded rays exhibit diverging boundedness witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import algebra
from .analysis import (
    CAUCHY_ONLY,
    CONVERGES,
    DEFAULT_T_GRID,
    check_cauchy,
    check_convergence,
    check_fuzzy_bounded,
    divergent_ray,
    geometric_approach,
)
from .errors import CertificateError, DomainError
from .fuzzynorm import FuzzyNorm, Vector, as_vector, membership_many
from .reports import CheckReport, CounterExample, make_report

_GRAM_TOLERANCE = 1e-9
_MIN_DELTA = 0.05

#: Default scan for the separation constant: 1 down to 1e-6, log-spaced.
DEFAULT_C_GRID = tuple(float(c) for c in np.logspace(0.0, -6.0, 7))


@dataclass(frozen=True)
class BasisSet:
    """Vectors with a Gram-determinant independence certificate."""

    vectors: tuple[tuple[float, ...], ...]
    certified_independent: bool
    gram_det: float

    @property
    def count(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def matrix(self) -> np.ndarray:
        return np.asarray(self.vectors, dtype=float)


def build_basis(vectors: Sequence[Vector], tolerance: float = _GRAM_TOLERANCE) -> BasisSet:
    rows = [as_vector(v) for v in vectors]
    if not rows:
        raise DomainError("a basis needs at least one vector")
    dim = rows[0].size
    if any(r.size != dim for r in rows):
        raise DomainError("basis vectors must share one dimension")
    if len(rows) > dim:
        raise DomainError("more vectors than the ambient dimension")
    mat = np.vstack(rows)
    gram = mat @ mat.T
    det = float(np.linalg.det(gram))
    return BasisSet(
        vectors=tuple(tuple(float(x) for x in r) for r in rows),
        certified_independent=det > tolerance,
        gram_det=det,
    )


def standard_basis(dim: int) -> BasisSet:
    return build_basis([np.eye(dim)[i] for i in range(dim)])


@dataclass(frozen=True)
class Lemma1Estimate:
    """Certified pair (c, delta) with the worst coefficient vector on the
    l1 unit sphere: every grid beta keeps N(sum beta_i x_i, K c) at or
    below 1 - delta."""

    c: float
    delta: float
    worst_beta: tuple[float, ...]
    grid_resolution: int

    @property
    def max_membership(self) -> float:
        return 1.0 - self.delta


def _compositions(total: int, parts: int):
    """Nonnegative integer vectors of the given length summing to total."""
    for dividers in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        row = []
        for d in dividers:
            row.append(d - prev - 1)
            prev = d
        row.append(total + parts - 2 - prev)
        yield row


def l1_sphere_grid(n: int, resolution: int) -> np.ndarray:
    """All sign patterns times the simplex grid of compositions at the
    given resolution: every row has l1 norm exactly 1."""
    if resolution < 8:
        raise DomainError("grid resolution must be >= 8")
    rows = []
    for comp in _compositions(resolution, n):
        magnitudes = np.asarray(comp, dtype=float) / resolution
        nonzero = [i for i in range(n) if comp[i] > 0]
        for signs in itertools.product((1.0, -1.0), repeat=len(nonzero)):
            beta = magnitudes.copy()
            for i, s in zip(nonzero, signs):
                beta[i] *= s
            rows.append(beta)
    return np.asarray(rows)


def _combine(betas: np.ndarray, basis_matrix: np.ndarray) -> np.ndarray:
    """Linear combinations sum_i beta_i x_i, written as explicit
    multiply-adds so results stay independent of BLAS threading."""
    out = np.zeros((betas.shape[0], basis_matrix.shape[1]))
    for i in range(basis_matrix.shape[0]):
        out += betas[:, i:i + 1] * basis_matrix[i][None, :]
    return out


def default_resolution(n: int) -> int:
    """Simplex resolution keeping the sphere grid affordable: 64 per
    orthant up to three vectors, 16 beyond."""
    return 64 if n <= 3 else 16


def estimate_lemma1_constants(
    norm: FuzzyNorm,
    basis: BasisSet,
    grid_resolution: Optional[int] = None,
    c_grid: Sequence[float] = DEFAULT_C_GRID,
) -> Lemma1Estimate:
    """Scan a decreasing c grid for the first c whose sphere maximum
    M(c) = max_beta N(sum beta_i x_i, K c) stays at or below 0.95, and
    certify delta = 1 - M(c).

    Raises CertificateError when no grid c qualifies (near-dependent basis
    or too coarse a grid) and DomainError when the basis is uncertified.
    """
    if grid_resolution is None:
        grid_resolution = default_resolution(basis.count)
    if not basis.certified_independent:
        raise DomainError("basis is not certified independent (Gram determinant below tolerance)")
    c_grid = [float(c) for c in c_grid]
    if not c_grid or any(c <= 0 for c in c_grid):
        raise DomainError("c grid must contain positive values")
    if any(c_grid[i + 1] >= c_grid[i] for i in range(len(c_grid) - 1)):
        raise DomainError("c grid must be strictly decreasing")

    betas = l1_sphere_grid(basis.count, grid_resolution)
    combos = _combine(betas, basis.matrix())
    for c in c_grid:
        t = np.full(combos.shape[0], norm.K * c)
        vals = membership_many(norm, combos, t)
        idx = int(np.argmax(vals))
        m_c = float(vals[idx])
        if m_c <= 1.0 - _MIN_DELTA:
            return Lemma1Estimate(
                c=c,
                delta=1.0 - m_c,
                worst_beta=tuple(float(b) for b in betas[idx]),
                grid_resolution=grid_resolution,
            )
    raise CertificateError(
        "no grid c achieves a separation of at least 0.05; "
        "the basis may be near-dependent or the c grid too coarse"
    )


def verify_lemma1_certificate(
    norm: FuzzyNorm,
    basis: BasisSet,
    estimate: Lemma1Estimate,
    refinement: int = 4,
    alpha_sets: int = 10_000,
    seed: int = 0,
) -> CheckReport:
    """Re-check a certificate on a refined sphere grid and on random
    unnormalised scalar sets.

    The scalar-set route evaluates the unnormalised form directly: for a
    random set alpha with s = sum |alpha_i| > 0, membership of
    sum alpha_i x_i at K c / phi(1/s) must stay at or below 1 - delta.
    For phi = |.|**p both routes agree through the rescale identity; a
    custom phi without reciprocal multiplicativity makes them diverge,
    which is reported rather than assumed away.
    """
    if refinement < 1:
        raise DomainError("refinement must be >= 1")
    if not basis.certified_independent:
        raise DomainError("basis is not certified independent")
    tol = 1e-9
    bound = 1.0 - estimate.delta
    mat = basis.matrix()

    betas = l1_sphere_grid(basis.count, estimate.grid_resolution * refinement)
    combos = _combine(betas, mat)
    vals = membership_many(norm, combos, np.full(combos.shape[0], norm.K * estimate.c))
    grid_margins = bound - vals
    g_idx = int(np.argmin(grid_margins))

    rng = np.random.default_rng([seed, 0xE1])
    alphas = rng.standard_normal((alpha_sets, basis.count))
    sums = np.abs(alphas).sum(axis=1)
    keep = sums > 0.0
    alphas, sums = alphas[keep], sums[keep]
    phis = algebra.phi_eval_many(norm.phi, 1.0 / sums)
    valid = phis > 0.0
    alphas, sums, phis = alphas[valid], sums[valid], phis[valid]
    points = _combine(alphas, mat)
    thresholds = norm.K * estimate.c / phis
    vals_alpha = membership_many(norm, points, thresholds)
    alpha_margins = bound - vals_alpha
    a_idx = int(np.argmin(alpha_margins)) if alpha_margins.size else 0

    worst_grid = float(grid_margins[g_idx])
    worst_alpha = float(alpha_margins[a_idx]) if alpha_margins.size else np.inf
    worst = min(worst_grid, worst_alpha) + 0.0

    counterexample = None
    notes: tuple[str, ...] = ()
    if worst < -tol:
        if worst_grid <= worst_alpha:
            counterexample = CounterExample(
                {"beta": tuple(float(b) for b in betas[g_idx])},
                float(vals[g_idx]), bound, part="sphere-grid",
            )
        else:
            counterexample = CounterExample(
                {"alpha": tuple(float(a) for a in alphas[a_idx])},
                float(vals_alpha[a_idx]), bound, part="scalar-form",
            )
        if worst_alpha < -tol <= worst_grid:
            notes = ("scalar-form check diverges from the normalized grid check; "
                     "phi may lack reciprocal multiplicativity",)

    return make_report(
        "lemma1-certificate",
        int(betas.shape[0] + alphas.shape[0]),
        worst,
        tol,
        counterexample,
        notes=notes,
        details={
            "c": estimate.c,
            "delta": estimate.delta,
            "refined_max_membership": float(vals[g_idx]),
            "scalar_form_max_membership": float(vals_alpha[a_idx]) if alpha_margins.size else None,
        },
    )


def probe_completeness(
    norm: FuzzyNorm,
    basis: BasisSet,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-6,
    horizon: int = 250,
    inject_divergent: bool = False,
) -> CheckReport:
    """Validate the detector chain on constructed Cauchy sequences.

    Each trial picks a target in the basis span and a geometric
    perturbation with ratio |r| <= 0.9; the sequence must be judged
    Cauchy, must converge to the constructed target, and its final point
    must match the target within coordinate error ``tol``.  Requires the
    t-norm to pass the continuity-at-(1,1) gate.  ``inject_divergent``
    swaps the last trial for a divergent ray as a fault-injection check.
    """
    gate = algebra.check_continuity_at_one(norm.tnorm)
    if not gate.passed:
        raise DomainError("t-norm fails the continuity-at-(1,1) gate required by the probe")
    if not basis.certified_independent:
        raise DomainError("basis is not certified independent")
    if trials < 1:
        raise DomainError("trials must be >= 1")

    rng = np.random.default_rng([seed, 0xC0])
    mat = basis.matrix()
    worst = np.inf
    max_coord_err = 0.0
    counterexample = None
    failed_stage = None

    for trial in range(trials):
        beta = rng.uniform(-2.0, 2.0, basis.count)
        gamma = rng.standard_normal(basis.count)
        ratio = float(rng.uniform(-0.9, 0.9))
        target = (beta[:, None] * mat).sum(axis=0)
        direction = (gamma[:, None] * mat).sum(axis=0)
        scale = norm.base.value(direction)
        if scale == 0.0:
            direction = mat[0].copy()
            scale = norm.base.value(direction)
        direction = direction / scale

        if inject_divergent and trial == trials - 1:
            seq = divergent_ray(direction, horizon=horizon)
        else:
            seq = geometric_approach(target, direction, ratio, horizon=horizon)

        cauchy = check_cauchy(norm, seq, tol=tol)
        convergence = check_convergence(norm, seq, target, tol=tol)
        coord_err = float(np.max(np.abs(seq.block(horizon, horizon)[0] - target)))
        max_coord_err = max(max_coord_err, coord_err)

        margins = [
            min(v for _, v in cauchy.evidence) - (1.0 - tol),
            min(v for _, v in convergence.evidence) - (1.0 - tol),
            tol - coord_err,
        ]
        worst = min(worst, min(margins))
        ok = cauchy.verdict == CAUCHY_ONLY and convergence.verdict == CONVERGES and coord_err <= tol
        if not ok and counterexample is None:
            if cauchy.verdict != CAUCHY_ONLY:
                failed_stage = "cauchy-detection"
            elif convergence.verdict != CONVERGES:
                failed_stage = "limit-detection"
            else:
                failed_stage = "coordinate-error"
            counterexample = CounterExample(
                {
                    "target": tuple(float(v) for v in target),
                    "direction": tuple(float(v) for v in direction),
                    "ratio": ratio,
                },
                float(min(v for _, v in convergence.evidence)),
                1.0 - tol,
                part=failed_stage,
            )

    worst += 0.0
    return make_report(
        "completeness-probe",
        trials,
        worst if counterexample is None else min(worst, -1.0),
        0.0,
        counterexample,
        details={"max_coordinate_error": max_coord_err, "horizon": horizon},
    )


@dataclass(frozen=True)
class BoxSet:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self) -> None:
        lo, hi = as_vector(self.lo), as_vector(self.hi)
        if lo.size != hi.size or np.any(lo > hi):
            raise DomainError("box needs lo <= hi coordinatewise")


@dataclass(frozen=True)
class FiniteSet:
    points: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise DomainError("finite set needs at least one point")


@dataclass(frozen=True)
class UnboundedRay:
    direction: tuple[float, ...]

    def __post_init__(self) -> None:
        if np.all(as_vector(self.direction) == 0.0):
            raise DomainError("ray direction must be nonzero")


def box_set(lo: Vector, hi: Vector) -> BoxSet:
    return BoxSet(tuple(float(v) for v in as_vector(lo)), tuple(float(v) for v in as_vector(hi)))


def finite_set(points: Sequence[Vector]) -> FiniteSet:
    return FiniteSet(tuple(tuple(float(v) for v in as_vector(p)) for p in points))


def unbounded_ray(direction: Vector) -> UnboundedRay:
    return UnboundedRay(tuple(float(v) for v in as_vector(direction)))


def bolzano_subsequence(points: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """Constructive Bolzano-Weierstrass step on a finite sample.

    Repeatedly halves the widest coordinate of the enclosing cell, keeps
    the half holding at least as many points (ties toward the lower half),
    and picks the next index from the surviving cell.  Returns the picked
    indices (strictly increasing), the midpoint of the final cell as the
    limit estimate, and the cell diameters at each pick.
    """
    cell_lo = lo.astype(float).copy()
    cell_hi = hi.astype(float).copy()
    active = np.arange(points.shape[0])
    picked: list[int] = []
    diameters: list[float] = []
    last = -1
    while active.size > 0:
        ahead = active[active > last]
        if ahead.size == 0:
            break
        last = int(ahead[0])
        picked.append(last)
        diameters.append(float(np.max(cell_hi - cell_lo)))
        j = int(np.argmax(cell_hi - cell_lo))
        mid = 0.5 * (cell_lo[j] + cell_hi[j])
        vals = points[active, j]
        lower = active[vals <= mid]
        upper = active[vals > mid]
        if lower.size >= upper.size:
            active, cell_hi = lower, cell_hi.copy()
            cell_hi[j] = mid
        else:
            active, cell_lo = upper, cell_lo.copy()
            cell_lo[j] = mid
    limit = 0.5 * (cell_lo + cell_hi)
    return picked, limit, diameters


def probe_compactness(
    norm: FuzzyNorm,
    set_spec,
    sequence_samples: int = 20,
    seed: int = 0,
    horizon: int = 500,
) -> CheckReport:
    """Probe the two directions of the closed-and-bounded characterisation.

    Boxes and finite sets: every sampled in-set sequence must yield a
    strictly increasing subsequence with shrinking enclosing cells whose
    limit estimate lies in the set.  Unbounded rays: the fuzzy-boundedness
    witness t at r = 0.5 must grow strictly along geometric prefixes.
    """
    rng = np.random.default_rng([seed, 0xB0])

    if isinstance(set_spec, UnboundedRay):
        direction = as_vector(set_spec.direction)
        prefixes = [n for n in (10, 100, 1000, 10_000) if n <= horizon]
        if not prefixes or prefixes[-1] != horizon:
            prefixes.append(horizon)
        witness_ts = []
        for m in prefixes:
            pts = np.arange(1, m + 1, dtype=float)[:, None] * direction[None, :]
            bounded, witness = check_fuzzy_bounded(norm, pts, r=0.5)
            if not bounded:
                witness = float("inf")
            witness_ts.append(float(witness))
        steps = [b - a for a, b in zip(witness_ts, witness_ts[1:])]
        worst = (min(steps) if steps else 1.0) + 0.0
        counterexample = None
        if worst <= 0.0:
            counterexample = CounterExample(
                {"prefix": float(prefixes[int(np.argmin(steps)) + 1])},
                witness_ts[int(np.argmin(steps)) + 1],
                witness_ts[int(np.argmin(steps))],
                part="witness-not-diverging",
            )
        return make_report(
            "compactness-probe",
            sum(prefixes),
            worst if counterexample is None else min(worst, -1.0),
            0.0,
            counterexample,
            details={"prefixes": prefixes, "witness_ts": witness_ts},
        )

    if isinstance(set_spec, BoxSet):
        lo, hi = as_vector(set_spec.lo), as_vector(set_spec.hi)

        def sample_sequence():
            return rng.uniform(lo, hi, (horizon, lo.size))

        def limit_in_set(limit):
            return bool(np.all(limit >= lo - 1e-12) and np.all(limit <= hi + 1e-12))

        enclosing = (lo, hi)
    elif isinstance(set_spec, FiniteSet):
        pts = np.asarray(set_spec.points, dtype=float)
        lo, hi = pts.min(axis=0), pts.max(axis=0)

        def sample_sequence():
            return pts[rng.integers(0, pts.shape[0], horizon)]

        def limit_in_set(limit):
            return bool(np.any(np.all(np.abs(pts - limit[None, :]) <= 1e-9, axis=1)))

        enclosing = (lo, hi)
    else:
        raise DomainError(f"unsupported set spec {type(set_spec).__name__}")

    worst = np.inf
    counterexample = None
    extraction_lengths = []
    for k in range(sequence_samples):
        seq_pts = sample_sequence()
        if isinstance(set_spec, FiniteSet):
            # Pigeonhole: the most frequent point's index set is the
            # subsequence (first-seen order breaks ties deterministically).
            keys = [tuple(row) for row in seq_pts]
            counts: dict[tuple, int] = {}
            for kk in keys:
                counts[kk] = counts.get(kk, 0) + 1
            best_key = max(counts, key=counts.get)
            picked = [i for i, kk in enumerate(keys) if kk == best_key]
            limit = np.asarray(best_key)
            diameters = [0.0] * len(picked)
        else:
            picked, limit, diameters = bolzano_subsequence(seq_pts, *enclosing)
        extraction_lengths.append(len(picked))

        structural = (
            len(picked) >= 3
            and all(b > a for a, b in zip(picked, picked[1:]))
            and all(b <= a + 1e-12 for a, b in zip(diameters, diameters[1:]))
        )
        in_set = limit_in_set(limit)
        margin = 0.0 if (structural and in_set) else -1.0
        worst = min(worst, margin)
        if margin < 0.0 and counterexample is None:
            counterexample = CounterExample(
                {"sequence": float(k), "limit": tuple(float(v) for v in limit)},
                0.0,
                1.0,
                part="extraction" if not structural else "limit-outside-set",
            )

    return make_report(
        "compactness-probe",
        sequence_samples * horizon,
        worst + 0.0,
        0.0,
        counterexample,
        details={"subsequence_lengths": extraction_lengths},
    )
