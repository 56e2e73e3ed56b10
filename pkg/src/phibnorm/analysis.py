"""Sequence and set diagnostics inside a fuzzy strong phi-b-normed space.

Limits over all t > 0 are replaced by a finite log-spaced t grid and a
final-index window: a sequence "converges at desk scale" when the
membership of its tail differences sits above 1 - tol on every grid t and
shows no decreasing trend.  Verdict names are explicit about the horizon
dependence; no finite computation decides a genuine limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .fuzzynorm import FuzzyNorm, Vector, as_vector, membership, membership_profile

CONVERGES = "converges-to"
CAUCHY_ONLY = "cauchy-but-undetected-limit"
NOT_CAUCHY = "not-cauchy-at-horizon"

#: Default evaluation grid for the time argument (16 points, 1e-3 .. 1e3).
DEFAULT_T_GRID = tuple(float(t) for t in np.logspace(-3.0, 3.0, 16))

#: Boundedness searches look for the threshold on this fixed grid; keeping
#: it independent of r makes the witness monotone in r.
_BOUNDED_T_GRID = 10.0 ** np.linspace(-9.0, 12.0, 337)

GEOMETRIC = "geometric-approach"
EXPLICIT = "explicit-list"
DIVERGENT_RAY = "divergent-ray"


@dataclass(frozen=True)
class SequenceGen:
    """Declarative vector sequence: geometric approach x* + r**n d,
    an explicit point list, the divergent ray n d, or a custom index map."""

    kind: str
    horizon: int = 200
    target: Optional[tuple[float, ...]] = None
    direction: Optional[tuple[float, ...]] = None
    ratio: Optional[float] = None
    points: Optional[tuple[tuple[float, ...], ...]] = None
    fn: Optional[Callable[[int], Vector]] = None

    def __post_init__(self) -> None:
        if self.horizon < 2:
            raise DomainError("horizon must be >= 2")
        if self.kind == GEOMETRIC:
            if self.target is None or self.direction is None or self.ratio is None:
                raise DomainError("geometric-approach needs target, direction and ratio")
            if not abs(self.ratio) < 1.0:
                raise DomainError("geometric-approach needs |ratio| < 1")
        elif self.kind == DIVERGENT_RAY:
            if self.direction is None:
                raise DomainError("divergent-ray needs a direction")
        elif self.kind == EXPLICIT:
            if not self.points:
                raise DomainError("explicit-list needs at least one point")
            if self.horizon > len(self.points):
                raise DomainError("horizon exceeds the explicit point list")
        elif self.kind == "custom":
            if self.fn is None:
                raise DomainError("custom sequence needs an index map")
        else:
            raise DomainError(f"unknown sequence kind {self.kind!r}")

    @property
    def max_index(self) -> Optional[int]:
        """Largest evaluable index; None when the generator is unbounded."""
        return len(self.points) if self.kind == EXPLICIT else None

    def block(self, start: int, stop: int) -> np.ndarray:
        """Points x_start .. x_stop (1-based, inclusive) as an (m, d) array."""
        if start < 1 or stop < start:
            raise DomainError("invalid index block")
        ns = np.arange(start, stop + 1, dtype=float)
        if self.kind == GEOMETRIC:
            target = as_vector(self.target)
            direction = as_vector(self.direction)
            return target[None, :] + (self.ratio ** ns)[:, None] * direction[None, :]
        if self.kind == DIVERGENT_RAY:
            direction = as_vector(self.direction)
            return ns[:, None] * direction[None, :]
        if self.kind == EXPLICIT:
            if stop > len(self.points):
                raise DomainError("index block exceeds the explicit point list")
            return np.asarray(self.points[start - 1:stop], dtype=float)
        return np.vstack([as_vector(self.fn(int(n))) for n in range(start, stop + 1)])


def geometric_approach(target: Vector, direction: Vector, ratio: float, horizon: int = 200) -> SequenceGen:
    return SequenceGen(
        GEOMETRIC,
        horizon=horizon,
        target=tuple(float(v) for v in as_vector(target)),
        direction=tuple(float(v) for v in as_vector(direction)),
        ratio=float(ratio),
    )


def divergent_ray(direction: Vector, horizon: int = 200) -> SequenceGen:
    return SequenceGen(
        DIVERGENT_RAY,
        horizon=horizon,
        direction=tuple(float(v) for v in as_vector(direction)),
    )


def explicit_list(points: Sequence[Vector], horizon: Optional[int] = None) -> SequenceGen:
    pts = tuple(tuple(float(v) for v in as_vector(p)) for p in points)
    return SequenceGen(EXPLICIT, horizon=horizon if horizon is not None else len(pts), points=pts)


def custom_sequence(fn: Callable[[int], Vector], horizon: int = 200) -> SequenceGen:
    return SequenceGen("custom", horizon=horizon, fn=fn)


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Desk-scale verdict with its evidence.

    ``evidence`` pairs each grid t with the worst membership seen over the
    final index window; ``worst_gap`` is the largest distance from 1 among
    those, so slow divergence that stays under the tolerance is still
    visible in the report.
    """

    verdict: str
    limit: Optional[tuple[float, ...]] = None
    evidence: tuple[tuple[float, float], ...] = ()
    worst_gap: float = 0.0
    window_start: int = 0
    horizon: int = 0

    @property
    def converged(self) -> bool:
        return self.verdict == CONVERGES

    @property
    def cauchy(self) -> bool:
        return self.verdict in (CONVERGES, CAUCHY_ONLY)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "limit": list(self.limit) if self.limit is not None else None,
            "evidence": [[t, v] for t, v in self.evidence],
            "worst_gap": self.worst_gap,
            "window_start": self.window_start,
            "horizon": self.horizon,
        }


def _validate_grid_tol(t_grid, tol) -> np.ndarray:
    grid = np.asarray([float(t) for t in t_grid], dtype=float)
    if grid.size == 0:
        raise DomainError("t grid must be nonempty")
    if np.any(grid <= 0.0):
        raise DomainError("t grid entries must be positive")
    if not 0.0 < tol < 1.0:
        raise DomainError("tol must lie in (0, 1)")
    return grid


def _window_start(horizon: int) -> int:
    return horizon - max(1, horizon // 10) + 1


def check_convergence(
    norm: FuzzyNorm,
    seq: SequenceGen,
    candidate: Vector,
    t_grid=DEFAULT_T_GRID,
    tol: float = 1e-6,
    horizon: Optional[int] = None,
) -> ConvergenceVerdict:
    """Judge whether ``seq`` converges to ``candidate``.

    Converges-to requires, for every grid t, membership of x_n - candidate
    at least 1 - tol across the final window (last 10% of the horizon) and
    a non-decreasing trend (least-squares slope >= -tol) over the whole
    run.  Otherwise the verdict falls back to the Cauchy classification.
    """
    grid = _validate_grid_tol(t_grid, tol)
    h = min(horizon or seq.horizon, seq.max_index or (horizon or seq.horizon))
    cand = as_vector(candidate)
    diffs = seq.block(1, h) - cand[None, :]
    profile = membership_profile(norm, diffs, grid)  # (T, h)

    ws = _window_start(h)
    window_worst = profile[:, ws - 1:].min(axis=1)
    ns = np.arange(1, h + 1, dtype=float)
    ns_centered = ns - ns.mean()
    denom = float((ns_centered * ns_centered).sum())
    slopes = (profile * ns_centered[None, :]).sum(axis=1) / denom

    evidence = tuple((float(t), float(v)) for t, v in zip(grid, window_worst))
    worst_gap = float(np.max(1.0 - window_worst))
    if np.all(window_worst >= 1.0 - tol) and np.all(slopes >= -tol):
        return ConvergenceVerdict(
            CONVERGES,
            limit=tuple(float(v) for v in cand),
            evidence=evidence,
            worst_gap=worst_gap,
            window_start=ws,
            horizon=h,
        )
    fallback = check_cauchy(norm, seq, t_grid=t_grid, tol=tol, horizon=h)
    return ConvergenceVerdict(
        fallback.verdict,
        limit=None,
        evidence=evidence,
        worst_gap=worst_gap,
        window_start=ws,
        horizon=h,
    )


def check_cauchy(
    norm: FuzzyNorm,
    seq: SequenceGen,
    t_grid=DEFAULT_T_GRID,
    tol: float = 1e-6,
    horizon: Optional[int] = None,
) -> ConvergenceVerdict:
    """Judge the Cauchy property on tail increments.

    For every grid t and stride p in 1 .. horizon/4, membership of
    x_{n+p} - x_n must reach 1 - tol for all n in the final window.
    Explicit lists cap n+p at their length; generator kinds evaluate past
    the horizon.
    """
    grid = _validate_grid_tol(t_grid, tol)
    h = min(horizon or seq.horizon, seq.max_index or (horizon or seq.horizon))
    ws = _window_start(h)
    p_max = max(1, h // 4)
    top = h if seq.max_index is not None else h + p_max
    pts = seq.block(1, top)

    pairs = [(n, n + p) for n in range(ws, h + 1) for p in range(1, p_max + 1) if n + p <= top]
    if not pairs:
        raise DomainError("horizon too small for a Cauchy window")
    increments = np.asarray([pts[b - 1] - pts[a - 1] for a, b in pairs])
    profile = membership_profile(norm, increments, grid)
    window_worst = profile.min(axis=1)

    evidence = tuple((float(t), float(v)) for t, v in zip(grid, window_worst))
    worst_gap = float(np.max(1.0 - window_worst))
    verdict = CAUCHY_ONLY if np.all(window_worst >= 1.0 - tol) else NOT_CAUCHY
    return ConvergenceVerdict(
        verdict,
        limit=None,
        evidence=evidence,
        worst_gap=worst_gap,
        window_start=ws,
        horizon=h,
    )


def ball_contains(norm: FuzzyNorm, center: Vector, alpha: float, t: float, y: Vector) -> bool:
    """Open-ball membership: N(center - y, t) > 1 - alpha."""
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1)")
    if not t > 0.0:
        raise DomainError("t must be positive")
    diff = as_vector(center) - as_vector(y)
    return membership(norm, diff, t) > 1.0 - alpha


def _unit_directions(dim: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(0xD1F)
    raw = rng.standard_normal((count, dim))
    norms = np.sqrt((raw * raw).sum(axis=1))
    norms[norms == 0.0] = 1.0
    return raw / norms[:, None]


def _ball_extents(norm: FuzzyNorm, directions: np.ndarray, alpha: float, t: float) -> np.ndarray:
    """Per-direction radius at which membership crosses the 1 - alpha
    threshold (monotone bisection; capped at 1e9 for effectively
    unbounded balls)."""
    count = directions.shape[0]
    threshold = 1.0 - alpha

    def inside(rho: np.ndarray) -> np.ndarray:
        vals = membership_profile(norm, directions * rho[:, None], np.asarray([t]))[0]
        return vals > threshold

    hi = np.ones(count)
    for _ in range(64):
        mask = inside(hi)
        if not mask.any() or np.all(hi >= 1e9):
            break
        hi = np.where(mask & (hi < 1e9), hi * 2.0, hi)
    lo = np.zeros(count)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        mask = inside(mid)
        lo = np.where(mask, mid, lo)
        hi = np.where(mask, hi, mid)
    return np.minimum(0.5 * (lo + hi), 1e9)


def probe_openness(
    norm: FuzzyNorm,
    set_predicate: Callable[[np.ndarray], bool],
    probe_points: Sequence[Vector],
    search_grid: Sequence[tuple[float, float]] = ((0.5, 1.0), (0.25, 0.5), (0.1, 0.1), (0.01, 0.01)),
):
    """Sampled openness: each probe point must own a ball inside the set.

    For every (alpha, t) on the search grid the candidate ball around a
    probe point is tested on 64 * dim deterministic directions at graded
    fractions of the per-direction extent; the probe passes as soon as one
    grid ball fits.  Returns a CheckReport; an empty probe list passes
    vacuously.
    """
    from .reports import CounterExample, make_report

    probes = [as_vector(p) for p in probe_points]
    for p in probes:
        if not set_predicate(p):
            raise DomainError("every probe point must satisfy the set predicate")

    fractions = np.asarray([0.25, 0.5, 0.75, 0.9, 0.99])
    witnesses = []
    failed = None
    samples = 0
    for p in probes:
        directions = _unit_directions(p.size, 64 * p.size)
        found = None
        for alpha, t in search_grid:
            if not (0.0 < alpha < 1.0 and t > 0.0):
                raise DomainError("search grid entries must have alpha in (0,1) and t > 0")
            extents = _ball_extents(norm, directions, alpha, t)
            ok = True
            for frac in fractions:
                candidates = p[None, :] + frac * extents[:, None] * directions
                samples += candidates.shape[0]
                if not all(set_predicate(row) for row in candidates):
                    ok = False
                    break
            if ok:
                found = (float(alpha), float(t))
                break
        witnesses.append(found)
        if found is None and failed is None:
            failed = p

    passed = failed is None
    counterexample = None
    if not passed:
        counterexample = CounterExample(
            {"probe": tuple(float(v) for v in failed)}, 0.0, 1.0, part="no-interior-ball"
        )
    return make_report(
        "openness-probe",
        samples,
        0.0 if passed else -1.0,
        0.5,
        counterexample,
        details={"witnesses": [list(w) if w else None for w in witnesses]},
    )


def check_fuzzy_bounded(
    norm: FuzzyNorm, points: Sequence[Vector], r: float
) -> tuple[bool, Optional[float]]:
    """First t on a fixed log grid (up to 1e12) with N(x, t) > 1 - r for
    every listed point; (False, None) when even the grid top fails.

    Uses the threshold 1 - r: the verbatim "membership above 1" reading is
    unsatisfiable for any nonzero vector, so the standard corrected form is
    implemented and flagged in reports.
    """
    if len(points) == 0:
        raise DomainError("points must be nonempty")
    if not 0.0 < r < 1.0:
        raise DomainError("r must lie in (0, 1)")
    rows = np.vstack([as_vector(p) for p in points])
    threshold = 1.0 - r
    profile = membership_profile(norm, rows, _BOUNDED_T_GRID)  # (G, P)
    qualifies = profile.min(axis=1) > threshold
    idx = np.nonzero(qualifies)[0]
    if idx.size == 0:
        return False, None
    return True, float(_BOUNDED_T_GRID[idx[0]])


BOUNDED_DEVIATION_NOTE = (
    "boundedness threshold read as N(x, t) > 1 - r; the literal '> 1' form "
    "is unsatisfiable for nonzero vectors"
)
