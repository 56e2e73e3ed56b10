"""Fuzzy strong phi-b-norms on finite-dimensional real spaces.

A fuzzy strong phi-b-norm is a membership function N(x, t) on X x R with
relaxation constant K >= 1, scalar action rescaled through phi, and a
t-norm for the triangle-type axiom:

  bN1  N(x, t) = 0 for t <= 0
  bN2  N(x, t) = 1 for all t > 0  iff  x = 0
  bN3  N(c x, t) = N(x, t / phi(c))  when phi(c) != 0
  bN4  N(x + y, s + K t) >= N(x, s) * N(y, t)
  bN5  N(x, .) non-decreasing with limit 1 at t -> inf

Two built-in families are provided, both with K = 2**p and phi = |.|**p
for 0 < p <= 1:

  rational:     N(x, t) = t / (t + ||x||**p)
  exponential:  N(x, t) = exp(-||x||**p / t)

where ||.|| is a crisp base norm (the one-dimensional case reduces to the
absolute value).  Arbitrary membership functions can be wrapped as custom
norms and fed to the verifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import (
    ALGEBRAIC_PRODUCT,
    STANDARD_INTERSECTION,
    Phi,
    TNorm,
    abs_power,
    algebraic_product,
    phi_eval,
    standard_intersection,
)
from .errors import DomainError

RATIONAL = "rational"
EXPONENTIAL = "exponential"

BS_FUZZY_NORM = "bs-fuzzy-norm"
STRICT_PHI_B_NORM = "strict-phi-b-norm"

Vector = Sequence[float]


def as_vector(x: Vector) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError("a vector is a non-empty flat list of coordinates")
    if not np.all(np.isfinite(arr)):
        raise DomainError("vector coordinates must be finite")
    return arr


@dataclass(frozen=True)
class CrispNorm:
    """Classical norm on coordinate vectors: l1, l2 or l-infinity."""

    kind: str = "l2"

    def __post_init__(self) -> None:
        if self.kind not in ("l1", "l2", "l-infinity"):
            raise DomainError(f"unknown crisp norm kind {self.kind!r}")

    def value(self, x: Vector) -> float:
        return float(self.value_many(as_vector(x)[None, :])[0])

    def value_many(self, rows: np.ndarray) -> np.ndarray:
        """Row-wise norms of a (n, d) array.

        Plain reductions (no BLAS) keep results bit-identical across thread
        counts, which the deterministic-report contract relies on.
        """
        rows = np.asarray(rows, dtype=float)
        if self.kind == "l1":
            return np.abs(rows).sum(axis=1)
        if self.kind == "l2":
            return np.sqrt((rows * rows).sum(axis=1))
        return np.abs(rows).max(axis=1)


@dataclass(frozen=True)
class FuzzyNorm:
    """A membership function bundled with its constant K, phi, t-norm and
    crisp base norm.

    ``p`` is the exponent of the built-in families; for custom membership
    functions it declares the growth exponent used by the bounded t->inf
    surrogate (defaults to 1 when omitted).
    """

    kind: str
    p: Optional[float] = None
    K: float = 1.0
    phi: Phi = None  # type: ignore[assignment]
    tnorm: TNorm = None  # type: ignore[assignment]
    base: CrispNorm = CrispNorm("l2")
    fn: Optional[Callable[[np.ndarray, float], float]] = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in (RATIONAL, EXPONENTIAL, "custom"):
            raise DomainError(f"unknown fuzzy norm kind {self.kind!r}")
        if self.phi is None:
            object.__setattr__(self, "phi", abs_power(self.p) if self.p else abs_power(1.0))
        if self.tnorm is None:
            object.__setattr__(self, "tnorm", default_tnorm_for(self.kind))
        if not np.isfinite(self.K) or self.K < 1.0:
            raise DomainError(f"relaxation constant K={self.K!r} must be >= 1")
        if self.kind in (RATIONAL, EXPONENTIAL):
            if self.p is None or not 0.0 < self.p <= 1.0:
                raise DomainError(f"built-in kinds require p in (0, 1], got {self.p!r}")
            ok = (self.phi.kind == "abs-power" and self.phi.p == self.p) or (
                self.phi.kind == "abs" and self.p == 1.0
            )
            if not ok:
                raise DomainError("built-in kinds require phi = |.|**p for the same p")
        elif self.fn is None:
            raise DomainError("custom fuzzy norm requires a payload function")

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == "custom":
            return "custom"
        return f"{self.kind}(p={self.p})"

    @property
    def limit_exponent(self) -> float:
        return self.p if self.p is not None else 1.0


def default_tnorm_for(kind: str) -> TNorm:
    """The t-norm each built-in family is proved against: min for the
    rational form, algebraic product for the exponential form."""
    return algebraic_product() if kind == EXPONENTIAL else standard_intersection()


def make_example_norm(
    kind: str,
    p: float,
    base: Optional[CrispNorm] = None,
    tnorm: Optional[TNorm] = None,
) -> FuzzyNorm:
    """Build one of the two built-in norms with K = 2**p and phi = |.|**p.

    Any t-norm passing the axiom checker is accepted in place of the
    default pairing.
    """
    if kind not in (RATIONAL, EXPONENTIAL):
        raise DomainError(f"kind must be rational or exponential, got {kind!r}")
    if not 0.0 < p <= 1.0:
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    return FuzzyNorm(
        kind=kind,
        p=float(p),
        K=2.0 ** p,
        phi=abs_power(p),
        tnorm=tnorm if tnorm is not None else default_tnorm_for(kind),
        base=base if base is not None else CrispNorm("l2"),
    )


def rational_power_norm(
    exponent: float,
    K: float = 1.0,
    base: Optional[CrispNorm] = None,
    tnorm: Optional[TNorm] = None,
) -> FuzzyNorm:
    """Rational-form membership t / (t + ||x||**q) for an arbitrary
    exponent q > 0, wrapped as a custom norm.

    For q > 1 this is the canonical falsification target: bN4 fails for
    small constants (e.g. q = 2 with K = 1), while bN3 still holds with
    phi = |.|**q.
    """
    if not exponent > 0:
        raise DomainError("exponent must be positive")
    crisp = base if base is not None else CrispNorm("l2")

    def fn(x: np.ndarray, t: float) -> float:
        return t / (t + crisp.value_many(x[None, :])[0] ** exponent)

    return FuzzyNorm(
        kind="custom",
        p=float(exponent),
        K=float(K),
        phi=abs_power(exponent),
        tnorm=tnorm if tnorm is not None else standard_intersection(),
        base=crisp,
        fn=fn,
        name=f"rational-power(q={exponent}, K={K})",
    )


def membership(norm: FuzzyNorm, x: Vector, t: float) -> float:
    """Degree to which the norm of ``x`` is below ``t``; exactly 0 for
    t <= 0 regardless of the membership family."""
    if np.isnan(t):
        raise DomainError("t is NaN")
    vec = as_vector(x)
    if t <= 0.0:
        return 0.0
    return float(membership_many(norm, vec[None, :], np.asarray([t], dtype=float))[0])


def membership_many(norm: FuzzyNorm, rows: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Vectorised membership over (n, d) vectors and matching t values."""
    rows = np.asarray(rows, dtype=float)
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=float)
    positive = t > 0.0
    if not np.any(positive):
        return out
    if norm.kind == RATIONAL:
        b = norm.base.value_many(rows[positive]) ** norm.p
        tp = t[positive]
        out[positive] = tp / (tp + b)
    elif norm.kind == EXPONENTIAL:
        b = norm.base.value_many(rows[positive]) ** norm.p
        out[positive] = np.exp(-b / t[positive])
    else:
        idx = np.nonzero(positive)[0]
        vals = np.fromiter(
            (norm.fn(rows[i], float(t[i])) for i in idx), dtype=float, count=idx.size
        )
        out[positive] = vals
    return out


def membership_profile(norm: FuzzyNorm, rows: np.ndarray, t_grid: np.ndarray) -> np.ndarray:
    """Membership of each row at each t: returns an array of shape
    (len(t_grid), len(rows))."""
    rows = np.asarray(rows, dtype=float)
    t_grid = np.asarray(t_grid, dtype=float)
    n, g = rows.shape[0], t_grid.size
    tiled_t = np.repeat(t_grid, n)
    tiled_rows = np.tile(rows, (g, 1))
    return membership_many(norm, tiled_rows, tiled_t).reshape(g, n)


def scalar_rescale_identity(norm: FuzzyNorm, x: Vector, t: float, c: float) -> tuple[float, float]:
    """Both sides of the scalar-action identity: (N(c x, t), N(x, t / phi(c))).

    Raises when phi(c) = 0, the excluded case of the identity (c = 0 for
    the built-in phi families).
    """
    if not t > 0:
        raise DomainError("t must be positive")
    phic = phi_eval(norm.phi, c)
    if phic == 0.0:
        raise DomainError(f"phi(c) = 0 for c={c!r}: the rescale identity excludes this case")
    vec = as_vector(x)
    lhs = membership(norm, c * vec, t)
    rhs = membership(norm, vec, t / phic)
    return lhs, rhs


def classify_reduction(norm: FuzzyNorm) -> str:
    """Classify against the classical (Bag-Samanta style) special case:
    K = 1 with phi = |.| reduces to an ordinary fuzzy norm."""
    if norm.K == 1.0 and norm.phi.is_abs_like():
        return BS_FUZZY_NORM
    return STRICT_PHI_B_NORM


def limit_time(norm: FuzzyNorm, x: Vector) -> float:
    """Bounded surrogate horizon for the t -> inf limit of bN5."""
    b = norm.base.value(x)
    return 1e9 * (1.0 + b ** norm.limit_exponent)


def power_inequality_sides(K: float, p: float, x: float, y: float) -> tuple[float, float]:
    """Sides of |x + y|**p <= K |x|**p + |y|**p (K = 2**p in the built-in
    proofs; holds for all reals when 0 < p <= 1)."""
    lhs = abs(x + y) ** p
    rhs = K * abs(x) ** p + abs(y) ** p
    return lhs, rhs


def zero_vector(dim: int) -> np.ndarray:
    if dim < 1:
        raise DomainError("dimension must be >= 1")
    return np.zeros(dim, dtype=float)


def basis_vector(dim: int, index: int = 0) -> np.ndarray:
    e = zero_vector(dim)
    e[index] = 1.0
    return e


def is_zero_vector(x: Vector) -> bool:
    return bool(np.all(as_vector(x) == 0.0))


def norm_tuple(x: Vector) -> tuple[float, ...]:
    return tuple(float(v) for v in as_vector(x))


def math_isclose(a: float, b: float, tol: float = 1e-9) -> bool:
    return math.isclose(a, b, rel_tol=0.0, abs_tol=tol)
