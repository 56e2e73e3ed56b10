"""phibnorm: construction and numerical verification of fuzzy strong
phi-b-normed linear spaces.

Core objects: t-norms and scalar-rescaling functions (``algebra``), the
membership structures themselves (``fuzzynorm``), a seeded axiom
verifier with counterexample shrinking (``verifier``), sequence and set
diagnostics (``analysis``), and finite-dimensional probes (``findim``).
A YAML-configured runner backs both the CLI and the FastAPI service.
"""

from .algebra import (
    Phi,
    TNorm,
    abs_power,
    algebraic_product,
    bounded_difference,
    check_continuity_at_one,
    check_phi_axioms,
    check_tnorm_axioms,
    custom_phi,
    custom_tnorm,
    phi_abs,
    phi_eval,
    rational_even,
    standard_intersection,
    tnorm_eval,
)
from .analysis import (
    ConvergenceVerdict,
    SequenceGen,
    ball_contains,
    check_cauchy,
    check_convergence,
    check_fuzzy_bounded,
    divergent_ray,
    explicit_list,
    geometric_approach,
    probe_openness,
)
from .config import RunConfig, parse_config
from .errors import CertificateError, ConfigError, DomainError, PhibnormError
from .findim import (
    BasisSet,
    Lemma1Estimate,
    box_set,
    build_basis,
    estimate_lemma1_constants,
    finite_set,
    probe_compactness,
    probe_completeness,
    standard_basis,
    unbounded_ray,
    verify_lemma1_certificate,
)
from .fuzzynorm import (
    CrispNorm,
    FuzzyNorm,
    classify_reduction,
    make_example_norm,
    membership,
    rational_power_norm,
    scalar_rescale_identity,
)
from .reporting import RunReport, parse_report, render_report, report_fingerprint
from .reports import CheckReport, CounterExample
from .runner import run
from .verifier import SamplerConfig, check_axiom, run_full_suite, shrink

__version__ = "0.1.0"

__all__ = [
    "Phi", "TNorm", "abs_power", "algebraic_product", "bounded_difference",
    "check_continuity_at_one", "check_phi_axioms", "check_tnorm_axioms",
    "custom_phi", "custom_tnorm", "phi_abs", "phi_eval", "rational_even",
    "standard_intersection", "tnorm_eval",
    "ConvergenceVerdict", "SequenceGen", "ball_contains", "check_cauchy",
    "check_convergence", "check_fuzzy_bounded", "divergent_ray",
    "explicit_list", "geometric_approach", "probe_openness",
    "RunConfig", "parse_config",
    "CertificateError", "ConfigError", "DomainError", "PhibnormError",
    "BasisSet", "Lemma1Estimate", "box_set", "build_basis",
    "estimate_lemma1_constants", "finite_set", "probe_compactness",
    "probe_completeness", "standard_basis", "unbounded_ray",
    "verify_lemma1_certificate",
    "CrispNorm", "FuzzyNorm", "classify_reduction", "make_example_norm",
    "membership", "rational_power_norm", "scalar_rescale_identity",
    "RunReport", "parse_report", "render_report", "report_fingerprint",
    "CheckReport", "CounterExample",
    "run",
    "SamplerConfig", "check_axiom", "run_full_suite", "shrink",
]
