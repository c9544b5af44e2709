"""Relaxed semidefinite least squares with finite-sample spectral certificates.

The package solves data-driven ridge least squares problems whose
semidefinite spectral constraints have been dropped, computes a
finite-sample certificate that the relaxed solution's spectrum stays
epsilon-close to the constrained interval, and validates the certificate
by Monte Carlo experiment against an operator-splitting baseline that
enforces the constraint exactly.
"""

from .admm import AdmmConfig, AdmmResult, SdlsProblem, solve_admm, time_solvers
from .certificate import (
    BoundEstimate,
    Certificate,
    CertificateInputs,
    epsilon_value,
    estimate_bound,
    failure_probability,
    sigma_value,
)
from .descent import (
    DescentConfig,
    DescentTrace,
    error_ball_bound,
    run_descent,
    step_size_bound,
)
from .errors import DivergenceError, NumericalError
from .lmi import LmiMap
from .quadfit import (
    QuadModel,
    SampleSet,
    assemble_design,
    gen_model,
    model_from_json,
    model_to_json,
    pack,
    param_dim,
    quadfit_lmi,
    sample,
    true_minimizer,
    unpack,
)
from .ridge import (
    DesignSystem,
    LsSolution,
    objective_value,
    solve_ridge,
    solve_ridge_iterative,
)
from .spectral import (
    EigenDecomposition,
    SpectralBox,
    as_symmetric,
    eig_sym,
    lambda_extremes,
    project_spectral_box,
    spectrum_in_box,
)

__version__ = "0.1.0"

__all__ = [
    "AdmmConfig",
    "AdmmResult",
    "BoundEstimate",
    "Certificate",
    "CertificateInputs",
    "DescentConfig",
    "DescentTrace",
    "DesignSystem",
    "DivergenceError",
    "EigenDecomposition",
    "LmiMap",
    "LsSolution",
    "NumericalError",
    "QuadModel",
    "SampleSet",
    "SdlsProblem",
    "SpectralBox",
    "as_symmetric",
    "assemble_design",
    "eig_sym",
    "epsilon_value",
    "error_ball_bound",
    "estimate_bound",
    "failure_probability",
    "gen_model",
    "lambda_extremes",
    "model_from_json",
    "model_to_json",
    "objective_value",
    "pack",
    "param_dim",
    "project_spectral_box",
    "quadfit_lmi",
    "run_descent",
    "sample",
    "sigma_value",
    "solve_admm",
    "solve_ridge",
    "solve_ridge_iterative",
    "spectrum_in_box",
    "step_size_bound",
    "time_solvers",
    "true_minimizer",
    "unpack",
]
