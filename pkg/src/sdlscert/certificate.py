"""Finite-sample certificate for the spectrum of the relaxed solution.

Given a data/solution magnitude bound B, regularization weight rho,
sample count N, codomain dimension ell, the Gram constant of the matrix
map (see :mod:`sdlscert.lmi`), and a failure probability delta in (0, 1),
the certificate states that with probability at least 1 - delta the
spectrum of the map evaluated at the relaxed minimizer stays inside the
target interval widened by

    epsilon = (4 B / (rho sqrt(N))) * sqrt(gram_lambda_max * ln(ell / delta)).

The derivation goes through a matrix bounded-difference inequality:
replacing one of the N samples moves the minimizer by at most
sqrt(2) B / (rho N), giving the variance proxy

    sigma = (B / rho) * sqrt(2 * gram_lambda_max / N)

and a one-sided tail ``delta(eps) = ell * exp(-eps^2 / (8 sigma^2))`` per
spectral direction; epsilon above is exactly ``2 sigma sqrt(2 ln(ell/delta))``.

Two caveats are inherited from the underlying argument and reproduced
here without tightening:

* the per-tail bound is applied to both the top and bottom of the
  spectrum and stated two-sided at confidence 1 - delta, without a
  union-bound factor of 2;
* the expectation of the relaxed minimizer is assumed to equal the true
  parameter ("noisy but unbiased" data), although ridge regularization
  generally introduces a bias.

B is never constructed a priori.  :func:`estimate_bound` provides an
empirical plug-in, flagged as heuristic in every serialized output; a
user override switches the flag off and the burden of proof to the
caller.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .spectral import SpectralBox


def sigma_value(B, rho, N, gram_lambda_max):
    """Variance proxy ``(B / rho) * sqrt(2 * gram_lambda_max / N)``."""
    if not (B > 0):
        raise ValueError("B must be positive")
    if not (rho > 0):
        raise ValueError("rho must be positive")
    if not (N >= 1):
        raise ValueError("N must be at least 1")
    if gram_lambda_max < 0:
        raise ValueError("gram_lambda_max must be nonnegative")
    return (B / rho) * math.sqrt(2.0 * gram_lambda_max / N)


def failure_probability(epsilon, sigma, ell):
    """Per-tail failure probability ``min(1, ell * exp(-eps^2 / (8 sigma^2)))``.

    This inverts :func:`epsilon_value`: feeding its epsilon back in
    returns the original delta.  The value is the single-tail bound; the
    certificate applies it to both spectral extremes and reports the
    two-sided containment at confidence ``1 - delta`` (no extra
    union-bound factor), matching the arithmetic of the underlying
    concentration argument.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if sigma == 0.0:
        return min(1.0, float(ell)) if epsilon == 0.0 else 0.0
    return min(1.0, ell * math.exp(-(epsilon**2) / (8.0 * sigma**2)))


@dataclass(frozen=True)
class CertificateInputs:
    """Everything the certificate arithmetic consumes.

    ``B`` bounds the magnitude of the data rows, observations, and
    solution; ``B_is_heuristic`` records whether it came from the
    empirical plug-in (True) or a caller-supplied bound (False).
    """

    B: float
    rho: float
    N: int
    ell: int
    lambda_max_H: float
    delta: float
    box: SpectralBox
    B_is_heuristic: bool = True

    def __post_init__(self):
        if not (self.B > 0):
            raise ValueError("B must be positive")
        if not (self.rho > 0):
            raise ValueError("rho must be positive")
        if not (self.N >= 1):
            raise ValueError("N must be at least 1")
        if not (self.ell >= 1):
            raise ValueError("ell must be at least 1 (keeps ln(ell/delta) positive)")
        if self.lambda_max_H < 0:
            raise ValueError("lambda_max_H must be nonnegative")
        if not (0.0 < self.delta < 1.0):
            raise ValueError("delta must lie strictly inside (0, 1)")


@dataclass(frozen=True)
class Certificate:
    """Computed certificate: sigma, epsilon, and the widened interval."""

    inputs: CertificateInputs
    sigma: float
    epsilon: float
    interval: SpectralBox

    @property
    def confidence(self):
        return 1.0 - self.inputs.delta

    def as_dict(self):
        i = self.inputs
        return {
            "B": i.B,
            "B_is_heuristic": i.B_is_heuristic,
            "rho": i.rho,
            "N": i.N,
            "ell": i.ell,
            "lambda_max_H": i.lambda_max_H,
            "delta": i.delta,
            "sigma": self.sigma,
            "epsilon": self.epsilon,
            "interval": [self.interval.lower, self.interval.upper],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.as_dict(), **kwargs)


def epsilon_value(inputs):
    """Build the :class:`Certificate` for the given inputs.

    ``epsilon = (4 B / (rho sqrt(N))) * sqrt(lambda_max_H * ln(ell/delta))``,
    identical to ``2 sigma sqrt(2 ln(ell/delta))`` up to roundoff.  The
    returned interval is the target box widened by epsilon on each side.
    """
    i = inputs
    log_term = math.log(i.ell / i.delta)
    sigma = sigma_value(i.B, i.rho, i.N, i.lambda_max_H)
    epsilon = (4.0 * i.B / (i.rho * math.sqrt(i.N))) * math.sqrt(
        i.lambda_max_H * log_term
    )
    return Certificate(
        inputs=i, sigma=sigma, epsilon=epsilon, interval=i.box.widened(epsilon)
    )


@dataclass(frozen=True)
class BoundEstimate:
    """A value for B plus its provenance.

    ``is_heuristic`` is True for the empirical plug-in (a consistency
    check on observed magnitudes, not a proven a-priori bound) and False
    for a caller-supplied override.
    """

    value: float
    is_heuristic: bool
    components: dict


def estimate_bound(sys, x_star, override=None):
    """Empirical plug-in for B, or a caller override.

    The plug-in is ``max(max row norm of A, max |b_i|, ||x_star||)`` --
    the largest magnitude among the quantities the bound is supposed to
    dominate.  It is flagged heuristic because it is measured on the one
    realized dataset rather than proven over the sampling distribution.
    """
    if override is not None:
        if not (override > 0):
            raise ValueError("override bound must be positive")
        return BoundEstimate(value=float(override), is_heuristic=False, components={})
    x_star = np.asarray(x_star, dtype=float).reshape(-1)
    row_norms = np.linalg.norm(sys.A, axis=1)
    components = {
        "max_row_norm": float(row_norms.max()),
        "max_abs_b": float(np.abs(sys.b).max()),
        "solution_norm": float(np.linalg.norm(x_star)),
    }
    return BoundEstimate(
        value=max(components.values()), is_heuristic=True, components=components
    )
