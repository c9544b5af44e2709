"""Symmetric-matrix primitives.

Eigendecomposition, extreme eigenvalues, and the Frobenius-nearest
projection of a symmetric matrix onto a "spectral box", i.e. the convex
set of symmetric matrices whose eigenvalues all lie in an interval
``[lower, upper]``.  The projection keeps the eigenvectors and clips the
eigenvalues into the interval, which is the classical nearest-matrix
recipe for semidefinite-type constraints.

All operations are pure functions of immutable inputs and are safe to
call concurrently.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

# Relative residual that double-precision symmetric eigensolvers are
# expected to achieve at the dimensions targeted here (ell <= ~100).
RECONSTRUCTION_TOL = 1e-10

# Asymmetry above this fraction of the largest entry triggers a warning
# on ingest; smaller asymmetries (typical solver roundoff) are silently
# averaged away.
ASYMMETRY_WARN_TOL = 1e-12


def as_symmetric(M, name="matrix"):
    """Validate a square real matrix and return it exactly symmetrized.

    Symmetry is enforced by averaging ``(M + M.T) / 2``, which is exact
    in floating point: entries (i, j) and (j, i) add the same pair of
    numbers.  Non-finite entries raise ``ValueError``; asymmetry beyond
    ``ASYMMETRY_WARN_TOL`` times the largest entry magnitude warns.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be a square 2-d array, got shape {M.shape}")
    if M.size and not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    if M.size:
        asym = float(np.abs(M - M.T).max())
        if asym > ASYMMETRY_WARN_TOL * float(np.abs(M).max()):
            warnings.warn(
                f"{name} asymmetry {asym:.3e} exceeds ingest tolerance; symmetrizing",
                stacklevel=2,
            )
    return (M + M.T) / 2.0


@dataclass(frozen=True)
class SpectralBox:
    """Closed eigenvalue interval ``[lower, upper]``."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)):
            raise ValueError("box bounds must be finite")
        if self.lower > self.upper:
            raise ValueError(f"empty box: lower={self.lower} > upper={self.upper}")

    def widened(self, margin):
        """The box enlarged by ``margin`` on both sides."""
        return SpectralBox(self.lower - margin, self.upper + margin)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral factorization ``M = V diag(w) V.T`` with ascending ``w``.

    Orthogonality and reconstruction residuals are guaranteed to stay
    below ``RECONSTRUCTION_TOL`` relative to the matrix scale.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        V = self.eigenvectors
        return as_symmetric((V * self.eigenvalues) @ V.T)


def eig_sym(M):
    """Eigendecomposition of a symmetric matrix, eigenvalues ascending.

    Ties are left in whatever stable order the solver produces; only the
    extremes and the clipped reconstruction matter downstream.
    """
    M = as_symmetric(M)
    try:
        w, V = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"symmetric eigensolver did not converge on a {M.shape[0]}x{M.shape[0]} "
            f"matrix (max entry {np.abs(M).max():.3e}): {exc}"
        ) from exc
    return EigenDecomposition(eigenvalues=w, eigenvectors=V)


def lambda_extremes(M):
    """Return ``(lambda_min, lambda_max)`` of a symmetric matrix."""
    w = eig_sym(M).eigenvalues
    return float(w[0]), float(w[-1])


def project_spectral_box(M, box):
    """Frobenius-nearest symmetric matrix with spectrum inside ``box``.

    Keeps the eigenvectors of ``M`` and clips each eigenvalue into
    ``[box.lower, box.upper]``.  Idempotent and nonexpansive in the
    Frobenius norm.
    """
    dec = eig_sym(M)
    w = np.clip(dec.eigenvalues, box.lower, box.upper)
    V = dec.eigenvectors
    return as_symmetric((V * w) @ V.T)


def spectrum_in_box(M, box, tol=0.0):
    """Whether all eigenvalues of ``M`` lie in ``box`` up to slack ``tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    lo, hi = lambda_extremes(M)
    return bool(lo >= box.lower - tol and hi <= box.upper + tol)
