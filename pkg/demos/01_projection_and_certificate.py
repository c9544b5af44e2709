#!/usr/bin/env python3
# Walk through the two primitives everything else builds on: projecting a
# symmetric matrix onto a spectral box, and the finite-sample certificate
# arithmetic that tells you how far a data-driven spectrum can stray.

import numpy as np

from sdlscert import (
    CertificateInputs,
    SpectralBox,
    epsilon_value,
    failure_probability,
    lambda_extremes,
    project_spectral_box,
)

# --- eigenvalue clipping --------------------------------------------------
# The Frobenius-nearest matrix with spectrum in [0, 1]: keep eigenvectors,
# clip eigenvalues.

M = np.array([[2.0, 1.0], [1.0, 2.0]])  # eigenvalues 1 and 3
box = SpectralBox(0.0, 1.0)
P = project_spectral_box(M, box)

print("matrix:\n", M)
print("eigenvalues:", lambda_extremes(M))
print("projected onto [0, 1]:\n", P.round(12))  # both eigenvalues clip to 1 -> identity

# --- certificate arithmetic -------------------------------------------------
# With magnitude bound B, regularization rho, N samples, codomain dimension
# ell, Gram constant of the matrix map, and failure probability delta, the
# spectrum of the relaxed solution stays in the target box widened by epsilon.

inputs = CertificateInputs(
    B=1.0,
    rho=1.0,
    N=16,
    ell=2,
    lambda_max_H=1.0,
    delta=2 / np.e,  # makes ln(ell/delta) = 1, so epsilon is exactly 1
    box=box,
)
cert = epsilon_value(inputs)
print("\nsigma:", cert.sigma)
print("epsilon:", cert.epsilon)
print("certified interval:", (cert.interval.lower, cert.interval.upper))
print("confidence:", cert.confidence)

# The tail bound inverts cleanly: feeding epsilon back returns delta.
print("delta recovered:", failure_probability(cert.epsilon, cert.sigma, inputs.ell))

# Twice the data, half the certificate width (epsilon ~ 1/sqrt(N)):
for N in [16, 64, 256]:
    c = epsilon_value(
        CertificateInputs(
            B=1.0, rho=1.0, N=N, ell=2, lambda_max_H=1.0, delta=2 / np.e, box=box
        )
    )
    print(f"N={N:4d}  epsilon={c.epsilon:.4f}")

# JSON form (what the experiment CSVs are derived from):
print("\n", cert.to_json(indent=2))
