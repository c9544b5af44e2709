"""Affine maps into symmetric matrices.

An :class:`LmiMap` is the map ``x -> offset + x[0]*basis[0] + ... +
x[n-1]*basis[n-1]`` with symmetric offset and basis matrices.  Besides
evaluation it exposes the top eigenvalue of the Gram matrix of the
stacked basis, ``lambda_max(sum_k basis[k] @ basis[k])``, the constant
that scales the finite-sample spectral certificate: for any two inputs,

    lambda_max((F(x) - F(y))^2) <= gram_lambda_max * ||x - y||^2.

The Gram matrix is formed in the codomain (an ell-by-ell eigenproblem)
rather than as the ell*n-by-ell*n stacked outer product, which has the
same nonzero spectrum at a fraction of the cost.
"""

from dataclasses import dataclass, field

import numpy as np

from .spectral import as_symmetric


@dataclass
class LmiMap:
    """Affine symmetric-matrix map ``x -> offset + sum_k x[k] basis[k]``.

    Parameters
    ----------
    offset : (ell, ell) array_like
        Constant term; symmetrized on ingest.
    basis : (n, ell, ell) array_like
        At least one symmetric coefficient matrix, one per coordinate.
    """

    offset: np.ndarray
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.offset = as_symmetric(self.offset, name="offset")
        basis = np.asarray(self.basis, dtype=float)
        if basis.ndim != 3:
            raise ValueError(f"basis must be a (n, ell, ell) array, got shape {basis.shape}")
        if basis.shape[0] < 1:
            raise ValueError("need at least one basis matrix")
        if basis.shape[1:] != self.offset.shape:
            raise ValueError(
                f"basis blocks {basis.shape[1:]} do not match offset {self.offset.shape}"
            )
        self.basis = np.stack(
            [as_symmetric(B, name=f"basis[{k}]") for k, B in enumerate(basis)]
        )

    @property
    def ell(self):
        """Codomain dimension."""
        return self.offset.shape[0]

    @property
    def n(self):
        """Domain dimension (number of coordinates)."""
        return self.basis.shape[0]

    def evaluate(self, x):
        """Evaluate the map; the result is exactly symmetric."""
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.shape != (self.n,):
            raise ValueError(f"expected {self.n} coordinates, got {x.shape[0]}")
        return self.offset + np.tensordot(x, self.basis, axes=1)

    def __call__(self, x):
        return self.evaluate(x)

    def gram_lambda_max(self):
        """Top eigenvalue of ``sum_k basis[k] @ basis[k]`` (>= 0).

        Invariant to the offset and quadratic under basis scaling: if
        every basis matrix is multiplied by ``a`` the value scales by
        ``a**2``.
        """
        gram = np.einsum("kij,kjl->il", self.basis, self.basis)
        w = np.linalg.eigvalsh((gram + gram.T) / 2.0)
        return max(float(w[-1]), 0.0)
