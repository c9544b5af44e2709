"""Synthetic quadratic-fitting pipeline.

Ground truth is a convex quadratic ``f(x) = x.T Q x + c.T x + r`` with
``Q = U.T U`` for uniform U; data are noisy evaluations at uniform
points.  Fitting it by regularized least squares is the running example
for the spectral certificate: the decision vector packs ``(Qhat, chat,
rhat)`` and an affine matrix map extracts ``Qhat``, whose spectrum the
certificate brackets.

Two packings of the symmetric block are supported:

``"vec"``
    All n^2 entries of ``Qhat`` plus symmetry equality constraints
    ``Qhat[i, j] == Qhat[j, i]``.  The matrix map places each coordinate
    at its symmetrized position, ``(E_ij + E_ji) / 2``, and its Gram
    constant is ``(n + 1) / 2``.
``"vech"``
    Upper-triangle entries only (no constraints); the design row doubles
    the off-diagonal products.  Basis matrices are ``E_ii`` and
    ``E_ij + E_ji``, and the Gram constant is exactly ``n`` -- the value
    usually quoted for this setup.  Both constants are valid for the
    certificate; they differ because they measure different coordinate
    systems against the same matrix perturbation.

Randomness follows a documented splittable-stream contract built on
``numpy.random.SeedSequence``: the model draws from the stream
``(seed, 0)`` and sample ``i`` from the ``i``-th spawned child of stream
``(seed, 1)``.  Earlier samples are therefore unchanged by growing N or
by parallel generation.

One convention wart is kept deliberately: the gradient-style iteration
this pipeline feeds (see :mod:`sdlscert.descent`) updates with
``Qhat x + chat``, whose fixed point is ``-Q^{-1} c``, while the actual
gradient of ``f`` is ``2 Q x + c``.  :func:`true_minimizer` returns the
iteration's fixed point, not ``argmin f = -(1/2) Q^{-1} c``; the factor
of two is documented rather than silently resolved.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .lmi import LmiMap
from .ridge import DesignSystem
from .spectral import as_symmetric, lambda_extremes

PARAMETERIZATIONS = ("vec", "vech")

_MODEL_STREAM = 0
_SAMPLE_STREAM = 1


def _check_parameterization(parameterization):
    if parameterization not in PARAMETERIZATIONS:
        raise ValueError(
            f"parameterization must be one of {PARAMETERIZATIONS}, "
            f"got {parameterization!r}"
        )


@dataclass(frozen=True)
class QuadModel:
    """Convex quadratic ``x.T Q x + c.T x + r`` (Q symmetric PSD)."""

    Q: np.ndarray
    c: np.ndarray
    r: float
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "Q", as_symmetric(self.Q, name="Q"))
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float).reshape(-1))
        object.__setattr__(self, "r", float(self.r))
        if self.c.shape[0] != self.Q.shape[0]:
            raise ValueError("c length does not match Q")
        if lambda_extremes(self.Q)[0] < -1e-10:
            raise ValueError("Q must be positive semidefinite (to tolerance)")

    @property
    def n(self):
        return self.Q.shape[0]

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return float(x @ self.Q @ x + self.c @ x + self.r)


@dataclass(frozen=True)
class SampleSet:
    """Evaluation points, noisy values, and the generation parameters."""

    points: np.ndarray
    values: np.ndarray
    domain_halfwidth: float
    noise_sd: float
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        object.__setattr__(
            self, "values", np.asarray(self.values, dtype=float).reshape(-1)
        )
        if self.points.ndim != 2 or self.points.shape[0] != self.values.shape[0]:
            raise ValueError("points and values shapes inconsistent")
        if np.abs(self.points).max(initial=0.0) > self.domain_halfwidth * (1 + 1e-12):
            raise ValueError("points exceed the sampling domain")

    @property
    def num_samples(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    def to_csv(self, path):
        """Write ``i,x_1,...,x_n,y`` rows."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["i"] + [f"x_{j + 1}" for j in range(self.dim)] + ["y"]
            )
            for i in range(self.num_samples):
                writer.writerow(
                    [i]
                    + [repr(float(v)) for v in self.points[i]]
                    + [repr(float(self.values[i]))]
                )


def gen_model(n, seed):
    """Draw a ground-truth model: ``Q = U.T U``, entries of U, c, r all
    uniform on [0, 1].  Deterministic in (n, seed)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(np.random.SeedSequence((seed, _MODEL_STREAM)))
    U = rng.uniform(0.0, 1.0, (n, n))
    c = rng.uniform(0.0, 1.0, n)
    r = rng.uniform(0.0, 1.0)
    return QuadModel(Q=U.T @ U, c=c, r=r, seed=seed)


def sample(model, N, domain_halfwidth=10.0, noise_sd=1.0, seed=0):
    """Draw N noisy evaluations of the model.

    Point ``i`` comes from its own child stream of ``(seed, 1)``: it
    draws the coordinates (uniform on ``[-domain_halfwidth,
    domain_halfwidth]``) and then the Gaussian noise.  Extending N or
    generating in parallel leaves earlier samples bit-identical.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if domain_halfwidth <= 0:
        raise ValueError("domain_halfwidth must be positive")
    if noise_sd < 0:
        raise ValueError("noise_sd must be nonnegative")
    children = np.random.SeedSequence((seed, _SAMPLE_STREAM)).spawn(N)
    n = model.n
    points = np.empty((N, n))
    values = np.empty(N)
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        x = rng.uniform(-domain_halfwidth, domain_halfwidth, n)
        points[i] = x
        values[i] = model.value(x) + rng.normal(0.0, noise_sd)
    return SampleSet(
        points=points,
        values=values,
        domain_halfwidth=domain_halfwidth,
        noise_sd=noise_sd,
        seed=seed,
    )


def model_to_json(model, path=None):
    """Serialize a model to ``{n, Q (row-major), c, r, seed}``."""
    payload = {
        "n": model.n,
        "Q": model.Q.reshape(-1).tolist(),
        "c": model.c.tolist(),
        "r": model.r,
        "seed": model.seed,
    }
    text = json.dumps(payload)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def model_from_json(text):
    payload = json.loads(text)
    n = payload["n"]
    return QuadModel(
        Q=np.asarray(payload["Q"], dtype=float).reshape(n, n),
        c=payload["c"],
        r=payload["r"],
        seed=payload.get("seed"),
    )


def param_dim(n, parameterization="vec"):
    """Length of the packed decision vector."""
    _check_parameterization(parameterization)
    if parameterization == "vec":
        return n * n + n + 1
    return n * (n + 1) // 2 + n + 1


def pack(Q, c, r, parameterization="vec"):
    """Pack ``(Q, c, r)`` into a flat decision vector.

    ``"vec"`` stores all of Q row-major; ``"vech"`` stores the upper
    triangle in row-major order of ``numpy.triu_indices``.
    """
    _check_parameterization(parameterization)
    Q = np.asarray(Q, dtype=float)
    c = np.asarray(c, dtype=float).reshape(-1)
    if parameterization == "vec":
        head = Q.reshape(-1)
    else:
        head = Q[np.triu_indices(Q.shape[0])]
    return np.concatenate([head, c, [float(r)]])


def unpack(xi, n, parameterization="vec"):
    """Invert :func:`pack`; returns ``(Q, c, r, asymmetry)``.

    For ``"vec"`` the Q block is symmetrized by ``(M + M.T) / 2`` and
    ``asymmetry`` reports the largest deviation ``|M - M.T|`` that was
    averaged away; for ``"vech"`` there is nothing to symmetrize and
    ``asymmetry`` is 0.
    """
    _check_parameterization(parameterization)
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if xi.shape[0] != param_dim(n, parameterization):
        raise ValueError(
            f"expected {param_dim(n, parameterization)} coordinates for n={n} "
            f"({parameterization}), got {xi.shape[0]}"
        )
    if parameterization == "vec":
        block = xi[: n * n].reshape(n, n)
        asymmetry = float(np.abs(block - block.T).max()) if n > 1 else 0.0
        Q = (block + block.T) / 2.0
        rest = xi[n * n :]
    else:
        m = n * (n + 1) // 2
        Q = np.zeros((n, n))
        Q[np.triu_indices(n)] = xi[:m]
        Q = Q + np.triu(Q, 1).T
        asymmetry = 0.0
        rest = xi[m:]
    return Q, rest[:n], float(rest[n]), asymmetry


def assemble_design(samples, rho, parameterization="vec"):
    """Build the regression system whose solution packs ``(Qhat, chat, rhat)``.

    Row i evaluates the model at ``x = points[i]``: quadratic products,
    then the point itself, then a constant 1; ``b[i]`` is the observed
    value.  Under ``"vec"`` the row is ``[kron(x, x), x, 1]`` and the
    symmetry relations ride along as equality constraints; under
    ``"vech"`` off-diagonal products are doubled and no constraints are
    needed.
    """
    _check_parameterization(parameterization)
    X = samples.points
    N, n = X.shape
    outer = np.einsum("ni,nj->nij", X, X)
    if parameterization == "vec":
        head = outer.reshape(N, n * n)
        eq = _symmetry_constraints(n)
    else:
        iu = np.triu_indices(n)
        weights = np.where(iu[0] == iu[1], 1.0, 2.0)
        head = outer[:, iu[0], iu[1]] * weights
        eq = None
    A = np.hstack([head, X, np.ones((N, 1))])
    return DesignSystem(A=A, b=samples.values, rho=rho, eq_constraints=eq)


def _symmetry_constraints(n):
    """Rows enforcing ``xi[i*n + j] == xi[j*n + i]`` for i < j, or None."""
    if n < 2:
        return None
    p = param_dim(n, "vec")
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            row = np.zeros(p)
            row[i * n + j] = 1.0
            row[j * n + i] = -1.0
            rows.append(row)
    E = np.asarray(rows)
    return (E, np.zeros(E.shape[0]))


def quadfit_lmi(n, parameterization="vec"):
    """Affine map extracting ``Qhat`` from the packed decision vector.

    Coordinates of the quadratic block map to their (symmetrized) unit
    positions; the ``c`` and ``r`` coordinates map to zero matrices.
    Evaluating on ``pack(Q, c, r)`` returns ``Q`` for symmetric Q.  Gram
    constants: ``(n + 1) / 2`` for ``"vec"``, exactly ``n`` for
    ``"vech"`` (see the module docstring).
    """
    _check_parameterization(parameterization)
    if n < 1:
        raise ValueError("n must be at least 1")
    p = param_dim(n, parameterization)
    basis = np.zeros((p, n, n))
    if parameterization == "vec":
        for i in range(n):
            for j in range(n):
                basis[i * n + j, i, j] += 0.5
                basis[i * n + j, j, i] += 0.5
    else:
        for k, (i, j) in enumerate(zip(*np.triu_indices(n))):
            basis[k, i, j] += 1.0
            if i != j:
                basis[k, j, i] += 1.0
    return LmiMap(offset=np.zeros((n, n)), basis=basis)


def true_minimizer(model):
    """Fixed point of the gradient-style iteration under the true
    parameters: the solution of ``Q x = -c``.

    Note this is not ``argmin f`` (see the module docstring on the
    factor-of-two convention).  Requires ``lambda_min(Q) > 1e-10``.
    """
    if lambda_extremes(model.Q)[0] <= 1e-10:
        raise ValueError("Q is singular to tolerance; no unique fixed point")
    return np.linalg.solve(model.Q, -model.c)
