"""Gradient-style iteration on a learned quadratic and its error ball.

The iteration is ``x_{k+1} = x_k - gamma (Qhat x_k + chat)``, taken
verbatim as the update map whose curvature the step-size rule below is
calibrated to.  When ``||I - gamma Qhat||_2 < 1`` it contracts to the
fixed point ``-Qhat^{-1} chat``; against a reference point ``x*`` the
error obeys

    ||x_k - x*|| <= contraction^k ||x_0 - x*||
                    + gamma (||Q - Qhat||_2 ||x*|| + ||c - chat||) / (1 - contraction),

whose second term :func:`error_ball_bound` returns (the geometric-series
limit of the one-step error recursion).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError
from .spectral import as_symmetric

_STEP_STOP_TOL = 1e-12


@dataclass
class DescentConfig:
    """Step size, start point, and safety limits for the iteration."""

    gamma: float
    x0: np.ndarray
    max_iter: int = 10_000
    divergence_guard: float = 1e12

    def __post_init__(self):
        if not (self.gamma > 0):
            raise ValueError("gamma must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not (self.divergence_guard > 0):
            raise ValueError("divergence_guard must be positive")
        self.x0 = np.asarray(self.x0, dtype=float).reshape(-1)


@dataclass
class DescentTrace:
    """Recorded iterates and errors (thinned for long runs).

    ``ks[j]`` is the iteration index of the j-th stored point;
    ``errors_to_target[j]`` is ``||x_{ks[j]} - x*||`` and
    ``step_norms[j]`` the norm of the step that produced it (0 at k=0).
    Long runs keep roughly 1000 points: beyond that every
    ``ceil(max_iter / 1000)``-th iterate is stored, plus the final one.
    """

    ks: np.ndarray
    iterates: np.ndarray
    errors_to_target: np.ndarray
    step_norms: np.ndarray
    contraction_factor: float
    final_error: float
    iterations: int
    converged: bool

    def to_csv(self, path):
        """Write ``k,error,step_norm`` rows."""
        with open(path, "w", newline="") as fh:
            fh.write("k,error,step_norm\n")
            for k, err, sn in zip(self.ks, self.errors_to_target, self.step_norms):
                fh.write(f"{int(k)},{float(err)!r},{float(sn)!r}\n")


def _build_trace(records, contraction, target, converged, iterations):
    ks = np.array([r[0] for r in records], dtype=int)
    iterates = np.array([r[1] for r in records])
    steps = np.array([r[2] for r in records])
    errors = np.linalg.norm(iterates - target, axis=1)
    return DescentTrace(
        ks=ks,
        iterates=iterates,
        errors_to_target=errors,
        step_norms=steps,
        contraction_factor=contraction,
        final_error=float(errors[-1]),
        iterations=iterations,
        converged=converged,
    )


def run_descent(Qhat, chat, target_xstar, cfg):
    """Run the iteration and measure errors against ``target_xstar``.

    Stops when the step norm falls below ``1e-12 * (1 + ||x_k||)`` or at
    ``cfg.max_iter``.  If an iterate norm exceeds
    ``cfg.divergence_guard``, raises :class:`DivergenceError` carrying
    the trace so far.
    """
    Qhat = as_symmetric(Qhat, name="Qhat")
    chat = np.asarray(chat, dtype=float).reshape(-1)
    target = np.asarray(target_xstar, dtype=float).reshape(-1)
    n = Qhat.shape[0]
    if chat.shape[0] != n or target.shape[0] != n or cfg.x0.shape[0] != n:
        raise ValueError("dimension mismatch between Qhat, chat, target, and x0")

    w = np.linalg.eigvalsh(Qhat)
    contraction = float(np.abs(1.0 - cfg.gamma * w).max())

    stride = max(1, math.ceil(cfg.max_iter / 1000)) if cfg.max_iter > 1000 else 1
    x = cfg.x0.copy()
    records = [(0, x.copy(), 0.0)]
    converged = False
    k = 0
    for k in range(1, cfg.max_iter + 1):
        x_new = x - cfg.gamma * (Qhat @ x + chat)
        step = float(np.linalg.norm(x_new - x))
        if not np.all(np.isfinite(x_new)) or np.linalg.norm(x_new) > cfg.divergence_guard:
            records.append((k, x_new.copy(), step))
            trace = _build_trace(records, contraction, target, False, k)
            raise DivergenceError(
                f"iterate norm exceeded guard {cfg.divergence_guard:.3e} at k={k}",
                trace=trace,
            )
        done = step <= _STEP_STOP_TOL * (1.0 + float(np.linalg.norm(x)))
        if k % stride == 0 or done or k == cfg.max_iter:
            records.append((k, x_new.copy(), step))
        x = x_new
        if done:
            converged = True
            break
    return _build_trace(records, contraction, target, converged, k)


def step_size_bound(upper, epsilon):
    """Largest admissible step size ``2 / (upper + epsilon)``.

    ``upper`` is the top of the target eigenvalue interval and
    ``epsilon`` the certificate margin, so with high probability
    ``upper + epsilon`` dominates the learned curvature.  For the
    contraction guarantee to kick in, the companion condition
    ``lower - epsilon > 0`` must also hold, i.e. the certified interval
    must stay strictly positive; with ``lower = 0`` (plain positive-
    semidefinite relaxations) that hypothesis is unattainable and the
    iteration may not contract.
    """
    if not (upper + epsilon > 0):
        raise ValueError("upper + epsilon must be positive")
    return 2.0 / (upper + epsilon)


def error_ball_bound(Q, Qhat, c, chat, xstar, gamma):
    """Limit radius of the iteration error around ``xstar``.

    ``gamma (||Q - Qhat||_2 ||xstar|| + ||c - chat||) / (1 - contraction)``
    with ``contraction = ||I - gamma Qhat||_2``; raises ``ValueError``
    when the iteration does not contract (contraction >= 1).
    """
    Q = as_symmetric(Q, name="Q")
    Qhat = as_symmetric(Qhat, name="Qhat")
    c = np.asarray(c, dtype=float).reshape(-1)
    chat = np.asarray(chat, dtype=float).reshape(-1)
    xstar = np.asarray(xstar, dtype=float).reshape(-1)
    w = np.linalg.eigvalsh(Qhat)
    contraction = float(np.abs(1.0 - gamma * w).max())
    if contraction >= 1.0:
        raise ValueError(
            f"||I - gamma Qhat||_2 = {contraction:.6f} >= 1: no contraction, "
            "error ball undefined"
        )
    mismatch = float(np.abs(np.linalg.eigvalsh(Q - Qhat)).max())
    return (
        gamma
        * (mismatch * float(np.linalg.norm(xstar)) + float(np.linalg.norm(c - chat)))
        / (1.0 - contraction)
    )
