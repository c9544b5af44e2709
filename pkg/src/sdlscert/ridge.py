"""Ridge least squares: the relaxed problem.

Solves

    min_x  (1/N) ||A x - b||^2 + rho ||x||^2        (rho > 0)

optionally subject to linear equality constraints ``E x = d`` (used,
e.g., to impose symmetry on matrix-valued parameter blocks).  The 1/N
sample scaling is kept exactly as written and never absorbed into rho,
because the downstream certificate depends on rho as stated.

The default path is a dense direct solve of the regularized normal
equations: rho > 0 bounds the conditioning away from zero and the
decision dimensions targeted here are modest.  Equality constraints go
through the full KKT system; the constraint counts are tiny (symmetry
relations), so null-space elimination would buy nothing.

Feasible sets beyond affine equality constraints (inequalities, general
convex sets) are out of scope here: the stability analysis behind the
certificate is only worked out for the unconstrained and equality-
constrained cases.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import NumericalError

# Optimality-system residual must come in below _SOLVE_TOL * (1 + ||A.T b||).
_SOLVE_TOL = 1e-8


@dataclass
class DesignSystem:
    """Data ``(A, b)``, regularization weight, and optional constraints.

    Parameters
    ----------
    A : (N, p) array_like
        One row per sample.
    b : (N,) array_like
        Observed values.
    rho : float
        Positive regularization weight; makes the cost strongly convex
        with a unique minimizer.
    eq_constraints : (E, d) pair, optional
        Full-row-rank ``q x p`` matrix and length-q vector encoding
        ``E x = d``.
    """

    A: np.ndarray
    b: np.ndarray
    rho: float
    eq_constraints: tuple | None = None

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        if self.A.ndim != 2:
            raise ValueError("A must be 2-d")
        if self.A.shape[0] < 1:
            raise ValueError("need at least one sample")
        if self.b.shape[0] != self.A.shape[0]:
            raise ValueError(f"b has {self.b.shape[0]} entries for {self.A.shape[0]} rows")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b))):
            raise ValueError("A and b must be finite")
        self.rho = float(self.rho)
        if not (self.rho > 0):
            raise ValueError("rho must be strictly positive")
        if self.eq_constraints is not None:
            E, d = self.eq_constraints
            E = np.asarray(E, dtype=float)
            d = np.asarray(d, dtype=float).reshape(-1)
            if E.ndim != 2 or E.shape[1] != self.dim or E.shape[0] != d.shape[0]:
                raise ValueError("eq_constraints shapes inconsistent with the system")
            if not (np.all(np.isfinite(E)) and np.all(np.isfinite(d))):
                raise ValueError("eq_constraints must be finite")
            self.eq_constraints = (E, d)

    @property
    def num_samples(self):
        return self.A.shape[0]

    @property
    def dim(self):
        return self.A.shape[1]


@dataclass(frozen=True)
class LsSolution:
    """Minimizer, attained cost, and optimality-system residual norm."""

    x: np.ndarray
    objective: float
    residual_norm: float


def objective_value(sys, x):
    """Evaluate ``(1/N) ||A x - b||^2 + rho ||x||^2`` exactly as written."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != sys.dim:
        raise ValueError(f"x has {x.shape[0]} entries for dimension {sys.dim}")
    r = sys.A @ x - sys.b
    return float(r @ r / sys.num_samples + sys.rho * (x @ x))


def normal_matrix(sys):
    """The (SPD) Hessian ``(2/N) A.T A + 2 rho I`` of the cost."""
    p = sys.dim
    return (2.0 / sys.num_samples) * (sys.A.T @ sys.A) + 2.0 * sys.rho * np.eye(p)


def normal_rhs(sys):
    """Gradient offset ``(2/N) A.T b``; the minimizer solves M x = rhs."""
    return (2.0 / sys.num_samples) * (sys.A.T @ sys.b)


def _solve_tolerance(sys):
    return _SOLVE_TOL * (1.0 + float(np.linalg.norm(sys.A.T @ sys.b)))


def solve_ridge(sys):
    """Direct solve of the (optionally equality-constrained) ridge problem.

    Unconstrained systems go through a Cholesky factorization of the
    regularized normal matrix; constrained ones through the KKT system

        [M   E.T] [x ]   [rhs]
        [E    0 ] [nu] = [ d ].

    Raises ``ValueError`` if ``E`` is rank-deficient (checked by SVD) and
    ``NumericalError`` if the optimality residual misses its tolerance.
    """
    M = normal_matrix(sys)
    rhs = normal_rhs(sys)
    tol = _solve_tolerance(sys)

    if sys.eq_constraints is None:
        try:
            x = sla.cho_solve(sla.cho_factor(M), rhs)
        except sla.LinAlgError as exc:  # rho > 0 makes this unreachable in practice
            raise NumericalError(f"normal-equation solve failed: {exc}") from exc
        residual = float(np.linalg.norm(M @ x - rhs))
    else:
        E, d = sys.eq_constraints
        q = E.shape[0]
        if np.linalg.matrix_rank(E) < q:
            raise ValueError("equality constraint matrix is rank-deficient")
        kkt = np.block([[M, E.T], [E, np.zeros((q, q))]])
        try:
            sol = sla.lu_solve(sla.lu_factor(kkt), np.concatenate([rhs, d]))
        except (sla.LinAlgError, ValueError) as exc:
            raise NumericalError(f"KKT solve failed: {exc}") from exc
        x, nu = sol[: sys.dim], sol[sys.dim :]
        residual = float(
            np.linalg.norm(np.concatenate([M @ x + E.T @ nu - rhs, E @ x - d]))
        )

    if not np.isfinite(residual) or residual > tol:
        raise NumericalError(
            f"optimality residual {residual:.3e} exceeds tolerance {tol:.3e}",
            x=x,
            residual_norm=residual,
        )
    return LsSolution(x=x, objective=objective_value(sys, x), residual_norm=residual)


def solve_ridge_iterative(sys, tol=1e-10, max_iter=1000):
    """Conjugate-gradient solve of the normal equations, matrix-free.

    Never forms ``A.T A``; each step applies ``v -> (2/N) A.T (A v) +
    2 rho v``.  Stops once the optimality-system residual norm drops to
    ``tol``.  On ``max_iter`` exhaustion raises ``NumericalError``
    carrying the best iterate seen (attributes ``x`` and
    ``residual_norm``).  Unconstrained systems only.
    """
    if sys.eq_constraints is not None:
        raise ValueError("iterative solver handles unconstrained systems only")
    if tol < 0:
        raise ValueError("tol must be nonnegative")

    A, rho, N = sys.A, sys.rho, sys.num_samples

    def apply(v):
        return (2.0 / N) * (A.T @ (A @ v)) + 2.0 * rho * v

    rhs = normal_rhs(sys)
    x = np.zeros(sys.dim)
    r = rhs.copy()
    d = r.copy()
    rr = float(r @ r)
    best_x, best_res = x.copy(), float(np.sqrt(rr))

    for _ in range(max_iter):
        res = float(np.sqrt(rr))
        if res < best_res:
            best_x, best_res = x.copy(), res
        if res <= tol:
            return LsSolution(
                x=x, objective=objective_value(sys, x), residual_norm=res
            )
        Md = apply(d)
        alpha = rr / float(d @ Md)
        x = x + alpha * d
        r = r - alpha * Md
        rr_new = float(r @ r)
        d = r + (rr_new / rr) * d
        rr = rr_new

    res = float(np.sqrt(rr))
    if res <= tol:
        return LsSolution(x=x, objective=objective_value(sys, x), residual_norm=res)
    if res < best_res:
        best_x, best_res = x.copy(), res
    raise NumericalError(
        f"conjugate gradient did not reach tol={tol:.3e} in {max_iter} iterations "
        f"(best residual {best_res:.3e})",
        x=best_x,
        residual_norm=best_res,
    )
