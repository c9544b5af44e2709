import numpy as np
import pytest

from sdlscert.spectral import (
    RECONSTRUCTION_TOL,
    SpectralBox,
    as_symmetric,
    eig_sym,
    lambda_extremes,
    project_spectral_box,
    spectrum_in_box,
)


def random_sym(rng, n, scale=1.0):
    M = rng.normal(size=(n, n)) * scale
    return (M + M.T) / 2


class TestAsSymmetric:
    def test_exact_symmetry(self):
        rng = np.random.default_rng(0)
        M = rng.normal(size=(6, 6))
        with pytest.warns(UserWarning, match="asymmetry"):
            S = as_symmetric(M)
        assert np.array_equal(S, S.T)  # bitwise, not approximate

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="non-finite"):
            as_symmetric([[1.0, np.nan], [0.0, 1.0]])
        with pytest.raises(ValueError, match="non-finite"):
            as_symmetric([[np.inf, 0.0], [0.0, 1.0]])

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError, match="square"):
            as_symmetric(np.ones((2, 3)))

    def test_warns_on_large_asymmetry(self):
        M = np.array([[1.0, 2.0], [1.0, 1.0]])
        with pytest.warns(UserWarning, match="asymmetry"):
            as_symmetric(M)

    def test_silent_on_roundoff_asymmetry(self):
        M = np.array([[1.0, 2.0], [2.0 + 1e-15, 1.0]])
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            as_symmetric(M)


class TestSpectralBox:
    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="empty box"):
            SpectralBox(1.0, 0.0)

    def test_widened(self):
        box = SpectralBox(0.0, 1.0).widened(0.5)
        assert box.lower == -0.5 and box.upper == 1.5


class TestEigSym:
    def test_identity(self):
        dec = eig_sym(np.eye(3))
        np.testing.assert_allclose(dec.eigenvalues, [1, 1, 1])

    def test_diagonal(self):
        dec = eig_sym(np.diag([3.0, -1.0]))
        np.testing.assert_allclose(dec.eigenvalues, [-1.0, 3.0])

    def test_2x2_closed_form(self):
        # characteristic polynomial of [[2,1],[1,2]]: (2-t)^2 - 1 -> t in {1, 3},
        # eigenvectors (1,-1)/sqrt(2) and (1,1)/sqrt(2)
        dec = eig_sym([[2.0, 1.0], [1.0, 2.0]])
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 3.0], atol=1e-14)
        v0, v1 = dec.eigenvectors[:, 0], dec.eigenvectors[:, 1]
        s = 1 / np.sqrt(2)
        assert min(np.abs(v0 - [s, -s]).max(), np.abs(v0 + [s, -s]).max()) < 1e-12
        assert min(np.abs(v1 - [s, s]).max(), np.abs(v1 + [s, s]).max()) < 1e-12

    def test_sorted_ascending(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            w = eig_sym(random_sym(rng, 8)).eigenvalues
            assert np.all(np.diff(w) >= 0)

    def test_reconstruction_and_orthogonality_residuals(self):
        # residuals <= 1e-10 * (1 + ||M||_F) for random matrices up to ell=50
        rng = np.random.default_rng(2)
        for n in [2, 5, 13, 50]:
            for scale in [1e-3, 1.0, 1e4]:
                M = random_sym(rng, n, scale)
                dec = eig_sym(M)
                V = dec.eigenvectors
                tol = RECONSTRUCTION_TOL * (1 + np.linalg.norm(M))
                assert np.abs(V.T @ V - np.eye(n)).max() <= RECONSTRUCTION_TOL
                assert np.linalg.norm(dec.reconstruct() - M) <= tol


class TestLambdaExtremes:
    def test_identity(self):
        assert lambda_extremes(np.eye(2)) == (1.0, 1.0)

    def test_diagonal(self):
        assert lambda_extremes(np.diag([-2.0, 0.0, 5.0])) == (-2.0, 5.0)

    def test_2x2_closed_form(self):
        lo, hi = lambda_extremes([[2.0, 1.0], [1.0, 2.0]])
        assert abs(lo - 1.0) < 1e-14 and abs(hi - 3.0) < 1e-14


class TestProjection:
    def test_diagonal_clipping(self):
        out = project_spectral_box(np.diag([3.0, -1.0]), SpectralBox(0.0, 1.0))
        np.testing.assert_allclose(out, np.diag([1.0, 0.0]), atol=1e-14)

    def test_interior_point_unchanged(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            M = random_sym(rng, 5)
            lo, hi = lambda_extremes(M)
            box = SpectralBox(lo - 1.0, hi + 1.0)
            out = project_spectral_box(M, box)
            assert np.linalg.norm(out - M) <= RECONSTRUCTION_TOL * (
                1 + np.linalg.norm(M)
            )

    def test_2x2_both_eigenvalues_clip(self):
        # eigenvalues (1, 3) of [[2,1],[1,2]] both clip to 1 in [0,1],
        # so the projection is V I V.T = I
        out = project_spectral_box([[2.0, 1.0], [1.0, 2.0]], SpectralBox(0.0, 1.0))
        np.testing.assert_allclose(out, np.eye(2), atol=1e-14)

    def test_idempotent(self):
        rng = np.random.default_rng(4)
        box = SpectralBox(-0.5, 2.0)
        for _ in range(20):
            M = random_sym(rng, 6, 3.0)
            P1 = project_spectral_box(M, box)
            P2 = project_spectral_box(P1, box)
            assert np.linalg.norm(P2 - P1) <= RECONSTRUCTION_TOL * (
                1 + np.linalg.norm(P1)
            )

    def test_nonexpansive(self):
        rng = np.random.default_rng(5)
        box = SpectralBox(0.0, 1.0)
        for _ in range(30):
            M1, M2 = random_sym(rng, 5, 2.0), random_sym(rng, 5, 2.0)
            d_proj = np.linalg.norm(
                project_spectral_box(M1, box) - project_spectral_box(M2, box)
            )
            assert d_proj <= np.linalg.norm(M1 - M2) * (1 + 1e-12) + 1e-12

    def test_output_spectrum_in_box(self):
        rng = np.random.default_rng(6)
        box = SpectralBox(-1.0, 0.5)
        for _ in range(20):
            out = project_spectral_box(random_sym(rng, 7, 5.0), box)
            assert spectrum_in_box(out, box, 1e-9)

    def test_optimality_on_2x2_grid(self):
        # brute-force oracle: every symmetric 2x2 with spectrum in the box is
        # V(theta) diag(a, b) V(theta).T; a fine grid over (theta, a, b) must
        # not beat the projection in Frobenius distance
        rng = np.random.default_rng(7)
        box = SpectralBox(0.0, 1.0)
        thetas = np.linspace(0, np.pi, 60)
        vals = np.linspace(box.lower, box.upper, 41)
        cos, sin = np.cos(thetas), np.sin(thetas)
        for _ in range(5):
            M = random_sym(rng, 2, 2.0)
            best = np.inf
            for ct, st in zip(cos, sin):
                V = np.array([[ct, -st], [st, ct]])
                for a in vals:
                    for b in vals:
                        C = (V * [a, b]) @ V.T
                        best = min(best, np.linalg.norm(C - M))
            d_proj = np.linalg.norm(project_spectral_box(M, box) - M)
            assert d_proj <= best + 1e-3


class TestSpectrumInBox:
    def test_trivial_cases(self):
        assert spectrum_in_box(np.eye(2), SpectralBox(0.0, 2.0), 0.0)
        assert not spectrum_in_box(np.diag([3.0]), SpectralBox(0.0, 1.0), 0.0)
        assert spectrum_in_box(np.diag([1.05]), SpectralBox(0.0, 1.0), 0.1)

    def test_rejects_negative_tol(self):
        with pytest.raises(ValueError, match="nonnegative"):
            spectrum_in_box(np.eye(2), SpectralBox(0.0, 1.0), -1e-3)
