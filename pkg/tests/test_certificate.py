import json
import math

import numpy as np
import pytest

from sdlscert.certificate import (
    CertificateInputs,
    epsilon_value,
    estimate_bound,
    failure_probability,
    sigma_value,
)
from sdlscert.ridge import DesignSystem
from sdlscert.spectral import SpectralBox

BOX = SpectralBox(0.0, 1.0)


def inputs(**overrides):
    kwargs = dict(
        B=1.0, rho=1.0, N=16, ell=2, lambda_max_H=1.0, delta=2 / math.e, box=BOX
    )
    kwargs.update(overrides)
    return CertificateInputs(**kwargs)


class TestSigma:
    def test_direct_substitution(self):
        assert sigma_value(1.0, 1.0, 2, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_linear_in_bound(self):
        assert sigma_value(2.0, 1.0, 2, 1.0) == pytest.approx(
            2 * sigma_value(1.0, 1.0, 2, 1.0), rel=1e-15
        )

    def test_inverse_sqrt_in_samples(self):
        assert sigma_value(1.0, 1.0, 400, 1.0) == pytest.approx(
            sigma_value(1.0, 1.0, 100, 1.0) / 2, rel=1e-15
        )

    def test_domain_checks(self):
        for bad in [dict(B=0.0), dict(rho=-1.0), dict(N=0), dict(gram=-1.0)]:
            args = dict(B=1.0, rho=1.0, N=4, gram=1.0)
            args.update(bad)
            with pytest.raises(ValueError):
                sigma_value(args["B"], args["rho"], args["N"], args["gram"])


class TestEpsilon:
    def test_unit_case(self):
        # ln(ell/delta) = ln(e) = 1 and 4/sqrt(16) = 1
        cert = epsilon_value(inputs())
        assert abs(cert.epsilon - 1.0) <= 1e-12

    def test_matches_sigma_form(self):
        # epsilon == 2 sigma sqrt(2 ln(ell/delta)) to 1e-12 relative
        rng = np.random.default_rng(0)
        for _ in range(50):
            i = inputs(
                B=rng.uniform(0.1, 50),
                rho=rng.uniform(0.01, 10),
                N=int(rng.integers(1, 10**6)),
                ell=int(rng.integers(1, 100)),
                lambda_max_H=rng.uniform(0.01, 100),
                delta=rng.uniform(1e-6, 0.99),
            )
            cert = epsilon_value(i)
            alt = 2 * cert.sigma * math.sqrt(2 * math.log(i.ell / i.delta))
            assert abs(cert.epsilon - alt) <= 1e-12 * alt

    def test_interval(self):
        cert = epsilon_value(inputs())
        assert cert.interval.lower == pytest.approx(BOX.lower - cert.epsilon)
        assert cert.interval.upper == pytest.approx(BOX.upper + cert.epsilon)

    def test_scaling_laws(self):
        # each law exact to 1e-12 relative on randomized grids
        rng = np.random.default_rng(1)
        for _ in range(40):
            base = inputs(
                B=rng.uniform(0.5, 5),
                rho=rng.uniform(0.1, 5),
                N=int(rng.integers(4, 10**5)),
                ell=int(rng.integers(2, 60)),
                lambda_max_H=rng.uniform(0.1, 30),
                delta=rng.uniform(0.001, 0.5),
            )
            e0 = epsilon_value(base).epsilon
            quadruple_N = inputs(**{**_fields(base), "N": 4 * base.N})
            assert epsilon_value(quadruple_N).epsilon == pytest.approx(
                e0 / 2, rel=1e-12
            )
            half_rho = inputs(**{**_fields(base), "rho": base.rho / 2})
            assert epsilon_value(half_rho).epsilon == pytest.approx(
                2 * e0, rel=1e-12
            )
            double_B = inputs(**{**_fields(base), "B": 2 * base.B})
            assert epsilon_value(double_B).epsilon == pytest.approx(
                2 * e0, rel=1e-12
            )
            quad_gram = inputs(
                **{**_fields(base), "lambda_max_H": 4 * base.lambda_max_H}
            )
            assert epsilon_value(quad_gram).epsilon == pytest.approx(
                2 * e0, rel=1e-12
            )
            # sqrt(ln(ell/delta)) law: pick delta' so the log quadruples
            log0 = math.log(base.ell / base.delta)
            delta_new = base.ell * math.exp(-4 * log0)
            if 0 < delta_new < 1:
                quad_log = inputs(**{**_fields(base), "delta": delta_new})
                assert epsilon_value(quad_log).epsilon == pytest.approx(
                    2 * e0, rel=1e-12
                )

    def test_monotonicity(self):
        base = inputs(delta=0.05)
        e0 = epsilon_value(base).epsilon
        assert epsilon_value(inputs(delta=0.05, N=32)).epsilon < e0
        assert epsilon_value(inputs(delta=0.05, rho=2.0)).epsilon < e0
        assert epsilon_value(inputs(delta=0.05, ell=5)).epsilon > e0
        assert epsilon_value(inputs(delta=0.01)).epsilon > e0

    def test_input_validation(self):
        with pytest.raises(ValueError, match="delta"):
            inputs(delta=1.0)
        with pytest.raises(ValueError, match="delta"):
            inputs(delta=0.0)
        with pytest.raises(ValueError, match="ell"):
            inputs(ell=0)
        with pytest.raises(ValueError, match="N"):
            inputs(N=0)

    def test_json_schema(self):
        cert = epsilon_value(inputs())
        payload = json.loads(cert.to_json())
        assert set(payload) == {
            "B",
            "B_is_heuristic",
            "rho",
            "N",
            "ell",
            "lambda_max_H",
            "delta",
            "sigma",
            "epsilon",
            "interval",
        }
        assert payload["interval"] == [
            cert.interval.lower,
            cert.interval.upper,
        ]
        assert payload["B_is_heuristic"] is True


def _fields(i):
    return dict(
        B=i.B,
        rho=i.rho,
        N=i.N,
        ell=i.ell,
        lambda_max_H=i.lambda_max_H,
        delta=i.delta,
        box=i.box,
    )


class TestFailureProbability:
    def test_direct_substitution(self):
        eps = math.sqrt(8 * math.log(2))
        assert failure_probability(eps, 1.0, 1) == pytest.approx(0.5, rel=1e-12)

    def test_zero_epsilon_clamps(self):
        assert failure_probability(0.0, 1.0, 3) == 1.0

    def test_sigma_zero(self):
        assert failure_probability(0.0, 0.0, 3) == 1.0
        assert failure_probability(0.5, 0.0, 3) == 0.0

    def test_round_trip(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            i = inputs(
                B=rng.uniform(0.5, 5),
                rho=rng.uniform(0.1, 5),
                N=int(rng.integers(4, 10**5)),
                ell=int(rng.integers(1, 60)),
                lambda_max_H=rng.uniform(0.1, 30),
                delta=rng.uniform(0.001, 0.9),
            )
            cert = epsilon_value(i)
            back = failure_probability(cert.epsilon, cert.sigma, i.ell)
            assert abs(back - i.delta) <= 1e-10


class TestEstimateBound:
    def test_max_rule(self):
        A = np.array([[1.0, 0.0], [0.0, 3.0]])  # row norms 1 and 3
        sys = DesignSystem(A=A, b=[2.0, -2.0], rho=1.0)
        est = estimate_bound(sys, [1.0, 0.0])
        assert est.value == 3.0
        assert est.is_heuristic

    def test_override(self):
        sys = DesignSystem(A=np.eye(2), b=np.ones(2), rho=1.0)
        est = estimate_bound(sys, np.zeros(2), override=7.5)
        assert est.value == 7.5 and not est.is_heuristic
        with pytest.raises(ValueError):
            estimate_bound(sys, np.zeros(2), override=-1.0)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            A = rng.normal(size=(6, 4)) * rng.uniform(0.1, 10)
            b = rng.normal(size=6) * rng.uniform(0.1, 10)
            x = rng.normal(size=4) * rng.uniform(0.1, 10)
            sys = DesignSystem(A=A, b=b, rho=1.0)
            brute = max(
                max(np.linalg.norm(A[i]) for i in range(6)),
                max(abs(v) for v in b),
                np.linalg.norm(x),
            )
            assert estimate_bound(sys, x).value == pytest.approx(brute, rel=1e-15)
