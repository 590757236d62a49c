import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sint

from vdwald import densities as dn
from vdwald.errors import DomainError


def quad_R(f, **kw):
    a, _ = sint.quad(f, -math.inf, 0, limit=200, **kw)
    b, _ = sint.quad(f, 0, math.inf, limit=200, **kw)
    return a + b


def mp_xi(s):
    if s == 1:
        return 0.5
    s = mpmath.mpf(s)
    return float(s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s))


# ---- Polya xi-density ----

def test_xi_half_constant():
    assert dn.XI_HALF == pytest.approx(mp_xi(0.5), rel=1e-13)


def test_polya_mass_and_evenness():
    assert quad_R(lambda x: dn.polya_density(x)) == pytest.approx(1.0, abs=1e-10)
    x = np.linspace(0.01, 3, 50)
    np.testing.assert_allclose(dn.polya_density(x), dn.polya_density(-x), rtol=1e-13)


def test_polya_raw_series_matches_symmetric_route():
    # the raw series converges fast for x > 0; the density is built at -|x|
    # at positive x the raw sum cancels down to rounding, hence the absolute floor
    x = np.array([0.2, 0.7, 1.5])
    np.testing.assert_allclose(dn.polya_series_raw(x) / dn.XI_HALF, dn.polya_density(x), rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("s", [0.1, 0.25, 0.5, 1.0])
def test_polya_mgf_against_mpmath(s):
    val = sint.quad(lambda x: math.exp(s * x) * dn.polya_density(x), -40, 40, points=[0.0], limit=200)[0]
    assert val == pytest.approx(mp_xi(0.5 + s) / mp_xi(0.5), rel=1e-9)


def test_polya_log_density_and_tail():
    for x in (0.0, 0.5, 1.5):
        assert dn.polya_log_density(x) == pytest.approx(math.log(dn.polya_density(x)), rel=1e-12)
    # far out the n = 1 term dominates; it differs from the tail form by the factor 1 - 3/(2 y)
    x = 4.0
    y = math.pi * math.exp(2 * x)
    gap = dn.polya_log_density(x, normalized=False) - dn.polya_tail_log(x)
    assert gap == pytest.approx(math.log1p(-1.5 / y), rel=1e-6)
    assert math.isfinite(dn.polya_log_density(12.0))


# ---- W_a ----

def test_w_density_mass_and_mean():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        assert dn.w_a_mellin(0.0, 1.0) == pytest.approx(1.0, abs=1e-10)
    assert dn.w_a_mellin(1.0, 1.0) == pytest.approx(2 / 3, rel=1e-9)


@pytest.mark.parametrize("s", [2.0, 3.0, 4.5])
def test_w_mellin_half_exponent(s):
    assert dn.w_a_mellin(s / 2, 1.0) == pytest.approx(2 * (2 / math.pi) ** (s / 2) * mp_xi(s), rel=1e-8)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
@given(st.floats(0.3, 3), st.floats(0.1, 5))
def test_w_scaling(a, x):
    # W_a has the law of a^2 W_1
    assert dn.w_a_density(x * a * a, a) == pytest.approx(dn.w_a_density(x, 1.0) / (a * a), rel=1e-9, abs=1e-14)


def test_w_density_errors_and_domain():
    val, err = dn.w_a_density_with_error(np.array([0.1, 1.0]), 1.0)
    assert np.all(err < 1e-10 * np.maximum(1.0, np.abs(val)))
    with pytest.raises(DomainError):
        dn.w_a_density(-1.0)
    with pytest.warns(RuntimeWarning):
        dn.w_a_density(0.001)


# ---- Ostrovskii class ----

@pytest.mark.parametrize("p", dn.OSTROVSKII_ACCEPTANCE_SETS)
def test_ostrovskii_density_is_a_density(p):
    x = np.linspace(0, 20, 2001)
    assert np.all(dn.ostrovskii_density(x, p) >= 0)
    mass = 2 * sint.quad(lambda v: dn.ostrovskii_density(v, p), 0, math.inf, limit=200)[0]
    assert mass == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("p", dn.OSTROVSKII_ACCEPTANCE_SETS)
def test_ostrovskii_scaled_goes_negative(p):
    x = np.linspace(0, 20, 4001)
    assert np.min(dn.ostrovskii_density(x, p.scaled(100.0))) < 0


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 2.0])
def test_ostrovskii_cf(t):
    p = dn.OSTROVSKII_ACCEPTANCE_SETS[0]
    ref = float(dn.ostrovskii_f(math.cosh(t), p) / dn.ostrovskii_f(1.0, p))
    cf = 2 * sint.quad(lambda v: math.cos(t * v) * dn.ostrovskii_density(v, p), 0, math.inf, limit=400)[0]
    assert cf == pytest.approx(ref, abs=1e-8)
    assert dn.ostrovskii_cf_quadrature(t, p) == pytest.approx(ref, abs=1e-8)


def test_ostrovskii_small_x_branch_is_continuous():
    for p in dn.OSTROVSKII_ACCEPTANCE_SETS:
        assert dn.ostrovskii_density(0.0, p) == pytest.approx(dn.ostrovskii_limit_at_zero(p), rel=1e-14)
        lo, hi = dn.ostrovskii_density(np.array([0.999e-3, 1.001e-3]), p)
        assert lo == pytest.approx(hi, rel=1e-5)


def test_ostrovskii_params_validation():
    with pytest.raises(DomainError):
        dn.OstrovskiiParams(1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        dn.OstrovskiiParams(1.6, 2.0, 1.0, (1.0,), (1.5,))
    p = dn.OSTROVSKII_ACCEPTANCE_SETS[0]
    z = 2.0 + 1.0j
    assert dn.ostrovskii_f(z, p) == pytest.approx(1 / z**2 - 1 / (1.6 * z) + 1 / (z + 100))


# ---- cosh-type Fourier integrals ----

@pytest.mark.parametrize("case, b", [("pole_in", 0.0), ("pole_in", -0.6), ("pole_in", 0.9),
                                     ("pole_gt1", 1.2), ("pole_gt1", 4.0), ("squared", None)])
@pytest.mark.parametrize("x", [0.0, 0.4, 1.7])
def test_cosh_fourier_against_scipy(case, b, x):
    k = (lambda t: 1 / math.cosh(t) ** 2) if case == "squared" else (lambda t: 1 / (math.cosh(t) + b))
    ref = 2 * sint.quad(lambda t: math.cos(x * t) * k(t), 0, 60, limit=400, epsabs=1e-13)[0]
    assert dn.cosh_fourier_closed(x, case, b) == pytest.approx(ref, abs=1e-10)
    closed, res = dn.cosh_fourier_integral(x, case, b)
    assert res < 1e-8


def test_cosh_fourier_case_validation():
    with pytest.raises(DomainError):
        dn.cosh_fourier_closed(1.0, "pole_in", 1.5)
    with pytest.raises(DomainError):
        dn.cosh_fourier_closed(1.0, "pole_gt1", 0.5)
    with pytest.raises(DomainError):
        dn.cosh_fourier_closed(1.0, "other")


@given(st.floats(0.1, 4), st.floats(0.05, math.pi - 0.05))
def test_fourier_cos_identity(alpha, x):
    r = dn.fourier_cos_identity_residual(alpha, x, 20_000)
    assert r.value <= r.error_bound + 1e-12


def test_fourier_cos_closed_value():
    # at x = pi/2 every cos((2n+1) x) vanishes
    assert dn.fourier_cos_closed(1.3, math.pi / 2) == pytest.approx(0.0, abs=1e-15)


@given(st.floats(0.2, 3))
def test_kendall(a):
    assert np.max(dn.kendall_convolution_residual(a, [0.0, 0.5 * a, 3 * a])) < 1e-10
    half = sint.quad(lambda s: float(dn.kendall_closed(s, a)), 0, 60 * a, epsabs=1e-14, epsrel=1e-13)[0]
    assert 2 * half == pytest.approx(1.0, abs=1e-10)
