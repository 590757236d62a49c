import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sint

from vdwald import hadamard as hd
from vdwald import thorin
from vdwald.errors import DomainError, UnsupportedMeasureError


def test_measure_validation():
    with pytest.raises(DomainError):
        thorin.ThorinMeasure([1.0, 2.0], [1.0])
    with pytest.raises(DomainError):
        thorin.ThorinMeasure([-1.0], [1.0])
    with pytest.raises(DomainError):
        thorin.ThorinMeasure(density_id="nope")


@given(st.floats(0.1, 5), st.floats(0.0, 20))
def test_single_atom_is_gamma(theta, s):
    # U = theta delta_1 gives the Gamma(theta, 1) law
    U = thorin.ThorinMeasure([1.0], [theta])
    assert thorin.ggc_laplace_transform(U, s) == pytest.approx((1 + s) ** -theta, rel=1e-13)


@given(st.floats(0.0, 30))
def test_cosh_zeros_give_sech_sqrt(s):
    U = thorin.thorin_from_zeros(hd.cosh_zeros(), 2000)
    val = thorin.ggc_laplace_transform(U, s)
    assert val == pytest.approx(1 / math.cosh(math.sqrt(s)), rel=1e-9)
    assert thorin.ggc_exponent_tail_bound(U, s) < 1e-9


def test_scaled_weighted_zeros():
    # scale 1/2 and weight 2: E e^{-sH} = (s / sinh s)^2 evaluated at sqrt(2 s)
    U = thorin.thorin_from_zeros(hd.sinh_zeros(1.0), 2000, scale=0.5, weight=2.0)
    for s in (0.5, 2.0, 8.0):
        r = math.sqrt(2 * s)
        assert thorin.ggc_laplace_transform(U, s) == pytest.approx((r / math.sinh(r)) ** 2, rel=1e-9)


def test_density_exponent_against_closed_form():
    U = thorin.ThorinMeasure(density_id="unit_interval")
    for s in (0.5, 1.0, 3.0):
        closed = (1 + s) * math.log1p(s) - s * math.log(s)
        assert thorin.ggc_laplace_exponent(U, s) == pytest.approx(closed, rel=1e-10)
    U = thorin.ThorinMeasure(density_id="exp1", a=0.3)
    ref, _ = sint.quad(lambda z: math.log1p(2.0 / z) * math.exp(-z), 0, math.inf)
    assert thorin.ggc_laplace_transform(U, 2.0) == pytest.approx(math.exp(-0.6 - ref), rel=1e-10)


def test_exponent_domain():
    with pytest.raises(DomainError):
        thorin.ggc_laplace_exponent(thorin.ThorinMeasure([1.0], [1.0]), -1.0)


@pytest.mark.parametrize("s", [0.5, 2.0])
def test_levy_density_integrates_to_exponent(s):
    # phi(s) = int (1 - e^{-st}) k(t) dt, independent of the log formula
    U = thorin.ThorinMeasure([1.0, 3.0], [0.7, 1.2], density_id="unit_interval")
    val, _ = sint.quad(lambda t: -math.expm1(-s * t) * thorin.levy_density_from_thorin(U, t), 0, math.inf, limit=200)
    assert val == pytest.approx(thorin.ggc_laplace_exponent(U, s), rel=1e-8)


def test_inverse_moment_and_json():
    U = thorin.ThorinMeasure([2.0, 4.0], [1.0, 2.0], density_id="exp1", a=0.1)
    assert thorin.ThorinMeasure([2.0, 4.0], [1.0, 2.0]).inverse_moment() == pytest.approx(1.0)
    back = thorin.ThorinMeasure.from_json(U.to_json())
    assert back.density_id == "exp1" and back.a == 0.1
    np.testing.assert_array_equal(back.atoms_z, U.atoms_z)
    with pytest.raises(DomainError):
        thorin.ThorinMeasure(density=lambda z: z).to_json()


@given(st.floats(0.1, 10), st.floats(-3, 3))
def test_frullani(z, s):
    assert thorin.frullani_residual(z, s) < 1e-9


@given(st.floats(-20, 20))
def test_sym_eggc_exponential(u):
    s = 1j * u
    U = thorin.ThorinMeasure([1.0], [1.0])
    # Exp(1) - 1/2 and the symmetric Laplace law
    assert abs(thorin.sym_eggc_mgf(U, None, 0.0, s) - np.exp(-s / 2) / (1 - s)) < 1e-12
    assert abs(thorin.sym_eggc_mgf(U, U, 0.0, s) - 1 / (1 - s * s)) < 1e-12
    assert abs(thorin.sym_eggc_mgf(thorin.ThorinMeasure(), None, 2.0, s) - np.exp(s * s)) < 1e-12


def test_sym_eggc_domain():
    with pytest.raises(DomainError):
        thorin.sym_eggc_mgf(thorin.ThorinMeasure(), None, 0.0, 1.0)


@given(st.floats(0.3, 3), st.floats(0.01, 10))
def test_inner_transform_closed_vs_atoms(alpha, z):
    mu = thorin.mu_zeta_p(3)
    a = thorin.mu_inner_transform(mu, alpha, z)
    b = thorin.mu_inner_transform(mu, alpha, z, closed_form=False)
    # the atom route stops after 80 atoms; each omitted one contributes at most 2 log 3 r^k
    r = 3.0 ** -alpha
    assert abs(a - b) <= 2 * math.log(3) * r**81 / (1 - r) + 1e-12


@pytest.mark.parametrize("t", [0.1, 1.0, 5.0])
def test_nu_alpha_against_double_integral(t):
    # nu_alpha(t) = (2 pi)^{-1/2} int e^{-tz} inner(z) dz / sqrt(pi z)
    mu = thorin.mu_zeta_p(2)
    alpha = 2.0
    f = lambda u: 2 * math.exp(-t * u * u) * thorin.mu_inner_transform(mu, alpha, u * u) / math.sqrt(math.pi)
    val, _ = sint.quad(f, 0, math.inf, limit=400)
    assert thorin.lemma2_nu_alpha(mu, alpha, t) == pytest.approx(val / math.sqrt(2 * math.pi), rel=1e-7)


def test_nu_alpha_gamma_is_completely_monotone():
    mu = thorin.mu_gamma()
    assert thorin.cm_check(lambda t: thorin.lemma2_nu_alpha(mu, 1.0, t), np.linspace(0.2, 4, 12))
    with pytest.raises(UnsupportedMeasureError):
        thorin.lemma2_nu_alpha(thorin.MuMeasure([1.0], [1.0]), 1.0, 1.0)


@pytest.mark.parametrize("p, alpha, s", [(2, 2.0, 0.5), (3, 1.5, 1.0), (5, 1.0, 0.25)])
def test_lemma2_sides_agree(p, alpha, s):
    left, right = thorin.lemma2_sides(thorin.mu_zeta_p(p), alpha, s)
    assert abs(left - right) < 1e-6


def test_wald_bridge_round_trip():
    fwd = thorin.wald_bridge(math.cosh)
    U = thorin.thorin_from_zeros(hd.cosh_zeros(), 2000)
    for s in (0.5, 4.0):
        assert fwd(s) == pytest.approx(thorin.ggc_laplace_transform(U, s), rel=1e-9)
    back = thorin.wald_bridge(lambda s: thorin.ggc_laplace_transform(U, s), "reciprocal")
    assert back(1.5) == pytest.approx(math.cosh(1.5), rel=1e-9)
    with pytest.raises(DomainError):
        fwd(-1.0)


def test_cm_check():
    grid = np.linspace(0.1, 5, 20)
    assert thorin.cm_check(lambda x: math.exp(-x), grid)
    assert thorin.cm_check(lambda x: 1 / (1 + x), grid)
    assert not thorin.cm_check(lambda x: 2 + math.sin(x), grid)
