"""Named identity checks driven by ``vdwald verify``.

Each check returns a list of VerificationReport objects. ``quick`` trims
grids and draw counts; the seed fixes every Monte Carlo stream.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import couples, densities, hadamard, lseries_process, samplers, thorin
from . import specfun as sf
from .couples import VerificationReport

__all__ = ["Check", "CHECKS", "run_check", "checks_for"]


@dataclass(frozen=True)
class Check:
    id: str
    run: Callable[[bool, int], list]
    in_all: bool = True
    description: str = ""


def _report(name, check, grid, residuals, tol, se=None, notes=()):
    tols = [tol] * len(grid) if np.isscalar(tol) else list(tol)
    res = [float(r) for r in residuals]
    ok = all(math.isfinite(r) and r <= t for r, t in zip(res, tols))
    return VerificationReport(name, check, list(grid), res, [float(t) for t in tols],
                              None if se is None else [float(e) for e in se], ok, list(notes))


def _hadamard(quick: bool, seed: int) -> list:
    cfg = hadamard.ProductConfig(N=10_000, tail_correction="log1p_order4")
    s_grid = np.linspace(-5, 5, 11 if quick else 41)
    out = []
    cases = [
        ("cosh", hadamard.cosh_zeros(), "real", lambda s: math.cosh(s)),
        ("sinh(s)/s", hadamard.sinh_zeros(1.0), "real", lambda s: math.sinh(s) / s if s else 1.0),
    ]
    for nu in (-0.5, 0.5, 1.0):
        cases.append((f"bessel nu={nu:g}", hadamard.bessel_zero_set(nu, cfg.N + 1), "imaginary",
                      lambda s, nu=nu: sf.bessel_entire(nu, s)))
    for name, zs, rot, direct in cases:
        res = [abs(hadamard.eval_even_product(zs, s, cfg, "forward", rot).real / direct(s) - 1) for s in s_grid]
        out.append(_report(name, "hadamard_product", s_grid.tolist(), res, 1e-8, notes=["relative error, N=1e4"]))
    return out


def _van_dantzig(quick: bool, seed: int) -> list:
    return [couples.verify_van_dantzig(r) for r in couples.builtin_registry()]


def _wald_analytic(quick: bool, seed: int) -> list:
    return [couples.verify_wald(r) for r in couples.builtin_registry() if r.wald_window is not None]


WALD_MC_RECORDS = ("C1", "S1", "W1", "gamma-a=1", "H_a=1")


def _wald_mc(quick: bool, seed: int) -> list:
    out = []
    draws = 100_000 if quick else 1_000_000
    for k, name in enumerate(WALD_MC_RECORDS):
        rec = couples.get_record(name)
        rng = samplers.RngStream(seed, 100 + k)
        rep = couples.verify_wald(rec, [0.5, 1.0], mode="monte_carlo", draws=draws, rng=rng)
        bad = couples.verify_wald(rec, [0.5, 1.0], mode="monte_carlo", draws=draws,
                                  rng=samplers.RngStream(seed, 100 + k), h_scale=1.1)
        rep.notes.append(f"1.1x mis-scaled H detected: {not bad.passed}")
        rep.passed = rep.passed and not bad.passed
        out.append(rep)
    return out


def _frullani(quick: bool, seed: int) -> list:
    pts = [(z, s) for z in (0.5, 1.0, 2.0) for s in (0.5, 1.0, 2.0)]
    res = [thorin.frullani_residual(z, s) for z, s in pts]
    return [_report("frullani", "frullani", [list(p) for p in pts], res, 1e-9)]


def _lemma2(quick: bool, seed: int) -> list:
    mu = thorin.mu_zeta_p(2)
    s_grid = [0.5, 1.0] if quick else [0.25, 0.5, 1.0, 1.5]
    res = []
    for s in s_grid:
        left, right = thorin.lemma2_sides(mu, 2.0, s)
        res.append(abs(left - right))
    return [_report("lemma2 zeta_p p=2 alpha=2", "lemma2", s_grid, res, 1e-6,
                    notes=["reading e^{-s^2 t/2} with the 1/t weight"])]


def _euler(quick: bool, seed: int) -> list:
    res, tols = [], []
    for a in (2.0, 3.0, 4.0):
        ep = sf.euler_product_zeta(a, 100_000)
        res.append(abs(ep.value - sf.zeta(a)))
        tols.append(ep.error_bound + 1e-14)
    return [_report("euler product P=1e5", "euler_product", [2.0, 3.0, 4.0], res, tols)]


def _xi_symmetry(quick: bool, seed: int) -> list:
    g = [0.3, 0.5, 0.7]
    return [_report("xi(s) = xi(1-s)", "xi_symmetry", g, [abs(sf.xi(s) - sf.xi(1 - s)) for s in g], 1e-8)]


def _w_mellin(quick: bool, seed: int) -> list:
    chk = couples.w_a_mellin_check(2.0, 1.0)
    extra = [abs(densities.w_a_mellin(1.0, 1.0) - 2 / 3)]
    return [_report("E W_1^(s/2) = 2(2/pi)^(s/2) xi(s), s=2", "w_mellin", [2.0, "mean"],
                    [chk["half"]] + extra, 1e-5)]


def _w_mellin_literal(quick: bool, seed: int) -> list:
    chk = couples.w_a_mellin_check(2.0, 1.0)
    return [_report("E W_1^2 = 2(2/pi)^2 xi(2)", "w_mellin_literal", [2.0], [chk["literal"]], 1e-5,
                    notes=[f"E W^2 = {chk['E_W^s']:.12g}, rhs = {chk['rhs_literal']:.12g}"])]


def _polya(quick: bool, seed: int) -> list:
    from .numerics import integrate

    mass = integrate(lambda x: densities.polya_density(np.asarray(x)), -math.inf, math.inf).value
    out = [_report("polya mass", "polya", ["mass"], [abs(mass - 1)], 1e-6)]
    res = []
    for s in (0.25, 0.5):
        q = integrate(lambda x, s=s: np.exp(s * np.asarray(x)) * densities.polya_density(np.asarray(x)),
                      -math.inf, math.inf).value
        res.append(abs(q - sf.xi(0.5 + s) / sf.xi(0.5)))
    out.append(_report("polya mgf quadrature", "polya", [0.25, 0.5], res, 1e-5))
    x = samplers.sample_polya_xi(samplers.RngStream(seed, 200), 100_000 if quick else 1_000_000)
    est, se = samplers.empirical_cf(x, [0.25, 0.5])
    target = np.array([sf.xi(0.75), sf.xi(1.0)]) / sf.xi(0.5)
    out.append(_report("polya sampler mgf", "polya_mc", [0.25, 0.5], np.abs(est.real - target), 3 * se, se))
    return out


def _eta(quick: bool, seed: int) -> list:
    xs = np.linspace(0.05, 5, 25 if quick else 100)
    res = [abs(sf.dedekind_eta(x, "q_product") - sf.dedekind_eta(x, "euler_series")) for x in xs]
    out = [_report("eta product vs series", "eta", xs.tolist(), res, 1e-12)]
    sg = [1.0, 2.0, 5.0]
    out.append(_report("eta Laplace transform", "eta_lt", sg,
                       [abs(sf.eta_LT_quadrature(s) - sf.eta_LT_closed(s)) for s in sg], 1e-8))
    out.append(_report("eta^3 Laplace transform", "eta_lt", sg,
                       [abs(sf.eta3_LT_quadrature(s) - sf.eta3_LT_closed(s)) for s in sg], 1e-8))
    return out


TAU_1_30 = (1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
            -577738, 401856, 1217160, 987136, -6905934, 2727432, 10661420, -7109760, -4219488,
            -12830688, 18643272, 21288960, -25499225, 13865712, -73279080, 24647168, 128406630,
            -29211840)


def _tau(quick: bool, seed: int) -> list:
    tab = sf.ramanujan_tau(30)
    res = [abs(tab[n] - TAU_1_30[n - 1]) for n in range(1, 31)]
    res.append(abs(tab[6] - tab[2] * tab[3]))
    out = [_report("tau(1..30), tau(6)=tau(2)tau(3)", "tau", list(range(1, 31)) + ["mult"], res, 0.0)]
    grid = [0.5, 1.0, 2.0] if quick else [0.25, 0.5, 1.0, 2.0, 3.0, 5.0]
    scale = abs(sf.Xi_tau(0.0))
    full = {s: sf.Xi_tau_full(s) for s in grid + [-s for s in grid]}
    res = [abs(full[s] - full[-s]) / scale for s in grid]
    out.append(_report("Xi_tau even", "xi_tau", grid, res, 1e-10))
    res = [abs(full[s].imag) / scale for s in grid]
    out.append(_report("Xi_tau real", "xi_tau", grid, res, 1e-10))
    res = [abs(full[s].real - sf.Xi_tau(s)) / scale for s in grid]
    out.append(_report("Xi_tau two routes", "xi_tau", grid, res, 1e-10,
                       notes=["product display vs modular-transform evaluation"]))
    r = sf.sigma_minus1_identity_residual(1.0, 200)
    out.append(_report("sigma_-1 identity x=1", "sigma_identity", [1.0], [r.value], 1e-12))
    return out


def _appendix(quick: bool, seed: int) -> list:
    out = []
    xs = [0.0, 0.5, 1.0, 2.0]
    for case, b in (("pole_in", 0.0), ("pole_in", 0.5), ("pole_gt1", 2.0), ("squared", None)):
        res = [densities.cosh_fourier_integral(x, case, b)[1] for x in xs]
        out.append(_report(f"residue integral {case} b={b}", "residue", xs, res, 1e-8))
    pts = [(2.0, math.pi / 6), (1.0, 0.3), (0.5, 1.0), (3.0, math.pi / 2), (1.0, 0.01)]
    res = [densities.fourier_cos_identity_residual(a, x).value for a, x in pts]
    out.append(_report("fourier cosine identity", "fourier_cos", [list(p) for p in pts], res, 1e-8))
    xg = np.linspace(0, 20, 401 if quick else 4001)
    for i, p in enumerate(densities.OSTROVSKII_ACCEPTANCE_SETS):
        neg = float(np.min(densities.ostrovskii_density(xg, p)))
        cf = [couples.ostrovskii_cf_residual(p, t) for t in (0.0, 1.0)]
        out.append(_report(f"ostrovskii set {i}", "ostrovskii", ["min density", 0.0, 1.0],
                           [max(0.0, -neg)] + cf, [0.0, 1e-6, 1e-6]))
    return out


def _kendall(quick: bool, seed: int) -> list:
    g = [0.0, 0.5, 2.0]
    return [_report("kendall convolution a=1", "kendall", g, densities.kendall_convolution_residual(1.0, g), 1e-9)]


def _subordinator(quick: bool, seed: int) -> list:
    chi = sf.principal_character(1)
    spec = lseries_process.subordinator_from_character(chi, 2.0, 10_000)
    x = lseries_process.sample_values(spec, 1.0, samplers.RngStream(seed, 300), 100_000)
    est, se = samplers.empirical_cf(x, [-1.0])
    target = lseries_process.exact_laplace(spec, 1.0, 1.0)
    out = [_report("E e^{-X_1} vs zeta(3)/zeta(2)", "subordinator_mc", [1.0], [abs(est[0].real - target)],
                   3 * se, se)]
    single = lseries_process.SubordinatorSpec(0.0, thorin.MuMeasure([math.log(2)], [0.7]))
    res = []
    for sp, c, w in ((single, 1.0, 0.1), (spec, 0.5, 0.3)):
        res.append(abs(lseries_process.first_passage_exponent(sp, c, w)
                       - lseries_process.first_passage_grid_scan(sp, c, w)))
    out.append(_report("first passage root vs grid scan", "first_passage", ["single atom", "zeta"], res, 1e-8))
    return out


def _dirichlet(quick: bool, seed: int) -> list:
    res, grid = [], []
    for k in (3, 4, 5, 8):
        for chi in sf.characters(k):
            if chi.is_principal or not chi.primitive:
                continue
            grid.append(chi.label)
            res.append(sf.functional_equation_residuals(chi, 0.3 + 0.7j)["standard"])
    return [_report("Lambda(s, chi) functional equation", "dirichlet", grid, res, 1e-10)]


CHECKS: dict[str, Check] = {c.id: c for c in (
    Check("hadamard", _hadamard, description="products vs direct evaluation"),
    Check("van-dantzig", _van_dantzig, description="f(is) g(s) = 1 for the registry"),
    Check("wald", _wald_analytic, description="analytic Wald identity for the registry"),
    Check("wald-mc", _wald_mc, description="Monte Carlo Wald identity with mis-scale detection"),
    Check("frullani", _frullani),
    Check("lemma2", _lemma2),
    Check("euler-product", _euler),
    Check("xi-symmetry", _xi_symmetry),
    Check("w-mellin", _w_mellin, description="W_1 Mellin identity (half-exponent form)"),
    Check("w-mellin-literal", _w_mellin_literal, in_all=False,
          description="W_1 Mellin identity as literally displayed; expected to fail"),
    Check("polya", _polya),
    Check("eta", _eta),
    Check("tau", _tau),
    Check("appendix", _appendix),
    Check("kendall", _kendall),
    Check("subordinator", _subordinator),
    Check("dirichlet", _dirichlet),
)}


def checks_for(target: str) -> list[Check]:
    """Resolve 'all', a check id, or 'couple:<name>'."""
    if target == "all":
        return [c for c in CHECKS.values() if c.in_all]
    if target in CHECKS:
        return [CHECKS[target]]
    if target.startswith("couple:"):
        name = target.split(":", 1)[1]
        rec = couples.get_record(name)

        def run(quick, seed, rec=rec):
            out = [couples.verify_van_dantzig(rec)]
            if rec.wald_window is not None:
                out.append(couples.verify_wald(rec))
            return out

        return [Check(target, run)]
    raise KeyError(target)


def run_check(check: Check, quick: bool, seed: int) -> list:
    return check.run(quick, seed)
