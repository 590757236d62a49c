"""The eleven acceptance criteria at their stated tolerances.

Each test prints one PASS/FAIL line (collected in the terminal summary)
before asserting, so a failing criterion still reports its numbers.
"""
import math
import os
import subprocess
import sys
import time

import numpy as np

from vdwald import couples, densities, hadamard, lseries_process, samplers, thorin
from vdwald import specfun as sf
from vdwald.numerics import integrate

SEED = 20240601


def _finish(acceptance_line, number, checks):
    """checks: list of (label, passed, detail)."""
    ok = all(p for _, p, _ in checks)
    failed = [f"{lab} ({det})" for lab, p, det in checks if not p]
    summary = "; ".join(f"{lab}: {det}" for lab, _, det in checks) if ok else "failed: " + "; ".join(failed)
    acceptance_line(number, ok, summary)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {summary}")
    assert ok, summary


def test_c01_hadamard_products(acceptance_line):
    cfg = hadamard.ProductConfig(N=10_000, tail_correction="log1p_order4")
    s_grid = np.linspace(-5, 5, 41)
    cases = [
        ("cosh", hadamard.cosh_zeros(), "real", math.cosh),
        ("sinh/z", hadamard.sinh_zeros(1.0), "real", lambda s: math.sinh(s) / s if s else 1.0),
    ]
    for nu in (-0.5, 0.5, 1.0):
        cases.append((f"f_{nu:g}", hadamard.bessel_zero_set(nu, cfg.N + 1), "imaginary",
                      lambda s, nu=nu: sf.bessel_entire(nu, s)))
    checks = []
    for name, zs, rot, direct in cases:
        err = max(abs(hadamard.eval_even_product(zs, s, cfg, "forward", rot).real / direct(s) - 1)
                  for s in s_grid)
        checks.append((name, err < 1e-8, f"{err:.1e}"))
    _finish(acceptance_line, 1, checks)


def test_c02_van_dantzig_residuals(acceptance_line):
    checks = []
    for rec in couples.builtin_registry():
        lo, hi = max(rec.vd_window[0], -3.0), min(rec.vd_window[1], 3.0)
        grid = np.linspace(lo, hi, 31)
        rep = couples.verify_van_dantzig(rec, grid)
        checks.append((rec.name, rep.passed, f"{rep.max_residual:.1e}"))
    _finish(acceptance_line, 2, checks)


def test_c03_wald_monte_carlo(acceptance_line):
    checks = []
    for k, name in enumerate(("C1", "S1", "W1", "gamma-a=1", "H_a=1")):
        rec = couples.get_record(name)
        rep = couples.verify_wald(rec, [0.5, 1.0], mode="monte_carlo", draws=200_000,
                                  rng=samplers.RngStream(SEED, 10 + k))
        bad = couples.verify_wald(rec, [0.5, 1.0], mode="monte_carlo", draws=200_000,
                                  rng=samplers.RngStream(SEED, 10 + k), h_scale=1.1)
        z = max(r / e for r, e in zip(rep.residuals, rep.se))
        zb = max(r / e for r, e in zip(bad.residuals, bad.se))
        checks.append((name, rep.passed and not bad.passed, f"{z:.2f} SE, mis-scaled {zb:.1f} SE"))
    _finish(acceptance_line, 3, checks)


def test_c04_frullani_and_lemma2(acceptance_line):
    fr = max(thorin.frullani_residual(z, s) for z in (0.5, 1.0, 2.0) for s in (0.5, 1.0, 2.0))
    mu = thorin.mu_zeta_p(2)
    l2 = max(abs(np.subtract(*thorin.lemma2_sides(mu, 2.0, s))) for s in (0.25, 0.5, 1.0))
    _finish(acceptance_line, 4, [("frullani", fr < 1e-9, f"{fr:.1e}"), ("lemma2", l2 < 1e-6, f"{l2:.1e}")])


def test_c05_zeta_xi(acceptance_line):
    checks = []
    for a in (2.0, 3.0, 4.0):
        ep = sf.euler_product_zeta(a, 100_000)
        err = abs(ep.value - sf.zeta(a))
        checks.append((f"euler a={a:g}", err <= ep.error_bound, f"{err:.1e} <= {ep.error_bound:.1e}"))
    sym = max(abs(sf.xi(s) - sf.xi(1 - s)) for s in (0.3, 0.5, 0.7))
    checks.append(("xi symmetry", sym < 1e-8, f"{sym:.1e}"))
    # literal display: E(W_1^2) against 2 (2/pi)^2 xi(2)
    w2 = densities.w_a_mellin(2.0, 1.0)
    rhs = 2 * (2 / math.pi) ** 2 * sf.xi(2.0)
    checks.append(("E W_1^2 vs 2(2/pi)^2 xi(2)", abs(w2 - rhs) < 1e-5, f"{w2:.6f} vs {rhs:.6f}"))
    _finish(acceptance_line, 5, checks)


def test_c06_polya_density(acceptance_line):
    p = densities.polya_density
    mass = integrate(lambda x: p(np.asarray(x)), -math.inf, math.inf).value
    checks = [("mass", abs(mass - 1) < 1e-6, f"{abs(mass - 1):.1e}")]
    x = samplers.sample_polya_xi(samplers.RngStream(SEED, 60), 1_000_000)
    for s in (0.25, 0.5):
        target = sf.xi(0.5 + s) / sf.xi(0.5)
        q = integrate(lambda v, s=s: np.exp(s * np.asarray(v)) * p(np.asarray(v)), -math.inf, math.inf).value
        checks.append((f"quad s={s}", abs(q - target) < 1e-5, f"{abs(q - target):.1e}"))
        est, se = samplers.empirical_cf(x, [s])
        z = abs(est[0].real - target) / se[0]
        checks.append((f"sampler s={s}", z < 3, f"{z:.2f} SE"))
    _finish(acceptance_line, 6, checks)


def test_c07_dedekind_eta(acceptance_line):
    xs = np.linspace(0.05, 5, 200)
    agree = max(abs(sf.dedekind_eta(x, "q_product") - sf.dedekind_eta(x, "euler_series")) for x in xs)
    lt1 = max(abs(sf.eta_LT_quadrature(s) - sf.eta_LT_closed(s)) for s in (1.0, 2.0, 5.0))
    lt3 = max(abs(sf.eta3_LT_quadrature(s) - sf.eta3_LT_closed(s)) for s in (1.0, 2.0, 5.0))
    _finish(acceptance_line, 7, [("methods", agree < 1e-12, f"{agree:.1e}"),
                                 ("LT eta", lt1 < 1e-8, f"{lt1:.1e}"), ("LT eta^3", lt3 < 1e-8, f"{lt3:.1e}")])


def test_c08_ramanujan_tau(acceptance_line):
    tab = sf.ramanujan_tau(30)
    vals = tab.values
    first = vals[0] == 1 and vals[1] == -24 and tab[6] == tab[2] * tab[3] and len(vals) == 30
    grid = [0.5, 1.0, 2.0, 3.0]
    scale = abs(sf.Xi_tau(0.0))
    full = {s: sf.Xi_tau_full(s) for s in grid + [-s for s in grid]}
    even = max(abs(full[s] - full[-s]) for s in grid) / scale
    real = max(abs(v.imag) for v in full.values()) / scale
    sig = sf.sigma_minus1_identity_residual(1.0, 200).value
    _finish(acceptance_line, 8, [("tau(1..30)", first, f"tau(2)={vals[1]}, tau(6)={tab[6]}"),
                                 ("Xi even", even < 1e-10, f"{even:.1e}"), ("Xi real", real < 1e-10, f"{real:.1e}"),
                                 ("sigma_-1", sig < 1e-12, f"{sig:.1e}")])


def test_c09_appendix_a(acceptance_line):
    res = 0.0
    for x in (0.0, 0.5, 1.0, 2.0, 3.0):
        for case, b in (("pole_in", 0.0), ("pole_in", -0.5), ("pole_in", 0.7), ("pole_gt1", 1.5),
                        ("pole_gt1", 3.0), ("squared", None)):
            res = max(res, densities.cosh_fourier_integral(x, case, b)[1])
    fc = max(densities.fourier_cos_identity_residual(a, x).value
             for a, x in ((2.0, math.pi / 6), (0.5, 0.2), (1.0, 1.0), (3.0, 2.5), (1.5, math.pi / 2)))
    xg = np.linspace(0, 20, 4001)
    neg = min(float(np.min(densities.ostrovskii_density(xg, p))) for p in densities.OSTROVSKII_ACCEPTANCE_SETS)
    cf = max(couples.ostrovskii_cf_residual(p, t) for p in densities.OSTROVSKII_ACCEPTANCE_SETS for t in (0.0, 1.0))
    _finish(acceptance_line, 9, [("residues", res < 1e-8, f"{res:.1e}"), ("cosine", fc < 1e-8, f"{fc:.1e}"),
                                 ("ostrovskii min", neg >= 0, f"{neg:.2e}"), ("ostrovskii CF", cf < 1e-6, f"{cf:.1e}")])


def test_c10_lseries_subordinator(acceptance_line):
    spec = lseries_process.subordinator_from_character(sf.principal_character(1), 2.0, 10_000)
    x = lseries_process.sample_values(spec, 1.0, samplers.RngStream(SEED, 100), 100_000)
    est, se = samplers.empirical_cf(x, [-1.0])
    target = (sf.zeta(3.0) / sf.zeta(2.0))
    z = abs(est[0].real - target) / se[0]
    single = lseries_process.SubordinatorSpec(0.0, thorin.MuMeasure([math.log(2)], [0.7]))
    root = max(abs(lseries_process.first_passage_exponent(sp, c, w) - lseries_process.first_passage_grid_scan(sp, c, w))
               for sp, c, w in ((single, 1.0, 0.1), (single, 0.5, 0.05), (spec, 0.5, 0.3)))
    _finish(acceptance_line, 10, [("E e^{-sX_t}", z < 3, f"{z:.2f} SE"), ("root vs grid", root < 1e-8, f"{root:.1e}")])


def test_c11_reproducible_verify_all(acceptance_line, tmp_path):
    outs, codes = [], []
    t0 = time.perf_counter()
    for k in range(2):
        env = dict(os.environ, VDWALD_OUTPUT_DIR=str(tmp_path / f"run{k}"))
        proc = subprocess.run([sys.executable, "-m", "vdwald", "verify", "all", "--quick"],
                              env=env, capture_output=True, text=True)
        codes.append(proc.returncode)
        files = sorted((tmp_path / f"run{k}" / "reports").glob("*.json"))
        outs.append({f.name: f.read_bytes() for f in files})
    wall = (time.perf_counter() - t0) / 2
    same = outs[0] == outs[1] and len(outs[0]) > 0
    _finish(acceptance_line, 11, [("exit", codes == [0, 0], str(codes)), ("identical reports", same, f"{len(outs[0])} files"),
                                  ("wall", wall < 300, f"{wall:.1f}s per run")])
