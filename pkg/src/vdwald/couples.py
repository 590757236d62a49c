"""Registry of van Dantzig pairs and Wald couples, and the checks run against them.

A record bundles f (characteristic function of X), g(s) = 1/f(is), the mgf
of X and the H-side transform s -> E e^{-kappa s^2 H}, plus optional
samplers. kappa is 1/2 when ``half_factor`` is set and 1 otherwise; the
H-side transform is computed from a route independent of g wherever one
exists (Thorin atoms, truncated products) so the Wald check is not a tautology.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import samplers as smp
from .densities import (
    OSTROVSKII_ACCEPTANCE_SETS,
    OstrovskiiParams,
    ostrovskii_cf_quadrature,
    ostrovskii_f,
    w_a_mellin,
)
from .errors import DomainError
from .hadamard import (
    ProductConfig,
    bessel_zero_set,
    cosh_zeros,
    eval_even_product,
    eval_genus1_product,
    even_product_tail_bound,
    gamma_zeros,
    sinh_zeros,
)
from .specfun import bessel_entire, digamma, loggamma, xi
from .thorin import ggc_laplace_transform, thorin_from_zeros

__all__ = [
    "CoupleRecord",
    "VerificationReport",
    "verify_van_dantzig",
    "verify_wald",
    "builtin_registry",
    "get_record",
    "w_a_mellin_check",
]

REPORT_SCHEMA = 1
PRODUCT_CFG = ProductConfig(N=10_000, tail_correction="log1p_order4")

Sampler = Callable[[object, int], np.ndarray]


@dataclass(frozen=True)
class CoupleRecord:
    """A van Dantzig pair (f, g) with the Wald-couple data attached.

    ``vd_window`` is the real interval on which f(is) g(s) = 1 is asserted;
    ``wald_window`` is where E e^{sX} E e^{-kappa s^2 H} = 1 is asserted (a
    one-sided window for couples whose H-side formula carries |s|).
    ``kind`` is "closed" for closed-form pairs and "product" when g or the
    H side comes from a truncated product, in which case ``tail_bound(s)``
    bounds the truncation error.
    """

    name: str
    f: Callable[[complex], complex]
    g: Callable[[complex], complex]
    half_factor: bool = True
    x_mgf: Callable[[float], float] | None = None
    h_lt: Callable[[float], float] | None = None
    X_sampler: Sampler | None = None
    H_sampler: Sampler | None = None
    vd_window: tuple[float, float] = (-3.0, 3.0)
    wald_window: tuple[float, float] | None = (-3.0, 3.0)
    kind: str = "closed"
    tail_bound: Callable[[float], float] | None = None
    f_is_cf: bool = True
    notes: tuple[str, ...] = ()

    @property
    def kappa(self) -> float:
        return 0.5 if self.half_factor else 1.0

    def vd_tolerance(self, s: float) -> float:
        if self.kind == "closed" or self.tail_bound is None:
            return 1e-10
        return max(self.tail_bound(s), 1e-12) + 1e-12


@dataclass
class VerificationReport:
    couple: str
    check: str
    grid: list
    residuals: list
    tolerance: list
    se: list | None = None
    passed: bool = False
    notes: list = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        r = [v for v in self.residuals if v is not None and math.isfinite(v)]
        return max(r) if r else math.nan

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = REPORT_SCHEMA
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=_json_default)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["couple", "check", "s", "residual", "se", "tolerance", "pass"])
        se = self.se or [None] * len(self.grid)
        for s, r, e, t in zip(self.grid, self.residuals, se, self.tolerance):
            ok = r is not None and math.isfinite(r) and r <= t
            w.writerow([self.couple, self.check, repr(s), repr(r), "" if e is None else repr(e), repr(t), ok])
        return buf.getvalue()


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(type(o))


def _grid(window, n: int) -> np.ndarray:
    return np.linspace(window[0], window[1], n)


def verify_van_dantzig(rec: CoupleRecord, grid=None, tol: float | None = None) -> VerificationReport:
    """Residuals |f(is) g(s) - 1| plus CF sanity (f(0) = g(0) = 1, |f| <= 1, Hermitian)."""
    s_grid = _grid(rec.vd_window, 25) if grid is None else np.asarray(grid, dtype=float)
    res, tols, notes = [], [], []
    ok = True
    for s in s_grid:
        t = tol if tol is not None else rec.vd_tolerance(s)
        try:
            r = abs(complex(rec.f(1j * s)) * complex(rec.g(s)) - 1)
        except (ArithmeticError, ValueError) as exc:
            r = math.nan
            notes.append(f"s={s:g}: evaluation failed ({exc})")
        res.append(float(r))
        tols.append(float(t))
        ok &= bool(math.isfinite(r) and r <= t)
    f0, g0 = complex(rec.f(0.0)), complex(rec.g(0.0))
    if abs(f0 - 1) > 1e-12 or abs(g0 - 1) > 1e-12:
        ok = False
        notes.append(f"normalization f(0)={f0}, g(0)={g0}")
    if rec.f_is_cf:
        t_grid = np.linspace(-5, 5, 41)
        fv = np.array([complex(rec.f(t)) for t in t_grid])
        if np.max(np.abs(fv)) > 1 + 1e-12:
            ok = False
            notes.append("|f| exceeds 1 on the real grid")
        if np.max(np.abs(fv[::-1] - np.conj(fv))) > 1e-10:
            ok = False
            notes.append("f is not Hermitian on the real grid")
    return VerificationReport(rec.name, "van_dantzig", [float(s) for s in s_grid], res, tols, None, ok, notes)


def verify_wald(rec: CoupleRecord, grid=None, tol: float | None = None, mode: str = "analytic",
                draws: int = 100_000, rng=None, h_scale: float = 1.0) -> VerificationReport:
    """Residuals |E e^{sX} E e^{-kappa s^2 H} - 1|.

    ``mode="analytic"`` multiplies the closed-form mgf of X by the
    independently computed H-side transform. ``mode="monte_carlo"``
    replaces each side that has a sampler by its empirical mean and accepts
    at 3 standard errors (delta method for the product). ``h_scale``
    multiplies every H draw and exists for sensitivity tests.
    """
    if rec.wald_window is None or rec.x_mgf is None or rec.h_lt is None:
        raise DomainError(f"{rec.name} carries no Wald couple")
    s_grid = _grid(rec.wald_window, 13) if grid is None else np.asarray(grid, dtype=float)
    k = rec.kappa
    notes = [f"kappa={k:g}"]
    if mode == "analytic":
        res, tols = [], []
        for s in s_grid:
            r = abs(rec.x_mgf(s) * rec.h_lt(s) - 1)
            t = tol if tol is not None else rec.vd_tolerance(s)
            res.append(float(r))
            tols.append(float(t))
        ok = all(math.isfinite(r) and r <= t for r, t in zip(res, tols))
        return VerificationReport(rec.name, "wald_analytic", [float(s) for s in s_grid], res, tols, None, ok, notes)
    if mode != "monte_carlo":
        raise DomainError("mode must be 'analytic' or 'monte_carlo'")
    if rec.X_sampler is None and rec.H_sampler is None:
        raise DomainError(f"{rec.name} has no sampler")
    rng = rng if rng is not None else smp.RngStream(smp.DEFAULT_SEED, 0)
    g = smp._gen(rng)
    x_draws = rec.X_sampler(g, draws) if rec.X_sampler is not None else None
    h_draws = h_scale * rec.H_sampler(g, draws) if rec.H_sampler is not None else None
    if h_scale != 1.0:
        notes.append(f"H mis-scaled by {h_scale:g}")
    res, ses = [], []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", smp.UnstableMomentWarning)
        for s in s_grid:
            if x_draws is not None:
                ex, sx = smp.empirical_cf(x_draws, [s])
                ex, sx = ex[0].real, sx[0]
            else:
                ex, sx = rec.x_mgf(s), 0.0
            if h_draws is not None:
                eh, sh = smp.empirical_cf(h_draws, [-k * s * s])
                eh, sh = eh[0].real, sh[0]
            else:
                eh, sh = rec.h_lt(s), 0.0
            res.append(float(abs(ex * eh - 1)))
            ses.append(float(math.hypot(sx * eh, sh * ex)))
    notes.extend(str(w.message) for w in caught)
    tols = [3 * e if tol is None else tol for e in ses]
    ok = all(r <= t for r, t in zip(res, tols))
    return VerificationReport(rec.name, "wald_monte_carlo", [float(s) for s in s_grid], res, tols, ses, ok, notes)


# ---- record builders ----

def _cosh(s):
    return np.cosh(complex(s))


def _thorin_lt(zs, n: int, scale: float, weight: float, kappa: float):
    U = thorin_from_zeros(zs, n, scale, weight)
    return lambda s: ggc_laplace_transform(U, kappa * s * s)


def _series_sampler(factory):
    return lambda g, n: smp.sample_series(factory, g, n)


def _hyperbolic_records() -> list[CoupleRecord]:
    c1 = smp.c1_sampler(200)
    c2 = smp.c2_sampler(200)
    s1 = smp.s_sampler(1.0, 200)
    w1 = smp.w_sampler(1.0, 200)

    def sinc(s):
        s = complex(s)
        return np.sin(s) / s if s != 0 else 1.0 + 0j

    def shc(s):
        s = complex(s)
        return s / np.sinh(s) if s != 0 else 1.0 + 0j

    def sinch(s):
        s = float(s)
        return math.sinh(s) / s if s != 0 else 1.0

    # E e^{-u C_1} = prod (1 + 2u/rho^2)^{-1}: Thorin atoms at rho^2/2
    lt_c1 = _thorin_lt(cosh_zeros(), 10_000, 0.5, 1.0, 0.5)
    lt_c2 = _thorin_lt(cosh_zeros(), 10_000, 0.5, 2.0, 0.5)
    lt_s1 = _thorin_lt(sinh_zeros(1.0), 10_000, 0.5, 1.0, 0.5)
    lt_w1 = _thorin_lt(sinh_zeros(1.0), 10_000, 0.5, 2.0, 0.5)

    def unif(g, n):
        return g.uniform(-1.0, 1.0, n)

    def pm1(g, n):
        return np.where(g.random(n) < 0.5, -1.0, 1.0)

    return [
        CoupleRecord("cos-cosh", lambda s: np.cos(complex(s)), lambda s: 1 / _cosh(s),
                     x_mgf=math.cosh, h_lt=lambda s: 1 / math.cosh(s),
                     notes=("X = +-1, H = C_1",)),
        CoupleRecord("sinc-sinh", sinc, shc, x_mgf=sinch, h_lt=lambda s: shc(s).real,
                     notes=("X ~ Uniform(-1, 1), H = S_1",)),
        CoupleRecord("C1", lambda s: np.cos(complex(s)), lambda s: 1 / _cosh(s),
                     x_mgf=math.cosh, h_lt=lt_c1, X_sampler=pm1, H_sampler=_series_sampler(c1),
                     kind="product", tail_bound=lambda s: 1e-10,
                     notes=("H = C_1 by truncated series; H side by Thorin atoms at ((n-1/2) pi)^2/2",)),
        CoupleRecord("C2", lambda s: np.cos(complex(s)) ** 2, lambda s: 1 / _cosh(s) ** 2,
                     x_mgf=lambda s: math.cosh(s) ** 2, h_lt=lt_c2,
                     X_sampler=lambda g, n: pm1(g, n) + pm1(g, n), H_sampler=_series_sampler(c2),
                     kind="product", tail_bound=lambda s: 1e-10),
        CoupleRecord("S1", sinc, shc, x_mgf=sinch, h_lt=lt_s1, X_sampler=unif, H_sampler=_series_sampler(s1),
                     kind="product", tail_bound=lambda s: 1e-10,
                     notes=("reading E e^{-s^2 S_1/2} = s/sinh s",)),
        CoupleRecord("W1", lambda s: sinc(s) ** 2, lambda s: shc(s) ** 2,
                     x_mgf=lambda s: sinch(s) ** 2, h_lt=lt_w1,
                     X_sampler=lambda g, n: unif(g, n) + unif(g, n), H_sampler=_series_sampler(w1),
                     kind="product", tail_bound=lambda s: 1e-10,
                     notes=("W_1 = S_1 + S_1'",)),
    ]


def _symbeta_records() -> list[CoupleRecord]:
    out = []
    for nu in (-0.5, 0.5, 1.0):
        zs = bessel_zero_set(nu, PRODUCT_CFG.N + 1)

        def f(s, nu=nu):
            return complex(bessel_entire(nu, complex(s)))

        def g(s, zs=zs):
            return complex(eval_even_product(zs, s, PRODUCT_CFG, "reciprocal", "real"))

        def bound(s, zs=zs):
            return 4 * even_product_tail_bound(zs, s, PRODUCT_CFG)

        j = zs.first(400)
        h_spec = smp.SeriesSampler(lambda n, j=j: 2.0 / j[np.asarray(n) - 1] ** 2, "exp", 1.0, 399,
                                   lambda M, p, zs=zs: 2.0**p * zs.tail_power_sums(M, 2 * p), "add_mean",
                                   f"H_bessel_{nu:g}")
        out.append(CoupleRecord(
            f"symbeta-nu={nu:g}", f, g,
            x_mgf=lambda s, f=f: f(-1j * s).real, h_lt=lambda s, g=g: g(s).real,
            X_sampler=lambda r, n, nu=nu: smp.sample_basic("symbeta", r, n, nu=nu),
            H_sampler=_series_sampler(h_spec),
            kind="product", tail_bound=bound,
            notes=("f by ascending series, g by the Bessel-zero product", "H = sum 2 E_n / j_n^2"),
        ))
    return out


def _gamma_records() -> list[CoupleRecord]:
    out = []
    for a in (1.0, 2.0):
        psi = digamma(a)
        lg_a = loggamma(a).real
        zeros, tail = gamma_zeros(a, PRODUCT_CFG.N)

        def f(s, a=a, psi=psi, lg_a=lg_a):
            s = complex(s)
            return np.exp(loggamma(a + 1j * s) - lg_a - 1j * s * psi)

        def g(s, a=a, psi=psi, lg_a=lg_a):
            # CF of the subordinated H, valid branch s <= 0
            s = complex(s)
            return np.exp(lg_a - loggamma(a - s) - s * psi)

        def h_lt(s, zeros=zeros, tail=tail):
            return eval_genus1_product(zeros, 0.0, abs(s), PRODUCT_CFG, tail).real

        def x_mgf(s, a=a, psi=psi, lg_a=lg_a):
            return math.exp(loggamma(a + s).real - lg_a - s * psi)

        out.append(CoupleRecord(
            f"gamma-a={a:g}", f, g, x_mgf=x_mgf, h_lt=h_lt,
            X_sampler=lambda r, n, a=a, psi=psi: np.log(r.gamma(a, 1.0, n)) - psi,
            H_sampler=_series_sampler(smp.gamma_couple_sampler(a, 200)),
            vd_window=(-3.0, 0.0), wald_window=(0.0, 3.0), kind="product", tail_bound=lambda s: 1e-12,
            notes=("X = log G_a - psi(a)", "H side by the genus-one product over -(a+k)",
                   "H-side transform carries |s|; VD window s <= 0, Wald window s >= 0"),
        ))
    return out


def _invgamma_record(a: float = 1.0) -> CoupleRecord:
    def f(s):
        s = complex(s)
        return np.exp(1j * s / a) / (1 + 1j * s / a)

    def g(s):
        s = complex(s)
        return (1 - s / a) * np.exp(s / a)

    return CoupleRecord(
        f"H_a={a:g}", f, g,
        x_mgf=lambda s: math.exp(s / a) / (1 + s / a),
        h_lt=lambda s: (1 + abs(s) / a) * math.exp(-abs(s) / a),
        X_sampler=lambda r, n: (1.0 - r.exponential(1.0, n)) / a,
        H_sampler=lambda r, n: smp.sample_invgamma32(a, r, n),
        vd_window=(-3.0, 0.0), wald_window=(0.0, 3.0),
        notes=("H_a = 1/Gamma(3/2, scale 2a^2)", "X = (1 - E)/a"),
    )


def _hinds_record() -> CoupleRecord:
    def x_sampler(r, n):
        return 0.5 * (np.log(r.gamma(0.5, 1.0, n)) - np.log(r.gamma(0.5, 1.0, n)))

    return CoupleRecord(
        "hinds", lambda s: 1 / np.cosh(0.5 * math.pi * complex(s)), lambda s: np.cos(0.5 * math.pi * complex(s)),
        X_sampler=x_sampler, wald_window=None,
        notes=("X = X_1 - X_2 with X_i = log(G)/2, G ~ Gamma(1/2)", "g = cos(pi s/2) is not an H-side transform"),
    )


def _xi_record() -> CoupleRecord:
    xh = xi(0.5)

    def xr(z):
        # xi(z) = xi(1 - z) extends the composition to Re z <= 0
        z = complex(z)
        return complex(xi(z if z.real > 0 else 1 - z))

    def f(s):
        return xr(0.5 + 1j * complex(s)) / xh

    def g(s):
        return xh / xr(0.5 + complex(s))

    return CoupleRecord(
        "xi", f, g, x_mgf=lambda s: xr(0.5 + s).real / xh, h_lt=lambda s: xh / xr(0.5 + s).real,
        X_sampler=lambda r, n: smp.sample_polya_xi(r, n), wald_window=(-1.0, 1.0),
        notes=("X has the xi-density",),
    )


def _gauss_record() -> CoupleRecord:
    return CoupleRecord(
        "gauss-const", lambda s: np.exp(-0.5 * complex(s) ** 2), lambda s: np.exp(-0.5 * complex(s) ** 2),
        half_factor=False, x_mgf=lambda s: math.exp(0.5 * s * s), h_lt=lambda s: math.exp(-0.5 * s * s),
        X_sampler=lambda r, n: r.standard_normal(n), H_sampler=lambda r, n: np.full(n, 0.5),
        notes=("X ~ N(0, 1), H = 1/2, kappa = 1",),
    )


def _ostrovskii_record(p: OstrovskiiParams, label: str) -> CoupleRecord:
    f1 = ostrovskii_f(1.0, p)

    def f(s):
        return complex(ostrovskii_f(np.cosh(complex(s)), p)) / f1

    def g(s):
        return f1 / complex(ostrovskii_f(np.cos(complex(s)), p))

    return CoupleRecord(
        f"ostrovskii-{label}", f, g, vd_window=(-1.5, 1.5), wald_window=None, f_is_cf=True,
        notes=("f(t) = f_delta(cosh t)/f_delta(1)", "CF property checked by quadrature in tests"),
    )


def builtin_registry() -> list[CoupleRecord]:
    recs = _hyperbolic_records() + _symbeta_records() + [_hinds_record()] + _gamma_records()
    recs += [_invgamma_record(1.0), _xi_record(), _gauss_record()]
    for i, p in enumerate(OSTROVSKII_ACCEPTANCE_SETS):
        recs.append(_ostrovskii_record(p, str(i)))
    return recs


_REGISTRY: dict[str, CoupleRecord] | None = None


def get_record(name: str) -> CoupleRecord:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {r.name: r for r in builtin_registry()}
    if name not in _REGISTRY:
        raise KeyError(name)
    return _REGISTRY[name]


def w_a_mellin_check(s: float = 2.0, a: float = 1.0) -> dict:
    """E W_a^s by quadrature against 2(2a^2/pi)^s xi(s) and the half-exponent reading.

    Returns the quadrature value with both residuals: ``literal`` compares
    E W_a^s, ``half`` compares E W_a^{s/2}.
    """
    lhs_full = w_a_mellin(s, a)
    lhs_half = w_a_mellin(0.5 * s, a)
    rhs = 2 * (2 * a * a / math.pi) ** s * xi(s)
    rhs_half = 2 * (2 * a * a / math.pi) ** (0.5 * s) * xi(s)
    return {
        "E_W^s": lhs_full,
        "rhs_literal": rhs,
        "literal": abs(lhs_full - rhs),
        "E_W^(s/2)": lhs_half,
        "rhs_half": rhs_half,
        "half": abs(lhs_half - rhs_half),
    }


def ostrovskii_cf_residual(p: OstrovskiiParams, t: float) -> float:
    return abs(ostrovskii_cf_quadrature(t, p) - ostrovskii_f(math.cosh(t), p) / ostrovskii_f(1.0, p))
