"""Ramanujan tau by exact integer expansion, its L-series and Xi_tau."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..numerics import DEFAULT_TOL, SeriesResult, Tolerance, integrate
from .arith import sigma_minus1
from .eta import eta_auto
from .gamma import loggamma

N_MAX_LIMIT = 20000


@dataclass(frozen=True)
class TauTable:
    n_max: int
    values: tuple[int, ...]  # values[n-1] = tau(n)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise IndexError(n)
        return self.values[n - 1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "tau"])
        for n, t in enumerate(self.values, start=1):
            w.writerow([n, t])
        return buf.getvalue()


def euler_function_coeffs(n_max: int) -> list[int]:
    """Coefficients of prod_{k>=1} (1 - y^k) up to y^n_max (pentagonal numbers)."""
    c = [0] * (n_max + 1)
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        hit = False
        for m in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2):
            if m <= n_max:
                c[m] = sign
                hit = True
        if not hit:
            break
        k += 1
    return c


def power_series_power(p: list[int], alpha: int, n_max: int) -> list[int]:
    """Coefficients of P(y)^alpha for p[0] = 1 by the J.C.P. Miller recurrence.

    a_n = (1/n) sum_{k=1}^{n} ((alpha+1) k - n) p_k a_{n-k}, exact in integers.
    """
    if p[0] != 1:
        raise DomainError("leading coefficient must be 1")
    nz = [(k, pk) for k, pk in enumerate(p[: n_max + 1]) if k > 0 and pk != 0]
    a = [0] * (n_max + 1)
    a[0] = 1
    for n in range(1, n_max + 1):
        acc = 0
        for k, pk in nz:
            if k > n:
                break
            acc += ((alpha + 1) * k - n) * pk * a[n - k]
        q, r = divmod(acc, n)
        if r:
            raise ArithmeticError("non-integral coefficient in power recurrence")
        a[n] = q
    return a


def ramanujan_tau(n_max: int) -> TauTable:
    """tau(1..n_max) from y prod (1 - y^k)^24, exact integers."""
    if n_max < 1:
        raise DomainError("n_max must be positive")
    if n_max > N_MAX_LIMIT:
        raise OverflowError(f"n_max above {N_MAX_LIMIT} is not supported")
    coeffs = power_series_power(euler_function_coeffs(n_max), 24, n_max - 1)
    return TauTable(n_max, tuple(coeffs[:n_max]))


def L_tau_partial(s: complex, n_max: int) -> complex:
    """sum_{n<=n_max} tau(n) n^{-s}; meaningful as an approximation for Re s > 13/2."""
    tab = ramanujan_tau(n_max)
    n = np.arange(1, n_max + 1, dtype=float)
    tau = np.array([float(t) for t in tab.values])
    terms = tau * np.exp(-complex(s) * np.log(n))
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def phi_tau(t: float) -> float:
    """e^{-2 pi cosh t} prod_k (1-e^{-2 pi k e^t})^12 (1-e^{-2 pi k e^{-t}})^12.

    Equal to (eta(i e^t) eta(i e^{-t}))^12; evaluated through the modular
    transform so both factors converge fast.
    """
    return (eta_auto(math.exp(t)) * eta_auto(math.exp(-t))) ** 12


def phi_tau_product(t: float) -> float:
    """Phi_tau from the product display directly, without the modular transform."""
    out = -2 * math.pi * math.cosh(t)
    for x in (math.exp(t), math.exp(-t)):
        q = math.exp(-2 * math.pi * x)
        k_max = max(1, int(math.ceil(40.0 / (2 * math.pi * x))))
        k = np.arange(1, k_max + 1, dtype=float)
        out += 12 * math.fsum(np.log1p(-(q**k)))
    return math.exp(out)


def _xi_tau_window() -> float:
    # e^{-2 pi cosh T} < 1e-18
    return math.acosh(math.log(1e18) / (2 * math.pi))


def Xi_tau(s: float, tol: Tolerance = Tolerance(1e-22, 1e-12)) -> float:
    """int e^{ist} Phi_tau(t) dt = 2 int_0^T cos(st) Phi_tau(t) dt (even integrand)."""
    T = _xi_tau_window()

    def f(t):
        return np.array([math.cos(s * v) * phi_tau(v) for v in np.atleast_1d(t)])

    return 2.0 * float(integrate(f, 0.0, T, tol).value)


def Xi_tau_full(s: float, tol: Tolerance = Tolerance(1e-22, 1e-12)) -> complex:
    """int_{-T}^{T} e^{ist} Phi_tau(t) dt as a complex number, Phi from the product display.

    Evenness and realness of Xi_tau are then properties to check, not inputs.
    """
    T = _xi_tau_window()

    def f(t):
        t = np.atleast_1d(t)
        return np.exp(1j * s * t) * np.array([phi_tau_product(v) for v in t])

    return complex(integrate(f, -T, T, tol, points=(0.0,)).value)


def xi_tau_real_shift(c: float, tol: Tolerance = Tolerance(1e-22, 1e-12)) -> float:
    """int e^{ct} Phi_tau(t) dt, which equals (2 pi)^{-6-c} Gamma(6+c) L_tau(6+c)."""
    T = _xi_tau_window() + 1.0

    def f(t):
        return np.array([math.exp(c * v) * phi_tau(v) for v in np.atleast_1d(t)])

    return float(integrate(f, -T, T, tol, points=(0.0,)).value)


def completed_L_tau(s: float, n_max: int = 400) -> float:
    """(2 pi)^{-s} Gamma(s) L_tau(s) from the partial series (s > 13/2)."""
    return (math.exp(-s * math.log(2 * math.pi) + loggamma(s).real) * L_tau_partial(s, n_max)).real


def sigma_minus1_identity_residual(x: float, n_max: int) -> SeriesResult:
    """|log prod_n (1 - e^{-2 pi n x}) + sum_{n<=n_max} sigma_{-1}(n) e^{-2 pi n x}|.

    The product is taken to full double-precision convergence; the omitted
    series tail is bounded using sigma_{-1}(n) <= 1 + log n.
    """
    if x <= 0:
        raise DomainError("x must be positive")
    k_max = max(n_max, int(math.ceil(41.5 / (2 * math.pi * x))))
    k = np.arange(1, k_max + 1, dtype=float)
    log_prod = math.fsum(np.log1p(-np.exp(-2 * math.pi * x * k)))
    sig = sigma_minus1(n_max)[1:]
    n = np.arange(1, n_max + 1, dtype=float)
    series = math.fsum(sig * np.exp(-2 * math.pi * x * n))
    q = math.exp(-2 * math.pi * x)
    N = n_max + 1
    tail = (1 + math.log(N)) * q**N / (1 - q) ** 2 if q < 1 else math.inf
    return SeriesResult(abs(log_prod + series), tail, n_max, True)
