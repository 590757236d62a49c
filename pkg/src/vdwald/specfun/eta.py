"""Dedekind eta on the imaginary axis and the Laplace transforms of eta, eta^3."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..numerics import DEFAULT_TOL, Tolerance, integrate

_SQRT3 = math.sqrt(3.0)


def _eta_product(x: float) -> float:
    q = math.exp(-2 * math.pi * x)
    # stop when q^n < 1e-18: those factors are 1 to double precision
    n_max = max(1, int(math.ceil(41.5 / (2 * math.pi * x))))
    n = np.arange(1, n_max + 1)
    log_prod = math.fsum(np.log1p(-np.exp(-2 * math.pi * x * n)))
    return math.exp(-2 * math.pi * x / 24 + log_prod) if q > 0 else 0.0


def _eta_series(x: float) -> float:
    """(2/sqrt 3) sum_n cos(pi(2n+1)/6) q^{(2n+1)^2/24}; zero terms at 2n+1 = 3 mod 6 skipped."""
    # truncate once (2n+1)^2 pi x / 12 exceeds 41.5 + a margin: q^{m^2/24} < 1e-18
    m_max = int(math.ceil(math.sqrt(12 * 45.0 / (math.pi * x)))) + 2
    m = np.arange(1, m_max + 1, 2)
    coef = np.cos(np.pi * m / 6) * 2 / _SQRT3
    coef[m % 3 == 0] = 0.0
    coef = np.round(coef)  # exactly +-1 or 0
    terms = coef * np.exp(-np.pi * x * m.astype(float) ** 2 / 12)
    return math.fsum(terms)


def dedekind_eta(x: float, method: str = "q_product") -> float:
    """eta(ix) for x > 0 via the q-product or Euler's pentagonal series."""
    if x <= 0:
        raise DomainError("eta(ix) needs x > 0")
    if method == "q_product":
        return _eta_product(x)
    if method == "euler_series":
        return _eta_series(x)
    raise DomainError(f"unknown method {method!r}")


def eta_auto(x: float) -> float:
    """eta(ix) using eta(ix) = eta(i/x)/sqrt(x) when x < 1, so q stays small."""
    if x <= 0:
        raise DomainError("eta(ix) needs x > 0")
    if x < 1:
        return _eta_product(1 / x) / math.sqrt(x)
    return _eta_product(x)


def eta_cubed_series(x: float) -> float:
    """Jacobi: eta^3(ix) = sum_{n>=0} (-1)^n (2n+1) q^{(2n+1)^2/8}."""
    if x <= 0:
        raise DomainError("eta(ix) needs x > 0")
    m_max = int(math.ceil(math.sqrt(4 * 48.0 / (math.pi * x)))) + 2
    m = np.arange(1, m_max + 1, 2).astype(float)
    sign = np.where((m - 1) % 4 == 0, 1.0, -1.0)
    return math.fsum(sign * m * np.exp(-np.pi * x * m**2 / 4))


def eta3_auto(x: float) -> float:
    if x < 1:
        return eta_cubed_series(1 / x) * x ** (-1.5)
    return eta_cubed_series(x)


def eta_LT_closed(s: float) -> float:
    """int_0^inf e^{-sx} eta(ix) dx = sqrt(pi/s) sinh(2 sqrt(pi s/3)) / cosh(sqrt(3 pi s))."""
    if s <= 0:
        raise DomainError("s must be positive")
    a = 2 * math.sqrt(math.pi * s / 3)
    b = math.sqrt(3 * math.pi * s)
    # ratio of exponentials computed without overflow
    ratio = math.exp(a - b) * (-math.expm1(-2 * a)) / (1 + math.exp(-2 * b))
    return math.sqrt(math.pi / s) * ratio


def eta3_LT_closed(s: float) -> float:
    """int_0^inf e^{-sx} eta^3(ix) dx = sech(sqrt(pi s))."""
    if s <= 0:
        raise DomainError("s must be positive")
    b = math.sqrt(math.pi * s)
    return 2 * math.exp(-b) / (1 + math.exp(-2 * b))


def _laplace(fn, s: float, tol: Tolerance) -> float:
    def f(x):
        return np.array([math.exp(-s * v) * fn(v) if v > 0 else 0.0 for v in np.atleast_1d(x)])

    return float(integrate(f, 0.0, math.inf, tol, points=(1.0,)).value)


def eta_LT_quadrature(s: float, tol: Tolerance = DEFAULT_TOL) -> float:
    return _laplace(eta_auto, s, tol)


def eta3_LT_quadrature(s: float, tol: Tolerance = DEFAULT_TOL) -> float:
    return _laplace(eta3_auto, s, tol)
