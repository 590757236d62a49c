"""Canonical (Hadamard-Weierstrass) products of genus 0 and 1 with truncation tails.

Products are summed in log space: each factor contributes its principal
log1p and the sum is exponentiated, so the branch of the individual logs
never matters for the returned value. Omitted factors are replaced by the
leading terms of their log expansion, using power sums of the omitted
zeros that every ZeroSet supplies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import special

from .errors import BracketError, DomainError, PoleError
from .numerics import SeriesResult, Tolerance, find_root, hurwitz_zeta

__all__ = [
    "ZeroSet",
    "ProductConfig",
    "arithmetic_zeros",
    "cosh_zeros",
    "sinh_zeros",
    "bessel_zero_set",
    "bessel_zeros",
    "eval_even_product",
    "even_product_tail_bound",
    "eval_genus1_product",
    "gamma_zeros",
    "sinh_partial_fraction",
]

TAIL_MODES = ("none", "log1p_order2", "log1p_order4")


@dataclass(frozen=True)
class ZeroSet:
    """Positive zeros rho_1 < rho_2 < ... of an entire function.

    ``zeros`` maps an integer index array (n >= 1) to rho_n.
    ``tail_power_sums(N, p)`` returns sum_{n>N} rho_n^{-p}.
    ``symmetric`` records that the function has zeros at +-rho_n.
    """

    zeros: Callable[[np.ndarray], np.ndarray]
    tail_power_sums: Callable[[int, int], float] | None = None
    symmetric: bool = True
    order_hint: float = 1.0
    name: str = ""

    def first(self, n: int) -> np.ndarray:
        return np.asarray(self.zeros(np.arange(1, n + 1)), dtype=float)

    def check(self, n: int = 1000) -> bool:
        """Positivity, strict increase over the first n, finite sum rho^-2."""
        rho = self.first(n)
        if np.any(rho <= 0) or np.any(np.diff(rho) <= 0):
            return False
        if self.order_hint > 2:
            return False
        total = math.fsum(rho**-2.0)
        if self.tail_power_sums is not None:
            total += self.tail_power_sums(n, 2)
        return math.isfinite(total)


@dataclass(frozen=True)
class ProductConfig:
    N: int = 10_000
    tail_correction: str = "log1p_order2"

    def __post_init__(self):
        if self.N < 1:
            raise DomainError("truncation N must be >= 1")
        if self.tail_correction not in TAIL_MODES:
            raise DomainError(f"tail_correction must be one of {TAIL_MODES}")


def arithmetic_zeros(c: float, d: float, name: str = "") -> ZeroSet:
    """rho_n = (n + c) d, with tails d^{-p} zeta(p, N + 1 + c)."""
    if c <= -1 or d <= 0:
        raise DomainError("need c > -1 and d > 0")

    def tail(N: int, p: int) -> float:
        return d ** (-p) * hurwitz_zeta(p, N + 1 + c).real

    return ZeroSet(lambda n: (np.asarray(n, dtype=float) + c) * d, tail, True, 1.0,
                   name or f"arith(c={c:g},d={d:g})")


def cosh_zeros() -> ZeroSet:
    """cosh s = prod (1 + s^2/((n - 1/2) pi)^2)."""
    return arithmetic_zeros(-0.5, math.pi, "cosh")


def sinh_zeros(a: float = 1.0) -> ZeroSet:
    """sinh(a s)/(a s) = prod (1 + s^2/(n pi/a)^2)."""
    return arithmetic_zeros(0.0, math.pi / a, f"sinh(a={a:g})")


def _mcmahon(nu: float, n: int) -> float:
    beta = (n + 0.5 * nu - 0.25) * math.pi
    mu = 4 * nu * nu
    return beta - (mu - 1) / (8 * beta) - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * beta) ** 3)


@lru_cache(maxsize=16)
def _bessel_zeros_cached(nu: float, n_max: int) -> np.ndarray:
    tol = Tolerance(abs_tol=1e-13, rel_tol=1e-15)

    def f(x: float) -> float:
        return float(special.jv(nu, x))

    out = np.empty(n_max)
    prev = 0.0
    for n in range(1, n_max + 1):
        guess = _mcmahon(nu, n)
        lo, hi = max(prev + 1e-9, guess - 0.5), guess + 0.5
        if f(lo) * f(hi) >= 0:
            # scan forward from the previous zero in steps well below the spacing
            lo = prev + 1e-6
            step = 0.1
            hi = lo + step
            while f(lo) * f(hi) > 0:
                lo, hi = hi, hi + step
                if hi > prev + 10 * math.pi + 10:
                    raise BracketError(f"no sign change found for zero {n} of J_{nu}")
        root = find_root(f, lo, hi, tol)
        if root <= prev:
            raise BracketError("Bessel zeros failed to increase")
        out[n - 1] = root
        prev = root
    out.setflags(write=False)
    return out


def bessel_zeros(nu: float, n_max: int) -> np.ndarray:
    """First n_max positive zeros j_{nu,n} of J_nu (equivalently of f_nu)."""
    if nu < -0.5:
        raise DomainError("nu must be >= -1/2")
    if n_max < 1:
        raise DomainError("n_max must be positive")
    return _bessel_zeros_cached(float(nu), int(n_max))


def bessel_zero_set(nu: float, n_max: int = 20_001) -> ZeroSet:
    """Zeros of f_nu(s) = Gamma(nu+1)(s/2)^{-nu} J_nu(s) = prod (1 - s^2/j_{nu,n}^2).

    Tails use the Rayleigh sums sum j^-2 = 1/(4(nu+1)) and
    sum j^-4 = 1/(16 (nu+1)^2 (nu+2)) minus the computed head.
    """
    z = bessel_zeros(nu, n_max)
    rayleigh = {2: 1.0 / (4 * (nu + 1)), 4: 1.0 / (16 * (nu + 1) ** 2 * (nu + 2))}

    def zeros(n):
        n = np.asarray(n)
        if np.any(n > n_max):
            raise DomainError(f"only {n_max} Bessel zeros were computed")
        return z[n - 1]

    def tail(N: int, p: int) -> float:
        if p not in rayleigh:
            raise DomainError("Bessel tails available for p in {2, 4}")
        if N > n_max:
            raise DomainError(f"only {n_max} Bessel zeros were computed")
        return rayleigh[p] - math.fsum(z[:N] ** (-float(p)))

    return ZeroSet(zeros, tail, True, 1.0, f"bessel(nu={nu:g})")


def _even_log_terms(zs: ZeroSet, s: complex, cfg: ProductConfig, sign: float):
    s = complex(s)
    rho = zs.first(cfg.N)
    x = sign * s * s / rho**2
    factors = 1.0 + x
    with np.errstate(divide="ignore"):
        logs = np.log1p(x)
    L = complex(math.fsum(logs.real), math.fsum(logs.imag))
    if cfg.tail_correction != "none":
        if zs.tail_power_sums is None:
            raise DomainError("tail correction requested but the ZeroSet has no tail sums")
        t2 = zs.tail_power_sums(cfg.N, 2)
        L += sign * s * s * t2
        if cfg.tail_correction == "log1p_order4":
            L -= 0.5 * s**4 * zs.tail_power_sums(cfg.N, 4)
    return L, factors


def eval_even_product(zs: ZeroSet, s: complex, cfg: ProductConfig = ProductConfig(),
                      direction: str = "forward", rotation: str = "real") -> complex:
    """prod_n (1 + sigma s^2/rho_n^2) or its reciprocal.

    ``rotation="real"`` uses sigma = +1, giving f(alpha + s)/f(alpha) for the
    ratio written with a real shift (cosh s, sinh s / s). ``rotation="imaginary"``
    uses sigma = -1, the product evaluated at i s (cos s, sin s / s, f_nu).
    ``direction`` selects the product ("forward") or its reciprocal.
    """
    if rotation not in ("real", "imaginary"):
        raise DomainError("rotation must be 'real' or 'imaginary'")
    if direction not in ("forward", "reciprocal"):
        raise DomainError("direction must be 'forward' or 'reciprocal'")
    sign = 1.0 if rotation == "real" else -1.0
    L, factors = _even_log_terms(zs, s, cfg, sign)
    if np.any(np.abs(factors) < 1e-12):
        if direction == "reciprocal":
            raise PoleError(f"s = {s} sits on a zero of the product")
        return 0j
    return np.exp(L) if direction == "forward" else np.exp(-L)


def even_product_tail_bound(zs: ZeroSet, s: complex, cfg: ProductConfig = ProductConfig()) -> float:
    """Bound on the relative error of eval_even_product from the omitted factors.

    With x_n = +-s^2/rho_n^2 and r = |s|^2/rho_{N+1}^2 < 1,
    |log(1+x) - x| <= |x|^2/(2(1-r)) and |log(1+x) - x + x^2/2| <= |x|^3/(3(1-r)).
    """
    a2 = abs(complex(s)) ** 2
    rho_next = float(zs.first(cfg.N + 1)[-1]) if cfg.tail_correction != "none" else None
    if cfg.tail_correction == "none":
        lb = a2 * zs.tail_power_sums(cfg.N, 2) if zs.tail_power_sums else math.inf
    else:
        r = a2 / rho_next**2
        if r >= 1:
            return math.inf
        t4 = zs.tail_power_sums(cfg.N, 4)
        if cfg.tail_correction == "log1p_order2":
            lb = a2 * a2 * t4 / (2 * (1 - r))
        else:
            lb = a2**3 * t4 / (3 * (1 - r) * rho_next**2)
    return math.expm1(lb)


def gamma_zeros(a: float, N: int) -> tuple[np.ndarray, Callable[[int], float]]:
    """Zeros -(a + k), k = 0..N-1 of 1/Gamma(a + .), with the signed tail sums."""
    if a <= 0:
        raise DomainError("a must be positive")
    zeros = -(a + np.arange(N, dtype=float))

    def tail(p: int) -> float:
        return (-1.0) ** p * hurwitz_zeta(p, a + N).real

    return zeros, tail


def eval_genus1_product(zeros: Sequence[float], b: float, s: complex,
                        cfg: ProductConfig = ProductConfig(),
                        tail_power_sums: Callable[[int], float] | None = None) -> complex:
    """e^{-b s} prod_{n<=N} (1 - s/rho_n) e^{s/rho_n}.

    ``tail_power_sums(p)`` gives sum over omitted zeros of rho^{-p} (signed);
    the omitted factors are replaced by exp(-s^2 T_2/2) (order 2) or
    exp(-s^2 T_2/2 - s^3 T_3/3 - s^4 T_4/4) (order 4).
    """
    s = complex(s)
    rho = np.asarray(zeros, dtype=float)[: cfg.N]
    if np.any(rho == 0):
        raise DomainError("zeros must be nonzero")
    x = -s / rho
    if np.any(np.abs(1 + x) == 0):
        return 0j
    terms = np.log1p(x) - x
    L = complex(math.fsum(terms.real), math.fsum(terms.imag)) - b * s
    if cfg.tail_correction != "none":
        if tail_power_sums is None:
            raise DomainError("tail correction requested without tail sums")
        L -= 0.5 * s * s * tail_power_sums(2)
        if cfg.tail_correction == "log1p_order4":
            L -= s**3 * tail_power_sums(3) / 3 + s**4 * tail_power_sums(4) / 4
    return np.exp(L)


def sinh_partial_fraction(s: complex, M: int) -> SeriesResult:
    """s sum_{|m|<=M} (-1)^m/(s^2 + m^2), which tends to pi/sinh(pi s).

    The error bound pairs consecutive terms of the alternating tail:
    each pair is bounded by |2s|(2m+1)/(|s^2+m^2||s^2+(m+1)^2|), summed
    with an integral comparison.
    """
    s = complex(s)
    if M < 1:
        raise DomainError("M must be positive")
    if s == 0:
        raise PoleError("pi/sinh(pi s) has a pole at s = 0")
    if abs(s.real) < 1e-12 and abs(s.imag - round(s.imag)) < 1e-12:
        raise PoleError("pi/sinh(pi s) has poles on i Z")
    m = np.arange(1, M + 1, dtype=float)
    terms = np.where(m % 2 == 0, 1.0, -1.0) / (s * s + m * m)
    body = complex(math.fsum(terms.real), math.fsum(terms.imag))
    val = s * (1.0 / (s * s) + 2.0 * body)
    a2 = abs(s) ** 2
    M1 = M + 1.0
    if M1 * M1 > 2 * a2:
        # |s^2 + m^2| >= m^2 - |s|^2 >= m^2/2 for m >= M+1
        bound = 2 * abs(s) * 2 * (4.0 * (2 * M1 + 1) / (M1**2 * (M1 + 1) ** 2) + 4.0 / M1**2)
        if abs(s.imag) < 1e-300:
            # real s: alternating series with decreasing terms
            bound = min(bound, 2 * abs(s) / (a2 + M1 * M1))
    else:
        bound = math.inf
    return SeriesResult(val, bound, M, math.isfinite(bound))
