"""Riemann zeta and xi on Re s > 0, Euler products and the prime-power measure."""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import DomainError, PoleError
from ..numerics import CompensatedSum, SeriesResult, euler_transform_alternating
from ..thorin import MuMeasure
from .arith import primes_up_to
from .gamma import loggamma

_LOG2 = math.log(2.0)


def alternating_zeta(s: complex) -> complex:
    """Dirichlet eta: sum_{n>=1} (-1)^{n+1} n^{-s}, Re s > 0.

    The first ~|Im s| terms are summed directly (where the terms still
    oscillate), the rest through Euler's transform.
    """
    s = complex(s)
    if s.real <= 0:
        raise DomainError("the alternating series is used on Re s > 0")
    head = int(math.ceil(abs(s.imag)))
    acc = CompensatedSum(0j)
    if head:
        k = np.arange(head)
        acc.add_many(np.where(k % 2 == 0, 1.0, -1.0) * (k + 1.0) ** (-s))
    rest = euler_transform_alternating(lambda j: (j + head + 1.0) ** (-s), 64)
    acc.add((-1) ** head * rest.value)
    return acc.value


def _phi1(z: complex) -> complex:
    """(e^z - 1)/z, finite at 0."""
    if abs(z) < 1e-4:
        return 1 + z / 2 + z * z / 6 + z**3 / 24
    return (cmath.exp(z) - 1) / z


def zeta_times_sm1(s: complex) -> complex:
    """(s - 1) zeta(s), analytic through s = 1."""
    s = complex(s)
    z = (1 - s) * _LOG2
    return alternating_zeta(s) / (_LOG2 * _phi1(z))


def zeta(s):
    """zeta(s) for Re s > 0, s != 1; real output for real input."""
    sc = complex(s)
    if sc == 1:
        raise PoleError("zeta has a pole at s = 1")
    if sc.real <= 0:
        raise DomainError("zeta is evaluated on Re s > 0")
    val = zeta_times_sm1(sc) / (sc - 1)
    if isinstance(s, (int, float)):
        return val.real
    return val


def xi(s):
    """xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s); finite at s = 1."""
    sc = complex(s)
    if sc.real <= 0:
        raise DomainError("xi is composed on Re s > 0")
    val = 0.5 * sc * cmath.exp(-0.5 * sc * math.log(math.pi) + loggamma(0.5 * sc)) * zeta_times_sm1(sc)
    if isinstance(s, (int, float)):
        return val.real
    return val


def euler_product_zeta(alpha: float, prime_bound: int) -> SeriesResult:
    """prod_{p<=P} (1 - p^{-alpha})^{-1} with a bound on |zeta(alpha) - product|.

    The omitted factors contribute log-ratio sum_{p>P} -log(1 - p^{-alpha}),
    bounded by P^{1-alpha}/((alpha - 1)(1 - P^{-alpha})).
    """
    if alpha <= 1:
        raise DomainError("the Euler product converges for alpha > 1")
    if prime_bound < 2:
        raise DomainError("prime bound must be at least 2")
    p = primes_up_to(int(prime_bound)).astype(float)
    log_prod = -math.fsum(np.log1p(-(p ** (-alpha))))
    val = math.exp(log_prod)
    P = float(prime_bound)
    log_tail = P ** (1 - alpha) / ((alpha - 1) * (1 - P ** (-alpha)))
    return SeriesResult(val, val * math.expm1(log_tail), len(p), True)


def mu_zeta_atoms(x_max: float) -> MuMeasure:
    """Atoms (log p) delta_{r log p} for all prime powers with r log p <= x_max."""
    if x_max <= _LOG2:
        raise DomainError("x_max must exceed log 2")
    locs, masses = [], []
    for p in primes_up_to(int(math.floor(math.exp(x_max) * (1 + 1e-12)))):
        lp = math.log(int(p))
        r = 1
        while r * lp <= x_max:
            locs.append(r * lp)
            masses.append(lp)
            r += 1
    return MuMeasure(np.array(locs), np.array(masses), kind="zeta", params={"x_max": x_max})


__all__ = [
    "alternating_zeta",
    "zeta_times_sm1",
    "zeta",
    "xi",
    "euler_product_zeta",
    "mu_zeta_atoms",
]
