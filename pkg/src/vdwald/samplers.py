"""Reproducible random variates: basic laws, truncated random series, subordination,
rejection sampling from the xi-density, and empirical transforms with error bars.

Every generator is a numpy PCG64 seeded through SeedSequence(seed,
spawn_key=(stream_id, ...)), so equal (seed, stream) pairs replay the same
draws and distinct stream ids are independent by construction.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, EnvelopeError
from .hadamard import bessel_zero_set
from .numerics import hurwitz_zeta

__all__ = [
    "DEFAULT_SEED",
    "RngStream",
    "sample_basic",
    "SeriesSampler",
    "sample_series",
    "c1_sampler",
    "c2_sampler",
    "s_sampler",
    "w_sampler",
    "gamma_couple_sampler",
    "bessel_h_sampler",
    "sample_invgamma32",
    "brownian_subordinate",
    "PolyaSampler",
    "sample_polya_xi",
    "empirical_cf",
    "UnstableMomentWarning",
]

DEFAULT_SEED = 20_240_601


class UnstableMomentWarning(RuntimeWarning):
    """Standard error is large relative to the estimate."""


@dataclass
class RngStream:
    """A named, splittable PCG64 stream."""

    seed: int = DEFAULT_SEED
    stream_id: int = 0
    sub: tuple = ()
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, *self.sub))
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def child(self, k: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id, (*self.sub, k))


def _gen(rng) -> np.random.Generator:
    return rng.generator if isinstance(rng, RngStream) else rng


def sample_basic(law: str, rng, size=None, **params):
    """Draws from one of the elementary laws.

    exp             Exp(1)
    gamma(shape)    Gamma(shape, 1)
    laplace(scale)  density e^{-|x|/b}/(2b), b = scale (default 1)
    gumbel          cdf exp(-e^{-x}), i.e. -log E, so E e^{-sX} = Gamma(1+s)
    uniform(a)      Uniform(-a, a)
    normal          N(0, 1)
    invgamma32(a)   density x^{-5/2} e^{-1/(2 a^2 x)} / (a^3 sqrt(2 pi))
    inverse_gaussian(a)  mean 1, shape a^2
    symbeta(nu)     density (1-x^2)^{nu-1/2}/B(nu+1/2, 1/2); nu = -1/2 is +-1
    hinds           (1/2) log G with G ~ Gamma(1/2): density (2/sqrt pi) e^{x - e^{2x}}
    """
    g = _gen(rng)
    if law == "exp":
        return g.exponential(1.0, size)
    if law == "gamma":
        shape = params.get("shape", 1.0)
        if shape <= 0:
            raise DomainError("shape must be positive")
        return g.gamma(shape, 1.0, size)
    if law == "laplace":
        scale = params.get("scale", 1.0)
        if scale <= 0:
            raise DomainError("scale must be positive")
        return g.laplace(0.0, scale, size)
    if law == "gumbel":
        return -np.log(g.exponential(1.0, size))
    if law == "uniform":
        a = params.get("a", 1.0)
        if a <= 0:
            raise DomainError("a must be positive")
        return g.uniform(-a, a, size)
    if law == "normal":
        return g.standard_normal(size)
    if law == "invgamma32":
        return sample_invgamma32(params.get("a", 1.0), g, size)
    if law == "inverse_gaussian":
        a = params.get("a", 1.0)
        if a <= 0:
            raise DomainError("a must be positive")
        return g.wald(1.0, a * a, size)
    if law == "symbeta":
        nu = params.get("nu", 0.5)
        if nu < -0.5:
            raise DomainError("nu must be >= -1/2")
        if nu == -0.5:
            return np.where(g.random(size) < 0.5, -1.0, 1.0)
        return 2.0 * g.beta(nu + 0.5, nu + 0.5, size) - 1.0
    if law == "hinds":
        return 0.5 * np.log(g.gamma(0.5, 1.0, size))
    raise DomainError(f"unknown law {law!r}")


INNOVATIONS = {
    # name: (mean, variance) as functions of the parameter
    "exp": (lambda p: 1.0, lambda p: 1.0),
    "gamma": (lambda p: p, lambda p: p),
    "laplace": (lambda p: 0.0, lambda p: 2.0 * p * p),
    "invgamma32": (lambda p: 1.0 / p**2, lambda p: math.inf),
}


@dataclass(frozen=True)
class SeriesSampler:
    """sum_{n<=N} w_n I_n (+ compensation for n > N).

    ``weight_tail(N, p)`` returns sum_{n>N} w_n^p for p in {1, 2}.
    Compensation "add_mean" adds the tail mean; "add_mean_gaussian" adds in
    addition a centred normal with the tail variance (finite-variance
    innovations only).
    """

    weights: Callable[[np.ndarray], np.ndarray]
    innovation: str
    param: float
    N: int
    weight_tail: Callable[[int, int], float]
    compensation: str = "add_mean"
    name: str = ""

    def __post_init__(self):
        if self.innovation not in INNOVATIONS:
            raise DomainError(f"unknown innovation {self.innovation!r}")
        if self.compensation not in ("none", "add_mean", "add_mean_gaussian"):
            raise DomainError("unknown compensation")
        if self.N < 0:
            raise DomainError("N must be >= 0")

    @property
    def tail_mean(self) -> float:
        return self.weight_tail(self.N, 1) * INNOVATIONS[self.innovation][0](self.param)

    @property
    def tail_variance(self) -> float:
        return self.weight_tail(self.N, 2) * INNOVATIONS[self.innovation][1](self.param)

    @property
    def mean(self) -> float:
        return (self.weight_tail(0, 1)) * INNOVATIONS[self.innovation][0](self.param)

    def with_truncation(self, N: int, compensation: str | None = None) -> "SeriesSampler":
        return SeriesSampler(self.weights, self.innovation, self.param, N, self.weight_tail,
                             compensation or self.compensation, self.name)


def _innovations(g: np.random.Generator, kind: str, p: float, shape):
    if kind == "exp":
        return g.exponential(1.0, shape)
    if kind == "gamma":
        return g.gamma(p, 1.0, shape)
    if kind == "laplace":
        return g.laplace(0.0, p, shape)
    return sample_invgamma32(p, g, shape)


def sample_series(spec: SeriesSampler, rng, size: int | None = None, chunk: int = 20_000):
    """Draws of the truncated series, processed in row chunks to bound memory."""
    g = _gen(rng)
    n_draws = 1 if size is None else int(size)
    w = np.asarray(spec.weights(np.arange(1, spec.N + 1)), dtype=float) if spec.N else np.zeros(0)
    out = np.empty(n_draws)
    for start in range(0, n_draws, chunk):
        stop = min(n_draws, start + chunk)
        if spec.N:
            out[start:stop] = _innovations(g, spec.innovation, spec.param, (stop - start, spec.N)) @ w
        else:
            out[start:stop] = 0.0
    if spec.compensation in ("add_mean", "add_mean_gaussian"):
        out += spec.tail_mean
    if spec.compensation == "add_mean_gaussian":
        var = spec.tail_variance
        if not math.isfinite(var):
            raise DomainError("Gaussian tail compensation needs finite innovation variance")
        out += math.sqrt(var) * g.standard_normal(n_draws)
    return float(out[0]) if size is None else out


def _hurwitz_tail(c: float, power: float):
    """sum_{n>N} (n + c)^{-power}."""
    return lambda N: hurwitz_zeta(power, N + 1 + c).real


def c1_sampler(N: int = 200, compensation: str = "add_mean") -> SeriesSampler:
    """C_1 = (2/pi^2) sum Gamma_{1,n}/(n-1/2)^2, E e^{-s^2 C_1/2} = 1/cosh s."""
    k = 2 / math.pi**2
    t2, t4 = _hurwitz_tail(-0.5, 2), _hurwitz_tail(-0.5, 4)
    return SeriesSampler(lambda n: k / (n - 0.5) ** 2, "exp", 1.0, N,
                         lambda M, p: k**p * (t2(M) if p == 1 else t4(M)), compensation, "C1")


def c2_sampler(N: int = 200, compensation: str = "add_mean") -> SeriesSampler:
    """C_2 = (2/pi^2) sum Gamma_{2,n}/(n-1/2)^2, E e^{-s^2 C_2/2} = 1/cosh^2 s."""
    base = c1_sampler(N, compensation)
    return SeriesSampler(base.weights, "gamma", 2.0, N, base.weight_tail, compensation, "C2")


def s_sampler(a: float = 1.0, N: int = 200, compensation: str = "add_mean") -> SeriesSampler:
    """S_a = (2 a^2/pi^2) sum E_n/n^2, E e^{-s^2 S_a/2} = as/sinh(as)."""
    k = 2 * a * a / math.pi**2
    t2, t4 = _hurwitz_tail(0.0, 2), _hurwitz_tail(0.0, 4)
    return SeriesSampler(lambda n: k / n.astype(float) ** 2, "exp", 1.0, N,
                         lambda M, p: k**p * (t2(M) if p == 1 else t4(M)), compensation, f"S_{a:g}")


def w_sampler(a: float = 1.0, N: int = 200, compensation: str = "add_mean") -> SeriesSampler:
    """W_a = S_a + S_a' = (2 a^2/pi^2) sum Gamma_{2,n}/n^2."""
    base = s_sampler(a, N, compensation)
    return SeriesSampler(base.weights, "gamma", 2.0, N, base.weight_tail, compensation, f"W_{a:g}")


def gamma_couple_sampler(a: float = 1.0, N: int = 200) -> SeriesSampler:
    """H^Gamma_a = sum_{k>=0} (a+k)^{-2} H_{1,k}, E e^{-s^2 H/2} = Gamma(a) e^{s psi(a)}/Gamma(a+s)."""
    t2, t4 = _hurwitz_tail(a - 1.0, 2), _hurwitz_tail(a - 1.0, 4)
    return SeriesSampler(lambda n: (a + n - 1.0) ** -2, "invgamma32", 1.0, N,
                         lambda M, p: t2(M) if p == 1 else t4(M), "add_mean", f"HGamma_{a:g}")


def bessel_h_sampler(nu: float, N: int = 1000, compensation: str = "add_mean_gaussian") -> SeriesSampler:
    """H_nu = sum L_n / j_{nu,n} with L_n ~ density e^{-|x|}/2, CF prod (1 + s^2/j^2)^{-1}."""
    zs = bessel_zero_set(nu, max(N + 1, 2))
    z = zs.first(N + 1)

    def weights(n):
        return 1.0 / z[np.asarray(n) - 1]

    def tail(M, p):
        # innovations have mean zero, so only the p=2 tail matters
        return 0.0 if p == 1 else zs.tail_power_sums(M, 2)

    return SeriesSampler(weights, "laplace", 1.0, N, tail, compensation, f"H_nu={nu:g}")


def sample_invgamma32(a: float, rng, size=None):
    """H_a = 1/Y with Y ~ Gamma(3/2, scale 2 a^2): mean 1/a^2, E e^{-s^2 H/2} = (1 + s/a) e^{-s/a}."""
    if a <= 0:
        raise DomainError("a must be positive")
    return 1.0 / _gen(rng).gamma(1.5, 2.0 * a * a, size)


def brownian_subordinate(h_draws, convention: str, rng):
    """sqrt(H) Z ("sqrtH") or sqrt(2H) Z ("sqrt2H") for given draws of H >= 0."""
    h = np.asarray(h_draws, dtype=float)
    if np.any(h < 0):
        raise DomainError("H must be non-negative")
    if convention == "sqrtH":
        scale = np.sqrt(h)
    elif convention == "sqrt2H":
        scale = np.sqrt(2 * h)
    else:
        raise DomainError("convention must be 'sqrtH' or 'sqrt2H'")
    z = _gen(rng).standard_normal(h.shape)
    out = scale * z
    return float(out) if out.ndim == 0 else out


class PolyaSampler:
    """Rejection sampler for the xi-density with a normal envelope.

    The envelope N(0, sigma^2) uses sigma = 1.25 x (standard deviation of p)
    and a constant M = 1.02 max p/q over a fine grid on [-4, 4]; outside
    that range p falls like exp(-pi e^{2|x|}), far below any normal tail.
    Every proposal is checked against the envelope and a violation raises.
    """

    def __init__(self, tol: float = 1e-17):
        from .densities import polya_density
        from .numerics import integrate

        self._p = lambda x: polya_density(x, tol)
        var = float(integrate(lambda x: np.asarray(x) ** 2 * self._p(x), -math.inf, math.inf).value)
        self.sigma = 1.25 * math.sqrt(var)
        grid = np.linspace(-4, 4, 80_001)
        ratio = self._p(grid) / self._q(grid)
        self.M = 1.02 * float(ratio.max())
        self.proposed = 0
        self.accepted = 0

    def _q(self, x):
        return np.exp(-0.5 * (x / self.sigma) ** 2) / (self.sigma * math.sqrt(2 * math.pi))

    def sample(self, rng, size: int) -> np.ndarray:
        g = _gen(rng)
        out = np.empty(0)
        while out.size < size:
            n = int(1.2 * self.M * (size - out.size)) + 64
            x = self.sigma * g.standard_normal(n)
            u = g.random(n)
            px, mq = self._p(x), self.M * self._q(x)
            if np.any(px > mq):
                raise EnvelopeError("normal envelope fails to dominate the xi-density")
            self.proposed += n
            keep = x[u * mq <= px]
            self.accepted += keep.size
            out = np.concatenate([out, keep])
        return out[:size]

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.proposed if self.proposed else math.nan


_POLYA = None


def sample_polya_xi(rng, size: int, tol: float = 1e-17) -> np.ndarray:
    global _POLYA
    if _POLYA is None or tol != 1e-17:
        sampler = PolyaSampler(tol)
        if tol != 1e-17:
            return sampler.sample(rng, size)
        _POLYA = sampler
    return _POLYA.sample(rng, size)


def empirical_cf(samples, s_grid, warn: bool = True):
    """Sample means of e^{s X} on a grid with their standard errors.

    The standard error is the delete-one jackknife SE of the mean, which
    equals the sample standard deviation over sqrt(n). For Re s != 0 an
    estimate dominated by a handful of draws is flagged.
    Returns (estimates (complex), standard errors (real)).
    """
    x = np.asarray(samples, dtype=float)
    n = x.size
    if n < 2:
        raise DomainError("need at least two samples")
    s = np.atleast_1d(np.asarray(s_grid, dtype=complex))
    est = np.empty(s.size, dtype=complex)
    se = np.empty(s.size)
    for i, si in enumerate(s):
        v = np.exp(si * x)
        m = v.mean()
        est[i] = m
        se[i] = math.sqrt(np.sum(np.abs(v - m) ** 2) / (n - 1) / n)
        if warn and si.real != 0 and abs(m) > 0:
            top = np.max(np.abs(v)) / (abs(m) * n)
            if top > 0.1:
                warnings.warn(f"one draw carries {top:.0%} of the estimate at s={si}", UnstableMomentWarning)
        if warn and abs(m) > 0 and se[i] / abs(m) > 0.5:
            warnings.warn(f"SE/|estimate| = {se[i] / abs(m):.2f} at s={si}", UnstableMomentWarning)
    return est, se
