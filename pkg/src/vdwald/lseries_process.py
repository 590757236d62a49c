"""Compound-Poisson subordinator built from the L-series measure, and its first passage.

X_t = delta t + sum_{j <= N_t} V_j with N_t ~ Poisson(c_L t) and V_j drawn from
the normalized atoms of mu_L, so E e^{-s X_t} = exp(-t phi(s)) with
phi(s) = delta s + int (1 - e^{-sx}) mu_L(dx) = delta s + log L(sigma) - log L(sigma + s).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, DomainError
from .numerics import Tolerance, find_root
from .samplers import _gen
from .specfun import DirichletCharacter, dirichlet_L, mu_L_atoms
from .thorin import MuMeasure

__all__ = [
    "SubordinatorSpec",
    "PathSample",
    "subordinator_from_character",
    "bernstein_phi",
    "exact_laplace",
    "sample_path",
    "sample_values",
    "first_passage_exponent",
    "first_passage_grid_scan",
    "sample_first_passage",
]


@dataclass(frozen=True)
class SubordinatorSpec:
    drift: float
    measure: MuMeasure
    chi: DirichletCharacter | None = None
    sigma: float | None = None

    def __post_init__(self):
        if self.drift < 0:
            raise DomainError("drift must be non-negative")

    @property
    def c_L(self):
        return self.measure.total_atom_mass

    @property
    def simulable(self) -> bool:
        return self.measure.real_nonnegative

    def jump_law(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.simulable:
            raise DomainError("simulation needs real non-negative masses")
        m = np.real(self.measure.atoms_mass).astype(float)
        total = m.sum()
        return self.measure.atoms_x, (m / total if total > 0 else m)

    def to_json(self) -> str:
        return json.dumps({
            "drift": self.drift,
            "sigma": self.sigma,
            "character": None if self.chi is None else json.loads(self.chi.to_json()),
            "n_atoms": int(self.measure.atoms_x.size),
            "c_L": float(np.real(self.c_L)),
            "tail_bound": self.measure.params.get("tail_bound"),
        })


@dataclass(frozen=True)
class PathSample:
    jump_times: np.ndarray
    jump_sizes: np.ndarray
    drift: float
    horizon: float

    def value_at(self, t):
        """X_t for t in [0, horizon] (right-continuous)."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0) or np.any(t > self.horizon):
            raise DomainError("t outside [0, horizon]")
        cum = np.concatenate([[0.0], np.cumsum(self.jump_sizes)])
        idx = np.searchsorted(self.jump_times, t, side="right")
        return self.drift * t + cum[idx]

    @property
    def value(self) -> float:
        return float(self.value_at(self.horizon))


def subordinator_from_character(chi: DirichletCharacter, sigma: float, n_max: int,
                                drift: float = 0.0) -> SubordinatorSpec:
    return SubordinatorSpec(drift, mu_L_atoms(chi, sigma, n_max), chi, sigma)


def bernstein_phi(measure: MuMeasure, s: float, drift: float = 0.0) -> float:
    """drift s + sum m (1 - e^{-s x}) over the atoms (density part by quadrature if present)."""
    if s < 0:
        raise DomainError("s must be non-negative")
    if not measure.real_nonnegative:
        raise DomainError("phi is a Bernstein function only for real non-negative masses")
    m = np.real(measure.atoms_mass).astype(float)
    val = math.fsum(m * -np.expm1(-s * measure.atoms_x)) + drift * s
    if measure.density is not None:
        from .numerics import integrate

        val += float(integrate(lambda x: -np.expm1(-s * np.asarray(x)) * measure.density(x),
                               0.0, math.inf).value)
    return val


def exact_laplace(spec: SubordinatorSpec, s: float, t: float) -> float:
    """(L(sigma + s)/L(sigma))^t e^{-delta s t}, the untruncated target."""
    if spec.chi is None or spec.sigma is None:
        raise DomainError("spec carries no character")
    ratio = dirichlet_L(spec.chi, spec.sigma + s) / dirichlet_L(spec.chi, spec.sigma)
    return float(np.real(ratio)) ** t * math.exp(-spec.drift * s * t)


def sample_path(spec: SubordinatorSpec, t: float, rng) -> PathSample:
    if t <= 0:
        raise DomainError("t must be positive")
    g = _gen(rng)
    x, p = spec.jump_law()
    n = g.poisson(float(np.real(spec.c_L)) * t)
    times = np.sort(g.uniform(0.0, t, n))
    sizes = x[g.choice(x.size, n, p=p)] if n else np.zeros(0)
    return PathSample(times, sizes, spec.drift, t)


def sample_values(spec: SubordinatorSpec, t: float, rng, size: int) -> np.ndarray:
    """size independent draws of X_t (vectorized; no path detail)."""
    g = _gen(rng)
    x, p = spec.jump_law()
    counts = g.poisson(float(np.real(spec.c_L)) * t, size)
    total = int(counts.sum())
    jumps = x[g.choice(x.size, total, p=p)] if total else np.zeros(0)
    owner = np.repeat(np.arange(size), counts)
    return spec.drift * t + np.bincount(owner, weights=jumps, minlength=size)


def _psi(spec: SubordinatorSpec, c: float):
    return lambda z: z / c - bernstein_phi(spec.measure, z, spec.drift)


def first_passage_exponent(spec: SubordinatorSpec, c: float, w: float,
                           tol: Tolerance = Tolerance(1e-14, 1e-14)) -> float:
    """phi_Y(w): the root z > 0 of z/c - phi_X(z) = w.

    z/c - phi_X(z) is convex with value 0 at z = 0 and grows without bound
    when 1/c exceeds the drift, so for w > 0 the root is unique.
    """
    if c <= 0 or w < 0:
        raise DomainError("need c > 0 and w >= 0")
    if 1.0 / c <= spec.drift:
        raise BracketError("1/c must exceed the drift for a positive root")
    if w == 0:
        return 0.0
    psi = _psi(spec, c)
    hi = max(1.0, 2 * c * w)
    while psi(hi) <= w:
        hi *= 2
        if hi > 1e300:
            raise BracketError("no root found")
    return find_root(lambda z: psi(z) - w, 0.0, hi, tol)


def first_passage_grid_scan(spec: SubordinatorSpec, c: float, w: float,
                            points: int = 2001, rounds: int = 12) -> float:
    """Root by repeated uniform-grid zooming on the first upward crossing of w."""
    psi = _psi(spec, c)
    lo, hi = 0.0, max(1.0, 2 * c * w)
    while psi(hi) <= w:
        hi *= 2
    for _ in range(rounds):
        z = np.linspace(lo, hi, points)
        v = np.array([psi(zi) for zi in z]) - w
        k = int(np.argmax(v > 0))
        lo, hi = z[k - 1], z[k]
        if hi - lo < 1e-15 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def sample_first_passage(spec: SubordinatorSpec, c: float, x: float, rng, size: int,
                         t_max: float = 1e3) -> np.ndarray:
    """Draws of Y_x = inf{t : t/c - X_t > x}, capped at t_max (inf when not reached).

    Between jumps Z_t = t/c - X_t rises with slope 1/c - drift and jumps only
    downward, so the crossing happens on a linear stretch and is exact.
    """
    g = _gen(rng)
    slope = 1.0 / c - spec.drift
    if slope <= 0:
        raise DomainError("Z never rises: 1/c must exceed the drift")
    xs, p = spec.jump_law()
    rate = float(np.real(spec.c_L))
    out = np.full(size, math.inf)
    t = np.zeros(size)
    z = np.zeros(size)
    live = np.arange(size)
    while live.size:
        gap = g.exponential(1.0 / rate, live.size) if rate > 0 else np.full(live.size, math.inf)
        need = (x - z[live]) / slope
        hit = need <= gap
        out[live[hit]] = t[live[hit]] + np.maximum(need[hit], 0.0)
        miss = live[~hit]
        if not miss.size:
            break
        gm = gap[~hit]
        t[miss] += gm
        z[miss] += slope * gm - xs[g.choice(xs.size, miss.size, p=p)]
        live = miss[t[miss] < t_max]
    return out
