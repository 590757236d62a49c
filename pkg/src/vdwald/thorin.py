"""Thorin measures, GGC transforms and the Lévy-measure machinery around them.

A GGC variable H >= 0 has E e^{-sH} = exp(-a s - phi(s)) with
phi(s) = int log(1 + s/z) U(dz). Even entire functions with zeros +-rho give
U = sum delta_{rho^2}; this module evaluates those transforms, the induced
Lévy density t^{-1} int e^{-tz} U(dz), and the completely monotone
function nu_alpha built from a measure mu on (0, inf).
"""
from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, UnsupportedMeasureError
from .numerics import DEFAULT_TOL, Tolerance, integrate

__all__ = [
    "ThorinMeasure",
    "MuMeasure",
    "register_density",
    "thorin_from_zeros",
    "ggc_laplace_exponent",
    "ggc_laplace_transform",
    "levy_density_from_thorin",
    "frullani_residual",
    "sym_eggc_mgf",
    "mu_gamma",
    "mu_zeta_p",
    "mu_inner_transform",
    "lemma2_nu_alpha",
    "lemma2_sides",
    "WaldBridge",
    "wald_bridge",
    "cm_check",
]

# Named densities usable from JSON: id -> function of z (vectorized).
_DENSITIES: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "unit_interval": lambda z: np.where((z > 0) & (z < 1), 1.0, 0.0),
    "exp1": lambda z: np.exp(-np.asarray(z, dtype=float)),
}


def register_density(name: str, fn: Callable[[np.ndarray], np.ndarray]):
    _DENSITIES[name] = fn


@dataclass(frozen=True)
class ThorinMeasure:
    """U(dz) = sum_j u_j delta_{z_j} + density(z) dz, plus drift a and Gaussian c.

    ``tail_moments(p)``, when given, returns sum u z^{-p} over atoms that were
    omitted by truncation, and ``tail_start`` is the smallest omitted
    location; together they drive the log1p tail correction and its bound.
    """

    atoms_z: np.ndarray = field(default_factory=lambda: np.zeros(0))
    atoms_u: np.ndarray = field(default_factory=lambda: np.zeros(0))
    density: Callable | None = None
    density_id: str | None = None
    a: float = 0.0
    c: float = 0.0
    tail_moments: Callable[[int], float] | None = None
    tail_start: float = math.inf
    name: str = ""

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.atoms_z, dtype=float))
        u = np.atleast_1d(np.asarray(self.atoms_u, dtype=float))
        if z.shape != u.shape:
            raise DomainError("atoms_z and atoms_u must have equal length")
        if np.any(z <= 0) or np.any(u <= 0):
            raise DomainError("atoms need positive location and mass")
        if self.a < 0 or self.c < 0:
            raise DomainError("a and c must be non-negative")
        if self.density is None and self.density_id is not None:
            if self.density_id not in _DENSITIES:
                raise DomainError(f"unknown density id {self.density_id!r}")
            object.__setattr__(self, "density", _DENSITIES[self.density_id])
        object.__setattr__(self, "atoms_z", z)
        object.__setattr__(self, "atoms_u", u)

    def inverse_moment(self, tol: Tolerance = DEFAULT_TOL) -> float:
        """sum u/z + int density(z)/z dz, which must be finite."""
        total = math.fsum(self.atoms_u / self.atoms_z)
        if self.tail_moments is not None:
            total += self.tail_moments(1)
        if self.density is not None:
            total += integrate(lambda z: self.density(z) / z, 0.0, math.inf, tol).value
        return total

    def to_json(self) -> str:
        if self.density is not None and self.density_id is None:
            raise DomainError("only named densities can be serialized")
        return json.dumps({
            "atoms": [[float(z), float(u)] for z, u in zip(self.atoms_z, self.atoms_u)],
            "density": self.density_id,
            "a": self.a,
            "c": self.c,
        })

    @classmethod
    def from_json(cls, text: str) -> "ThorinMeasure":
        d = json.loads(text)
        atoms = np.asarray(d.get("atoms", []), dtype=float).reshape(-1, 2)
        return cls(atoms[:, 0], atoms[:, 1], density_id=d.get("density"),
                   a=float(d.get("a", 0.0)), c=float(d.get("c", 0.0)))


def thorin_from_zeros(zs, n: int, scale: float = 1.0, weight: float = 1.0) -> ThorinMeasure:
    """U = weight * sum_{n} delta_{scale * rho_n^2} from the first n zeros of a ZeroSet.

    The omitted zeros feed ``tail_moments`` through ``zs.tail_power_sums``.
    """
    rho = zs.first(n)
    z = scale * rho**2

    def tail_moments(p: int) -> float:
        return weight * scale ** (-p) * zs.tail_power_sums(n, 2 * p)

    start = scale * float(zs.first(n + 1)[-1]) ** 2
    return ThorinMeasure(z, np.full(n, float(weight)), tail_moments=tail_moments,
                         tail_start=start, name=f"zeros:{getattr(zs, 'name', '')}")


def _phi_atoms(U: ThorinMeasure, s: float) -> tuple[float, float]:
    """Atom part of phi and a bound on the truncation error after correction."""
    val = math.fsum(U.atoms_u * np.log1p(s / U.atoms_z))
    bound = 0.0
    if U.tail_moments is not None:
        t1, t2 = U.tail_moments(1), U.tail_moments(2)
        val += s * t1 - 0.5 * s * s * t2
        r = s / U.tail_start
        # |log(1+x) - x + x^2/2| <= x^3/3 for x >= 0
        bound = s**3 * t2 / (3.0 * U.tail_start) if r < 1 else math.inf
    return val, bound


def _phi_density(U: ThorinMeasure, s: float, tol: Tolerance) -> float:
    if U.density is None or s == 0:
        return 0.0
    res = integrate(lambda z: np.log1p(s / z) * U.density(z), 0.0, math.inf, tol, points=(1.0,))
    if not res.converged:
        warnings.warn("Thorin density quadrature did not converge", RuntimeWarning)
    return float(res.value)


def ggc_laplace_exponent(U: ThorinMeasure, s: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """phi(s) = int log(1 + s/z) U(dz) for s >= 0 (drift not included)."""
    if s < 0:
        raise DomainError("the GGC exponent is evaluated for s >= 0")
    if s == 0:
        return 0.0
    atoms, _ = _phi_atoms(U, s)
    return atoms + _phi_density(U, s, tol)


def ggc_exponent_tail_bound(U: ThorinMeasure, s: float) -> float:
    return _phi_atoms(U, s)[1]


def ggc_laplace_transform(U: ThorinMeasure, s: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """E e^{-sH} = exp(-a s - phi(s))."""
    return math.exp(-U.a * s - ggc_laplace_exponent(U, s, tol))


def levy_density_from_thorin(U: ThorinMeasure, t: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """t^{-1} int e^{-tz} U(dz). Omitted atoms of a truncated family are ignored."""
    if t <= 0:
        raise DomainError("t must be positive")
    g = math.fsum(U.atoms_u * np.exp(-t * U.atoms_z))
    if U.density is not None:
        g += float(integrate(lambda z: np.exp(-t * z) * U.density(z), 0.0, math.inf, tol).value)
    return g / t


def frullani_residual(z: float, s: float, tol: Tolerance = Tolerance(1e-13, 1e-13)) -> float:
    """|int_0^inf (1 - e^{-s^2 t}) e^{-tz} dt/t - log((z + s^2)/z)|."""
    if z <= 0:
        raise DomainError("z must be positive")
    if s == 0:
        return 0.0
    s2 = s * s

    def integrand(t):
        t = np.asarray(t, dtype=float)
        # -expm1 keeps the small-t limit (s^2) accurate
        out = np.where(t > 0, -np.expm1(-s2 * t) * np.exp(-t * z) / np.where(t > 0, t, 1.0), s2)
        return out

    res = integrate(integrand, 0.0, math.inf, tol, points=(1.0 / z,))
    if not res.converged:
        warnings.warn("Frullani quadrature did not converge", RuntimeWarning)
    return abs(float(res.value) - math.log1p(s2 / z))


def sym_eggc_mgf(U_pos: ThorinMeasure, U_neg: ThorinMeasure | None, c: float, s: complex,
                 tol: Tolerance = DEFAULT_TOL) -> complex:
    """E e^{s H^} = exp(c s^2/2 + int {log(z/(z-s)) - s z/(1+z^2)} U(dz)) for Re s = 0.

    ``U_pos`` lives on z > 0, ``U_neg`` holds the reflected measure of the
    negative half-line (its locations given as positive numbers).
    """
    s = complex(s)
    if s.real != 0:
        raise DomainError("symEGGC transform is evaluated on the imaginary axis")
    if c < 0:
        raise DomainError("c must be non-negative")

    def part(U: ThorinMeasure, sign: float) -> complex:
        zs = sign * U.atoms_z
        terms = -np.log(1 - s / zs) - s * zs / (1 + zs**2)
        total = complex(math.fsum(np.real(U.atoms_u * terms)), math.fsum(np.imag(U.atoms_u * terms)))
        if U.density is not None:
            def f(z):
                zz = sign * np.asarray(z, dtype=float)
                return (-np.log(1 - s / zz) - s * zz / (1 + zz**2)) * U.density(z)
            total += complex(integrate(f, 0.0, math.inf, tol).value)
        return total

    val = 0.5 * c * s * s + part(U_pos, 1.0)
    if U_neg is not None:
        val += part(U_neg, -1.0)
    return cmath.exp(val)


@dataclass(frozen=True)
class MuMeasure:
    """A measure on (0, inf): atoms (possibly complex masses) plus an optional density.

    ``kind`` tags the constructions that have closed forms elsewhere
    ("gamma", "zeta_p", "zeta", "L", or "generic").
    """

    atoms_x: np.ndarray = field(default_factory=lambda: np.zeros(0))
    atoms_mass: np.ndarray = field(default_factory=lambda: np.zeros(0))
    density: Callable | None = None
    kind: str = "generic"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.atoms_x, dtype=float))
        m = np.atleast_1d(np.asarray(self.atoms_mass))
        if x.shape != m.shape:
            raise DomainError("atoms_x and atoms_mass must have equal length")
        if np.any(x <= 0):
            raise DomainError("atom locations must be positive")
        order = np.argsort(x, kind="stable")
        object.__setattr__(self, "atoms_x", x[order])
        object.__setattr__(self, "atoms_mass", m[order])

    @property
    def real_nonnegative(self) -> bool:
        m = self.atoms_mass
        return bool(np.all(np.isreal(m)) and np.all(np.real(m) >= 0))

    @property
    def total_atom_mass(self):
        m = self.atoms_mass
        if np.iscomplexobj(m):
            return complex(math.fsum(m.real), math.fsum(m.imag))
        return math.fsum(m)


def mu_gamma() -> MuMeasure:
    """dx/(e^x - 1), the measure attached to Gamma(1 + s)."""
    return MuMeasure(density=lambda x: 1.0 / np.expm1(x), kind="gamma")


def mu_zeta_p(p: int, x_max: float | None = None) -> MuMeasure:
    """(log p) sum_{k>=1} delta_{k log p}, truncated at x_max (default 80 log p)."""
    lp = math.log(p)
    k_max = int(x_max // lp) if x_max is not None else 80
    k = np.arange(1, k_max + 1)
    return MuMeasure(k * lp, np.full(k_max, lp), kind="zeta_p", params={"p": p})


def mu_inner_transform(mu: MuMeasure, alpha: float, z: float, closed_form: bool = True) -> float:
    """int 2 sin^2(x sqrt(z/2)) e^{-alpha x} mu(dx).

    For the single-prime measure the closed form sums the geometric series
    sum_k r^k (1 - cos(2k theta)), r = p^{-alpha}, theta = log p sqrt(z/2),
    over all k >= 1; otherwise atoms are summed directly.
    """
    if closed_form and mu.kind == "zeta_p":
        p = mu.params["p"]
        lp = math.log(p)
        r = p ** (-alpha)
        w = r * cmath.exp(2j * lp * math.sqrt(z / 2))
        return lp * (r / (1 - r) - (w / (1 - w)).real)
    x = mu.atoms_x
    val = math.fsum(np.real(mu.atoms_mass) * 2 * np.sin(x * math.sqrt(z / 2)) ** 2 * np.exp(-alpha * x))
    if mu.density is not None:
        val += float(integrate(lambda y: 2 * np.sin(y * math.sqrt(z / 2)) ** 2 * np.exp(-alpha * y)
                               * mu.density(y), 0.0, math.inf).value)
    return val


def lemma2_nu_alpha(mu: MuMeasure, alpha: float, t: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """nu_alpha(t) = (2 pi t)^{-1/2} int (1 - e^{-x^2/(2t)}) e^{-alpha x} mu(dx).

    This is the z-integral int e^{-tz} (...) dz/sqrt(pi z) of the defining
    double integral done in closed form; the direct double integral is kept
    in the test-suite as an independent route.
    """
    if t <= 0 or alpha <= 0:
        raise DomainError("need t > 0 and alpha > 0")
    pref = 1.0 / math.sqrt(2 * math.pi * t)
    if mu.kind == "zeta_p":
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        p = mu.params["p"]
        lp = math.log(p)
        k_max = max(1, int(math.ceil(45.0 / (alpha * lp))))
        x = lp * np.arange(1, k_max + 1)
        return pref * lp * math.fsum(-np.expm1(-x**2 / (2 * t)) * np.exp(-alpha * x))
    if mu.kind == "gamma":
        def f(x):
            x = np.asarray(x, dtype=float)
            safe = np.where((x > 0) & (x < 700), x, 1.0)
            return np.where((x > 0) & (x < 700), -np.expm1(-safe**2 / (2 * t)) * np.exp(-alpha * safe) / np.expm1(safe), 0.0)
        return pref * float(integrate(f, 0.0, math.inf, tol, points=(math.sqrt(t),)).value)
    raise UnsupportedMeasureError(f"nu_alpha is implemented for the gamma and zeta_p measures, not {mu.kind!r}")


def lemma2_sides(mu: MuMeasure, alpha: float, s: float, tol: Tolerance = Tolerance(1e-12, 1e-10)):
    """Both sides of the log-ratio identity for the single-prime zeta factor.

    Left: log(f(a)/f(a+s)) + s f'(a)/f(a) with f(u) = (1 - p^{-u})^{-1}.
    Right: -int_0^inf (1 - e^{-s^2 t/2}) nu_alpha(t) dt/t.
    Returns (left, right).
    """
    if mu.kind != "zeta_p":
        raise UnsupportedMeasureError("closed left side only for the zeta_p measure")
    p = mu.params["p"]
    lp = math.log(p)

    def logf(u):
        return -math.log1p(-(p ** (-u)))

    dlogf = -lp * p ** (-alpha) / (1 - p ** (-alpha))
    left = logf(alpha) - logf(alpha + s) + s * dlogf

    def g(t):
        return np.array([-math.expm1(-0.5 * s * s * ti) * lemma2_nu_alpha(mu, alpha, ti) / ti
                         for ti in np.atleast_1d(t)])

    right = -float(integrate(g, 0.0, math.inf, tol, points=(1.0,)).value)
    return left, right


@dataclass(frozen=True)
class WaldBridge:
    """Companion transform produced from a ratio f(alpha + s)/f(alpha)."""

    direction: str
    transform: Callable[[float], float]

    def __call__(self, s: float) -> float:
        return self.transform(s)


def wald_bridge(f_ratio: Callable[[float], float], direction: str = "forward") -> WaldBridge:
    """Turn E e^{sX} = f_ratio(s) into s -> E e^{-sH} = 1/f_ratio(sqrt s), or back.

    ``direction="forward"`` consumes the mgf of X; ``"reciprocal"`` consumes the
    Laplace transform of H and returns s -> 1/L_H(s^2).
    """
    if direction == "forward":
        def companion(s: float) -> float:
            if s < 0:
                raise DomainError("the H-side Laplace transform needs s >= 0")
            return 1.0 / f_ratio(math.sqrt(s))
    elif direction == "reciprocal":
        def companion(s: float) -> float:
            return 1.0 / f_ratio(s * s)
    else:
        raise DomainError(f"unknown direction {direction!r}")
    return WaldBridge(direction, companion)


def cm_check(fn: Callable[[float], float], grid: np.ndarray, max_order: int = 3) -> bool:
    """Finite-difference complete-monotonicity heuristic on a grid.

    Divided differences of order k must have sign (-1)^k for k <= max_order.
    A heuristic, not a proof.
    """
    x = np.asarray(grid, dtype=float)
    vals = np.array([fn(v) for v in x])
    if np.any(vals < 0):
        return False
    d = vals
    for k in range(1, max_order + 1):
        d = (d[1:] - d[:-1]) / (x[k:] - x[:-k])
        scale = np.max(np.abs(d)) if len(d) else 0.0
        if np.any((-1) ** k * d < -1e-12 * max(scale, 1e-300)):
            return False
    return True
