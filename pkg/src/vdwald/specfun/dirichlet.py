"""Dirichlet characters, L-series, completed L-functions, Gauss sums and beta."""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import DomainError
from ..numerics import CompensatedSum, SeriesResult, euler_transform_alternating, hurwitz_zeta, integrate
from ..thorin import MuMeasure
from .arith import primes_up_to, smallest_prime_factor, von_mangoldt
from .gamma import gamma_fn, loggamma


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """chi mod k, stored as its table chi(0..k-1)."""

    modulus: int
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if self.modulus < 1 or v.shape != (self.modulus,):
            raise DomainError("values must have one entry per residue class")
        object.__setattr__(self, "values", v)

    def __call__(self, n):
        return self.values[np.asarray(n) % self.modulus]

    @property
    def parity(self) -> int:
        """0 if chi(-1) = 1, 1 if chi(-1) = -1."""
        return 0 if abs(self(-1) - 1) < 1e-9 else 1

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.values.imag) < 1e-12))

    @property
    def is_principal(self) -> bool:
        k = self.modulus
        return all(abs(self.values[n] - (1.0 if math.gcd(n, k) == 1 else 0.0)) < 1e-12 for n in range(k))

    @property
    def conductor(self) -> int:
        k = self.modulus
        for d in range(1, k + 1):
            if k % d:
                continue
            if all(abs(self.values[n] - 1) < 1e-9 for n in range(k) if math.gcd(n, k) == 1 and n % d == 1 % d):
                return d
        return k

    @property
    def primitive(self) -> bool:
        return self.conductor == self.modulus

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, np.conj(self.values), self.label + "*")

    def to_json(self) -> str:
        return json.dumps({"modulus": self.modulus,
                           "values": [[float(z.real), float(z.imag)] for z in self.values]})

    @classmethod
    def from_json(cls, text: str) -> "DirichletCharacter":
        d = json.loads(text)
        vals = np.array([complex(re, im) for re, im in d["values"]])
        ch = cls(int(d["modulus"]), vals, d.get("label", ""))
        if not is_multiplicative(ch):
            raise DomainError("table is not a Dirichlet character")
        return ch


def is_multiplicative(chi: DirichletCharacter) -> bool:
    """Exhaustive check of chi(mn) = chi(m) chi(n) and the support condition."""
    k = chi.modulus
    v = chi.values
    for n in range(k):
        if (math.gcd(n, k) == 1) != (abs(v[n]) > 0.5):
            return False
    m = np.arange(k)
    prod = (m[:, None] * m[None, :]) % k
    return bool(np.allclose(v[prod], v[:, None] * v[None, :], atol=1e-12))


def _primitive_root(p: int) -> int:
    phi = p - 1
    factors = set()
    n = phi
    spf = smallest_prime_factor(max(phi, 2))
    while n > 1:
        q = int(spf[n])
        factors.add(q)
        n //= q
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    return 1


def _cyclic_components(k: int):
    """(modulus q, generator, order) for cyclic factors of (Z/kZ)^* via CRT."""
    comps = []
    n = k
    spf = smallest_prime_factor(max(k, 2))
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        q = p**e
        if p == 2:
            if e == 2:
                comps.append((q, q - 1, 2))
            elif e >= 3:
                comps.append((q, q - 1, 2))
                comps.append((q, 5, q // 4))
        else:
            g = _primitive_root(p)
            if e > 1 and pow(g, p - 1, p * p) == 1:
                g += p
            comps.append((q, g, q // p * (p - 1)))
    return comps


def _discrete_logs(q: int, g: int, order: int, extra_q: int | None = None) -> dict[int, int]:
    logs = {}
    x = 1
    for j in range(order):
        logs.setdefault(x, j)
        x = x * g % q
    return logs


@lru_cache(maxsize=32)
def characters(k: int) -> tuple[DirichletCharacter, ...]:
    """All phi(k) characters mod k, principal first."""
    if k < 1:
        raise DomainError("modulus must be positive")
    comps = _cyclic_components(k)
    units = [n for n in range(k) if math.gcd(n, k) == 1]
    # exponent vector of each unit with respect to the generators
    coords = {}
    for n in units:
        vec = []
        for q, g, order in comps:
            r = n % q
            if q % 8 == 0 and g == q - 1:
                # 2-power part: n = (-1)^a 5^b mod q
                vec.append(0 if r % 4 == 1 else 1)
            elif q % 8 == 0:
                r2 = r if r % 4 == 1 else (-r) % q
                vec.append(_discrete_logs(q, 5, order)[r2])
            else:
                vec.append(_discrete_logs(q, g, order)[r])
        coords[n] = vec
    orders = [c[2] for c in comps]
    out = []
    for idx in np.ndindex(*orders) if orders else [()]:
        vals = np.zeros(k, dtype=complex)
        for n in units:
            phase = sum(i * c / o for i, c, o in zip(idx, coords[n], orders))
            vals[n] = cmath.exp(2j * math.pi * phase)
        vals[np.abs(vals.imag) < 1e-15] = vals[np.abs(vals.imag) < 1e-15].real
        vals.real[np.abs(vals.real) < 1e-15] = 0.0
        if k == 1:
            vals[0] = 1.0
        out.append(DirichletCharacter(k, vals, f"chi_{k}_{len(out)}"))
    return tuple(out)


def principal_character(k: int = 1) -> DirichletCharacter:
    return characters(k)[0]


def character_mod4() -> DirichletCharacter:
    """The non-principal character mod 4: 1, 0, -1, 0 on n = 1, 2, 3, 4."""
    return DirichletCharacter(4, np.array([0, 1, 0, -1], dtype=complex), "chi_4")


def dirichlet_L(chi: DirichletCharacter, s: complex) -> complex:
    """L(s, chi) = k^{-s} sum_a chi(a) zeta(s, a/k).

    Re s > 1 for any chi; for non-principal chi the regularized Hurwitz
    values cancel the pole so Re s > 0 (including s = 1) is also allowed.
    """
    s = complex(s)
    k = chi.modulus
    if chi.is_principal:
        if s.real <= 1:
            raise DomainError("principal L-series needs Re s > 1")
        reg = False
    else:
        if s.real <= 0:
            raise DomainError("L-series continuation used on Re s > 0")
        reg = True
    acc = CompensatedSum(0j)
    for a in range(1, k + 1):
        c = chi.values[a % k]
        if c != 0:
            acc.add(c * hurwitz_zeta(s, a / k, regularize=reg))
    return cmath.exp(-s * math.log(k)) * acc.value


def dirichlet_L_euler(chi: DirichletCharacter, s: float, prime_bound: int) -> SeriesResult:
    """prod_{p<=P} (1 - chi(p) p^{-s})^{-1} with the same tail bound as zeta's."""
    if s <= 1:
        raise DomainError("Euler product needs s > 1")
    p = primes_up_to(prime_bound)
    c = chi(p)
    logs = -np.log(1 - c * p.astype(float) ** (-s))
    val = cmath.exp(complex(math.fsum(logs.real), math.fsum(logs.imag)))
    P = float(prime_bound)
    log_tail = P ** (1 - s) / ((s - 1) * (1 - P ** (-s)))
    return SeriesResult(val, abs(val) * math.expm1(log_tail), len(p), True)


def gauss_sum(chi: DirichletCharacter) -> complex:
    k = chi.modulus
    n = np.arange(1, k + 1)
    terms = chi(n) * np.exp(2j * np.pi * n / k)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def regularized_lambda(chi: DirichletCharacter, s: complex) -> complex:
    """Lambda(s, chi) = (pi/k)^{-(s+eps)/2} Gamma((s+eps)/2) L(s, chi)."""
    s = complex(s)
    eps = chi.parity
    w = 0.5 * (s + eps)
    return cmath.exp(-w * math.log(math.pi / chi.modulus) + loggamma(w)) * dirichlet_L(chi, s)


def functional_equation_residuals(chi: DirichletCharacter, s: complex) -> dict[str, float]:
    """Residuals of two forms of the Lambda functional equation at s.

    "standard": Lambda(s) = tau(chi)/(i^eps sqrt(k)) Lambda(1-s, conj chi);
    "unnormalized": Lambda(s) = (-1)^eps tau(chi) Lambda(1-s, conj chi).
    """
    if not chi.primitive:
        raise DomainError("functional equation needs a primitive character")
    eps = chi.parity
    lhs = regularized_lambda(chi, s)
    other = regularized_lambda(chi.conj(), 1 - complex(s))
    tau = gauss_sum(chi)
    standard = tau / ((1j**eps) * math.sqrt(chi.modulus)) * other
    unnorm = (-1) ** eps * tau * other
    return {"standard": abs(lhs - standard), "unnormalized": abs(lhs - unnorm)}


def mu_L_atoms(chi: DirichletCharacter, sigma: float, n_max: int) -> MuMeasure:
    """Atoms Lambda(n) chi(n) / (log n n^sigma) at log n, prime powers n <= n_max.

    Total mass tends to log L(sigma, chi); the omitted mass is at most
    n_max^{1-sigma}/(sigma - 1) in absolute value.
    """
    if sigma <= 1 or n_max < 2:
        raise DomainError("need sigma > 1 and n_max >= 2")
    lam = von_mangoldt(n_max)
    n = np.flatnonzero(lam)
    c = chi(n)
    mass = lam[n] * c / (np.log(n) * n.astype(float) ** sigma)
    keep = np.abs(mass) > 0
    n, mass = n[keep], mass[keep]
    if chi.is_real:
        mass = mass.real
    return MuMeasure(np.log(n.astype(float)), mass, kind="L",
                     params={"sigma": sigma, "n_max": n_max, "modulus": chi.modulus,
                             "tail_bound": n_max ** (1 - sigma) / (sigma - 1)})


def dirichlet_beta(s: float) -> float:
    """beta(s) = sum_{n>=0} (-1)^n (2n+1)^{-s}, s > 0, via Euler's transform."""
    if s <= 0:
        raise DomainError("beta is evaluated for s > 0")
    return euler_transform_alternating(lambda n: (2.0 * n + 1.0) ** (-s), 64).value.real


def beta_mellin_sides(s: float) -> tuple[float, float]:
    """(int_0^inf x^{s-1} sech(c x) dx, Gamma(s) beta(s)) with c = sqrt(pi/2).

    Their ratio is the normalization constant 2 c^{-s}.
    """
    c = math.sqrt(math.pi / 2)

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, np.power(np.where(x > 0, x, 1.0), s - 1), 0.0 if s > 1 else 1.0) \
            * 2.0 * np.exp(-c * x) / (1.0 + np.exp(-2 * c * x))

    lhs = float(integrate(f, 0.0, math.inf).value)
    return lhs, gamma_fn(s) * dirichlet_beta(s)


def beta_mellin_constant(s: float) -> float:
    return 2.0 * (math.pi / 2) ** (-s / 2)
