"""Sieve-backed arithmetic functions: primes, von Mangoldt, divisor sums."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=8)
def smallest_prime_factor(n_max: int) -> np.ndarray:
    """spf[n] for 0 <= n <= n_max (spf[0] = spf[1] = 0). Read-only array."""
    spf = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 2:
        for p in range(2, math.isqrt(n_max) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        rest = np.flatnonzero(spf == 0)
        rest = rest[rest >= 2]
        spf[rest] = rest
    spf.setflags(write=False)
    return spf


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    spf = smallest_prime_factor(int(n))
    idx = np.arange(len(spf))
    return idx[(spf == idx) & (idx >= 2)]


def prime_count(n: float) -> int:
    return len(primes_up_to(int(math.floor(n))))


@lru_cache(maxsize=8)
def von_mangoldt(n_max: int) -> np.ndarray:
    """Lambda(n) for 0 <= n <= n_max: log p if n = p^r, else 0."""
    spf = smallest_prime_factor(n_max)
    lam = np.zeros(n_max + 1)
    for n in range(2, n_max + 1):
        p = int(spf[n])
        m = n
        while m % p == 0:
            m //= p
        if m == 1:
            lam[n] = math.log(p)
    lam.setflags(write=False)
    return lam


@lru_cache(maxsize=8)
def sigma_minus1(n_max: int) -> np.ndarray:
    """sigma_{-1}(n) = sum_{d | n} 1/d for 0 <= n <= n_max (entry 0 unused)."""
    out = np.zeros(n_max + 1)
    for d in range(1, n_max + 1):
        out[d::d] += 1.0 / d
    out.setflags(write=False)
    return out
