"""Gamma and digamma for complex arguments.

Stirling's series after an upward recurrence shift, with the reflection
formula on Re z < 1/2. Self-contained; no lookup tables.
"""
from __future__ import annotations

import cmath
import math

from ..errors import PoleError

_B2K = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
        43867 / 798, -174611 / 330]
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_SHIFT_TO = 15.0


def _check_pole(z: complex):
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")


def _loggamma_right(z: complex) -> complex:
    """log Gamma(z) for Re z >= 1/2 (a branch; exp() of it is exact Gamma)."""
    prod = 1.0 + 0j
    while z.real < _SHIFT_TO or abs(z) < _SHIFT_TO:
        prod *= z
        z += 1.0
        if abs(prod) > 1e250:
            break
    w = 1.0 / z
    w2 = w * w
    series = 0j
    wk = w
    for k, b in enumerate(_B2K, start=1):
        series += b / (2 * k * (2 * k - 1)) * wk
        wk *= w2
    lg = (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series
    return lg - cmath.log(prod)


def loggamma(z: complex) -> complex:
    """log Gamma(z); real-valued for real z > 0."""
    zc = complex(z)
    _check_pole(zc)
    if zc.real >= 0.5:
        val = _loggamma_right(zc)
    else:
        val = cmath.log(math.pi / cmath.sin(math.pi * zc)) - _loggamma_right(1.0 - zc)
    if zc.imag == 0 and zc.real > 0:
        return complex(val.real, 0.0)
    return val


def gamma_fn(z):
    """Gamma(z) for complex z; returns float for real input."""
    zc = complex(z)
    _check_pole(zc)
    if zc.imag == 0 and zc.real < 171.0:
        # stdlib Gamma is correctly rounded to a few ulps on the real line
        return math.gamma(zc.real)
    if zc.real >= 0.5:
        val = cmath.exp(_loggamma_right(zc))
    else:
        val = math.pi / (cmath.sin(math.pi * zc) * cmath.exp(_loggamma_right(1.0 - zc)))
    if isinstance(z, (int, float)):
        return val.real
    return val


def digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z)."""
    zc = complex(z)
    _check_pole(zc)
    if zc.real < 0.5:
        val = digamma(1.0 - zc) - math.pi / cmath.tan(math.pi * zc)
        return val.real if isinstance(z, (int, float)) else val
    acc = 0j
    while abs(zc) < _SHIFT_TO or zc.real < _SHIFT_TO:
        acc -= 1.0 / zc
        zc += 1.0
    w = 1.0 / zc
    w2 = w * w
    series = 0j
    wk = w2
    for k, b in enumerate(_B2K, start=1):
        series += b / (2 * k) * wk
        wk *= w2
    val = acc + cmath.log(zc) - 0.5 * w - series
    return val.real if isinstance(z, (int, float)) else val
