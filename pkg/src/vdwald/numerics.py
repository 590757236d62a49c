"""Foundational real/complex numerics.

Adaptive Gauss-Kronrod quadrature on finite and infinite intervals,
compensated series summation, Brent root finding and a few summation
helpers (Hurwitz zeta, Euler transform) used for truncation tails.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import BracketError, DomainError

__all__ = [
    "Tolerance",
    "QuadratureResult",
    "SeriesResult",
    "CompensatedSum",
    "sum_series",
    "integrate",
    "find_root",
    "hurwitz_zeta",
    "euler_transform_alternating",
]

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_terms: int = 10**8
    max_subdivisions: int = 500

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise DomainError("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise DomainError("at least one of abs_tol, rel_tol must be positive")
        if self.max_terms < 1 or self.max_subdivisions < 1:
            raise DomainError("budgets must be positive")

    def target(self, scale: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(scale))


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class QuadratureResult:
    value: complex | float
    error_estimate: float
    evaluations: int
    converged: bool = True


@dataclass(frozen=True)
class SeriesResult:
    value: complex | float
    error_bound: float
    terms: int
    converged: bool


class CompensatedSum:
    """Neumaier (improved Kahan-Babuska) accumulator for real or complex terms."""

    __slots__ = ("_s", "_c")

    def __init__(self, start: complex | float = 0.0):
        self._s = start
        self._c = 0.0 * start

    def add(self, x):
        if isinstance(x, complex) or isinstance(self._s, complex):
            x = complex(x)
            self._s = complex(self._s)
            re, cre = _neumaier_step(self._s.real, complex(self._c).real, x.real)
            im, cim = _neumaier_step(self._s.imag, complex(self._c).imag, x.imag)
            self._s, self._c = complex(re, im), complex(cre, cim)
        else:
            self._s, self._c = _neumaier_step(self._s, self._c, x)

    def add_many(self, xs: np.ndarray):
        """Add an array exactly-rounded (``math.fsum``) then compensate once."""
        xs = np.asarray(xs)
        if np.iscomplexobj(xs):
            self.add(complex(math.fsum(xs.real), math.fsum(xs.imag)))
        else:
            self.add(math.fsum(xs))

    @property
    def value(self):
        return self._s + self._c


def _neumaier_step(s: float, c: float, x: float) -> tuple[float, float]:
    t = s + x
    if abs(s) >= abs(x):
        c += (s - t) + x
    else:
        c += (x - t) + s
    return t, c


def sum_series(
    term: Callable,
    tol: Tolerance = DEFAULT_TOL,
    tail_bound: Callable[[int], float] | None = None,
    start: int = 1,
    vectorized: bool = False,
    patience: int = 4,
) -> SeriesResult:
    """Sum ``term(k)`` for ``k = start, start+1, ...`` with compensated accumulation.

    With ``tail_bound`` (a function of the last index included, bounding the
    absolute remainder), summation stops as soon as the bound meets the
    tolerance target and the returned ``error_bound`` is that bound. Without
    it, summation stops after ``patience`` consecutive terms below the target
    and the error bound is only heuristic (the last term magnitude).

    ``vectorized=True`` means ``term`` accepts an integer ndarray; terms are
    then consumed in geometrically growing chunks.

    If ``tol.max_terms`` is exhausted, the partial sum is returned with
    ``converged=False``.
    """
    acc = CompensatedSum()
    k = start
    used = 0
    if vectorized:
        chunk = 16
        while used < tol.max_terms:
            n = min(chunk, tol.max_terms - used)
            idx = np.arange(k, k + n)
            vals = np.asarray(term(idx))
            acc.add_many(vals)
            k += n
            used += n
            s = acc.value
            if tail_bound is not None:
                bound = float(tail_bound(k - 1))
                if bound <= tol.target(abs(s)):
                    return SeriesResult(s, bound, used, True)
            else:
                last = np.abs(vals[-patience:])
                if len(last) >= patience and np.all(last <= tol.target(abs(s))):
                    return SeriesResult(s, float(last[-1]), used, True)
            chunk = min(chunk * 2, 1 << 20)
        bound = float(tail_bound(k - 1)) if tail_bound is not None else math.inf
        return SeriesResult(acc.value, bound, used, False)

    quiet = 0
    last_mag = math.inf
    while used < tol.max_terms:
        t = term(k)
        acc.add(t)
        used += 1
        s = acc.value
        if tail_bound is not None:
            bound = float(tail_bound(k))
            if bound <= tol.target(abs(s)):
                return SeriesResult(s, bound, used, True)
        else:
            last_mag = abs(t)
            quiet = quiet + 1 if last_mag <= tol.target(abs(s)) else 0
            if quiet >= patience:
                return SeriesResult(s, last_mag, used, True)
        k += 1
    bound = float(tail_bound(k)) if tail_bound is not None else last_mag
    return SeriesResult(acc.value, bound, used, False)


# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
# Full symmetric node set on [-1, 1] and matching weights.
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5]] = _WG[:3]
_GW[[9, 11, 13]] = _WG[2::-1]
_GW[7] = _WG[3]


def _gk15(g: Callable[[np.ndarray], np.ndarray], lo: float, hi: float):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    fv = g(mid + half * _NODES)
    resk = np.dot(_KW, fv) * half
    resg = np.dot(_GW, fv) * half
    reskh = np.dot(_KW, fv) * 0.5
    resabs = np.dot(_KW, np.abs(fv)) * abs(half)
    resasc = np.dot(_KW, np.abs(fv - reskh)) * abs(half)
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > np.finfo(float).tiny / (50 * EPS):
        err = max(50 * EPS * resabs, err)
    if not np.isfinite(err):
        err = math.inf
    return resk, float(err)


def _vectorize(f: Callable, vectorized: bool) -> Callable[[np.ndarray], np.ndarray]:
    if vectorized:
        return lambda x: np.asarray(f(x))
    return lambda x: np.array([f(float(xi)) for xi in x])


def _pieces(a: float, b: float, points: Iterable[float]):
    """Split [a, b] at break points; map each piece to a finite parameter range.

    Semi-infinite pieces use x = c + t/(1-t) (or its mirror) on t in [0, 1).
    """
    inner = sorted(p for p in points if a < p < b)
    if math.isinf(a) and math.isinf(b) and not inner:
        inner = [0.0]
    edges = [a, *inner, b]
    out = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if math.isinf(lo) and math.isinf(hi):  # pragma: no cover - excluded above
            raise DomainError("unsplit doubly-infinite piece")
        if math.isinf(hi):
            c = lo

            def mapper(t, c=c):
                u = 1.0 - t
                return c + t / u, 1.0 / (u * u)

            out.append((mapper, 0.0, 1.0))
        elif math.isinf(lo):
            c = hi

            def mapper(t, c=c):
                u = 1.0 - t
                return c - t / u, 1.0 / (u * u)

            out.append((mapper, 0.0, 1.0))
        else:
            out.append((None, lo, hi))
    return out


def integrate(
    f: Callable,
    a: float,
    b: float,
    tol: Tolerance = DEFAULT_TOL,
    points: Sequence[float] = (),
    vectorized: bool = True,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod (7/15) quadrature of ``f`` over ``[a, b]``.

    Either end may be infinite. Semi-infinite pieces are mapped onto [0, 1)
    with x = a + t/(1-t); a doubly infinite range is split at 0 (or at the
    first break point). ``points`` marks kinks or singular locations that
    should become subinterval edges. Subdivision is global: the interval
    with the largest error estimate is bisected until the summed estimate
    meets ``tol.target(|value|)`` or ``tol.max_subdivisions`` is reached, in
    which case ``converged`` is False.

    With ``vectorized=True`` (default) ``f`` must accept an ndarray.
    """
    if a == b:
        return QuadratureResult(0.0, 0.0, 0, True)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    fv = _vectorize(f, vectorized)
    heap = []
    total = 0.0
    total_err = 0.0
    evals = 0
    counter = 0
    funcs = []
    for mapper, lo, hi in _pieces(a, b, points):
        if mapper is None:
            g = fv
        else:
            def g(t, mapper=mapper):
                x, jac = mapper(t)
                return fv(x) * jac
        funcs.append(g)
        val, err = _gk15(g, lo, hi)
        evals += 15
        total += val
        total_err += err
        heapq.heappush(heap, (-err, counter, len(funcs) - 1, lo, hi, val, err))
        counter += 1
    intervals = len(heap)
    while total_err > tol.target(abs(total)):
        if intervals >= tol.max_subdivisions:
            return QuadratureResult(sign * total, total_err, evals, False)
        _, _, gi, lo, hi, val, err = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            # interval cannot be split further in floating point
            return QuadratureResult(sign * total, total_err, evals, False)
        g = funcs[gi]
        v1, e1 = _gk15(g, lo, mid)
        v2, e2 = _gk15(g, mid, hi)
        evals += 30
        total += (v1 + v2) - val
        total_err += (e1 + e2) - err
        heapq.heappush(heap, (-e1, counter, gi, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, counter + 1, gi, mid, hi, v2, e2))
        counter += 2
        intervals += 1
    # re-sum from the leaves to shed drift accumulated by incremental updates
    leaves = [item[5] for item in heap]
    if any(isinstance(v, complex) or np.iscomplexobj(v) for v in leaves):
        total = complex(math.fsum(complex(v).real for v in leaves),
                        math.fsum(complex(v).imag for v in leaves))
    else:
        total = math.fsum(float(v) for v in leaves)
    total_err = math.fsum(item[6] for item in heap)
    return QuadratureResult(sign * total, total_err, evals, True)


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
    max_iter: int = 200,
) -> float:
    """Brent's method on a sign-changing bracket.

    Every step either interpolates (secant / inverse quadratic) or bisects,
    so the bracket always shrinks; the returned point lies in a bracket of
    width at most ``tol.abs_tol + 4 eps |x|``. Deterministic.
    """
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if not (math.isfinite(fa) and math.isfinite(fb)) or (fa > 0) == (fb > 0):
        raise BracketError(f"f({a})={fa} and f({b})={fb} do not bracket a root")
    xtol = tol.abs_tol
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * EPS * abs(b) + 0.5 * xtol
        m = 0.5 * (c - b)
        if abs(m) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, m)
        fb = f(b)
    return b


# Bernoulli numbers B_2, B_4, ..., B_30
_BERNOULLI = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
    43867 / 798, -174611 / 330, 854513 / 138, -236364091 / 2730, 8553103 / 6,
    -23749461029 / 870, 8615841276005 / 14322,
]


def _expm1_over(z: complex) -> complex:
    """(e^z - 1)/z, finite at z = 0."""
    if abs(z) < 1e-5:
        return 1.0 + z / 2.0 + z * z / 6.0
    return (np.exp(z) - 1.0) / z


def hurwitz_zeta(s: complex, q: float, regularize: bool = False) -> complex:
    """Hurwitz zeta sum_{k>=0} (q+k)^-s by Euler-Maclaurin.

    Valid for any complex ``s != 1`` (analytic continuation) and real ``q > 0``.
    With ``regularize=True`` returns zeta(s, q) - 1/(s-1), which is entire in
    s; differences over q of the regularized value are what Dirichlet
    L-series need at s = 1.
    """
    if q <= 0:
        raise DomainError("q must be positive")
    s = complex(s)
    if s == 1 and not regularize:
        raise DomainError("pole of the Hurwitz zeta function at s = 1")
    shift = max(0, math.ceil(20.0 + abs(s) - q))
    head = CompensatedSum(0j)
    if shift:
        head.add_many(np.power(q + np.arange(shift), -s))
    n = q + shift
    log_n = math.log(n)
    if regularize:
        tail = -log_n * _expm1_over((1.0 - s) * log_n)
    else:
        tail = n ** (1.0 - s) / (s - 1.0)
    tail += 0.5 * n ** (-s)
    # rising factorial s(s+1)...(s+2j-2) / (2j)! * n^{-s-2j+1}
    fac = s / 2.0
    power = n ** (-s - 1.0)
    for j, b2j in enumerate(_BERNOULLI, start=1):
        term = b2j * fac * power
        tail += term
        if abs(term) < 1e-18 * (abs(tail) + 1e-300):
            break
        fac *= (s + 2 * j - 1) * (s + 2 * j) / ((2 * j + 1) * (2 * j + 2))
        power /= n * n
    head.add(tail)
    return head.value


def euler_transform_alternating(
    a: Callable[[np.ndarray], np.ndarray], n_terms: int = 64
) -> SeriesResult:
    """Sum of sum_{k>=0} (-1)^k a(k) via Euler's transform.

    Uses sum_n (-1)^n Delta^n a(0) / 2^{n+1}; ``a`` takes an integer ndarray.
    The error bound reported is the magnitude of the last transformed term,
    which is heuristic but sharp for totally monotone sequences.
    """
    vals = np.asarray(a(np.arange(n_terms + 1)), dtype=complex)
    acc = CompensatedSum(0j)
    diff = vals
    last = math.inf
    scale = 0.5
    for n in range(n_terms + 1):
        t = ((-1) ** n) * diff[0] * scale
        acc.add(complex(t))
        last = abs(t)
        diff = np.diff(diff)
        scale *= 0.5
        if last < 1e-17 * abs(acc.value) and n > 4:
            break
    return SeriesResult(acc.value, last, n + 1, last < 1e-12 * max(1.0, abs(acc.value)))
