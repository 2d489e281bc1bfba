r"""
Special functions
.................

Double-precision kernels for the closed forms used elsewhere in the
package:

    gamma, lgamma:
        $\Gamma(x)$ and $\ln|\Gamma(x)|$ from a Lanczos approximation
        (g = 7, nine coefficients) with the reflection formula below 1/2.

    laguerre(n, gamma, x):
        Generalized Laguerre polynomial $L_n^{(\gamma)}(x)$ by upward
        three-term recurrence.

    kummer_1f1(a, c, x):
        Confluent hypergeometric function ${}_1F_1(a; c; x)$.  Terminating
        parameters $a = -n$ give an exact $(n+1)$-term polynomial; the
        general case is a power series restricted to $x \le 30$.

    bessel_i(nu, x):
        Modified Bessel function of the first kind by its power series.

    hermite_odd(n, x):
        Physicists' Hermite polynomial $H_{2n+1}(x)$.

All functions accept a scalar or an array for ``x`` and return the same
shape.  Integer orders and parameters are scalars.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import AccuracyError, DomainError

__all__ = [
    "gamma",
    "lgamma",
    "pochhammer",
    "laguerre",
    "kummer_1f1",
    "bessel_i",
    "hermite",
    "hermite_odd",
]

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

SERIES_RTOL = 1e-13
KUMMER_MAX_X = 30.0
BESSEL_MAX_X = 60.0
_MAX_TERMS = 2000


def _lanczos_sum(x):
    # x is the shifted argument (x - 1 in the usual notation), x >= -0.5
    acc = np.full_like(x, _LANCZOS_COEF[0])
    for k, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc = acc + c / (x + k)
    return acc


def _check_poles(x):
    bad = (x <= 0) & (x == np.floor(x))
    if np.any(bad):
        raise DomainError(f"gamma has a pole at {x[bad].flat[0]!r}")


def lgamma(x):
    """Logarithm of ``|gamma(x)|``."""
    arr = np.asarray(x, dtype=float)
    _check_poles(arr)
    out = np.empty_like(arr)
    small = arr < 0.5
    if np.any(~small):
        xs = arr[~small] - 1.0
        t = xs + _LANCZOS_G + 0.5
        out[~small] = (
            _HALF_LOG_2PI + (xs + 0.5) * np.log(t) - t + np.log(_lanczos_sum(xs))
        )
    if np.any(small):
        xr = arr[small]
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        out[small] = (
            math.log(math.pi)
            - np.log(np.abs(np.sin(math.pi * xr)))
            - lgamma(1.0 - xr)
        )
    return out if out.ndim else float(out)


def gamma(x):
    """Gamma function on the real axis, excluding the non-positive integers.

    Relative accuracy is better than 1e-13 on [0.5, 50].
    """
    arr = np.asarray(x, dtype=float)
    _check_poles(arr)
    out = np.empty_like(arr)
    small = arr < 0.5
    if np.any(~small):
        xs = arr[~small] - 1.0
        t = xs + _LANCZOS_G + 0.5
        out[~small] = (
            math.sqrt(2.0 * math.pi)
            * np.exp((xs + 0.5) * np.log(t) - t)
            * _lanczos_sum(xs)
        )
    if np.any(small):
        xr = arr[small]
        out[small] = math.pi / (np.sin(math.pi * xr) * gamma(1.0 - xr))
    return out if out.ndim else float(out)


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n as an explicit product."""
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def laguerre(n: int, gam: float, x):
    """Generalized Laguerre polynomial L_n^(gam)(x) via the upward recurrence."""
    if n < 0:
        raise DomainError("laguerre order must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + gam - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + gam - x) * cur - (k + gam) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def _is_nonpositive_int(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def kummer_1f1(a: float, c: float, x):
    """Confluent hypergeometric function 1F1(a; c; x) for real arguments.

    Raises DomainError when c is a non-positive integer, and AccuracyError
    for a non-terminating series evaluated at x > 30.
    """
    if _is_nonpositive_int(c):
        raise DomainError(f"1F1 undefined for c = {c}")
    x = np.asarray(x, dtype=float)

    if _is_nonpositive_int(a):
        n = int(-a)
        terms = [np.ones_like(x)]
        for k in range(n):
            terms.append(terms[-1] * (a + k) * x / ((c + k) * (k + 1)))
        # largest terms (high k) first
        total = np.zeros_like(x)
        for t in reversed(terms):
            total = total + t
        return total if total.ndim else float(total)

    if np.any(np.abs(x) > KUMMER_MAX_X):
        raise AccuracyError(
            f"non-terminating 1F1 only supported for |x| <= {KUMMER_MAX_X}"
        )
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(_MAX_TERMS):
        term = term * (a + k) * x / ((c + k) * (k + 1))
        total = total + term
        if np.all(np.abs(term) <= SERIES_RTOL * np.abs(total)) and k > abs(a):
            break
    else:
        raise AccuracyError("1F1 series did not converge")
    return total if total.ndim else float(total)


def bessel_i(nu: float, x):
    """Modified Bessel function I_nu(x) for nu > -1 and 0 <= x <= 60."""
    if nu <= -1:
        raise DomainError("bessel_i requires nu > -1")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > BESSEL_MAX_X):
        raise DomainError(f"bessel_i requires 0 <= x <= {BESSEL_MAX_X}")
    half = 0.5 * x
    with np.errstate(divide="ignore"):
        log_half = np.log(half)
    # k = 0 term: (x/2)^nu / Gamma(nu + 1)
    if nu == 0:
        term = np.full_like(x, 1.0 / gamma(nu + 1.0))
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            term = np.exp(nu * log_half - lgamma(nu + 1.0))
    total = term.copy()
    q = half * half
    for k in range(_MAX_TERMS):
        with np.errstate(invalid="ignore"):
            term = term * q / ((k + 1) * (k + 1 + nu))
        total = total + term
        if np.all(term <= SERIES_RTOL * total):
            break
    if nu < 0:
        # the leading term diverges at x = 0
        total = np.where(x == 0, np.inf, total)
    return total if total.ndim else float(total)


def hermite(m: int, x):
    """Physicists' Hermite polynomial H_m(x)."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if m == 0:
        return prev if prev.ndim else float(prev)
    cur = 2.0 * x
    for k in range(1, m):
        prev, cur = cur, 2.0 * x * cur - 2.0 * k * prev
    return cur if cur.ndim else float(cur)


def hermite_odd(n: int, x):
    """H_{2n+1}(x), the odd physicists' Hermite polynomials."""
    if n < 0:
        raise DomainError("hermite_odd index must be non-negative")
    return hermite(2 * n + 1, x)
