"""The constant-mass singular oscillator h = -d^2/dy^2 + y^2 + g0/(2 y^2).

Energies are in units of hbar*omega0/2 and lengths in oscillator units.
Eigenfunctions are carried with the phase (-1)^n relative to the
Laguerre form, i.e. every phi_n is positive at large y.  With that phase
the ladder operators act with positive coefficients,
``c(+/-) phi_n = gamma(+/-)(n) phi_(n +/- 1)``, and phi_n tends to the odd
Hermite functions as g0 -> 0.

Coefficient space (``FockVector``) is where the ladder and Casimir algebra
is exact; the grid operators at the bottom of the module only serve as an
independent check.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import specfun
from .errors import DomainError, UsageError
from .numerics import GridFunction, derivative, quad

__all__ = [
    "SingularParams",
    "params_from_g0",
    "energy",
    "phi_n",
    "phi_block",
    "odd_hermite_phi",
    "kummer_phi",
    "gamma_plus",
    "gamma_minus",
    "FockVector",
    "apply_ladder",
    "casimir_value",
    "linear_phi",
    "linear_block",
    "linear_lower",
    "linear_raise",
    "apply_linear_ladder",
    "support_cutoff",
    "apply_h",
    "apply_c",
]


@dataclass(frozen=True)
class SingularParams:
    """Coupling g0 with the derived lowest-weight data alpha and kappa."""

    g0: float
    alpha: float
    kappa: float

    @property
    def alpha_minus(self) -> float:
        return 1.0 - self.alpha

    @property
    def laguerre_order(self) -> float:
        return self.alpha - 0.5


def params_from_g0(g0: float) -> SingularParams:
    """alpha is the larger root of alpha^2 - alpha - g0/2 = 0."""
    g0 = float(g0)
    if not g0 > -0.5:
        raise DomainError(f"g0 = {g0} <= -1/2: no infinite point spectrum")
    alpha = 0.5 + math.sqrt(0.25 + 0.5 * g0)
    return SingularParams(g0=g0, alpha=alpha, kappa=0.5 * (0.5 + alpha))


def energy(params: SingularParams, n):
    """E_n = 4n + 2 alpha + 1 = 4(kappa + n)."""
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise DomainError("quantum number must be non-negative")
    out = 4.0 * n_arr + 2.0 * params.alpha + 1.0
    return out if out.ndim else float(out)


def _check_y(y):
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("phi_n is defined for y > 0")
    return y


def _log_norm(params: SingularParams, n: int) -> float:
    # log of (2 n! / Gamma(alpha + n + 1/2))^(1/2)
    return 0.5 * (math.log(2.0) + specfun.lgamma(n + 1.0)
                  - specfun.lgamma(params.alpha + n + 0.5))


def phi_n(params: SingularParams, n: int, y):
    """Normalised eigenfunction phi_n(y) on (0, inf)."""
    if n < 0:
        raise DomainError("quantum number must be non-negative")
    y = _check_y(y)
    if params.g0 == 0.0:
        return odd_hermite_phi(n, y)
    lag = specfun.laguerre(n, params.laguerre_order, y * y)
    out = ((-1) ** n * math.exp(_log_norm(params, n))
           * y**params.alpha * np.exp(-0.5 * y * y) * lag)
    return out if np.ndim(out) else float(out)


def phi_block(params: SingularParams, nmax: int, y) -> np.ndarray:
    """All of phi_0 .. phi_nmax at y, shape (nmax + 1, len(y))."""
    y = np.atleast_1d(_check_y(y))
    if params.g0 == 0.0:
        return np.array([odd_hermite_phi(n, y) for n in range(nmax + 1)])
    gam = params.laguerre_order
    t = y * y
    base = y**params.alpha * np.exp(-0.5 * t)
    out = np.empty((nmax + 1, len(y)))
    prev = np.ones_like(t)
    cur = 1.0 + gam - t
    for n in range(nmax + 1):
        if n == 0:
            lag = prev
        elif n == 1:
            lag = cur
        else:
            prev, cur = cur, ((2 * n - 1 + gam - t) * cur - (n - 1 + gam) * prev) / n
            lag = cur
        out[n] = (-1) ** n * math.exp(_log_norm(params, n)) * base * lag
    return out


@functools.lru_cache(maxsize=None)
def odd_hermite_norm(n: int) -> float:
    """Normalisation of e^{-y^2/2} H_{2n+1}(y) on the half-line, by quadrature."""
    m = 2 * n + 1
    # scale out 2^m m! so the integrand stays O(1)
    scale = math.exp(-0.5 * (m * math.log(2.0) + math.lgamma(m + 1)))
    ymax = support_cutoff(n, 0.0)
    val = quad(lambda y: (scale * specfun.hermite(m, y)) ** 2 * np.exp(-y * y),
               0.0, ymax, abs_tol=1e-14, rel_tol=1e-14)
    return scale / math.sqrt(val)


def odd_hermite_phi(n: int, y):
    """g0 = 0 branch: C_n e^{-y^2/2} H_{2n+1}(y), C_n fixed by quadrature."""
    y = np.asarray(y, dtype=float)
    out = odd_hermite_norm(n) * np.exp(-0.5 * y * y) * specfun.hermite_odd(n, y)
    return out if np.ndim(out) else float(out)


def kummer_phi(params: SingularParams, E: float, lam1: float, lam2: float, y):
    """General solution of (h - E) phi = 0 built from the two Kummer branches.

    lam1 multiplies y^alpha e^{-y^2/2} 1F1(a, c, y^2) and lam2 multiplies
    y^(1-alpha) e^{-y^2/2} 1F1(a~, c~, y^2).
    """
    y = _check_y(y)
    al = params.alpha
    a, c = (2 * al + 1 - E) / 4.0, (2 * al + 1) / 2.0
    at, ct = (3 - 2 * al - E) / 4.0, (3 - 2 * al) / 2.0
    t = y * y
    out = np.zeros_like(y)
    if lam1 != 0.0:
        out = out + lam1 * y**al * np.exp(-0.5 * t) * specfun.kummer_1f1(a, c, t)
    if lam2 != 0.0:
        if ct <= 0 and float(ct).is_integer():
            raise DomainError(f"degenerate second branch: c~ = {ct}")
        out = out + lam2 * y ** (1 - al) * np.exp(-0.5 * t) * specfun.kummer_1f1(at, ct, t)
    return out if np.ndim(out) else float(out)


def kummer_normalisation(params: SingularParams, n: int) -> float:
    """lam1 that turns the terminating Kummer branch into phi_n."""
    return ((-1) ** n * math.exp(_log_norm(params, n))
            * specfun.pochhammer(params.alpha + 0.5, n) / math.factorial(n))


def gamma_plus(params: SingularParams, n: int) -> float:
    return 4.0 * math.sqrt((n + 1) * (n + 2.0 * params.kappa))


def gamma_minus(params: SingularParams, n: int) -> float:
    if n <= 0:
        return 0.0
    return 4.0 * math.sqrt(n * (n - 1 + 2.0 * params.kappa))


def casimir_value(params: SingularParams) -> float:
    return 3.0 / 16.0 - params.g0 / 8.0


@dataclass(frozen=True)
class FockVector:
    """Finite expansion over phi_n; ``params`` is None for the linear basis."""

    coeffs: np.ndarray
    params: Optional[SingularParams] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))

    @property
    def is_linear(self) -> bool:
        return self.params is None

    @classmethod
    def unit(cls, n: int, params: Optional[SingularParams] = None, size: Optional[int] = None):
        c = np.zeros(max(size or 0, n + 1), dtype=complex)
        c[n] = 1.0
        return cls(c, params)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))


def apply_ladder(vec: FockVector, direction: str) -> FockVector:
    """Exact action of c+ or c- on a singular-basis vector.

    Raising grows the coefficient array by one so nothing is truncated.
    """
    if vec.params is None:
        raise UsageError("apply_ladder needs a singular-basis vector")
    p = vec.params
    c = vec.coeffs
    if direction in ("+", "plus", "raise"):
        g = np.array([gamma_plus(p, n) for n in range(len(c))])
        out = np.zeros(len(c) + 1, dtype=complex)
        out[1:] = g * c
    elif direction in ("-", "minus", "lower"):
        g = np.array([gamma_minus(p, n) for n in range(len(c))])
        out = np.zeros(len(c), dtype=complex)
        out[:-1] = g[1:] * c[1:]
    else:
        raise UsageError(f"unknown ladder direction {direction!r}")
    return FockVector(out, p)


def apply_energy(vec: FockVector) -> FockVector:
    """h acting diagonally in coefficient space."""
    c = vec.coeffs
    if vec.is_linear:
        return FockVector((2.0 * np.arange(len(c)) + 1.0) * c, None)
    return FockVector(energy(vec.params, np.arange(len(c))) * c, vec.params)


# -- linear oscillator --------------------------------------------------------

def linear_block(kmax: int, y) -> np.ndarray:
    """Hermite functions phi_0..phi_kmax of -d^2/dy^2 + y^2 (E = 2k + 1)."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty((kmax + 1, len(y)))
    out[0] = math.pi**-0.25 * np.exp(-0.5 * y * y)
    if kmax >= 1:
        out[1] = math.sqrt(2.0) * y * out[0]
    for k in range(1, kmax):
        out[k + 1] = (math.sqrt(2.0 / (k + 1)) * y * out[k]
                      - math.sqrt(k / (k + 1.0)) * out[k - 1])
    return out


def linear_phi(k: int, y):
    if k < 0:
        raise DomainError("quantum number must be non-negative")
    out = linear_block(k, y)[k]
    return out if np.ndim(y) else float(out[0])


def linear_lower(k: int) -> float:
    """a- phi_k = sqrt(2k) phi_(k-1)."""
    return math.sqrt(2.0 * k)


def linear_raise(k: int) -> float:
    """a+ phi_k = sqrt(2(k+1)) phi_(k+1)."""
    return math.sqrt(2.0 * (k + 1))


def apply_linear_ladder(vec: FockVector, direction: str) -> FockVector:
    c = vec.coeffs
    if direction in ("+", "plus", "raise"):
        out = np.zeros(len(c) + 1, dtype=complex)
        out[1:] = np.sqrt(2.0 * np.arange(1, len(c) + 1)) * c
    elif direction in ("-", "minus", "lower"):
        out = np.zeros(len(c), dtype=complex)
        out[:-1] = np.sqrt(2.0 * np.arange(1, len(c))) * c[1:]
    else:
        raise UsageError(f"unknown ladder direction {direction!r}")
    return FockVector(out, None)


# -- grid verification --------------------------------------------------------

def support_cutoff(nmax: int, g0: float = 0.0, eps: float = 1e-12) -> float:
    """A y beyond which |phi_n| < eps for every n <= nmax (crude WKB bound)."""
    e = 4.0 * nmax + 2.0 * (0.5 + math.sqrt(0.25 + 0.5 * max(g0, 0.0))) + 1.0
    turning = math.sqrt(e)
    # Gaussian tail beyond the turning point, padded generously
    return turning + math.sqrt(2.0 * math.log(1.0 / eps)) + 1.0


def apply_h(params: SingularParams, f: GridFunction) -> GridFunction:
    """Grid action of -d^2/dy^2 + y^2 + g0/(2y^2)."""
    y = f.x
    d2 = derivative(f, 2).values
    return f.with_values(-d2 + (y * y + params.g0 / (2.0 * y * y)) * f.values)


def apply_c(params: SingularParams, f: GridFunction, direction: str) -> GridFunction:
    """Grid action of c(+/-) = (y -/+ d/dy)^2 - g0/(2y^2), by nested first derivatives."""
    if direction in ("+", "plus", "raise"):
        sgn = -1.0
    elif direction in ("-", "minus", "lower"):
        sgn = 1.0
    else:
        raise UsageError(f"unknown ladder direction {direction!r}")
    y = f.x

    def a(g):
        return g.with_values(sgn * derivative(g, 1).values + y * g.values)

    out = a(a(f))
    return out.with_values(out.values - params.g0 / (2.0 * y * y) * f.values)
