"""Glauber, Barut-Girardello and Perelomov coherent states.

States live in coefficient space over the eigenbasis of the attached
system; the mass profile enters only through ``evaluate``, which maps
y-space functions to x-space with J^{1/2}(x) and s(x).

Coefficients, written with N = |z|/4 (BG) or r = |4z| (Perelomov):

    Glauber          e^{-|z|^2/4} z^k / sqrt(2^k k!)
    Barut-Girardello (|z|/4)^{kappa-1/2} I_{2kappa-1}(|z|/2)^{-1/2}
                     (z/4)^l / sqrt(Gamma(l+1) Gamma(l+2kappa))
    Perelomov        (1 - |4z|^2)^kappa (4z)^l
                     sqrt(Gamma(l+2kappa) / (Gamma(l+1) Gamma(2kappa)))
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun, yspace
from .errors import DomainError, UsageError
from .numerics import quad
from .xspace import PdmSystem

__all__ = [
    "CSKind",
    "CoherentState",
    "build",
    "eigen_residual",
    "evaluate",
    "overlap",
    "displacement_check",
    "perelomov_norm_check",
    "xi_to_z",
    "uncertainty_product",
]


class CSKind(str, enum.Enum):
    GLAUBER = "Glauber"
    BARUT_GIRARDELLO = "BarutGirardello"
    PERELOMOV = "Perelomov"


@dataclass(frozen=True)
class CoherentState:
    kind: CSKind
    z: complex
    coeffs: np.ndarray
    tail_bound: float
    system: PdmSystem

    @property
    def truncation_N(self) -> int:
        return len(self.coeffs) - 1

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def as_fock(self) -> yspace.FockVector:
        return yspace.FockVector(self.coeffs, self.system.params)


def _log_abs_coeff(kind: CSKind, kappa: float, absz: float, ell: np.ndarray) -> np.ndarray:
    """log |coefficient| without the global prefactor."""
    lg = specfun.lgamma
    if kind is CSKind.GLAUBER:
        with np.errstate(divide="ignore"):
            return ell * math.log(absz) - 0.5 * (ell * math.log(2.0) + lg(ell + 1.0))
    if kind is CSKind.BARUT_GIRARDELLO:
        with np.errstate(divide="ignore"):
            return (ell * (math.log(absz) - math.log(4.0))
                    - 0.5 * (lg(ell + 1.0) + lg(ell + 2.0 * kappa)))
    with np.errstate(divide="ignore"):
        return ell * (math.log(absz) + math.log(4.0)) + 0.5 * (
            lg(ell + 2.0 * kappa) - lg(ell + 1.0) - lg(2.0 * kappa))


def _term_ratio(kind: CSKind, kappa: float, absz: float, ell: int) -> float:
    """|c_{l+1}|^2 / |c_l|^2."""
    if kind is CSKind.GLAUBER:
        return absz**2 / (2.0 * (ell + 1))
    if kind is CSKind.BARUT_GIRARDELLO:
        return (absz / 4.0) ** 2 / ((ell + 1) * (ell + 2.0 * kappa))
    return (4.0 * absz) ** 2 * (ell + 2.0 * kappa) / (ell + 1)


def _log_prefactor(kind: CSKind, kappa: float, absz: float) -> float:
    if absz == 0.0:
        # limits at z = 0: BG -> Gamma(2 kappa)^{1/2}, others -> 1
        if kind is CSKind.BARUT_GIRARDELLO:
            return 0.5 * specfun.lgamma(2.0 * kappa)
        return 0.0
    if kind is CSKind.GLAUBER:
        return -0.25 * absz**2
    if kind is CSKind.BARUT_GIRARDELLO:
        # (N)^{kappa-1/2} I_{2kappa-1}(2N)^{-1/2} with N = |z|/4, written as
        # Gamma(2kappa)^{1/2} 0F1(; 2kappa; N^2)^{-1/2} so that the powers of N
        # cancel analytically instead of under- or overflowing
        return 0.5 * specfun.lgamma(2.0 * kappa) - 0.5 * math.log(
            _scaled_bessel_sum(kappa, absz / 4.0))
    return kappa * math.log1p(-(4.0 * absz) ** 2)


def _scaled_bessel_sum(kappa: float, half_x: float) -> float:
    """Gamma(nu+1) (x/2)^-nu I_nu(x) = sum_k (x/2)^2k Gamma(nu+1)/(k! Gamma(nu+k+1)), nu = 2kappa-1."""
    if half_x > 0.5 * specfun.BESSEL_MAX_X:
        raise DomainError(f"|z| = {4 * half_x:.6g} is beyond the Bessel series range")
    q = half_x * half_x
    term, total, k = 1.0, 1.0, 0
    while term > 1e-17 * total:
        term *= q / ((k + 1) * (k + 2.0 * kappa))
        total += term
        k += 1
    return total


def _truncation(kind: CSKind, kappa: float, absz: float, tolerance: float,
                nmax: int = 200000) -> tuple[int, float]:
    """Smallest N whose normalised squared tail is provably below tolerance,
    then doubled.  Returns (N, bound on the squared tail beyond N)."""
    if absz == 0.0:
        return 0, 0.0
    logpre = 2.0 * _log_prefactor(kind, kappa, absz)

    def tail(n):
        # geometric bound once the term ratio has dropped below one for good
        q = _term_ratio(kind, kappa, absz, n)
        if kind is CSKind.PERELOMOV:
            # ratio increases towards (4|z|)^2 < 1 when 2 kappa < 1; use the limit
            q = max(q, (4.0 * absz) ** 2)
        if q >= 1.0:
            return math.inf
        lead = 2.0 * _log_abs_coeff(kind, kappa, absz, np.array([n + 1.0]))[0] + logpre
        return math.exp(lead) / (1.0 - q)

    n = 1
    while tail(n) >= tolerance:
        n += 1
        if n > nmax:
            raise DomainError("coherent-state series needs too many terms")
    n_final = 2 * n
    return n_final, tail(n_final)


def build(kind, system: PdmSystem, z: complex, tolerance: float = 1e-15) -> CoherentState:
    """Coefficients of a coherent state, truncated once the tail is below tolerance."""
    kind = CSKind(kind)
    z = complex(z)
    if not 0.0 < tolerance < 1.0:
        raise UsageError("tolerance must lie in (0, 1)")
    if kind is CSKind.GLAUBER:
        if system.is_singular:
            raise UsageError("Glauber states attach to linear PDM systems")
        kappa = 0.0
    else:
        if not system.is_singular:
            raise UsageError(f"{kind.value} states need a singular PDM system")
        kappa = system.params.kappa
    absz = abs(z)
    if kind is CSKind.PERELOMOV and not 4.0 * absz < 1.0:
        raise DomainError(f"Perelomov states need |4z| < 1, got {4 * absz:.6g}")

    if absz == 0.0:
        return CoherentState(kind, z, np.ones(1, dtype=complex), 0.0, system)
    n, tail = _truncation(kind, kappa, absz, tolerance)
    ell = np.arange(n + 1, dtype=float)
    mag = np.exp(_log_abs_coeff(kind, kappa, absz, ell) + _log_prefactor(kind, kappa, absz))
    coeffs = mag * np.exp(1j * math.atan2(z.imag, z.real) * ell)
    return CoherentState(kind, z, coeffs, tail, system)


def eigen_residual(cs: CoherentState) -> float:
    """|| (lowering - z) coeffs || in coefficient space.

    The lowering operator is c- (BG) or a- (Glauber).  The top coefficient
    has no partner inside the truncation, so the last row is dropped.
    """
    if cs.kind is CSKind.PERELOMOV:
        raise UsageError("Perelomov states are not eigenstates of the lowering operator")
    vec = cs.as_fock()
    if cs.kind is CSKind.GLAUBER:
        low = yspace.apply_linear_ladder(vec, "-").coeffs
    else:
        low = yspace.apply_ladder(vec, "-").coeffs
    r = low - cs.z * cs.coeffs
    return float(np.linalg.norm(r[:-1]))


def evaluate(cs: CoherentState, x):
    """State in x-space: J^{1/2}(x) sum_l c_l phi_l(s(x))."""
    system = cs.system
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros(x.shape, dtype=complex)
    if system.is_singular:
        system.profile.check_domain(x)
        # at (or within rounding of) x_min every psi_n takes its edge limit
        inner = np.asarray(system.profile.bijection_s(x)) > 0.0
        if not np.all(inner):
            system.psi_n(0, x[~inner])
    else:
        inner = np.ones(x.shape, dtype=bool)
    if np.any(inner):
        block = system.psi_block(cs.truncation_N, x[inner])
        out[inner] = cs.coeffs @ block
    return out


def overlap(cs1: CoherentState, cs2: CoherentState) -> complex:
    """<cs1, cs2> from the coefficients (the basis is orthonormal)."""
    if cs1.kind is not cs2.kind or cs1.system != cs2.system:
        raise UsageError("overlap needs states of the same kind on the same system")
    n = min(len(cs1.coeffs), len(cs2.coeffs))
    return complex(np.vdot(cs1.coeffs[:n], cs2.coeffs[:n]))


def _expm(mat: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a Taylor series."""
    norm = np.linalg.norm(mat, 1)
    k = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    a = mat / 2.0**k
    out = np.eye(len(mat), dtype=complex)
    term = np.eye(len(mat), dtype=complex)
    for j in range(1, 30):
        term = term @ a / j
        out = out + term
        if np.linalg.norm(term, 1) < 1e-18:
            break
    for _ in range(k):
        out = out @ out
    return out


def displacement_check(system: PdmSystem, z: complex, N: int = 60) -> float:
    """Distance between exp((z a+ - conj(z) a-)/2) e_0 and the Glauber coefficients.

    The matrix is built in an N-dimensional linear basis; only the leading
    components, far from the truncation edge, are compared.
    """
    z = complex(z)
    k = np.arange(1, N)
    raise_ = np.zeros((N, N), dtype=complex)
    raise_[k, k - 1] = np.sqrt(2.0 * k)
    lower = raise_.T.copy()
    gen = 0.5 * (z * raise_ - np.conj(z) * lower)
    e0 = np.zeros(N, dtype=complex)
    e0[0] = 1.0
    disp = _expm(gen) @ e0
    cs = build(CSKind.GLAUBER, system, z)
    m = min(len(cs.coeffs), N // 2)
    ref = np.zeros(N, dtype=complex)
    ref[:m] = cs.coeffs[:m]
    return float(np.linalg.norm(disp[: N // 2] - ref[: N // 2]))


def perelomov_norm_check(params: yspace.SingularParams, z: complex) -> float:
    """|(1-|4z|^2)^{2 kappa} sum |4z|^{2l} (2 kappa)_l / l! - 1| by direct summation."""
    r2 = abs(4.0 * complex(z)) ** 2
    if not r2 < 1.0:
        raise DomainError("Perelomov states need |4z| < 1")
    two_k = 2.0 * params.kappa
    term = 1.0
    total = 1.0
    ell = 0
    while True:
        term *= r2 * (ell + two_k) / (ell + 1)
        total += term
        ell += 1
        q = r2 * (ell + two_k) / (ell + 1)
        if q < 1.0 and term * q / (1.0 - q) < 1e-16 * total:
            break
    return abs((1.0 - r2) ** two_k * total - 1.0)


def xi_to_z(xi: complex) -> complex:
    """Coset label xi -> z with 4z = (xi/|xi|) tanh|xi|."""
    xi = complex(xi)
    if xi == 0:
        return 0j
    return xi / abs(xi) * math.tanh(abs(xi)) / 4.0


def uncertainty_product(cs: CoherentState, half_width: float = None) -> float:
    """Delta Y * Delta P for a Glauber state of the constant-mass linear system.

    Moments are integrated by adaptive quadrature over y; the derivative of
    the state uses d/dy = (a- - a+)/2 in coefficient space.
    """
    if cs.kind is not CSKind.GLAUBER or cs.system.profile.kind.value != "ConstantMass":
        raise UsageError("uncertainty_product is defined for Glauber states of constant mass")
    vec = cs.as_fock()
    low = yspace.apply_linear_ladder(vec, "-").coeffs
    up = yspace.apply_linear_ladder(vec, "+").coeffs
    dcoef = np.zeros(len(up), dtype=complex)
    dcoef[: len(low)] += 0.5 * low
    dcoef -= 0.5 * up
    n = len(dcoef) - 1
    if half_width is None:
        half_width = abs(cs.z) + yspace.support_cutoff(n)

    def psi(y):
        return cs.coeffs @ yspace.linear_block(cs.truncation_N, y)

    def dpsi(y):
        return dcoef @ yspace.linear_block(n, y)

    lim = (-half_width, half_width)
    norm = quad(lambda y: np.abs(psi(y)) ** 2, *lim).real
    y1 = quad(lambda y: y * np.abs(psi(y)) ** 2, *lim).real / norm
    y2 = quad(lambda y: y * y * np.abs(psi(y)) ** 2, *lim).real / norm
    p1 = quad(lambda y: np.conj(psi(y)) * (-1j) * dpsi(y), *lim).real / norm
    p2 = quad(lambda y: np.abs(dpsi(y)) ** 2, *lim).real / norm
    return math.sqrt(max(y2 - y1 * y1, 0.0)) * math.sqrt(max(p2 - p1 * p1, 0.0))
