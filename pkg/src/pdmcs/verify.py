"""Verification reports and the check suite.

Every check returns a ``VerificationReport`` whose residual is compared
against a tolerance; ``run_suite`` runs a selection in a fixed order.
Grid residuals are taken on graded piecewise-uniform grids and exclude
the three rows nearest each outer boundary.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import coherent, yspace
from .errors import DomainError, UsageError
from .massmap import MassProfile
from .numerics import PatchGrid, derivative, inner_product, quad  # noqa: F401  (re-exported)

__all__ = [
    "VerificationReport",
    "SuiteConfig",
    "DEFAULT_TOLERANCES",
    "CHECK_IDS",
    "run_suite",
    "format_reports",
    "summary",
    "inner_product",
    "derivative",
]


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    residual: float
    tolerance: float
    context: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def line(self) -> str:
        return f"{self.check_id},{self.residual!r},{self.tolerance!r},{str(self.passed).lower()}"


DEFAULT_TOLERANCES = {
    "spectrum": 1e-12,
    "casimir": 1e-12,
    "ladder_identity": 1e-10,
    "ladder_coeff": 0.0,
    "mdnt_ode": 1e-9,
    "riccati": 1e-9,
    "partner_shift": 1e-9,
    "potential_closed_form": 1e-12,
    "mass_profiles": 0.0,
    "eigen_y": 1e-4,
    "eigen_x": 1e-4,
    "ladder_y": 1e-4,
    "ladder_x": 1e-3,
    "commutator": 1e-3,
    "factorisation": 1e-4,
    "orthonormality": 1e-8,
    "norm_x": 1e-10,
    "bg_norm": 1e-10,
    "bg_eigen": 1e-8,
    "bg_profile_independence": 0.0,
    "bg_evaluate_norm": 1e-8,
    "perelomov_norm": 1e-10,
    "perelomov_domain": 0.0,
    "glauber_overlap": 1e-8,
    "glauber_displacement": 1e-8,
    "glauber_uncertainty": 1e-6,
    "g0_limit": 1e-3,
    "constant_mass": 0.0,
    "convergence_order": 1.0 / 12.0,
}


@dataclass(frozen=True)
class SuiteConfig:
    g0: float = 2.0
    lam: float = 1.0
    nmax: int = 5
    per_patch: int = 512
    min_points: int = 4000
    bg_z: tuple = (0.5, 2.0, 4 + 3j)
    bg_g0: tuple = (0.5, 2.0)
    perelomov_r: tuple = (0.0, 0.25, 0.5, 0.8, 0.95)
    glauber_z: tuple = (0.0, 1.0, 1 + 1j, 2j, -1.5 + 0.5j)
    tolerances: dict = field(default_factory=dict)

    def tolerance(self, check_id: str) -> float:
        return float(self.tolerances.get(check_id, DEFAULT_TOLERANCES[check_id]))


def _report(cfg, check_id, residual, **context) -> VerificationReport:
    return VerificationReport(check_id, float(residual), cfg.tolerance(check_id), context)


def _system(pid, cfg, **kw):
    from .xspace import make_system

    return make_system(pid, g0=kw.pop("g0", cfg.g0), lam=cfg.lam, **kw)


# -- grid helpers ----------------------------------------------------------------

def grid_residual(system, n: int, op: Callable, target: Callable, *, per_patch=512,
                  min_points=4000, nmax=None) -> tuple[float, int]:
    """||op(psi_n) - target|| / ||target or psi_n|| on the system's residual grid.

    ``op`` maps a GridFunction to a GridFunction; ``target(x)`` gives the
    expected values.  Returns the relative residual and the grid size.
    """
    grid = system.residual_grid(n if nmax is None else nmax, per_patch=per_patch,
                                min_points=min_points)
    psi = grid.sample(lambda x: system.psi_n(n, x))
    out = grid.owned([op(g) for g in psi])
    x = grid.points
    want = target(x)
    scale = max(grid.norm(want), grid.norm(grid.owned(psi)))
    return grid.norm(out - want) / scale, grid.size


def _eigen_y(params, n, per_patch=512, min_points=4000):
    from .xspace import PdmSystem

    sing = PdmSystem(MassProfile.constant(), params, "Sing")
    e = yspace.energy(params, n)
    return grid_residual(sing, n, lambda g: yspace.apply_h(params, g),
                         lambda y: e * yspace.phi_n(params, n, y),
                         per_patch=per_patch, min_points=min_points)


# -- individual checks --------------------------------------------------------------

def check_spectrum(cfg):
    n = np.arange(0, 21)
    e0 = yspace.energy(yspace.params_from_g0(0.0), n)
    e2 = yspace.energy(yspace.params_from_g0(2.0), n)
    r = max(float(np.max(np.abs(e0 - (4 * n + 3)))),
            float(np.max(np.abs(e2 - (4 * n + 2 + math.sqrt(5.0))))))
    return [_report(cfg, "spectrum", r, n="0..20", g0="0,2")]


def check_casimir(cfg):
    p = yspace.params_from_g0(cfg.g0)
    target = 3.0 / 16.0 - cfg.g0 / 8.0
    worst = abs(p.kappa * (1.0 - p.kappa) - target)
    for n in range(21):
        # (1/2){k-, k+} - k0^2 on e_n with k = c/4, k0 = h/4
        up_down = yspace.gamma_minus(p, n + 1) * yspace.gamma_plus(p, n) / 16.0
        down_up = yspace.gamma_plus(p, n - 1) * yspace.gamma_minus(p, n) / 16.0 if n else 0.0
        val = 0.5 * (up_down + down_up) - (yspace.energy(p, n) / 4.0) ** 2
        worst = max(worst, abs(val - target), abs(yspace.casimir_value(p) - target))
    return [_report(cfg, "casimir", worst, g0=cfg.g0, n="0..20")]


def check_ladder_identity(cfg):
    out = []
    for g0 in sorted({0.0, 0.5, cfg.g0}):
        p = yspace.params_from_g0(g0)
        worst = 0.0
        for n in range(21):
            e = yspace.energy(p, n)
            want = e * e + 4 * e + 3 - 2 * g0
            got = yspace.gamma_plus(p, n) * yspace.gamma_minus(p, n + 1)
            worst = max(worst, abs(got - want) / abs(want))
        out.append(_report(cfg, "ladder_identity", worst, g0=g0, n="0..20"))
    return out


def check_ladder_coeff(cfg):
    p = yspace.params_from_g0(cfg.g0)
    worst = 0.0
    for n in range(21):
        e = yspace.FockVector.unit(n, p)
        up = yspace.apply_ladder(e, "+").coeffs
        want = np.zeros(n + 2)
        want[n + 1] = yspace.gamma_plus(p, n)
        worst = max(worst, float(np.max(np.abs(up - want))))
        down = yspace.apply_ladder(e, "-").coeffs
        want = np.zeros(n + 1)
        if n:
            want[n - 1] = yspace.gamma_minus(p, n)
        worst = max(worst, float(np.max(np.abs(down - want))))
    return [_report(cfg, "ladder_coeff", worst, g0=cfg.g0, n="0..20")]


def check_mdnt_ode(cfg):
    out = []
    for order in range(1, 6):
        prof = MassProfile.mdntn(n=order, x0=1.0, lam=cfg.lam)
        x = np.linspace(0.0, 20.0, 201)
        c1, c2 = prof.mdnt_coefficients()
        m, m1, m2 = prof.mass_derivatives(x)
        scale = np.abs(c1 * m * m2) + np.abs(c2 * m1 * m1)
        r = float(np.max(np.abs(prof.mdnt_residual(x)) / scale))
        out.append(_report(cfg, "mdnt_ode", r, n=order, profile=prof.describe()))
    return out


def _linear_profiles(cfg):
    return (MassProfile.constant(), MassProfile.regular(cfg.lam),
            MassProfile.mdnt0(1.0, cfg.lam))


def check_riccati(cfg):
    from .xspace import riccati_residual

    out = []
    for prof in _linear_profiles(cfg):
        x = prof.inverse_s(np.linspace(-4.0, 4.0, 41))
        r = float(np.max(np.abs(riccati_residual(prof, x))))
        out.append(_report(cfg, "riccati", r, profile=prof.describe()))
    return out


def check_partner_shift(cfg):
    from .xspace import PdmSystem, partner_shift_check

    out = []
    for prof in _linear_profiles(cfg):
        rep = partner_shift_check(PdmSystem(prof, None, "LinearPdm"), cfg.tolerance("partner_shift"))
        out.append(rep)
    return out


def check_potential_closed_form(cfg):
    from .xspace import POTENTIAL_IDS

    out = []
    for pid in POTENTIAL_IDS:
        if pid == "LinearPdm":
            continue
        g0 = 2.0 if pid == "V7" else cfg.g0
        sys_ = _system(pid, cfg, g0=g0)
        x = sys_.sample_points(41)
        a = sys_.potential(x)
        b = sys_.closed_form_potential(x)
        r = float(np.max(np.abs(a - b) / np.abs(b)))
        out.append(_report(cfg, "potential_closed_form", r, potential=pid, g0=g0))
    return out


def check_mass_profiles(cfg):
    profiles = [MassProfile.mdnt0(1.0, cfg.lam), MassProfile.mdntn(1, 0.0, cfg.lam),
                MassProfile.mdntn(2, 0.0, cfg.lam), MassProfile.regular(cfg.lam),
                MassProfile.exponential(1.0, cfg.lam), MassProfile.exponential(0.0, cfg.lam),
                MassProfile.exponential(2.0, cfg.lam), MassProfile.constant()]
    out = []
    for prof in profiles:
        rep = prof.validate()
        out.append(VerificationReport("mass_profiles", rep.residual,
                                      cfg.tolerance("mass_profiles"), rep.context))
    return out


def check_eigen_y(cfg):
    p = yspace.params_from_g0(cfg.g0)
    out = []
    for n in range(cfg.nmax + 1):
        r, size = _eigen_y(p, n, cfg.per_patch, cfg.min_points)
        out.append(_report(cfg, "eigen_y", r, g0=cfg.g0, n=n, grid=size))
    return out


EIGEN_X_POTENTIALS = ("V1", "V2", "V3", "V5")


def check_eigen_x(cfg):
    out = []
    for pid in EIGEN_X_POTENTIALS:
        sys_ = _system(pid, cfg)
        for n in range(cfg.nmax + 1):
            e = sys_.energy(n)
            r, size = grid_residual(sys_, n, sys_.apply_hamiltonian,
                                    lambda x: e * sys_.psi_n(n, x),
                                    per_patch=cfg.per_patch, min_points=cfg.min_points)
            out.append(_report(cfg, "eigen_x", r, potential=pid, g0=cfg.g0, n=n, grid=size))
    return out


def check_ladder_y(cfg):
    from .xspace import PdmSystem

    p = yspace.params_from_g0(cfg.g0)
    sing = PdmSystem(MassProfile.constant(), p, "Sing")
    out = []
    for n in range(cfg.nmax + 1):
        for d, m, coef in (("+", n + 1, yspace.gamma_plus(p, n)),
                           ("-", n - 1, yspace.gamma_minus(p, n))):
            if m < 0:
                continue
            r, size = grid_residual(
                sing, n, lambda g: yspace.apply_c(p, g, d),
                lambda y: coef * yspace.phi_n(p, m, y),
                per_patch=cfg.per_patch, min_points=cfg.min_points, nmax=n + 1)
            out.append(_report(cfg, "ladder_y", r, g0=cfg.g0, n=n, direction=d, grid=size))
    return out


LADDER_X_POTENTIALS = ("V1", "V2", "V3", "V5", "V6", "Sing")


def check_ladder_x(cfg):
    out = []
    p = yspace.params_from_g0(cfg.g0)
    for pid in LADDER_X_POTENTIALS:
        sys_ = _system(pid, cfg)
        worst, size = 0.0, 0
        for n in range(min(cfg.nmax, 3) + 1):
            for d, m, coef in (("+", n + 1, yspace.gamma_plus(p, n)),
                               ("-", n - 1, yspace.gamma_minus(p, n))):
                if m < 0:
                    continue
                r, size = grid_residual(
                    sys_, n, lambda g: sys_.apply_Cpm(g, d),
                    lambda x: coef * sys_.psi_n(m, x),
                    per_patch=cfg.per_patch, min_points=cfg.min_points, nmax=n + 1)
                worst = max(worst, r)
        out.append(_report(cfg, "ladder_x", worst, potential=pid, n="0..3", grid=size))
    return out


def _bump(centre, width):
    def f(y):
        t = (y - centre) / width
        out = np.zeros_like(y)
        inside = np.abs(t) < 1
        out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
        return out
    return f


COMMUTATOR_BUMPS = ((1.5, 1.0), (2.0, 1.5), (3.0, 2.0), (4.0, 1.0), (2.5, 2.3))


def check_commutator(cfg):
    """([c-, c+] - 8h) f on compactly supported test functions."""
    from .numerics import GridFunction, uniform_grid

    p = yspace.params_from_g0(cfg.g0)
    y = uniform_grid(0.05, 7.0, 8 * cfg.min_points)
    out = []
    for centre, width in COMMUTATOR_BUMPS:
        f = GridFunction(y, _bump(centre, width)(y))
        pm = yspace.apply_c(p, yspace.apply_c(p, f, "+"), "-").values
        mp = yspace.apply_c(p, yspace.apply_c(p, f, "-"), "+").values
        h8 = 8.0 * yspace.apply_h(p, f).values
        core = slice(3, -3)
        r = np.linalg.norm((pm - mp - h8)[core]) / np.linalg.norm(h8[core])
        out.append(_report(cfg, "commutator", r, g0=cfg.g0, centre=centre, width=width,
                           grid=len(y)))
    return out


def check_factorisation(cfg):
    """[A, B] = -2 and h = AB - 1 on the linear PDM eigenfunctions."""
    from .xspace import PdmSystem

    out = []
    for prof in _linear_profiles(cfg):
        sys_ = PdmSystem(prof, None, "LinearPdm")
        worst, size = 0.0, 0
        for n in range(min(cfg.nmax, 3) + 1):
            r1, size = grid_residual(sys_, n, sys_.apply_commutator_AB,
                                     lambda x: -2.0 * sys_.psi_n(n, x),
                                     per_patch=cfg.per_patch, min_points=cfg.min_points)
            with warnings.catch_warnings():
                # B psi_0 vanishes, so A sees pure round-off
                warnings.simplefilter("ignore", RuntimeWarning)
                r2, _ = grid_residual(sys_, n, lambda g: sys_.apply_A(sys_.apply_B(g)),
                                      lambda x: 2.0 * n * sys_.psi_n(n, x),
                                      per_patch=cfg.per_patch, min_points=cfg.min_points)
            r3, _ = grid_residual(sys_, n, sys_.apply_hamiltonian,
                                  lambda x: (2 * n + 1.0) * sys_.psi_n(n, x),
                                  per_patch=cfg.per_patch, min_points=cfg.min_points)
            worst = max(worst, r1, r2, r3)
        out.append(_report(cfg, "factorisation", worst, profile=prof.describe(), grid=size))
    return out


def _x_integral(system, f, nmax):
    """Integral over the support of psi_0..psi_nmax, split at the grid's patch edges."""
    grid = system.residual_grid(nmax, y_start=1e-6 if system.is_singular else 1e-3)
    edges = [p.x[p.keep][0] for p in grid.patches] + [grid.patches[-1].x[-1]]
    if system.is_singular and math.isfinite(system.profile.x_min):
        edges[0] = system.profile.x_min
    return sum(quad(f, a, b) for a, b in zip(edges, edges[1:]))


def check_orthonormality(cfg, potentials=("V1", "V5"), nmax=8):
    out = []
    for pid in potentials:
        sys_ = _system(pid, cfg)
        gram = np.zeros((nmax + 1, nmax + 1))
        for i in range(nmax + 1):
            for j in range(i, nmax + 1):
                val = _x_integral(sys_, lambda x: sys_.psi_n(i, x) * sys_.psi_n(j, x), nmax)
                gram[i, j] = gram[j, i] = float(np.real(val))
        r = float(np.max(np.abs(gram - np.eye(nmax + 1))))
        out.append(_report(cfg, "orthonormality", r, potential=pid, nmax=nmax))
    return out


def check_norm_x(cfg):
    """<psi_n, psi_n> over x equals <phi_n, phi_n> over y (change of variables)."""
    out = []
    for pid in ("V1", "V2", "V3", "V4", "V5", "V6", "Sing"):
        sys_ = _system(pid, cfg)
        worst = 0.0
        for n in (0, 2):
            val = _x_integral(sys_, lambda x: sys_.psi_n(n, x) ** 2, n)
            worst = max(worst, abs(float(np.real(val)) - 1.0))
        out.append(_report(cfg, "norm_x", worst, potential=pid, n="0,2"))
    return out


def _bg_system(g0, cfg, pid="V5"):
    return _system(pid, cfg, g0=g0)


def check_bg(cfg):
    out = []
    for g0 in cfg.bg_g0:
        sys_ = _bg_system(g0, cfg)
        for z in cfg.bg_z:
            cs = coherent.build("BarutGirardello", sys_, z)
            out.append(_report(cfg, "bg_norm", abs(cs.norm() - 1.0), g0=g0, z=str(z),
                               N=cs.truncation_N))
            out.append(_report(cfg, "bg_eigen", coherent.eigen_residual(cs), g0=g0, z=str(z),
                               N=cs.truncation_N))
            ref = cs.coeffs
            diff = 0.0
            for pid in ("V1", "V2", "V3", "Sing"):
                other = coherent.build("BarutGirardello", _bg_system(g0, cfg, pid), z).coeffs
                same = other.shape == ref.shape and np.array_equal(other, ref)
                diff = max(diff, 0.0 if same else 1.0)
            out.append(_report(cfg, "bg_profile_independence", diff, g0=g0, z=str(z)))
    return out


def check_bg_evaluate_norm(cfg):
    sys_ = _system("V5", cfg)
    cs = coherent.build("BarutGirardello", sys_, 2 + 1j)
    val = _x_integral(sys_, lambda x: np.abs(coherent.evaluate(cs, x)) ** 2, cs.truncation_N)
    return [_report(cfg, "bg_evaluate_norm", abs(float(np.real(val)) - 1.0),
                    potential="V5", z="(2+1j)", N=cs.truncation_N)]


def check_perelomov(cfg):
    out = []
    for g0 in cfg.bg_g0:
        sys_ = _bg_system(g0, cfg)
        for r4 in cfg.perelomov_r:
            z = complex(0.6, 0.8) * r4 / 4.0
            cs = coherent.build("Perelomov", sys_, z)
            r = max(abs(cs.norm() - 1.0), coherent.perelomov_norm_check(sys_.params, z))
            out.append(_report(cfg, "perelomov_norm", r, g0=g0, abs_4z=r4, N=cs.truncation_N))
    # |4z| >= 1 must be refused
    refused = 0
    sys_ = _bg_system(cfg.g0, cfg)
    for r4 in (1.0, 1.2):
        try:
            coherent.build("Perelomov", sys_, r4 / 4.0)
        except DomainError:
            refused += 1
    out.append(_report(cfg, "perelomov_domain", 2 - refused, abs_4z="1,1.2"))
    return out


def _constant_linear():
    from .xspace import PdmSystem

    return PdmSystem(MassProfile.constant(), None, "LinearPdm")


def check_glauber(cfg):
    sys_ = _constant_linear()
    out = []
    zs = list(cfg.glauber_z)
    worst = 0.0
    for z in zs:
        a = coherent.build("Glauber", sys_, z)
        for w in zs:
            b = coherent.build("Glauber", sys_, w)
            want = math.exp(-abs(z - w) ** 2 / 4.0)
            worst = max(worst, abs(abs(coherent.overlap(a, b)) - want))
    out.append(_report(cfg, "glauber_overlap", worst, z=",".join(map(str, zs))))
    for z in zs:
        out.append(_report(cfg, "glauber_displacement",
                           coherent.displacement_check(sys_, z, 60), z=str(z), N=60))
    base = coherent.uncertainty_product(coherent.build("Glauber", sys_, 0.0))
    worst = abs(base - 0.5)
    for z in zs:
        val = coherent.uncertainty_product(coherent.build("Glauber", sys_, z))
        worst = max(worst, abs(val - base))
    out.append(_report(cfg, "glauber_uncertainty", worst, minimum=base))
    return out


def check_g0_limit(cfg):
    p = yspace.params_from_g0(1e-8)
    y = np.linspace(1e-3, 8.0, 2001)
    worst = 0.0
    for n in range(cfg.nmax + 1):
        worst = max(worst, float(np.max(np.abs(yspace.phi_n(p, n, y)
                                               - yspace.odd_hermite_phi(n, y)))))
    return [_report(cfg, "g0_limit", worst, g0=1e-8, n=f"0..{cfg.nmax}")]


def check_constant_mass(cfg):
    """ConstantMass systems reproduce y-space quantities bit for bit."""
    from .xspace import PdmSystem

    p = yspace.params_from_g0(cfg.g0)
    sing = PdmSystem(MassProfile.constant(), p, "Sing")
    y = np.linspace(1e-3, 8.0, 801)
    mism = 0
    mism += not np.array_equal(sing.psi_block(cfg.nmax, y), yspace.phi_block(p, cfg.nmax, y))
    mism += not np.array_equal(sing.energy(np.arange(cfg.nmax + 1)),
                               yspace.energy(p, np.arange(cfg.nmax + 1)))
    mism += not np.array_equal(sing.potential(y), y * y + cfg.g0 / (2 * y * y))
    lin = _constant_linear()
    yl = np.linspace(-8.0, 8.0, 801)
    mism += not np.array_equal(lin.psi_block(cfg.nmax, yl), yspace.linear_block(cfg.nmax, yl))
    return [_report(cfg, "constant_mass", float(mism), g0=cfg.g0)]


def check_convergence_order(cfg):
    """Halving every patch spacing shrinks eigen-residuals by at least 12x."""
    p = yspace.params_from_g0(cfg.g0)
    out = []
    coarse = dict(per_patch=48, min_points=400)
    fine = dict(per_patch=96, min_points=800)
    for n in range(4):
        r1, _ = _eigen_y(p, n, **coarse)
        r2, _ = _eigen_y(p, n, **fine)
        out.append(_report(cfg, "convergence_order", r2 / r1, space="y", n=n,
                           coarse=r1, fine=r2))
    sys_ = _system("V3", cfg)
    for n in range(4):
        e = sys_.energy(n)
        rs = []
        for kw in (coarse, fine):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                r, _ = grid_residual(sys_, n, sys_.apply_hamiltonian,
                                     lambda x: e * sys_.psi_n(n, x), **kw)
            rs.append(r)
        out.append(_report(cfg, "convergence_order", rs[1] / rs[0], space="x:V3", n=n,
                           coarse=rs[0], fine=rs[1]))
    return out


_CHECKS = {
    "spectrum": check_spectrum,
    "casimir": check_casimir,
    "ladder_identity": check_ladder_identity,
    "ladder_coeff": check_ladder_coeff,
    "mdnt_ode": check_mdnt_ode,
    "riccati": check_riccati,
    "partner_shift": check_partner_shift,
    "potential_closed_form": check_potential_closed_form,
    "mass_profiles": check_mass_profiles,
    "eigen_y": check_eigen_y,
    "eigen_x": check_eigen_x,
    "ladder_y": check_ladder_y,
    "ladder_x": check_ladder_x,
    "commutator": check_commutator,
    "factorisation": check_factorisation,
    "orthonormality": check_orthonormality,
    "norm_x": check_norm_x,
    "bg": check_bg,
    "bg_evaluate_norm": check_bg_evaluate_norm,
    "perelomov": check_perelomov,
    "glauber": check_glauber,
    "g0_limit": check_g0_limit,
    "constant_mass": check_constant_mass,
    "convergence_order": check_convergence_order,
}

CHECK_IDS = tuple(_CHECKS)


def run_suite(selection: Sequence[str] = None, config: SuiteConfig = None) -> list:
    """Run the selected checks (all when ``selection`` is None) in catalog order."""
    cfg = config or SuiteConfig()
    if selection is None:
        selection = CHECK_IDS
    unknown = [s for s in selection if s not in _CHECKS]
    if unknown:
        raise UsageError(f"unknown check id(s): {', '.join(unknown)}")
    for key in cfg.tolerances:
        if key not in DEFAULT_TOLERANCES:
            raise UsageError(f"unknown tolerance key {key!r}")
    chosen = set(selection)
    reports = []
    for cid in CHECK_IDS:
        if cid in chosen:
            reports.extend(_CHECKS[cid](cfg))
    return reports


def format_reports(reports) -> str:
    return "".join(r.line() + "\n" for r in reports)


def summary(reports) -> str:
    failed = [r for r in reports if not r.passed]
    lines = [f"{len(reports)} checks, {len(reports) - len(failed)} passed, {len(failed)} failed"]
    for r in failed:
        lines.append(f"FAILED {r.check_id}: residual {r.residual:.3e} > {r.tolerance:.1e} {r.context}")
    return "\n".join(lines) + "\n"
