import math

import mpmath as mp
import numpy as np
import pytest

from pdmcs import yspace
from pdmcs.errors import DomainError, UsageError
from pdmcs.massmap import MassProfile
from pdmcs.xspace import (POTENTIAL_IDS, PdmSystem, make_system, partner_shift,
                          partner_shift_check, riccati_residual)
from pdmcs.verify import grid_residual

mp.mp.dps = 30
SINGULAR = ("V1", "V2", "V3", "V4", "V5", "V6", "V7", "Sing")


def test_catalog_defaults():
    assert make_system("V1").profile == MassProfile.mdnt0(1.0, 1.0)
    assert make_system("V2").profile == MassProfile.mdntn(1, 0.0, 1.0)
    assert make_system("V5").profile == MassProfile.exponential(1.0, 1.0)
    assert make_system("V7").profile == MassProfile.exponential(0.0, 1.0)
    assert make_system("LinearPdm").params is None


def test_system_validation():
    p = yspace.params_from_g0(2.0)
    with pytest.raises(UsageError):
        PdmSystem(MassProfile.regular(), p, "V1")
    with pytest.raises(UsageError):
        PdmSystem(MassProfile.exponential(2.0), p, "V5")
    with pytest.raises(UsageError):
        make_system("V7", g0=1.0)
    with pytest.raises(UsageError):
        PdmSystem(MassProfile.exponential(1.0), None, "LinearPdm")
    with pytest.raises(UsageError):
        PdmSystem(MassProfile.regular(), None, "V3")
    with pytest.raises(UsageError):
        make_system("V9")


@pytest.mark.parametrize("pid", SINGULAR)
def test_potential_closed_forms(pid):
    sys_ = make_system(pid)
    x = sys_.sample_points(31)
    a, b = sys_.potential(x), sys_.closed_form_potential(x)
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-12


def test_closed_form_examples():
    # V7 = 2 cosh 2x; Sing at x = 1 with g0 = 2 gives 2
    sys7 = make_system("V7")
    assert abs(sys7.potential(0.3) - 2 * math.cosh(0.6)) < 1e-13
    assert abs(make_system("Sing").potential(1.0) - 2.0) < 1e-15


def test_potential_outside_domain():
    with pytest.raises(DomainError):
        make_system("V1").potential(-0.1)
    with pytest.raises(DomainError):
        make_system("V5").potential(0.0)


S_MP = {
    "V1": lambda t: mp.log(1 + t),
    "V2": lambda t: 3 * mp.cbrt(t),
    "V3": lambda t: mp.asinh(t),
    "V5": lambda t: mp.exp(t) - 1,
}


def psi_mp(pid, n, x):
    """psi_n from scratch: sqrt(s'(x)) phi_n(s(x)) with an mpmath derivative of s."""
    s = S_MP[pid]
    x = mp.mpf(x)
    al = mp.mpf(1) / 2 + mp.sqrt(mp.mpf(5) / 4)
    y = s(x)
    jac = mp.diff(s, x)
    norm = mp.sqrt(2 * mp.factorial(n) / mp.gamma(al + n + mp.mpf(1) / 2))
    phi = (-1) ** n * norm * y**al * mp.exp(-y * y / 2) * mp.laguerre(n, al - mp.mpf(1) / 2, y * y)
    return mp.sqrt(jac) * phi


@pytest.mark.parametrize("pid", ["V1", "V2", "V3", "V5"])
def test_psi_against_independent_transcription(pid):
    sys_ = make_system(pid)
    for x in sys_.sample_points(5):
        for n in (0, 2):
            assert abs(sys_.psi_n(n, x) - float(psi_mp(pid, n, x))) < 1e-12


@pytest.mark.parametrize("pid", ["V1", "V5", "V3"])
def test_psi_normalised_by_mpmath(pid):
    sys_ = make_system(pid)
    prof = sys_.profile
    hi = float(prof.inverse_s(yspace.support_cutoff(1, 2.0)))
    lo = prof.x_min
    edges = [lo] + [float(prof.inverse_s(y)) for y in (0.5, 1, 2, 3, 4)] + [hi]
    for n in (0, 1):
        val = mp.quad(lambda t: mp.mpf(sys_.psi_n(n, float(t))) ** 2, edges)
        assert abs(val - 1) < 1e-10


def test_psi_zero_at_x_min():
    for pid in ("V1", "V2", "V3", "V5", "Sing"):
        sys_ = make_system(pid)
        assert sys_.psi_n(2, sys_.profile.x_min) == 0.0


def test_psi_block_matches():
    sys_ = make_system("V5")
    x = sys_.sample_points(9)
    block = sys_.psi_block(4, x)
    for n in range(5):
        assert np.max(np.abs(block[n] - sys_.psi_n(n, x))) < 1e-13


def test_energy():
    assert make_system("V3").energy(1) == yspace.energy(yspace.params_from_g0(2.0), 1)
    assert make_system("LinearPdm").energy(3) == 7.0


@pytest.mark.parametrize("pid", SINGULAR)
@pytest.mark.parametrize("n", [0, 3, 5])
def test_isospectral_eigen_residual(pid, n):
    sys_ = make_system(pid)
    e = sys_.energy(n)
    r, size = grid_residual(sys_, n, sys_.apply_hamiltonian, lambda x: e * sys_.psi_n(n, x))
    assert size >= 4000
    assert r < 1e-4


def test_wrong_energy_is_detected():
    sys_ = make_system("V3")
    e = sys_.energy(1) + 0.01
    r, _ = grid_residual(sys_, 1, sys_.apply_hamiltonian, lambda x: e * sys_.psi_n(1, x))
    assert r > 1e-4


@pytest.mark.parametrize("pid", ["V1", "V2", "V5", "Sing"])
def test_cpm_on_psi(pid):
    sys_ = make_system(pid)
    p = sys_.params
    for n in (1, 2):
        r, _ = grid_residual(sys_, n, lambda g: sys_.apply_Cpm(g, "+"),
                             lambda x: yspace.gamma_plus(p, n) * sys_.psi_n(n + 1, x), nmax=n + 1)
        assert r < 1e-3
        r, _ = grid_residual(sys_, n, lambda g: sys_.apply_Cpm(g, "-"),
                             lambda x: yspace.gamma_minus(p, n) * sys_.psi_n(n - 1, x))
        assert r < 1e-3


LINEAR = [MassProfile.constant(), MassProfile.regular(1.0), MassProfile.mdnt0(1.0, 1.0)]


@pytest.mark.parametrize("prof", LINEAR, ids=lambda p: p.kind.value)
def test_riccati_and_partner_shift(prof):
    x = prof.inverse_s(np.linspace(-3, 3, 21))
    assert np.max(np.abs(riccati_residual(prof, x))) < 1e-9
    assert np.max(np.abs(partner_shift(prof, x) - 2.0)) < 1e-9
    assert partner_shift_check(PdmSystem(prof, None, "LinearPdm")).passed


@pytest.mark.parametrize("prof", LINEAR, ids=lambda p: p.kind.value)
def test_linear_factorisation_on_grid(prof):
    sys_ = PdmSystem(prof, None, "LinearPdm")
    for n in (0, 2):
        r, _ = grid_residual(sys_, n, sys_.apply_hamiltonian, lambda x: (2 * n + 1) * sys_.psi_n(n, x))
        assert r < 1e-4
        r, _ = grid_residual(sys_, n, sys_.apply_B,
                             lambda x: math.sqrt(2 * n) * sys_.psi_n(max(n - 1, 0), x))
        assert r < 1e-4
        r, _ = grid_residual(sys_, n, sys_.apply_A,
                             lambda x: math.sqrt(2 * (n + 1)) * sys_.psi_n(n + 1, x), nmax=n + 1)
        assert r < 1e-4
        r, _ = grid_residual(sys_, n, sys_.apply_commutator_AB, lambda x: -2 * sys_.psi_n(n, x))
        assert r < 1e-4


def test_constant_mass_reduces_to_y_space():
    p = yspace.params_from_g0(2.0)
    sing = make_system("Sing")
    y = np.linspace(0.01, 7, 101)
    assert np.array_equal(sing.psi_block(5, y), yspace.phi_block(p, 5, y))


def test_linear_potential_ids():
    assert POTENTIAL_IDS[-1] == "LinearPdm"


def test_mdntn_edge_limit():
    # psi_n ~ u^((alpha - n)/(2n+1)) at x_min: zero for alpha > n, divergent otherwise
    assert make_system("V2", g0=2.0).psi_n(0, 0.0) == 0.0
    with pytest.raises(DomainError):
        make_system("V2", g0=-0.2).psi_n(0, 0.0)
    # just inside the domain both are finite
    assert math.isfinite(make_system("V2", g0=-0.2).psi_n(0, 1e-6))
