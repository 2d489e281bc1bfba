import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdmcs import yspace
from pdmcs.errors import DomainError, UsageError
from pdmcs.xspace import PdmSystem
from pdmcs.massmap import MassProfile

mp.mp.dps = 30


def phi_mp(g0, n, y):
    """Independent mpmath transcription of the normalised eigenfunction."""
    al = mp.mpf(1) / 2 + mp.sqrt(mp.mpf(1) / 4 + mp.mpf(g0) / 2)
    norm = mp.sqrt(2 * mp.factorial(n) / mp.gamma(al + n + mp.mpf(1) / 2))
    return (-1) ** n * norm * y**al * mp.exp(-y * y / 2) * mp.laguerre(n, al - mp.mpf(1) / 2, y * y)


def test_params():
    p = yspace.params_from_g0(2.0)
    assert abs(p.alpha - (1 + math.sqrt(5)) / 2) < 1e-15
    assert abs(p.kappa - (0.5 + p.alpha) / 2) < 1e-15
    assert abs(p.alpha_minus - (1 - p.alpha)) < 1e-15
    with pytest.raises(DomainError):
        yspace.params_from_g0(-0.5)


def test_spectrum_examples():
    p0 = yspace.params_from_g0(0.0)
    assert [yspace.energy(p0, n) for n in range(5)] == [3.0, 7.0, 11.0, 15.0, 19.0]
    p2 = yspace.params_from_g0(2.0)
    for n in range(4):
        assert abs(yspace.energy(p2, n) - (4 * n + 2 + math.sqrt(5))) < 1e-12
    with pytest.raises(DomainError):
        yspace.energy(p2, -1)


@pytest.mark.parametrize("g0", [-0.3, 0.5, 2.0, 7.5])
@pytest.mark.parametrize("n", [0, 1, 3, 6])
def test_phi_against_mpmath(g0, n):
    p = yspace.params_from_g0(g0)
    y = np.array([0.05, 0.5, 1.2, 2.5, 4.0])
    ref = np.array([float(phi_mp(g0, n, mp.mpf(v))) for v in y])
    assert np.max(np.abs(yspace.phi_n(p, n, y) - ref)) < 1e-12


@pytest.mark.parametrize("g0", [0.5, 2.0])
def test_orthonormal_by_quadrature(g0):
    p = yspace.params_from_g0(g0)
    cut = yspace.support_cutoff(6, g0)
    gram = np.array([[float(mp.quad(lambda y: phi_mp(g0, i, y) * phi_mp(g0, j, y), [0, 2, 5, cut]))
                      for j in range(4)] for i in range(4)])
    assert np.max(np.abs(gram - np.eye(4))) < 1e-12
    # the package's own quadrature agrees
    for i in range(4):
        val = yspace.quad(lambda y: yspace.phi_n(p, i, y) ** 2, 0.0, cut)
        assert abs(val - 1) < 1e-10


def test_phi_block_matches_phi_n():
    p = yspace.params_from_g0(2.0)
    y = np.linspace(0.01, 6, 50)
    block = yspace.phi_block(p, 7, y)
    for n in range(8):
        assert np.max(np.abs(block[n] - yspace.phi_n(p, n, y))) < 1e-13


def test_phase_positive_at_large_y():
    p = yspace.params_from_g0(2.0)
    assert all(yspace.phi_n(p, n, 6.0) > 0 for n in range(6))


def test_phi_rejects_nonpositive_y():
    p = yspace.params_from_g0(2.0)
    with pytest.raises(DomainError):
        yspace.phi_n(p, 0, 0.0)
    with pytest.raises(DomainError):
        yspace.phi_n(p, -1, 1.0)


@pytest.mark.parametrize("n", range(6))
def test_odd_hermite_normalisation(n):
    # sqrt(2) pi^(-1/4) / sqrt(2^(2n+1) (2n+1)!) with physicists' Hermite scaling
    m = 2 * n + 1
    want = math.sqrt(2.0) * math.pi**-0.25 / math.sqrt(2.0**m * math.factorial(m))
    assert abs(yspace.odd_hermite_norm(n) / want - 1) < 1e-12


def test_g0_zero_is_odd_hermite_and_limit():
    p0 = yspace.params_from_g0(0.0)
    y = np.linspace(0.01, 6, 40)
    for n in range(4):
        ref = np.array([float(phi_mp(0.0, n, mp.mpf(v))) for v in y])
        assert np.max(np.abs(yspace.phi_n(p0, n, y) - ref)) < 1e-12
    p = yspace.params_from_g0(1e-8)
    for n in range(4):
        assert np.max(np.abs(yspace.phi_n(p, n, y) - yspace.odd_hermite_phi(n, y))) < 1e-3


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_kummer_form_matches(n):
    p = yspace.params_from_g0(2.0)
    y = np.linspace(0.1, 4.0, 21)
    lam1 = yspace.kummer_normalisation(p, n)
    got = yspace.kummer_phi(p, yspace.energy(p, n), lam1, 0.0, y)
    assert np.max(np.abs(got - yspace.phi_n(p, n, y))) < 1e-12


def test_kummer_non_eigenvalue_solves_ode():
    # any E and both branches: check (h - E) phi = 0 by mpmath differentiation
    p = yspace.params_from_g0(2.0)
    E = 5.3

    def f(y):
        return mp.mpf(yspace.kummer_phi(p, E, 0.7, -0.4, float(y)))

    for y in (0.6, 1.1, 2.0):
        d2 = mp.diff(lambda t: f(t), y, 2, h=mp.mpf("1e-4"))
        res = -d2 + (y * y + 1.0 / (y * y) - E) * f(y)
        assert abs(res) < 1e-5


def test_ladder_coefficients_and_identity():
    for g0 in (0.0, 0.5, 2.0):
        p = yspace.params_from_g0(g0)
        for n in range(21):
            e = yspace.energy(p, n)
            lhs = yspace.gamma_plus(p, n) * yspace.gamma_minus(p, n + 1)
            assert abs(lhs - (e * e + 4 * e + 3 - 2 * g0)) < 1e-10 * e * e
        assert yspace.gamma_minus(p, 0) == 0.0


def test_casimir():
    for g0 in (-0.2, 0.0, 2.0, 9.0):
        p = yspace.params_from_g0(g0)
        assert abs(yspace.casimir_value(p) - p.kappa * (1 - p.kappa)) < 1e-12


def test_apply_ladder_exact():
    p = yspace.params_from_g0(2.0)
    v = yspace.FockVector.unit(3, p)
    up = yspace.apply_ladder(v, "+")
    assert up.coeffs[4] == yspace.gamma_plus(p, 3) and np.count_nonzero(up.coeffs) == 1
    down = yspace.apply_ladder(v, "-")
    assert down.coeffs[2] == yspace.gamma_minus(p, 3) and np.count_nonzero(down.coeffs) == 1
    assert np.count_nonzero(yspace.apply_ladder(yspace.FockVector.unit(0, p), "-").coeffs) == 0
    with pytest.raises(UsageError):
        yspace.apply_ladder(v, "sideways")
    with pytest.raises(UsageError):
        yspace.apply_ladder(yspace.FockVector.unit(1), "+")


@given(st.lists(st.floats(-1, 1), min_size=2, max_size=12), st.floats(0.0, 5.0))
def test_commutator_in_coefficient_space(c, g0):
    # [c-, c+] = 8 h on any finite vector
    p = yspace.params_from_g0(g0)
    v = yspace.FockVector(np.array(c), p)
    pm = yspace.apply_ladder(yspace.apply_ladder(v, "+"), "-").coeffs
    mp_ = yspace.apply_ladder(yspace.apply_ladder(v, "-"), "+").coeffs
    h8 = 8 * yspace.apply_energy(v).coeffs
    diff = pm[: len(c)] - mp_[: len(c)] - h8
    assert np.max(np.abs(diff)) < 1e-10 * (1 + np.max(np.abs(h8)))


def test_linear_basis():
    y = np.linspace(-6, 6, 25)
    for k in range(8):
        ref = np.array([float(mp.hermite(k, v) * mp.exp(-v * v / 2)
                              / mp.sqrt(2**k * mp.factorial(k) * mp.sqrt(mp.pi))) for v in y])
        assert np.max(np.abs(yspace.linear_phi(k, y) - ref)) < 1e-12
    assert yspace.linear_lower(3) == math.sqrt(6) and yspace.linear_raise(3) == math.sqrt(8)
    v = yspace.FockVector.unit(2)
    assert abs(yspace.apply_linear_ladder(v, "-").coeffs[1] - 2.0) < 1e-15


def _graded(g0, n, per_patch=512, min_points=4000):
    p = yspace.params_from_g0(g0)
    sing = PdmSystem(MassProfile.constant(), p, "Sing")
    return p, sing.residual_grid(n + 1, per_patch=per_patch, min_points=min_points)


@pytest.mark.parametrize("n", range(6))
def test_grid_eigen_residual(n):
    p, grid = _graded(2.0, n)
    gfs = grid.sample(lambda y: yspace.phi_n(p, n, y))
    hphi = grid.owned([yspace.apply_h(p, g) for g in gfs])
    want = yspace.energy(p, n) * grid.owned(gfs)
    assert grid.norm(hphi - want) / grid.norm(want) < 1e-4


@pytest.mark.parametrize("n", range(4))
def test_grid_ladder(n):
    p, grid = _graded(2.0, n)
    gfs = grid.sample(lambda y: yspace.phi_n(p, n, y))
    up = grid.owned([yspace.apply_c(p, g, "+") for g in gfs])
    want = yspace.gamma_plus(p, n) * yspace.phi_n(p, n + 1, grid.points)
    assert grid.norm(up - want) / grid.norm(want) < 1e-4
    if n:
        down = grid.owned([yspace.apply_c(p, g, "-") for g in gfs])
        want = yspace.gamma_minus(p, n) * yspace.phi_n(p, n - 1, grid.points)
        assert grid.norm(down - want) / grid.norm(want) < 1e-4
