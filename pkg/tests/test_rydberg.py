import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from qvac import distribution as dist
from qvac import rydberg
from qvac.errors import ConfigError, RegimeError

ATOM = rydberg.AtomModel(50)
K = rydberg.CODATA


def test_constants_table():
    assert K.hbar_c_mev_fm == pytest.approx(197.327, rel=1e-6)
    assert K.amu_mev == pytest.approx(931.494, rel=1e-6)
    assert K.bohr_radius_m == pytest.approx(5.29177e-11, rel=1e-5)
    assert K.boltzmann_ev_per_k == pytest.approx(8.61733e-5, rel=1e-5)
    assert K.c_light == 299792458.0


def test_atom_defaults():
    a0 = K.bohr_radius_m
    assert ATOM.alpha0 / (50 ** 7 * a0 ** 3) == 1.0
    assert ATOM.r0 / (50 ** 2 * a0) == 1.0
    assert ATOM.t0 == 50 * ATOM.tau
    assert ATOM.worldline_valid and not rydberg.AtomModel(77).worldline_valid
    with pytest.raises(ConfigError):
        rydberg.AtomModel(0)
    with pytest.raises(ConfigError):
        rydberg.AtomModel(10, t0=1e-15)


def test_alpha_squared_profile():
    t0, tau = ATOM.t0, ATOM.tau
    assert rydberg.alpha_squared_profile(ATOM, 0.6 * t0) == 0.0
    avg = integrate.quad(lambda t: rydberg.alpha_squared_profile(ATOM, t), -t0 / 2, t0 / 2,
                         epsrel=1e-12, limit=200)[0] / t0
    assert avg / ATOM.alpha0 ** 2 == pytest.approx(1.0, abs=0.05)
    peak = rydberg.alpha_squared_profile(ATOM, 0.0) / ATOM.alpha0 ** 2
    sf = ATOM.window
    assert peak == pytest.approx(sf.norm_constant * math.exp(-4 * tau / t0), rel=1e-12)


def test_force_bar():
    f = rydberg.force_bar(ATOM, 3.0)
    assert rydberg.force_bar(ATOM, 6.0) == pytest.approx(2 * f, rel=1e-15)
    slow = rydberg.AtomModel(50, tau=2e-15)
    assert rydberg.force_bar(slow, 3.0) == pytest.approx(f / 2 ** 8, rel=1e-13)
    assert rydberg.force_bar_si(ATOM, 1.0) > 0


@pytest.mark.parametrize("n", [30, 50, 75])
def test_force_times_t0_over_m_is_v_bar(n):
    atom = rydberg.AtomModel(n, tau=2e-15, t0=300e-15)
    p = dist.DistributionParams(tau=atom.tau_length, t0=atom.t0 * K.c_light, ell=atom.r0)
    x = p.x_star
    assert x == pytest.approx(rydberg.x_star_atom(atom), rel=1e-12)
    dv = rydberg.force_bar(atom, x) * atom.t0 * K.c_light / K.mass_per_metre(atom.mass_amu)
    assert dv == pytest.approx(rydberg.v_bar(atom).value, rel=1e-12)


def test_v_bar_values():
    v = rydberg.v_bar(ATOM)
    assert v.value == pytest.approx(2.1e-8, rel=0.15)
    assert v.value == pytest.approx(2.2534e-8, rel=1e-4)
    assert v.si == pytest.approx(6.3, rel=0.15)
    fast = rydberg.v_bar(rydberg.AtomModel(50, beta=2 ** -0.5))
    assert fast.si == pytest.approx(800.0, rel=0.15)
    assert fast.value == pytest.approx(2.7e-6, rel=0.15)


def test_v_bar_ratio_form_matches_direct():
    atom = rydberg.AtomModel(40, mass_amu=87.0, alpha0=3e-20, r0=2e-7, beta=0.9)
    direct = atom.alpha0 ** 2 / (18 * math.pi ** 2 * K.mass_per_metre(87.0)
                                 * 0.9 ** 14 * atom.r0 ** 7)
    assert rydberg.v_bar(atom).value == pytest.approx(direct, rel=1e-13)


def test_v_bar_independent_of_n_tau_t0():
    ref = rydberg.v_bar(ATOM).value
    for n in (30, 50, 77):
        for tau in (1e-16, 1e-15, 1e-14):
            for k in (2.0, 50.0):
                assert rydberg.v_bar(rydberg.AtomModel(n, tau=tau, t0=k * tau)).value == ref


@given(st.floats(0.1, 10.0))
def test_v_bar_beta_law(beta):
    a = rydberg.v_bar(rydberg.AtomModel(50, beta=beta)).value
    b = rydberg.v_bar(rydberg.AtomModel(50, beta=2 * beta)).value
    assert a / b == pytest.approx(2 ** 14, rel=1e-12)


def test_comparison_speeds():
    vt = rydberg.v_thermal(1e-6, 1.0)
    vr = rydberg.v_recoil(1.0, 1.0)
    assert vt.value == pytest.approx(5e-10, rel=0.1)
    assert vt.value == pytest.approx(5.27e-10, rel=1e-3)
    assert rydberg.v_thermal(4e-6, 1.0).value == pytest.approx(2 * vt.value, rel=1e-14)
    assert vr.value == pytest.approx(1e-9, rel=0.1)
    assert vr.value == pytest.approx(1 / 9.31494e8, rel=1e-5)
    assert rydberg.v_recoil(2.0, 1.0).value == pytest.approx(2 * vr.value, rel=1e-15)
    assert vt.value < vr.value < rydberg.v_bar(ATOM).value
    with pytest.raises(ConfigError):
        rydberg.v_thermal(0.0, 1.0)


@given(st.floats(1e-12, 1e3), st.floats(0.1, 300.0))
def test_unit_round_trip(x, m):
    for v in (rydberg.v_thermal(x, m), rydberg.v_recoil(x, m),
              rydberg.v_bar(rydberg.AtomModel(20, mass_amu=m))):
        assert v.si == v.value * K.c_light


def test_tau_over_r0():
    coef = rydberg.tau_over_r0_coefficient()
    assert coef == pytest.approx(6000.0, rel=0.06)
    assert coef == pytest.approx(5665.26, rel=1e-5)
    assert ATOM.tau_over_r0 == pytest.approx(coef / 2500, rel=1e-14)


def test_prob_at_xstar():
    atom = rydberg.AtomModel(77)
    assert rydberg.prob_at_xstar(atom, 1.0) == pytest.approx(0.14 * math.exp(-2), rel=1e-15)
    assert rydberg.prob_at_xstar(atom, 1.0) == pytest.approx(0.019, abs=0.002)
    with pytest.raises(RegimeError):
        rydberg.prob_at_xstar(atom)  # tau < r0 with exact constants
    p50 = rydberg.prob_at_xstar(ATOM, (77 / 50) ** 2)
    assert p50 == pytest.approx(0.0027, rel=0.03)


@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0), st.floats(1.0, 50.0))
def test_prob_scalings(beta, gamma0, s):
    a = rydberg.prob_at_xstar(rydberg.AtomModel(50, beta=beta, gamma0=gamma0), s)
    b = rydberg.prob_at_xstar(rydberg.AtomModel(50, beta=2 * beta, gamma0=gamma0), s)
    c = rydberg.prob_at_xstar(rydberg.AtomModel(50, beta=beta, gamma0=2 * gamma0), s)
    assert a / b == pytest.approx(16.0, rel=1e-13)
    assert c / a == pytest.approx(4.0, rel=1e-13)


def test_chain_form_matches_distribution_module():
    atom = rydberg.AtomModel(40, t0=100e-15)
    p = dist.DistributionParams(tau=atom.tau_length, t0=atom.t0 * K.c_light, ell=atom.r0)
    chain = dist.BAND_FACTOR * p.c0 * p.x_star ** (-2 / 7) * math.exp(-p.a * p.x_star ** (1 / 14))
    assert rydberg.prob_at_xstar_chain(atom) == pytest.approx(chain, rel=1e-12)
    # both forms coincide at tau = r0
    assert rydberg.prob_at_xstar_chain(atom, 1.0) == pytest.approx(
        rydberg.prob_at_xstar(atom, 1.0), rel=0.03)


def test_fig4_curve():
    tab = rydberg.fig4_curve(coefficient=rydberg.TAU_OVER_R0_77)
    assert tab.n[0] == 20 and tab.n[-1] == 77 and not tab.truncated
    assert np.all(np.diff(tab.probability) > 0)
    assert tab.probability[-1] == pytest.approx(0.019, abs=0.002)
    exact = rydberg.fig4_curve()
    assert exact.excluded == (76, 77) and exact.n[-1] == 75
    empty = rydberg.fig4_curve(n_range=range(80, 90))
    assert empty.empty and empty.excluded == tuple(range(80, 90))
