import numpy as np
import pytest
from hypothesis import given, strategies as st

from qvac import modesum, spectral
from qvac.errors import ConfigError, ConvergenceError
from qvac.sampling import SwitchProfile, make_johnson, make_one_scale


def test_single_mode():
    m = modesum.ModeSet(np.array([4.0]), np.array([0.5]))
    c = modesum.build_couplings(m, 1, modesum.flat_spectrum)
    assert c.A[0, 0] == c.B[0, 0] == pytest.approx(0.25 / 4.0, rel=1e-15)
    assert modesum.variance(c) == 2 * c.B[0, 0] ** 2


def test_zero_couplings():
    c = modesum.CouplingMatrices(np.zeros((3, 3)), np.zeros((3, 3)), 7)
    assert modesum.variance(c) == 0.0


def test_power_law_entries():
    m = modesum.uniform_modes(10.0, 10)
    c = modesum.build_couplings(m, 7, modesum.flat_spectrum)
    # interior weights are equal, so B_ij / B_kl = (w_i w_j / w_k w_l)^(5/2)
    assert c.B[1, 2] / c.B[3, 4] == pytest.approx((2.0 * 3.0 / (4.0 * 5.0)) ** 2.5, rel=1e-13)


def test_symmetric_and_mirrored():
    m = modesum.uniform_modes(20.0, 40)
    c = modesum.build_couplings(m, 3, modesum.model_spectrum(1.0, 1.0, 0.5))
    assert np.array_equal(c.A, c.A.T) and np.array_equal(c.B, c.B.T)


def test_spectrum_failure_is_signalled():
    def bad(w):
        return np.where(w > 5, np.nan, 1.0)
    with pytest.raises(ConvergenceError):
        modesum.build_couplings(modesum.uniform_modes(10.0, 10), 1, bad)

    def boom(w):
        raise RuntimeError("outside table")
    with pytest.raises(ConvergenceError):
        modesum.build_couplings(modesum.uniform_modes(10.0, 10), 1, boom)


@pytest.mark.parametrize("kw", [dict(omegas=[1.0, 2.0], weights=[1.0]),
                                dict(omegas=[0.0, 1.0], weights=[1.0, 1.0]),
                                dict(omegas=[2.0, 1.0], weights=[1.0, 1.0])])
def test_modeset_validation(kw):
    with pytest.raises(ConfigError):
        modesum.ModeSet(np.array(kw["omegas"]), np.array(kw["weights"]))


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([1, 3, 7]))
def test_variance_permutation_invariant(seed, p):
    rng = np.random.default_rng(seed)
    w = np.sort(rng.uniform(0.1, 30.0, 25))
    wt = rng.uniform(0.1, 1.0, 25)
    spec = modesum.model_spectrum(1.0, 1.2, 0.5)
    base = modesum.build_couplings(modesum.ModeSet(w, wt), p, spec)
    perm = rng.permutation(25)
    # build with the permutation applied inside the couplings (ModeSet must stay sorted)
    k = np.outer(wt * w ** (p / 2 - 1), wt * w ** (p / 2 - 1))
    B = k * spec(w[:, None] + w[None, :])
    shuffled = modesum.CouplingMatrices(base.A, B[np.ix_(perm, perm)], p)
    assert modesum.variance(shuffled) == pytest.approx(modesum.variance(base), rel=1e-13)


@given(st.floats(0.5, 3.0), st.floats(1.01, 2.0))
def test_variance_nonincreasing_in_beta(beta, factor):
    m = modesum.uniform_modes(100.0, 200)
    v = [modesum.variance(modesum.build_couplings(m, 7, modesum.model_spectrum(1.0, b, 0.5)))
         for b in (beta, beta * factor)]
    assert v[1] <= v[0]


def test_variance_converges_with_window_tail():
    spec = modesum.model_spectrum(1.0, np.sqrt(2.0), 0.5)
    v = modesum.variance_vs_cutoff(spec, 7, 1.0, [800.0, 1600.0])
    assert abs(v[1] / v[0] - 1) < 0.01


def test_variance_diverges_without_averaging():
    v = modesum.variance_vs_cutoff(modesum.flat_spectrum, 7, 0.5, [10.0, 20.0, 40.0])
    assert v[2] / v[0] > 10 and v[1] > v[0]


def test_linear_field_variance_scaling():
    s = []
    for tau in (1.0, 2.0):
        sf = make_one_scale(SwitchProfile.exp_inverse(tau))
        s.append(modesum.linear_field_variance(spectral.spectrum_callable(sf), tau))
    assert s[0] > 0
    assert s[1] / s[0] == pytest.approx(2.0 ** -4, rel=0.01)


@pytest.mark.parametrize("tau", [0.5, 1.0])
def test_linear_field_variance_any_shape(tau):
    sf = make_johnson(SwitchProfile.johnson(tau, 2.0, 1.0))
    sf2 = make_johnson(SwitchProfile.johnson(2 * tau, 2.0, 1.0))
    a = modesum.linear_field_variance(spectral.spectrum_callable(sf), tau)
    b = modesum.linear_field_variance(spectral.spectrum_callable(sf2), 2 * tau)
    assert b / a == pytest.approx(2.0 ** -4, rel=0.01)


def test_linear_field_variance_self_convergence():
    f = spectral.spectrum_callable(make_one_scale(SwitchProfile.exp_inverse(1.0)))
    coarse = modesum.linear_field_variance(f, 1.0, panels_per_tau=2)
    fine = modesum.linear_field_variance(f, 1.0, panels_per_tau=4)
    assert fine == pytest.approx(coarse, rel=1e-6)


def test_linear_field_variance_truncation_signalled():
    with pytest.raises(ConvergenceError):
        modesum.linear_field_variance(lambda w: 1.0 / (1.0 + w), 1.0, max_omega_tau=200.0)
