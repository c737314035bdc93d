"""Reproduction checks: each published number recomputed and compared.

Every ``criterion_N`` function returns a list of :class:`Check` records.
The CLI ``reproduce`` command and the acceptance tests both consume them.
"""
from dataclasses import asdict, dataclass
from math import pi, sqrt

import numpy as np
from scipy import integrate

from . import distribution as dist
from . import modesum, rydberg, spectral
from .sampling import SwitchProfile, make_one_scale, make_two_scale

FIT_WINDOW = (20.0, 150.0)
FIT_POWER = -0.75
FIG4_COEFFICIENT = rydberg.TAU_OVER_R0_77
FIG4_N = range(20, 78)

NOTES = {
    "b_sign": ("b = (2 - eta)/p - (eta + 1) gives -9/7 at p = 7, eta = 1/2, while the "
               "displayed p = 7 density carries x^(+9/7). The band derivation (u^-5 "
               "integrand, final x^(-2/7)) only closes with -9/7, so b = -9/7 is used "
               "everywhere."),
    "c0_exponent": ("the general-eta c0 has (tau/(3 pi t0))^(2(4 eta - 7)/4), which is "
                    "-5/2 at eta = 1/2, not the 2/7 of the eta = 1/2 expression (the "
                    "numerical prefactor 1/(128 (beta eta)^8) does reduce correctly to "
                    "2/beta^8). Only the eta = 1/2 form is used; the general one sits "
                    "behind experimental=True in coeff_c0."),
    "lifetime": rydberg.LIFETIME_NOTE,
}


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    value: float
    reference: float
    tolerance: str
    passed: bool

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return (f"[{tag}] {self.criterion:>2} {self.name}: {self.value:.6g} "
                f"(reference {self.reference:.6g}, {self.tolerance})")

    def to_dict(self):
        d = asdict(self)
        d["reference_value"] = d.pop("reference")
        return d


def _rel(criterion, name, value, ref, rtol):
    value, ref = float(value), float(ref)
    return Check(criterion, name, value, ref, f"rel {rtol:g}",
                 bool(abs(value - ref) <= rtol * abs(ref)))


def _abs(criterion, name, value, ref, atol):
    value, ref = float(value), float(ref)
    return Check(criterion, name, value, ref, f"abs {atol:g}", bool(abs(value - ref) <= atol))


def _flag(criterion, name, ok, value=None):
    return Check(criterion, name, float(ok if value is None else value), 1.0, "holds",
                 bool(ok))


def _f2(t0):
    return make_two_scale(SwitchProfile.exp_inverse(1.0), t0)


def _f1():
    return make_one_scale(SwitchProfile.exp_inverse(1.0))


def _norm_quad(sf):
    # independent of the package partition: scipy adaptive quadrature
    h = sf.half_width
    val, _ = integrate.quad(sf, -h, h, epsabs=0.0, epsrel=1e-13, limit=500,
                            points=[-h + sf.tau, 0.0, h - sf.tau])
    return val


def criterion_1():
    sf = _f2(50.0)
    return [_abs(1, "integral of f2 (t0 = 50 tau)", _norm_quad(sf), 1.0, 1e-8),
            _abs(1, "C2 at t0 = 50 tau", sf.norm_constant, 1.0, 0.05)]


def criterion_2():
    f1, f2 = _f1(), _f2(50.0)
    out = [_abs(2, "f1hat(0)", spectral.transform_values(f1, [0.0])[0], 1.0, 1e-10),
           _abs(2, "f2hat(0)", spectral.transform_values(f2, [0.0])[0], 1.0, 1e-10)]
    # Parseval: int f^2 dt = (1/pi) int_0^inf fhat^2 dw
    t_side = integrate.quad(lambda t: f1(t) ** 2, -1.0, 1.0, epsabs=0.0, epsrel=1e-12,
                            limit=200)[0]
    w_side = modesum.linear_field_variance(spectral.spectrum_callable(f1), 1.0, 0) / pi
    out.append(_rel(2, "Parseval ratio (f1)", w_side / t_side, 1.0, 0.01))
    return out


def fit_window_spectrum(sf, window=FIT_WINDOW, centers=24):
    """Transform on a grid clustered around the envelope maxima inside ``window``."""
    lo, hi = window
    period = np.pi / sf.half_width
    grid = spectral.envelope_grid(np.geomspace(lo - 1.0, hi + 1.0, centers), period)
    return spectral.fourier_transform(sf, grid)


def tail_fits(t0s=(50.0, 100.0)):
    fits = {"f1": spectral.fit_tail(fit_window_spectrum(_f1()), FIT_WINDOW, power=FIT_POWER)}
    for t0 in t0s:
        fits[f"f2_{t0:g}"] = spectral.fit_tail(fit_window_spectrum(_f2(t0)), FIT_WINDOW,
                                               power=FIT_POWER)
    return fits


def criterion_3():
    fits = tail_fits()
    f1, a, b = fits["f1"], fits["f2_50"], fits["f2_100"]
    beta0 = spectral.saddle_point_beta()
    out = []
    for key, fit in fits.items():
        out.append(_abs(3, f"eta ({key})", fit.eta, 0.5, 0.05))
        out.append(_rel(3, f"beta ({key}) vs saddle point", fit.beta, beta0, 0.05))
    out.append(_abs(3, "eta shared f1 / f2", a.eta - f1.eta, 0.0, 0.05))
    out.append(_rel(3, "beta shared f1 / f2", a.beta, f1.beta, 0.05))
    out.append(_rel(3, "gamma(50 tau)/gamma(100 tau)", a.gamma / b.gamma, 2.0, 0.10))
    return out


def criterion_4():
    p = dist.DistributionParams(ell=0.1)
    general = dist.x_star(p)
    special = dist.x_star_specialized(p.beta, p.tau, p.t0, p.ell)
    return [_abs(4, "c (p=7, eta=1/2)", dist.exponent_c(7, 0.5), 1 / 14, 0.0),
            _abs(4, "b (p=7, eta=1/2)", dist.exponent_b(7, 0.5), -9 / 7, 0.0),
            _abs(4, "c (p=3, eta=1/2)", dist.exponent_c(3, 0.5), 1 / 6, 0.0),
            _rel(4, "x* general / specialized", general / special, 1.0, 1e-14)]


def band_case(a_u2=10.0):
    """Default parameters and the x at which ``a x^(1/14)`` equals ``a_u2``."""
    p = dist.DistributionParams()
    return p, (a_u2 / p.a) ** 14


def criterion_5():
    p, x = band_case()
    quad = dist.band_quadrature(x, p)
    return [_rel(5, "0.676 x P(x) / band quadrature at a x^(1/14) = 10",
                 dist.band_probability(x, p) / quad, 1.0, 0.05),
            _abs(5, "1 - 2^(-1/14)", dist.band_step(), 0.0483, 1e-4)]


def criterion_6():
    tail = modesum.model_spectrum(1.0, sqrt(2.0), 0.5)
    # beta (Omega tau)^eta = 40 at Omega tau = 800
    conv = modesum.variance_vs_cutoff(tail, 7, 1.0, [800.0, 1600.0])
    flat = modesum.variance_vs_cutoff(modesum.flat_spectrum, 7, 0.5, [10.0, 20.0, 40.0])
    s1 = modesum.linear_field_variance(spectral.spectrum_callable(_f1()), 1.0)
    f1_2 = make_one_scale(SwitchProfile.exp_inverse(2.0))
    s2 = modesum.linear_field_variance(spectral.spectrum_callable(f1_2), 2.0)
    return [_abs(6, "variance change on cutoff doubling", conv[1] / conv[0] - 1.0, 0.0, 0.01),
            Check(6, "flat-spectrum growth over two doublings", flat[2] / flat[0], 10.0,
                  "> 10", bool(flat[2] / flat[0] > 10.0)),
            _rel(6, "sigma(2 tau)/sigma(tau)", s2 / s1, 2.0 ** -4, 0.01)]


def criterion_7():
    v = rydberg.v_bar(rydberg.AtomModel(50))
    v_fast = rydberg.v_bar(rydberg.AtomModel(50, beta=1 / sqrt(2.0)))
    base = v.value
    same = all(rydberg.v_bar(rydberg.AtomModel(n, tau=tau, t0=k * tau)).value == base
               for n in (30, 50, 77) for tau in (1e-15, 3e-15) for k in (2.0, 50.0, 400.0))
    return [_rel(7, "v_bar (beta = 1)", v.value, 2.1e-8, 0.15),
            _rel(7, "v_bar m/s (beta = 1)", v.si, 6.3, 0.15),
            _rel(7, "v_bar m/s (beta = 1/sqrt 2)", v_fast.si, 800.0, 0.15),
            _flag(7, "v_bar independent of tau, t0, n", same, base)]


def criterion_8():
    return [_rel(8, "v_T (1 uK, 1 u)", rydberg.v_thermal(1e-6, 1.0).value, 5e-10, 0.10),
            _rel(8, "v_R (1 eV, 1 u)", rydberg.v_recoil(1.0, 1.0).value, 1e-9, 0.10)]


def fig4_table(coefficient=FIG4_COEFFICIENT, n_range=FIG4_N):
    return rydberg.fig4_curve(n_range=n_range, coefficient=coefficient)


def criterion_9():
    tab = fig4_table()
    mono = tab.n.size > 1 and bool(np.all(np.diff(tab.probability) > 0))
    end = tab.probability[tab.n == 77]
    return [_flag(9, "P(x*) increasing on n = 20..77", mono and not tab.truncated),
            _abs(9, "P(x*) at n = 77", end[0] if end.size else np.nan, 0.019, 0.002),
            _rel(9, "tau/r0 coefficient vs 6000", rydberg.tau_over_r0_coefficient(),
                 rydberg.TAU_OVER_R0_ROUNDED, 0.06)]


def _determinism():
    a = spectral.fit_tail(fit_window_spectrum(_f1()), FIT_WINDOW, power=FIT_POWER).to_dict()
    b = spectral.fit_tail(fit_window_spectrum(_f1()), FIT_WINDOW, power=FIT_POWER).to_dict()
    return repr(sorted(a.items())) == repr(sorted(b.items()))


def criterion_10():
    atom = rydberg.AtomModel(50)
    atom2 = rydberg.AtomModel(50, beta=2.0)
    p1 = dist.DistributionParams(ell=0.1)
    p2 = dist.DistributionParams(ell=0.1, beta=2.0)
    pt = dist.DistributionParams(ell=0.1, t0=100.0)
    s = 2.0
    return [
        _rel(10, "v_bar(beta)/v_bar(2 beta)", rydberg.v_bar(atom).value
             / rydberg.v_bar(atom2).value, 2.0 ** 14, 1e-12),
        _rel(10, "x*(beta)/x*(2 beta)", p1.x_star / p2.x_star, 2.0 ** 14, 1e-12),
        _rel(10, "P(x*)(beta)/P(x*)(2 beta)", rydberg.prob_at_xstar(atom, s)
             / rydberg.prob_at_xstar(atom2, s), 2.0 ** 4, 1e-12),
        _rel(10, "a(2 t0)/a(t0)", pt.a / p1.a, 2.0 ** (1 / 14), 1e-12),
        _rel(10, "c0(2 t0)/c0(t0)", pt.c0 / p1.c0, 2.0 ** (-2 / 7), 1e-12),
        _flag(10, "byte-identical rerun", _determinism()),
    ]


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def run_all():
    checks = []
    for fn in CRITERIA.values():
        checks.extend(fn())
    return checks


def report(checks):
    return {"all_passed": all(c.passed for c in checks),
            "checks": [c.to_dict() for c in checks],
            "notes": dict(NOTES)}
