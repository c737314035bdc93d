"""Tail of the probability distribution of a time-averaged quadratic operator.

For a window whose transform decays as ``exp(-beta |w tau|^eta)`` the
density of the dimensionless fluctuation ``x`` behaves for large ``x`` as
``P(x) ~ c0 x^b exp(-a x^c)``. The radiation-pressure operator on a
polarizable particle has ``p = 7``.
"""
from dataclasses import dataclass
from math import lgamma, log, pi

import numpy as np
from scipy import integrate

from .errors import ConfigError, RegimeError

WORLDLINE = "worldline"
SPACETIME = "spacetime"
RADIATION_PRESSURE_P = 7
# Smallest x for which the asymptotic tail is used.
X_MIN = 10.0
# 14 * (1 - 2**(-1/14)) rounded as in the band estimate.
BAND_FACTOR = 0.676
MIN_BAND_EXPONENT = 5.0


def _check_p(p):
    if isinstance(p, bool) or int(p) != p or p <= 0 or int(p) % 2 == 0:
        raise ConfigError(f"p must be an odd positive integer, got {p}")
    return int(p)


def _check_eta(eta):
    if not 0 < eta < 1:
        raise ConfigError(f"eta must lie in (0, 1), got {eta}")
    return float(eta)


def exponent_c(p, eta, regime=WORLDLINE):
    """Tail exponent ``c``: eta/p with time averaging only, eta once
    spatial averaging dominates."""
    p, eta = _check_p(p), _check_eta(eta)
    if regime == WORLDLINE:
        return eta / p
    if regime == SPACETIME:
        return eta
    raise ConfigError(f"unknown regime {regime!r}")


def exponent_b(p, eta):
    """Power-law exponent ``b = (2 - eta)/p - (eta + 1)``."""
    p, eta = _check_p(p), _check_eta(eta)
    return (2.0 - eta) / p - (eta + 1.0)


def _check_times(tau, t0):
    if not tau > 0:
        raise ConfigError("tau must be positive")
    if not t0 >= 2 * tau:
        raise ConfigError(f"t0 must be >= 2 tau (t0={t0}, tau={tau})")


def coeff_a(beta, tau, t0, eta=0.5):
    """``a = 2 beta (tau / (3 pi t0))^(-eta/7)`` for the p = 7 operator."""
    _check_times(tau, t0)
    eta = _check_eta(eta)
    if not beta > 0:
        raise ConfigError("beta must be positive")
    return 2.0 * beta * (tau / (3.0 * pi * t0)) ** (-eta / 7.0)


def coeff_c0(gamma0, beta, tau, t0, eta=0.5, experimental=False):
    """Prefactor ``c0`` of the p = 7 tail.

    Only the eta = 1/2 form, ``2 gamma0^2 / (pi^2 beta^8) (tau/(3 pi t0))^(2/7)``,
    is trusted. The general-eta expression carries the exponent
    ``2(4 eta - 7)/4`` on ``tau/(3 pi t0)``, which does not reduce to 2/7 at
    eta = 1/2; it is only available with ``experimental=True``.
    """
    _check_times(tau, t0)
    eta = _check_eta(eta)
    if not (gamma0 > 0 and beta > 0):
        raise ConfigError("gamma0 and beta must be positive")
    ratio = tau / (3.0 * pi * t0)
    if eta == 0.5:
        return 2.0 * gamma0 ** 2 / (pi ** 2 * beta ** 8) * ratio ** (2.0 / 7.0)
    if not experimental:
        raise ConfigError("c0 is only established for eta = 1/2; pass experimental=True "
                          "for the unverified general-eta expression")
    return (gamma0 ** 2 / (128.0 * pi ** 2 * (beta * eta) ** 8)
            * ratio ** (2.0 * (4.0 * eta - 7.0) / 4.0))


@dataclass(frozen=True)
class DistributionParams:
    """Inputs of the tail formula and the constants derived from them.

    ``a``, ``c0`` and ``x_star`` follow the p = 7 radiation-pressure
    formulas and raise for other ``p``. ``ell`` (spatial averaging scale) is
    only needed for ``x_star``.
    """

    p: int = RADIATION_PRESSURE_P
    eta: float = 0.5
    beta: float = 1.0
    gamma0: float = 1.0
    tau: float = 1.0
    t0: float = 50.0
    ell: float | None = None
    experimental_c0: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", _check_p(self.p))
        _check_eta(self.eta)
        if not (self.beta > 0 and self.gamma0 > 0):
            raise ConfigError("beta and gamma0 must be positive")
        _check_times(self.tau, self.t0)
        if self.ell is not None and not self.ell > 0:
            raise ConfigError("ell must be positive")

    def _need_p7(self, what):
        if self.p != RADIATION_PRESSURE_P:
            raise ConfigError(f"{what} is only defined for the p = 7 operator")

    @property
    def c(self):
        return exponent_c(self.p, self.eta)

    @property
    def b(self):
        return exponent_b(self.p, self.eta)

    @property
    def a(self):
        self._need_p7("a")
        return coeff_a(self.beta, self.tau, self.t0, self.eta)

    @property
    def c0(self):
        self._need_p7("c0")
        return coeff_c0(self.gamma0, self.beta, self.tau, self.t0, self.eta,
                        self.experimental_c0)

    @property
    def x_star(self):
        return x_star(self)

    def summary(self):
        out = {"p": self.p, "eta": self.eta, "beta": self.beta, "gamma0": self.gamma0,
               "tau": self.tau, "t0": self.t0, "ell": self.ell,
               "b": self.b, "c": self.c, "c_spacetime": exponent_c(self.p, self.eta, SPACETIME)}
        if self.p == RADIATION_PRESSURE_P:
            out["a"] = self.a
            try:
                out["c0"] = self.c0
            except ConfigError:
                out["c0"] = None
            out["x_star"] = self.x_star if self.ell is not None else None
        return out


def x_star(params):
    """Crossover ``(2/a)^(p/eta) (tau/ell)^p`` above which spatial averaging matters."""
    if params.ell is None:
        raise ConfigError("x_star needs the spatial scale ell")
    return (2.0 / params.a) ** (params.p / params.eta) * (params.tau / params.ell) ** params.p


def x_star_specialized(beta, tau, t0, ell):
    """p = 7, eta = 1/2 form ``beta^-14 (tau/(3 pi t0)) (tau/ell)^7``."""
    return beta ** -14 * (tau / (3.0 * pi * t0)) * (tau / ell) ** 7


def _tail(x, params, regime):
    c = exponent_c(params.p, params.eta, regime)
    return params.c0 * x ** params.b * np.exp(-params.a * x ** c)


def pdf_tail(x, params, regime=WORLDLINE, symmetric=False):
    """Asymptotic density ``c0 x^b exp(-a x^c)`` for ``x >= 10``.

    With ``symmetric=True`` the even extension ``P(x) = P(-x)`` is used, so
    ``x <= -10`` is accepted too.
    """
    x = np.asarray(x, dtype=float)
    mag = np.abs(x) if symmetric else x
    if np.any(mag < X_MIN):
        raise RegimeError(f"the tail formula needs x >= {X_MIN:g}"
                          + (" in magnitude" if symmetric else ""))
    out = _tail(mag, params, regime)
    return out if out.ndim else float(out)


def _need_band_case(params):
    if params.p != RADIATION_PRESSURE_P or params.eta != 0.5:
        raise ConfigError("the band estimate is derived for p = 7, eta = 1/2")


def band_probability(x, params):
    """Probability of an outcome in [x/2, x]: ``0.676 c0 x^(-2/7) exp(-a x^(1/14))``."""
    _need_band_case(params)
    x = np.asarray(x, dtype=float)
    if np.any(x < X_MIN):
        raise RegimeError(f"band probability needs x >= {X_MIN:g}")
    a = params.a
    if np.any(a * x ** (1.0 / 14.0) < MIN_BAND_EXPONENT):
        raise RegimeError("band estimate needs a x^(1/14) >= 5")
    out = BAND_FACTOR * params.c0 * x ** (-2.0 / 7.0) * np.exp(-a * x ** (1.0 / 14.0))
    return out if out.ndim else float(out)


def band_step():
    """Relative width ``1 - 2^(-1/14)`` of the band in ``u = x^(1/14)``."""
    return 1.0 - 2.0 ** (-1.0 / 14.0)


def band_quadrature(x, params, regime=WORLDLINE):
    """Direct quadrature of the tail density over [x/2, x]."""
    if x / 2 < X_MIN:
        raise RegimeError(f"band quadrature needs x/2 >= {X_MIN:g}")
    # integrate in u = ln y for a well-scaled integrand
    val, _ = integrate.quad(lambda s: float(_tail(np.exp(s), params, regime)) * np.exp(s),
                            log(x / 2), log(x), epsabs=0.0, epsrel=1e-12, limit=200)
    return val


def log_moment(n, params, regime=WORLDLINE, x_min=X_MIN):
    """``ln int_{x_min}^inf x^n P(x) dx`` for the tail density, by quadrature in ln x."""
    c = exponent_c(params.p, params.eta, regime)
    a, b, c0 = params.a, params.b, params.c0
    k = n + b + 1.0

    def g(s):
        return k * s - a * np.exp(c * s)

    s_lo = log(x_min)
    # peak of the integrand in s, clamped to the domain
    s_pk = max(s_lo, log(k / (a * c)) / c) if k > 0 else s_lo
    g_pk = g(s_pk)
    width = 1.0 / (c * np.sqrt(max(k, 1.0)))
    s_hi = s_pk + 60.0 * width + 50.0 / c
    val, _ = integrate.quad(lambda s: np.exp(g(s) - g_pk), s_lo, s_hi, epsabs=0.0,
                            epsrel=1e-11, limit=400, points=[s_pk] if s_pk > s_lo else None)
    return log(c0) + g_pk + log(val)


def log_moment_gamma(n, params, regime=WORLDLINE):
    """Closed form of :func:`log_moment` with the lower limit taken to 0:
    ``ln[c0 Gamma(k/c) / (c a^(k/c))]`` with ``k = n + b + 1``."""
    c = exponent_c(params.p, params.eta, regime)
    k = n + params.b + 1.0
    if k <= 0:
        raise ConfigError("moment does not exist from 0 for this order")
    return log(params.c0) - log(c) - (k / c) * log(params.a) + lgamma(k / c)
