"""Switching profiles and normalized, compactly supported sampling functions.

Two families are built:

* the exp-inverse switch ``F(t) = exp(-tau/t)`` (t > 0), from which the
  two-timescale window ``f2(t) = C2/t0 * F(t + t0/2) * F(t0/2 - t)`` and its
  single-scale special case ``f1`` (t0 = 2 tau) are formed;
* the Johnson bump ``fJ(t) = C * exp(-beta^2 [1 - (t/tau)^2]^(1-a))`` on
  ``|t| < tau``.

Normalization constants are found numerically.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ConfigError
from .quadrature import adaptive_partition, integrate

_TINY = np.finfo(float).tiny
NORM_RTOL = 1e-12


class SwitchKind(str, Enum):
    EXP_INVERSE = "exp_inverse"
    JOHNSON = "johnson"


@dataclass(frozen=True)
class SwitchProfile:
    """A switching shape with rise scale ``tau``."""

    kind: SwitchKind = SwitchKind.EXP_INVERSE
    tau: float = 1.0
    johnson_a: float | None = None
    johnson_beta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", SwitchKind(self.kind))
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ConfigError(f"tau must be positive, got {self.tau}")
        if self.kind is SwitchKind.JOHNSON:
            if self.johnson_a is None or not self.johnson_a > 1:
                raise ConfigError("Johnson profile needs johnson_a > 1")
            if self.johnson_beta is None or not self.johnson_beta > 0:
                raise ConfigError("Johnson profile needs johnson_beta > 0")

    @classmethod
    def exp_inverse(cls, tau=1.0):
        return cls(SwitchKind.EXP_INVERSE, tau)

    @classmethod
    def johnson(cls, tau=1.0, a=2.0, beta=1.0):
        return cls(SwitchKind.JOHNSON, tau, johnson_a=a, johnson_beta=beta)


def _clamp(values):
    values[values < _TINY] = 0.0
    return values


def eval_switch(profile, t):
    """Exp-inverse switch ``exp(-tau/t)`` for t > 0, zero otherwise."""
    if profile.kind is not SwitchKind.EXP_INVERSE:
        raise ConfigError("eval_switch needs an exp-inverse profile")
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    pos = t > 0
    out[pos] = np.exp(-profile.tau / t[pos])
    out = _clamp(out)
    return out if out.ndim else float(out)


def _two_scale_shape(tau, t0, t):
    out = np.zeros(t.shape)
    half = 0.5 * t0
    inside = np.abs(t) < half
    ti = t[inside]
    out[inside] = np.exp(-(tau / (half + ti) + tau / (half - ti)))
    return _clamp(out)


def _johnson_shape(tau, a, beta, t):
    out = np.zeros(t.shape)
    inside = np.abs(t) < tau
    x = t[inside] / tau
    s = (1.0 - x) * (1.0 + x)
    out[inside] = np.exp(-beta ** 2 * s ** (1.0 - a))
    return _clamp(out)


@dataclass(frozen=True)
class SamplingFunction:
    """A normalized window supported on the open interval (-t0/2, t0/2).

    ``norm_constant`` is C1/C2 for exp-inverse windows (the value is
    ``norm_constant / t0`` times the switch product) and C for Johnson
    windows.
    """

    profile: SwitchProfile
    t0: float
    norm_constant: float
    edges: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def tau(self):
        return self.profile.tau

    @property
    def half_width(self):
        return 0.5 * self.t0

    @property
    def prefactor(self):
        if self.profile.kind is SwitchKind.JOHNSON:
            return self.norm_constant
        return self.norm_constant / self.t0

    def shape(self, t):
        """The unnormalized window."""
        t = np.asarray(t, dtype=float)
        p = self.profile
        if p.kind is SwitchKind.JOHNSON:
            return _johnson_shape(p.tau, p.johnson_a, p.johnson_beta, t)
        return _two_scale_shape(p.tau, self.t0, t)

    def __call__(self, t):
        out = self.prefactor * self.shape(t)
        return out if out.ndim else float(out)

    def __hash__(self):
        return hash((self.profile, self.t0, self.norm_constant))


def _partition(shape, half):
    return adaptive_partition(shape, -half, half, rtol=NORM_RTOL, initial_panels=16)


def make_two_scale(profile, t0):
    """Two-timescale window: switch-on at -t0/2, switch-off at t0/2."""
    if profile.kind is not SwitchKind.EXP_INVERSE:
        raise ConfigError("two-scale windows are built from the exp-inverse switch")
    if not t0 >= 2 * profile.tau:
        raise ConfigError(f"t0 must be >= 2 tau (t0={t0}, tau={profile.tau})")
    t0 = float(t0)

    def shape(t):
        return _two_scale_shape(profile.tau, t0, t)

    edges = _partition(shape, 0.5 * t0)
    raw = integrate(shape, edges) / t0
    return SamplingFunction(profile, t0, 1.0 / raw, edges)


def make_one_scale(profile):
    """Single-scale window f1, i.e. the two-scale window with t0 = 2 tau."""
    return make_two_scale(profile, 2.0 * profile.tau)


@lru_cache(maxsize=64)
def make_johnson(profile):
    """Normalized Johnson window supported on (-tau, tau)."""
    if profile.kind is not SwitchKind.JOHNSON:
        raise ConfigError("make_johnson needs a Johnson profile")
    tau, a, beta = profile.tau, profile.johnson_a, profile.johnson_beta

    def shape(t):
        return _johnson_shape(tau, a, beta, t)

    edges = _partition(shape, tau)
    return SamplingFunction(profile, 2.0 * tau, 1.0 / integrate(shape, edges), edges)


def eval_johnson(profile, t):
    """Normalized Johnson window ``fJ(t)``."""
    return make_johnson(profile)(t)


def switch_on_exponents(eta):
    """Switch-on exponent nu = eta / (1 - eta) of ``exp(-w t^-nu)``."""
    if not 0 < eta < 1:
        raise ConfigError(f"eta must lie in (0, 1), got {eta}")
    return eta / (1.0 - eta)


def johnson_nu(a):
    """Switch-on exponent of a Johnson window: nu = a - 1."""
    if not a > 1:
        raise ConfigError("johnson_a must exceed 1")
    return a - 1.0


def make_window(profile, t0=None):
    """Build the natural window for ``profile``: f2 (or f1 when t0 is None)
    for exp-inverse switches, fJ for Johnson ones."""
    if profile.kind is SwitchKind.JOHNSON:
        return make_johnson(profile)
    return make_one_scale(profile) if t0 is None else make_two_scale(profile, t0)
