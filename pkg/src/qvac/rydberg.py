"""Recoil estimates for an atom whose polarizability is switched on by a pulse.

Quantities are evaluated in natural units (hbar = c = 1) with lengths in
metres, so masses become inverse lengths ``m c / hbar`` and speeds are
fractions of ``c``. Each speed is returned together with its SI value.
"""
from dataclasses import dataclass, field
from functools import cached_property
from math import exp, pi, sqrt
from typing import NamedTuple

import numpy as np
from scipy import constants as sc

from .errors import ConfigError, RegimeError
from .sampling import SwitchProfile, make_two_scale

# Excited-state lifetime grows as n^3; no coefficient is used.
LIFETIME_NOTE = "radiative lifetime scales as n^3; t0 must stay below it"
# tau / r0 at tau = 1 fs in the rounded form 6000 / n^2
TAU_OVER_R0_ROUNDED = 6000.0
# value used when tau / r0 is written as (77/n)^2
TAU_OVER_R0_77 = 77.0 ** 2
PROB_PREFACTOR = 0.14


def _codata(name):
    return sc.physical_constants[name][0]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar_c_mev_fm: float = _codata("reduced Planck constant times c in MeV fm")
    amu_mev: float = _codata("atomic mass constant energy equivalent in MeV")
    bohr_radius_m: float = _codata("Bohr radius")
    boltzmann_ev_per_k: float = _codata("Boltzmann constant in eV/K")
    c_light: float = sc.c

    def mass_per_metre(self, mass_amu):
        """``m c / hbar`` in 1/m."""
        return mass_amu * self.amu_mev / (self.hbar_c_mev_fm * 1e-15)


CODATA = PhysicalConstants()


class Speed(NamedTuple):
    value: float  # fraction of c
    si: float     # m/s


def _speed(v, constants):
    return Speed(v, v * constants.c_light)


@dataclass(frozen=True)
class AtomModel:
    """Hydrogen-like atom with principal quantum number ``n``.

    ``tau`` and ``t0`` are in seconds; ``t0`` defaults to ``50 tau``.
    ``alpha0`` (m^3) and ``r0`` (m) default to ``n^7 a0^3`` and ``n^2 a0``.
    """

    n: int
    mass_amu: float = 1.0
    tau: float = 1e-15
    t0: float | None = None
    beta: float = 1.0
    gamma0: float = 1.0
    alpha0: float | None = None
    r0: float | None = None
    constants: PhysicalConstants = field(default=CODATA, repr=False)

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if not (self.mass_amu > 0 and self.tau > 0 and self.beta > 0 and self.gamma0 > 0):
            raise ConfigError("mass, tau, beta and gamma0 must be positive")
        if self.t0 is None:
            object.__setattr__(self, "t0", 50.0 * self.tau)
        if not self.t0 >= 2 * self.tau:
            raise ConfigError("t0 must be >= 2 tau")
        a0 = self.constants.bohr_radius_m
        if self.alpha0 is None:
            object.__setattr__(self, "alpha0", self.n ** 7 * a0 ** 3)
        if self.r0 is None:
            object.__setattr__(self, "r0", self.n ** 2 * a0)
        if not (self.alpha0 > 0 and self.r0 > 0):
            raise ConfigError("alpha0 and r0 must be positive")

    @property
    def tau_length(self):
        """``c tau`` in metres."""
        return self.constants.c_light * self.tau

    @property
    def tau_over_r0(self):
        return self.tau_length / self.r0

    @property
    def worldline_valid(self):
        return self.tau_length >= self.r0

    @cached_property
    def window(self):
        """The two-scale window in units of tau."""
        return make_two_scale(SwitchProfile.exp_inverse(1.0), self.t0 / self.tau)


def alpha_squared_profile(atom, t):
    """``alpha0^2 t0 f2(t)`` for times ``t`` in seconds."""
    t = np.asarray(t, dtype=float)
    out = atom.alpha0 ** 2 * (atom.t0 / atom.tau) * atom.window(t / atom.tau)
    return out if np.ndim(out) else float(out)


def force_bar(atom, x):
    """Mean radiation-pressure force ``alpha0^2 x / (6 pi tau^8)`` in 1/m^2."""
    return atom.alpha0 ** 2 * x / (6.0 * pi * atom.tau_length ** 8)


def force_bar_si(atom, x):
    """:func:`force_bar` in newtons."""
    hbar_c = atom.constants.hbar_c_mev_fm * 1e-15 * sc.mega * sc.e  # J m
    return force_bar(atom, x) * hbar_c


def x_star_atom(atom):
    """Worldline crossover ``beta^-14 (tau/(3 pi t0)) (tau/r0)^7`` with ell = r0."""
    return atom.beta ** -14 * (atom.tau / (3.0 * pi * atom.t0)) * atom.tau_over_r0 ** 7


def v_bar(atom):
    """Recoil speed ``alpha0^2 / (18 pi^2 m beta^14 r0^7)``.

    Evaluated as the reference value ``1 / (18 pi^2 m_u a0 beta^14)`` times
    ``(1u/m) (alpha0/(n^7 a0^3))^2 (n^2 a0/r0)^7``; at default polarizability
    and radius the last two factors are exactly one.
    """
    k = atom.constants
    a0 = k.bohr_radius_m
    base = 1.0 / (18.0 * pi ** 2 * k.mass_per_metre(1.0) * a0 * atom.beta ** 14)
    ratio = ((1.0 / atom.mass_amu)
             * (atom.alpha0 / (atom.n ** 7 * a0 ** 3)) ** 2
             * (atom.n ** 2 * a0 / atom.r0) ** 7)
    return _speed(base * ratio, k)


def v_thermal(temperature, mass_amu, constants=CODATA):
    """RMS thermal speed ``sqrt(3 kB T / (m c^2))``."""
    if not (temperature > 0 and mass_amu > 0):
        raise ConfigError("temperature and mass must be positive")
    mc2 = mass_amu * constants.amu_mev * 1e6
    return _speed(sqrt(3.0 * constants.boltzmann_ev_per_k * temperature / mc2), constants)


def v_recoil(photon_energy, mass_amu, constants=CODATA):
    """Single-photon recoil ``E / (m c^2)``; energy in eV."""
    if not (photon_energy > 0 and mass_amu > 0):
        raise ConfigError("photon energy and mass must be positive")
    return _speed(photon_energy / (mass_amu * constants.amu_mev * 1e6), constants)


def _check_worldline(s):
    if s < 1.0:
        raise RegimeError(f"worldline approximation needs tau >= r0 (tau/r0 = {s:.6g})")


def prob_at_xstar(atom, tau_over_r0=None):
    """``0.14 gamma0^2 beta^-4 (r0/tau) exp(-2 sqrt(tau/r0))``.

    ``tau_over_r0`` overrides the value computed from the atom, e.g. with a
    rounded coefficient.
    """
    s = atom.tau_over_r0 if tau_over_r0 is None else tau_over_r0
    _check_worldline(s)
    return PROB_PREFACTOR * atom.gamma0 ** 2 * atom.beta ** -4 / s * exp(-2.0 * sqrt(s))


def prob_at_xstar_chain(atom, tau_over_r0=None):
    """Band probability at x* built from the distribution constants.

    Substituting ``x*`` into ``0.676 c0 x^(-2/7) exp(-a x^(1/14))`` gives
    ``(1.352/pi^2) gamma0^2 beta^-4 (r0/tau)^2 exp(-2 sqrt(tau/r0))``.
    """
    s = atom.tau_over_r0 if tau_over_r0 is None else tau_over_r0
    _check_worldline(s)
    return (2 * 0.676 / pi ** 2) * atom.gamma0 ** 2 * atom.beta ** -4 / s ** 2 \
        * exp(-2.0 * sqrt(s))


def tau_over_r0_coefficient(tau=1e-15, constants=CODATA):
    """``C`` in ``tau/r0 = C / n^2``."""
    return constants.c_light * tau / constants.bohr_radius_m


@dataclass(frozen=True)
class Fig4Table:
    n: np.ndarray
    tau_over_r0: np.ndarray
    probability: np.ndarray
    excluded: tuple = ()

    @property
    def empty(self):
        return self.n.size == 0

    @property
    def truncated(self):
        return bool(self.excluded)


def fig4_curve(tau=1e-15, beta=1.0, gamma0=1.0, n_range=range(20, 78), mass_amu=1.0,
               coefficient=None, constants=CODATA):
    """``P(x*)`` against n. Entries with ``tau < r0`` are dropped and listed
    in ``excluded``; ``coefficient`` replaces the exact ``C`` in
    ``tau/r0 = C/n^2``."""
    coef = tau_over_r0_coefficient(tau, constants) if coefficient is None else coefficient
    kept, ratios, probs, dropped = [], [], [], []
    for n in n_range:
        atom = AtomModel(int(n), mass_amu=mass_amu, tau=tau, beta=beta, gamma0=gamma0,
                         constants=constants)
        s = coef / n ** 2
        if s < 1.0:
            dropped.append(int(n))
            continue
        kept.append(int(n))
        ratios.append(s)
        probs.append(prob_at_xstar(atom, s))
    return Fig4Table(np.array(kept, dtype=int), np.array(ratios), np.array(probs),
                     tuple(dropped))
