"""Finite-mode sums for the variance of a time-averaged quadratic operator.

With discrete modes the averaged operator is
``sum_ij A_ij a_i^dag a_j + B_ij (a_i a_j + h.c.)``; in the vacuum only the
``B`` part contributes to the second moment, ``mu2 = 2 sum_ij B_ij^2``.
The first moment vanishes by normal ordering, so no diagonal vacuum term
appears anywhere below.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConvergenceError
from .quadrature import gauss_legendre


@dataclass(frozen=True)
class ModeSet:
    """Mode frequencies and their discretization weights."""

    omegas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.omegas, dtype=float)
        m = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.shape != m.shape or w.size == 0:
            raise ConfigError("omegas and weights must be equal-length 1-D arrays")
        if np.any(w <= 0) or np.any(m <= 0) or not np.all(np.isfinite(w)):
            raise ConfigError("mode frequencies and weights must be positive")
        if np.any(np.diff(w) < 0):
            raise ConfigError("mode frequencies must be sorted")
        object.__setattr__(self, "omegas", w)
        object.__setattr__(self, "weights", m)

    def __len__(self):
        return self.omegas.size


def uniform_modes(cutoff, n):
    """Nodes ``k * cutoff / n`` for k = 1..n with trapezoid weights."""
    if not cutoff > 0 or n < 1:
        raise ConfigError("need cutoff > 0 and at least one mode")
    h = cutoff / n
    omegas = h * np.arange(1, n + 1)
    weights = np.full(n, h)
    weights[-1] = 0.5 * h
    return ModeSet(omegas, weights)


@dataclass(frozen=True)
class CouplingMatrices:
    A: np.ndarray
    B: np.ndarray
    p: int
    prefactor: float = 1.0


def _eval_spectrum(spectrum, args):
    """Evaluate ``spectrum`` once per distinct argument."""
    vals, inv = np.unique(args, return_inverse=True)
    try:
        out = np.asarray(spectrum(vals), dtype=float)
    except Exception as exc:  # a failing spectrum is reported, not propagated raw
        raise ConvergenceError(f"spectrum evaluation failed: {exc}") from exc
    if out.shape != vals.shape or not np.all(np.isfinite(out)):
        raise ConvergenceError("spectrum returned non-finite or misshaped values")
    return out[inv].reshape(args.shape)


def build_couplings(modes, p, spectrum, prefactor=1.0):
    """Fill A and B with ``prefactor w_i w_j (w_i w_j)^(p/2-1) fhat(w_i -+ w_j)``.

    ``spectrum`` must be even; it is only called with nonnegative arguments
    up to twice the largest mode frequency.
    """
    if isinstance(p, bool) or int(p) != p or p <= 0 or int(p) % 2 == 0:
        raise ConfigError(f"p must be an odd positive integer, got {p}")
    w, m = modes.omegas, modes.weights
    k = prefactor * np.outer(m * w ** (p / 2 - 1), m * w ** (p / 2 - 1))
    diff = np.abs(w[:, None] - w[None, :])
    A = k * _eval_spectrum(spectrum, diff)
    B = k * _eval_spectrum(spectrum, w[:, None] + w[None, :])
    return CouplingMatrices(A, B, int(p), float(prefactor))


def variance(c):
    """Second moment ``2 sum_ij B_ij^2``."""
    return 2.0 * float(np.sum(np.square(c.B).ravel()))


def model_spectrum(gamma, beta, eta, tau=1.0):
    """Even stretched-exponential spectrum ``gamma exp(-beta |w tau|^eta)``."""
    def fhat(w):
        return gamma * np.exp(-beta * np.abs(np.asarray(w) * tau) ** eta)
    return fhat


def flat_spectrum(w):
    """Spectrum of an instantaneous (unaveraged) measurement."""
    return np.ones(np.shape(w))


def variance_vs_cutoff(spectrum, p, spacing, cutoffs, prefactor=1.0):
    """Variance on uniform grids of fixed spacing for each cutoff."""
    out = []
    for cut in cutoffs:
        n = int(round(cut / spacing))
        out.append(variance(build_couplings(uniform_modes(n * spacing, n), p, spectrum,
                                            prefactor)))
    return np.array(out)


def linear_field_variance(spectrum, tau, spectral_power=3, rtol=1e-6, panels_per_tau=2,
                          order=32, chunk=64, max_omega_tau=1.0e4):
    """``int_0^inf w^k |fhat(w)|^2 dw`` by composite Gauss-Legendre panels.

    Panels of width ``1/(panels_per_tau * tau)`` are added in chunks until a
    chunk contributes less than ``rtol/100`` of the running total, which
    bounds the truncation error well below ``rtol`` for a decaying tail.
    """
    if not tau > 0:
        raise ConfigError("tau must be positive")
    x, wx = gauss_legendre(order)
    h = 1.0 / (panels_per_tau * tau)
    total, start = 0.0, 0.0
    while start * tau < max_omega_tau:
        edges = start + h * np.arange(chunk + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        t = (mid[:, None] + 0.5 * h * x[None, :]).ravel()
        vals = np.asarray(spectrum(t), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise ConvergenceError("spectrum returned non-finite values")
        part = float(np.sum(np.tile(0.5 * h * wx, chunk) * t ** spectral_power * vals ** 2))
        total += part
        start = edges[-1]
        if total > 0 and abs(part) <= 0.01 * rtol * total:
            return total
    raise ConvergenceError(
        f"linear-field integral not converged by omega tau = {max_omega_tau:g}")
