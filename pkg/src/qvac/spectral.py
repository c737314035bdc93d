"""Fourier transforms of sampling functions and stretched-exponential tail fits.

The transform convention is ``fhat(w) = int f(t) exp(-i w t) dt``. Windows
here are real and even, so ``fhat`` is the cosine transform.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import ConfigError, FitError, RegimeError
from .quadrature import adaptive_partition, oscillatory_transform
from .sampling import SwitchKind, eval_switch, make_two_scale

TRANSFORM_RTOL = 1e-10
TRANSFORM_ATOL = 1e-13
ETA_BOUNDS = (0.2, 0.8)
MIN_ENVELOPE_POINTS = 6


@dataclass(frozen=True)
class SpectrumGrid:
    """Transform values tabulated on an increasing, nonnegative omega grid."""

    omegas: np.ndarray
    values: np.ndarray
    tau_ref: float

    def __post_init__(self):
        w = np.asarray(self.omegas, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if w.ndim != 1 or w.shape != v.shape:
            raise ConfigError("omegas and values must be 1-d arrays of equal length")
        if w.size and (w[0] < 0 or np.any(np.diff(w) <= 0)):
            raise ConfigError("omegas must be nonnegative and strictly increasing")
        if not self.tau_ref > 0:
            raise ConfigError("tau_ref must be positive")
        object.__setattr__(self, "omegas", w)
        object.__setattr__(self, "values", v)

    @property
    def omega_tau(self):
        return self.omegas * self.tau_ref


@dataclass(frozen=True)
class TailFit:
    """Fitted envelope ``gamma * (w tau)^power * exp(-beta (w tau)^eta)``.

    ``power`` is zero unless a power-law prefactor was requested.
    ``rms_residual`` is measured in natural-log magnitude.
    """

    gamma: float
    beta: float
    eta: float
    fit_window: tuple
    rms_residual: float
    tau_ref: float = 1.0
    power: float = 0.0
    n_points: int = 0
    points: tuple = field(default=(), repr=False, compare=False)

    def evaluate(self, omegas):
        x = np.abs(np.asarray(omegas, dtype=float)) * self.tau_ref
        return self.gamma * x ** self.power * np.exp(-self.beta * x ** self.eta)

    def to_dict(self):
        return {
            "beta": self.beta,
            "eta": self.eta,
            "gamma": self.gamma,
            "n_points": self.n_points,
            "power": self.power,
            "rms_residual": self.rms_residual,
            "tau_ref": self.tau_ref,
            "window": list(self.fit_window),
        }


def transform_values(sf, omegas, rtol=TRANSFORM_RTOL, atol=TRANSFORM_ATOL, backend=None):
    """``fhat`` of a sampling function at arbitrary (signed, unordered) omegas."""
    omegas = np.asarray(omegas, dtype=float)
    uniq, inverse = np.unique(np.abs(omegas.ravel()), return_inverse=True)
    vals = oscillatory_transform(sf, sf.edges, uniq, "cos", rtol=rtol, atol=atol,
                                 backend=backend)
    return vals[inverse].reshape(omegas.shape)


def fourier_transform(sf, omegas, rtol=TRANSFORM_RTOL, atol=TRANSFORM_ATOL, backend=None):
    """Tabulate ``fhat`` of ``sf`` on a nonnegative, increasing grid."""
    omegas = np.asarray(omegas, dtype=float)
    if omegas.ndim != 1 or (omegas.size and omegas[0] < 0) or np.any(np.diff(omegas) <= 0):
        raise ConfigError("omegas must be nonnegative and strictly increasing")
    vals = oscillatory_transform(sf, sf.edges, omegas, "cos", rtol=rtol, atol=atol,
                                 backend=backend)
    return SpectrumGrid(omegas, vals, sf.tau)


def spectrum_callable(sf, **kwargs):
    """Wrap ``sf`` as a vectorized ``omega -> fhat(omega)`` callable."""
    return lambda w: transform_values(sf, w, **kwargs)


def envelope_grid(centers, period, per_period=16, span=1.5):
    """Clustered omega grid: a short dense patch around every center.

    Each patch covers ``span`` oscillation periods of ``|fhat|`` so that it
    holds at least one interior local maximum. For a window of half-width
    ``L`` the period of ``|fhat|`` is ``pi / L``.
    """
    centers = np.sort(np.asarray(centers, dtype=float))
    n = int(np.ceil(span * per_period)) + 1
    offsets = (np.arange(n) - (n - 1) / 2) * (period / per_period)
    grid = np.unique((centers[:, None] + offsets[None, :]).ravel())
    return grid[grid >= 0]


def _sign_changes(v):
    s = np.sign(v[v != 0])
    return bool(np.any(s[1:] != s[:-1]))


def envelope(spec, window):
    """Envelope points ``(omega, |fhat|)`` of ``spec`` inside ``window``.

    Non-oscillating data is returned as is. Otherwise the local maxima of
    ``|fhat|`` are located and refined by a parabola through the three
    points around each maximum in (omega, log|fhat|). Maxima that sit on an
    isolated edge of a clustered grid are ignored.
    """
    lo, hi = window
    w, v = spec.omegas, spec.values
    inside = (w >= lo) & (w <= hi)
    if not _sign_changes(v[inside]):
        keep = inside & (v != 0)
        return w[keep], np.abs(v[keep])
    m = np.abs(v)
    gaps = np.diff(w)
    dense = 2.0 * np.median(gaps)
    i = np.arange(1, w.size - 1)
    cand = i[(m[i] >= m[i - 1]) & (m[i] > m[i + 1]) & inside[i]
             & (gaps[i - 1] <= dense) & (gaps[i] <= dense) & (m[i - 1] > 0) & (m[i + 1] > 0)]
    x0, x1, x2 = w[cand - 1], w[cand], w[cand + 1]
    y0, y1, y2 = np.log(m[cand - 1]), np.log(m[cand]), np.log(m[cand + 1])
    d01, d12 = (y1 - y0) / (x1 - x0), (y2 - y1) / (x2 - x1)
    curv = (d12 - d01) / (x2 - x0)
    with np.errstate(divide="ignore", invalid="ignore"):
        xv = 0.5 * (x0 + x1) - d01 / (2 * curv)
    ok = curv < 0
    xv = np.where(ok, np.clip(xv, x0, x2), x1)
    yv = np.where(ok, y1 + d01 * (xv - x1) + curv * (xv - x0) * (xv - x1), y1)
    return xv, np.exp(yv)


def _linear_fit(x, y, eta, power):
    cols = [np.ones_like(x), -(x ** eta)]
    target = y
    if power == "free":
        cols.append(np.log(x))
    elif power:
        target = y - power * np.log(x)
    a = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(a, target, rcond=None)
    resid = target - a @ coef
    q = coef[2] if power == "free" else float(power or 0.0)
    return coef[0], coef[1], q, float(np.sqrt(np.mean(resid ** 2)))


def fit_tail(spec, window, fix_eta=None, power=None, eta_bounds=ETA_BOUNDS, eta_step=0.01):
    """Least-squares fit of ``log|fhat| = log gamma - beta (w tau)^eta``.

    ``power`` adds a prefactor ``(w tau)^power``: ``None`` (default) leaves
    it out, a number fixes it, and ``"free"`` fits it. With ``fix_eta`` the
    problem is linear; otherwise eta is scanned on a grid over
    ``eta_bounds`` and the best grid point is polished by golden-section
    search.
    """
    lo, hi = window
    w = spec.omegas
    if not (w.size and lo < hi and lo >= w[0] and hi <= w[-1]):
        raise ConfigError(f"fit window {window} is not inside the grid")
    if lo * spec.tau_ref < 5:
        raise RegimeError("fit window must start at omega * tau >= 5")
    ew, em = envelope(spec, window)
    if ew.size < MIN_ENVELOPE_POINTS:
        raise FitError(f"only {ew.size} envelope points in window {window}; "
                       f"need {MIN_ENVELOPE_POINTS}")
    x, y = ew * spec.tau_ref, np.log(em)

    def resid(eta):
        return _linear_fit(x, y, eta, power)[3]

    if fix_eta is not None:
        if not 0 < fix_eta < 1:
            raise ConfigError("fix_eta must lie in (0, 1)")
        eta = float(fix_eta)
    else:
        grid = np.arange(eta_bounds[0], eta_bounds[1] + 0.5 * eta_step, eta_step)
        r = np.array([resid(e) for e in grid])
        k = int(np.argmin(r))
        if 0 < k < grid.size - 1:
            eta = float(optimize.golden(resid, brack=(grid[k - 1], grid[k], grid[k + 1]),
                                        tol=1e-12))
        else:
            eta = float(grid[k])
    log_gamma, beta, q, rms = _linear_fit(x, y, eta, power)
    if not beta > 0:
        raise FitError(f"fitted beta={beta:.4g} is not positive; data not in a decaying tail")
    return TailFit(float(np.exp(log_gamma)), float(beta), eta, (float(lo), float(hi)),
                   rms, spec.tau_ref, float(q), int(ew.size), (tuple(ew), tuple(em)))


def saddle_point_beta(nu=1.0):
    """Stretched-exponential rate of the transform of ``exp(-tau/t)``.

    The phase ``-tau/t - i w t`` is stationary at ``t = sqrt(tau/(i w))``
    where it equals ``-2 sqrt(i w tau)``, whose real part is
    ``-sqrt(2) sqrt(w tau)``. Only ``nu = 1`` is supported.
    """
    if nu != 1.0:
        raise ConfigError("closed-form saddle rate is only available for nu = 1")
    return float(np.sqrt(2.0))


def saddle_point_envelope(omegas, tau=1.0, w_scale=1.0):
    """Leading saddle-point magnitude of ``int_0^inf exp(-w_scale*tau/t - i w t) dt``.

    ``|.| ~ sqrt(pi) (w_scale tau)^(1/4) w^(-3/4) exp(-sqrt(2 w w_scale tau))``.
    """
    omegas = np.asarray(omegas, dtype=float)
    c = w_scale * tau
    return np.sqrt(np.pi) * c ** 0.25 * omegas ** -0.75 * np.exp(-np.sqrt(2 * omegas * c))


def _smooth_cutoff(t, t_max):
    # 1 on [0, t_max/2], C-infinity taper to 0 at t_max
    u = np.clip((t_max - t) / (0.5 * t_max), 0.0, 1.0)
    out = np.ones_like(u)
    mid = (u > 0) & (u < 1)
    um = u[mid]
    a, b = np.exp(-1.0 / um), np.exp(-1.0 / (1.0 - um))
    out[mid] = a / (a + b)
    out[u <= 0] = 0.0
    return out


def regularized_switch_transform(profile, omegas, t_max, rtol=TRANSFORM_RTOL, backend=None):
    """Complex transform of the switch ``F`` after time-windowing to [0, t_max].

    The window is 1 up to ``t_max/2`` and tapers smoothly to 0 at ``t_max``,
    so the far end only adds a contribution that is negligible next to the
    switch-on term for ``t_max >> tau``.
    """
    if profile.kind is not SwitchKind.EXP_INVERSE:
        raise ConfigError("regularized transform needs an exp-inverse profile")

    def g(t):
        return eval_switch(profile, t) * _smooth_cutoff(t, t_max)

    edges = adaptive_partition(g, 0.0, t_max, rtol=1e-12, initial_panels=64)
    omegas = np.asarray(omegas, dtype=float)
    atol = TRANSFORM_ATOL * t_max
    c = oscillatory_transform(g, edges, omegas, "cos", rtol=rtol, atol=atol, backend=backend)
    s = oscillatory_transform(g, edges, omegas, "sin", rtol=rtol, atol=atol, backend=backend)
    return c - 1j * s


@dataclass(frozen=True)
class TailRelation:
    """Envelope of ``f2hat`` against the switch-transform prediction.

    ``predicted = 2 * C2 * F(t0) / t0 * |Fhat_reg|``: each endpoint of the
    even window contributes ``C2 F(t0)/t0`` times the switch-on transform,
    and the two conjugate contributions give an envelope of twice that.
    """

    t0: float
    tau: float
    c2: float
    omegas: np.ndarray
    direct: np.ndarray
    predicted: np.ndarray

    @property
    def ratio(self):
        return self.direct / self.predicted

    @property
    def max_deviation(self):
        return float(np.max(np.abs(self.ratio - 1.0)))


def two_scale_tail_relation(profile, t0, omega_grid, t_max_factor=10.0, tolerance=0.2,
                            backend=None):
    """Check that the tail of ``f2hat`` follows the regularized switch transform."""
    tau = profile.tau
    if t0 < 20 * tau:
        raise RegimeError("tail relation needs t0 >= 20 tau")
    omega_grid = np.asarray(omega_grid, dtype=float)
    if np.any(omega_grid * tau < 5):
        raise RegimeError("tail relation needs omega * tau >= 5 on the whole grid")
    if t_max_factor < 10:
        raise ConfigError("t_max must be at least 10 t0")
    sf = make_two_scale(profile, t0)
    spec = fourier_transform(sf, omega_grid, backend=backend)
    ew, em = envelope(spec, (omega_grid[0], omega_grid[-1]))
    if ew.size == 0:
        raise FitError("no envelope points found on the grid")
    fhat = regularized_switch_transform(profile, ew, t_max_factor * t0, backend=backend)
    pred = 2.0 * sf.norm_constant * eval_switch(profile, t0) / t0 * np.abs(fhat)
    rel = TailRelation(float(t0), tau, sf.norm_constant, ew, em, pred)
    if rel.max_deviation > tolerance:
        raise RegimeError(f"f2 tail deviates from the switch-transform prediction by "
                          f"{rel.max_deviation:.1%} (> {tolerance:.0%})")
    return rel
