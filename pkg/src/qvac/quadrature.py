"""Composite Gauss-Legendre quadrature on panels.

Two entry points matter to the rest of the package:

* :func:`adaptive_partition` bisects panels until a smooth integrand is
  resolved to a relative tolerance, and
* :func:`oscillatory_transform` integrates ``f(t) cos(w t)`` (or ``sin``)
  for a whole grid of frequencies, splitting every panel so that no panel is
  wider than half an oscillation period and then halving the panels until
  successive estimates agree.

All reductions go through numpy's pairwise summation or the compiled
pairwise kernel, so results are independent of evaluation order.
"""
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import ConvergenceError

DEFAULT_ORDER = 16


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Nodes and weights of the ``order``-point rule on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_nodes(edges, order=DEFAULT_ORDER):
    """Flattened nodes and weights for the composite rule on ``edges``."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return t, wt


def integrate(func, edges, order=DEFAULT_ORDER):
    """Composite Gauss-Legendre integral of a vectorized ``func``."""
    t, w = panel_nodes(edges, order)
    return float(np.sum(w * func(t)))


def _panel_sums(func, lo, hi, order):
    x, w = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    t = (0.5 * (lo + hi))[:, None] + half[:, None] * x[None, :]
    return (half[:, None] * w[None, :] * func(t.ravel()).reshape(t.shape)).sum(axis=1)


def adaptive_partition(func, a, b, rtol=1e-10, atol=0.0, order=DEFAULT_ORDER,
                       initial_panels=8, max_depth=40):
    """Return panel edges on [a, b] that resolve ``func`` to ``rtol``.

    A panel is accepted once its one-panel estimate and the sum over its two
    halves differ by less than its share (by width) of the global tolerance
    ``max(rtol * integral of |func|, atol)``.
    """
    if not b > a:
        raise ValueError("need b > a")
    grid = np.linspace(a, b, initial_panels + 1)
    lo, hi = grid[:-1], grid[1:]
    accepted = []
    scale = None
    for _ in range(max_depth):
        mid = 0.5 * (lo + hi)
        whole = _panel_sums(func, lo, hi, order)
        left = _panel_sums(func, lo, mid, order)
        right = _panel_sums(func, mid, hi, order)
        if scale is None:
            absint = float(np.sum(np.abs(left)) + np.sum(np.abs(right)))
            scale = max(rtol * absint, atol)
        ok = np.abs(whole - (left + right)) <= scale * (hi - lo) / (b - a)
        accepted.append(lo[ok])
        accepted.append(hi[ok])
        if np.all(ok):
            break
        lo, mid, hi = lo[~ok], mid[~ok], hi[~ok]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
    else:
        raise ConvergenceError(
            f"adaptive partition did not converge in {max_depth} bisections")
    return np.unique(np.concatenate(accepted))


def subdivide_panels(edges, max_width):
    """Midpoints and half-widths after splitting panels to ``max_width``.

    Pieces of one base panel share a bit-identical half-width, which lets the
    compiled kernel reuse its per-width node factors.
    """
    edges = np.asarray(edges, dtype=float)
    widths = np.diff(edges)
    if np.isfinite(max_width):
        pieces = np.maximum(1, np.ceil(widths / max_width - 1e-12).astype(np.int64))
    else:
        pieces = np.ones(widths.size, dtype=np.int64)
    step = widths / pieces
    base = np.repeat(edges[:-1], pieces)
    step_r = np.repeat(step, pieces)
    first = np.repeat(np.cumsum(pieces) - pieces, pieces)
    k = np.arange(base.size) - first
    return base + (k + 0.5) * step_r, 0.5 * step_r


def _blocks(omegas, ratio, size):
    i, n = 0, omegas.size
    while i < n:
        j = i + 1
        limit = omegas[i] * ratio if omegas[i] > 0 else np.inf
        while j < n and j - i < size and (omegas[j] <= limit or omegas[i] == 0
                                          and omegas[j] == 0):
            j += 1
        yield i, j
        i = j


def oscillatory_transform(func, edges, omegas, kind="cos", rtol=1e-10,
                          atol=1e-13, order=DEFAULT_ORDER, max_depth=10,
                          backend=None):
    """Integrate ``func(t) * cos(w t)`` (or ``sin``) over ``edges`` for each w.

    ``edges`` is a base partition that already resolves ``func``. For each
    block of similar frequencies the panels are split to at most half an
    oscillation period, then halved repeatedly until two successive
    estimates agree within ``max(rtol * |value|, atol)``.
    """
    omegas = np.asarray(omegas, dtype=float)
    if omegas.ndim != 1:
        raise ValueError("omegas must be one-dimensional")
    if np.any(np.diff(omegas) < 0) or np.any(omegas < 0):
        raise ValueError("omegas must be nonnegative and nondecreasing")
    if kind not in ("cos", "sin"):
        raise ValueError("kind must be 'cos' or 'sin'")
    trig = _kernels.get_backend(backend).panel_trig_sum
    x, wx = gauss_legendre(order)

    def estimate(w, level, width):
        mid, half = subdivide_panels(edges, width / 2 ** level)
        t = mid[:, None] + half[:, None] * x[None, :]
        a = half[:, None] * wx[None, :] * func(t.ravel()).reshape(t.shape)
        return trig(w, mid, half, x, a, kind == "sin")

    out = np.empty(omegas.size)
    for lo, hi in _blocks(omegas, 1.25, 256):
        w = omegas[lo:hi]
        width = np.pi / w[-1] if w[-1] > 0 else np.inf
        if not np.isfinite(width):
            # no oscillation: two nested refinements of the base partition
            width = float(np.max(np.diff(edges)))
        idx = np.arange(w.size)
        prev = estimate(w, 0, width)
        for level in range(1, max_depth + 1):
            cur = estimate(w[idx], level, width)
            ok = np.abs(cur - prev) <= np.maximum(rtol * np.abs(cur), atol)
            out[lo + idx[ok]] = cur[ok]
            idx, prev = idx[~ok], cur[~ok]
            if idx.size == 0:
                break
        else:
            raise ConvergenceError(
                f"oscillatory quadrature unresolved at omega={w[idx[0]]:.6g} "
                f"after {max_depth} panel halvings")
    return out
