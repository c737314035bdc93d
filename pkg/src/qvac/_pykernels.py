"""Pure-numpy fallback for the compiled panel sums.

Phases are evaluated directly at every node, which makes this an
independent check on the factorized compiled kernel.
"""
import numpy as np

# Elements per temporary (omegas x nodes) matrix.
_CHUNK = 1 << 21


def panel_trig_sum(omegas, mids, halves, x, a, use_sin=False):
    """Return ``sum_{p,j} a[p,j] * trig(omegas[i] * (mids[p] + halves[p] * x[j]))``."""
    omegas = np.ascontiguousarray(omegas, dtype=np.float64)
    t = (np.asarray(mids, dtype=float)[:, None]
         + np.asarray(halves, dtype=float)[:, None] * np.asarray(x, dtype=float)[None, :]).ravel()
    a = np.ascontiguousarray(a, dtype=np.float64).ravel()
    fn = np.sin if use_sin else np.cos
    out = np.zeros(omegas.size)
    if t.size == 0:
        return out
    rows = max(1, _CHUNK // t.size)
    for lo in range(0, omegas.size, rows):
        w = omegas[lo:lo + rows]
        # numpy reduces the contiguous last axis pairwise
        out[lo:lo + rows] = (fn(np.multiply.outer(w, t)) * a).sum(axis=1)
    return out
