import numpy as np
import pytest
from hypothesis import given, strategies as st

from qvac.errors import ConvergenceError
from qvac.quadrature import (adaptive_partition, gauss_legendre, integrate,
                             oscillatory_transform, subdivide_panels)


@given(st.integers(min_value=0, max_value=31))
def test_gauss_legendre_exact_for_polynomials(k):
    x, w = gauss_legendre(16)
    exact = 0.0 if k % 2 else 2.0 / (k + 1)
    assert np.sum(w * x ** k) == pytest.approx(exact, abs=1e-14)


def test_gauss_legendre_readonly():
    x, _ = gauss_legendre(8)
    with pytest.raises(ValueError):
        x[0] = 0.0


def test_adaptive_partition_resolves_peaked_integrand():
    f = lambda t: np.exp(-1e4 * (t - 0.3) ** 2)
    edges = adaptive_partition(f, -1.0, 1.0, rtol=1e-12)
    assert integrate(f, edges) == pytest.approx(np.sqrt(np.pi / 1e4), rel=1e-11)


def test_adaptive_partition_depth_limit():
    with pytest.raises(ConvergenceError):
        adaptive_partition(lambda t: np.sign(t - 0.1234567), -1.0, 1.0, rtol=1e-15,
                           max_depth=3)


@given(st.lists(st.floats(0.01, 3.0), min_size=1, max_size=6), st.floats(0.05, 1.0))
def test_subdivide_panels_covers_base(widths, max_width):
    edges = np.concatenate([[0.0], np.cumsum(widths)])
    mid, half = subdivide_panels(edges, max_width)
    assert np.all(2 * half <= max_width * (1 + 1e-12))
    assert np.sum(2 * half) == pytest.approx(edges[-1], rel=1e-12)
    assert np.all(np.diff(mid) > 0)


@given(st.floats(0.0, 300.0))
def test_cosine_transform_of_box(w):
    got = oscillatory_transform(lambda t: np.ones_like(t), np.array([-1.0, 1.0]),
                                np.array([w]))[0]
    exact = 2.0 if w == 0 else 2 * np.sin(w) / w
    assert got == pytest.approx(exact, abs=1e-13)


def test_sine_transform_of_odd_function():
    w = np.array([0.5, 3.0, 40.0])
    got = oscillatory_transform(lambda t: t, np.linspace(0, 1, 5), w, kind="sin")
    exact = (np.sin(w) - w * np.cos(w)) / w ** 2
    assert np.allclose(got, exact, atol=1e-14, rtol=1e-12)


def test_transform_rejects_unsorted_grid():
    with pytest.raises(ValueError):
        oscillatory_transform(np.cos, np.array([0.0, 1.0]), np.array([2.0, 1.0]))
