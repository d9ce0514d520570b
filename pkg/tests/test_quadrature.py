import numpy as np
import pytest

from stringzeta.errors import AccuracyError
from stringzeta.quadrature import (composite_nodes, cumulative_on_panels,
                                   gauss_legendre, integrate, richardson)


def test_gauss_legendre_exact_for_polynomials():
    t, w = gauss_legendre(5)
    assert w.sum() == pytest.approx(1.0, abs=1e-15)
    for k in range(10):
        assert np.dot(w, t ** k) == pytest.approx(1 / (k + 1), rel=1e-14)


def test_gauss_legendre_read_only():
    t, _ = gauss_legendre(4)
    with pytest.raises(ValueError):
        t[0] = 1.0


def test_composite_nodes_respects_breaks():
    x, w = composite_nodes(-1, 1, 2, 4, breaks=[0.3])
    assert w.sum() == pytest.approx(2.0)
    assert len(x) == 3 * 4


def test_integrate_smooth():
    val, err = integrate(np.exp, 0.0, 1.0)
    assert val == pytest.approx(np.e - 1, rel=1e-14)
    assert err < 1e-12


def test_integrate_raises_with_partial():
    f = lambda x: np.sign(x - 1 / 3) * np.abs(x - 1 / 3) ** 0.01
    with pytest.raises(AccuracyError) as info:
        integrate(f, 0, 1, tol=1e-15, max_panels=16)
    assert info.value.value is not None


def test_richardson_removes_even_powers():
    h = np.array([0.4, 0.2, 0.1])
    vals = 3.0 + 2 * h ** 2 - 5 * h ** 4
    best, err = richardson(vals, h)
    assert best == pytest.approx(3.0, abs=1e-12)
    with pytest.raises(ValueError):
        richardson(vals[:2], h[:2])


def test_cumulative_on_panels():
    edges = np.linspace(0, 2, 5)
    x, wx, F = cumulative_on_panels(np.cos, edges, 12)
    assert np.allclose(F, np.sin(x), atol=1e-14)
    assert wx.sum() == pytest.approx(2.0)
