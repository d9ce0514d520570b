import math

import numpy as np
import pytest

from stringzeta.errors import DomainError, OrderingError
from stringzeta.greens import BC, green, green_diagonal, green_matrix, green_plus

A = 1.0
TERMS = 10_000


def _series(bc, x, y, a=A):
    """Eigenfunction expansion of the (regularized) Green's function."""
    n = np.arange(1, TERMS + 1)
    u, v = x + a / 2, y + a / 2
    if bc is BC.DD:
        k = n * math.pi / a
        return float(np.sum(2 / a * np.sin(k * u) * np.sin(k * v) / k ** 2))
    if bc is BC.NN:
        k = n * math.pi / a
        return float(np.sum(2 / a * np.cos(k * u) * np.cos(k * v) / k ** 2))
    if bc is BC.DN:
        k = (n - 0.5) * math.pi / a
        return float(np.sum(2 / a * np.sin(k * u) * np.sin(k * v) / k ** 2))
    if bc is BC.ND:
        k = (n - 0.5) * math.pi / a
        return float(np.sum(2 / a * np.cos(k * u) * np.cos(k * v) / k ** 2))
    k = 2 * n * math.pi / a
    return float(np.sum(2 / a * np.cos(k * (u - v)) / k ** 2))


@pytest.mark.parametrize("bc", list(BC))
@pytest.mark.parametrize("x,y", [(0.3, -0.1), (0.25, -0.25), (0.0, 0.0), (0.5, 0.4)])
def test_matches_eigenfunction_series(bc, x, y):
    assert green(bc, A, x, y) == pytest.approx(_series(bc, x, y), abs=2e-5)


def test_nn_value_from_spec():
    assert green_plus("NN", 1.0, 0.25, -0.25) == pytest.approx(-5 / 48, abs=1e-15)


@pytest.mark.parametrize("bc", list(BC))
def test_symmetry_and_diagonal(bc):
    x = np.linspace(-0.5, 0.5, 9)
    M = green_matrix(bc, A, x)
    assert np.allclose(M, M.T)
    assert np.allclose(np.diag(M), green_diagonal(bc, A, x))


@pytest.mark.parametrize("bc", list(BC))
def test_solves_equation_away_from_diagonal(bc):
    # d^2/dx^2 G = 0 off the diagonal (plus 1/a for the regularized kernels)
    y, h = -0.2, 1e-3
    x = 0.2
    g2 = (green(bc, A, x + h, y) - 2 * green(bc, A, x, y) + green(bc, A, x - h, y)) / h ** 2
    expect = 1 / A if bc.has_zero_mode else 0.0
    assert g2 == pytest.approx(expect, abs=1e-6)


def test_boundary_conditions():
    y = 0.1
    assert green("DD", A, -0.5, y) == pytest.approx(0.0, abs=1e-15)
    assert green("DD", A, 0.5, y) == pytest.approx(0.0, abs=1e-15)
    assert green("DN", A, -0.5, y) == pytest.approx(0.0, abs=1e-15)
    assert green("ND", A, 0.5, y) == pytest.approx(0.0, abs=1e-15)
    h = 1e-6
    for bc, end in (("NN", -0.5), ("NN", 0.5), ("DN", 0.5), ("ND", -0.5)):
        sgn = 1 if end < 0 else -1
        d = (green(bc, A, end + sgn * h, y) - green(bc, A, end, y)) / h
        assert abs(d) < 1e-5


def test_periodic():
    y = 0.2
    assert green("PP", A, -0.5, y) == pytest.approx(green("PP", A, 0.5, y))


def test_errors():
    with pytest.raises(OrderingError):
        green_plus("DD", 1.0, -0.2, 0.1)
    with pytest.raises(DomainError):
        green("DD", 1.0, 0.7, 0.0)
    with pytest.raises(ValueError):
        BC.parse("XY")
    assert BC.parse(" pp ") is BC.PP


def test_scalar_in_scalar_out():
    assert isinstance(green("DD", 1.0, 0.1, 0.2), float)
    assert green("DD", 1.0, np.array([0.1, 0.2]), 0.0).shape == (2,)
