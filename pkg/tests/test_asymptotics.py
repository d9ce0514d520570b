import math

import mpmath as mp
import pytest

from stringzeta import density as dn
from stringzeta.asymptotics import (AsymptoticCoefficients, _first_order_shift,
                                    asym_coeffs, homogeneous_eigenvalue, tail_sum)
from stringzeta.errors import ParameterError
from stringzeta.greens import BC


def test_coefficients_of_known_profiles():
    c = asym_coeffs(dn.uniform(2.0))
    assert (c.alpha, c.beta, c.a) == pytest.approx((1.0, 0.0, 2.0), abs=1e-13)
    c = asym_coeffs(dn.horgan_chan())
    assert c.alpha == pytest.approx(1.0, rel=1e-12)
    assert c.beta == pytest.approx(0.375, rel=1e-10)
    # Borg strings are Dirichlet-isospectral to the uniform one
    c = asym_coeffs(dn.borg(3.0))
    assert c.alpha == pytest.approx(1.0, rel=1e-12)
    assert c.beta == pytest.approx(0.0, abs=1e-10)


def test_first_order_shift_tends_to_beta():
    shifts = [_first_order_shift(dn.horgan_chan(), n) for n in (5, 20, 80)]
    assert abs(shifts[2] - 0.375) < abs(shifts[0] - 0.375)
    assert shifts[2] == pytest.approx(0.375, abs=1e-4)


def test_alpha_validation():
    with pytest.raises(ParameterError):
        AsymptoticCoefficients(alpha=0.0, beta=0.0)


@pytest.mark.parametrize("bc,n,expect", [
    ("DD", 1, math.pi ** 2), ("NN", 2, 4 * math.pi ** 2),
    ("DN", 1, math.pi ** 2 / 4), ("ND", 2, 9 * math.pi ** 2 / 4),
    ("PP", 1, 4 * math.pi ** 2), ("PP", 2, 4 * math.pi ** 2), ("PP", 3, 16 * math.pi ** 2)])
def test_homogeneous_eigenvalues(bc, n, expect):
    assert homogeneous_eigenvalue(bc, 1.0, n) == pytest.approx(expect)
    with pytest.raises(ParameterError):
        homogeneous_eigenvalue(bc, 1.0, 0)


def _brute(bc, alpha, beta, a, n, s, terms=200_000):
    return math.fsum((alpha * homogeneous_eigenvalue(bc, a, k) + beta) ** (-s)
                     for k in range(n + 1, n + 1 + terms))


def test_dd_tail_exact():
    c = AsymptoticCoefficients(1.0, 0.0)
    assert tail_sum(c, "DD", 1, 1).value == pytest.approx(1 / 6 - 1 / math.pi ** 2, rel=1e-14)
    assert tail_sum(c, "DD", 0, 2).value == pytest.approx(1 / 90, rel=1e-14)


@pytest.mark.parametrize("bc", list(BC))
@pytest.mark.parametrize("beta", [0.0, 0.375, -1.5, 7.0])
@pytest.mark.parametrize("n", [0, 1, 4])
@pytest.mark.parametrize("s", [2, 3])
def test_routes_agree_and_match_brute_force(bc, beta, n, s):
    c = AsymptoticCoefficients(1.3, beta, 1.2)
    closed = tail_sum(c, bc, n, s).value
    direct = tail_sum(c, bc, n, s, method="direct").value
    assert closed == pytest.approx(direct, rel=1e-12)
    assert closed == pytest.approx(_brute(bc, 1.3, beta, 1.2, n, s, 20_000), rel=1e-6)


@pytest.mark.parametrize("bc", ["DD", "DN", "PP"])
def test_s1_tail(bc):
    c = AsymptoticCoefficients(1.0, 0.5)
    closed = tail_sum(c, bc, 2, 1).value
    assert closed == pytest.approx(tail_sum(c, bc, 2, 1, method="direct").value, rel=1e-12)


def test_beta_to_zero_is_continuous():
    for bc in BC:
        z = tail_sum(AsymptoticCoefficients(1.0, 0.0), bc, 1, 2).value
        e = tail_sum(AsymptoticCoefficients(1.0, 1e-9), bc, 1, 2).value
        assert e == pytest.approx(z, rel=1e-8)


def test_mp_precision():
    c = AsymptoticCoefficients(1.0, 0.375)
    v = tail_sum(c, "DD", 1, 5, dps=50).value
    assert isinstance(v, mp.mpf)
    w = tail_sum(c, "DD", 1, 5, method="direct", dps=50).value
    with mp.workdps(50):
        assert abs(v - w) < mp.mpf(10) ** -45 * abs(v)


def test_invalid_arguments():
    c = AsymptoticCoefficients(1.0, 0.0)
    with pytest.raises(ParameterError):
        tail_sum(c, "DD", 1, 0)
    with pytest.raises(ParameterError):
        tail_sum(c, "DD", -1, 2)
    with pytest.raises(ValueError):
        tail_sum(c, "DD", 1, 2, method="euler")
