"""Large-n spectral law E_n -> alpha * eps_n + beta and the tails it implies.

eps_n are the nonzero eigenvalues of a homogeneous string of length a,
alpha = a^2 / sigma(a/2)^2 and beta is the ratio of the integral of
(4 S S'' - 5 S'^2) / (16 S^(5/2)) to the integral of sqrt(S).

Tails Z~_n(s) = sum_{j>n} (alpha eps_j + beta)^-s come in two independent
flavours: closed forms in hyperbolic functions differentiated symbolically in
beta (Z~(s+1) = -(1/s) dZ~(s)/dbeta), and direct summation whose remainder
is a binomial series in beta over Hurwitz zeta values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np
import sympy

from .density import DensityProfile, _panels_for, total_sigma
from .errors import ParameterError
from .greens import BC
from .quadrature import cumulative_on_panels, integrate


@dataclass(frozen=True)
class AsymptoticCoefficients:
    alpha: float
    beta: float
    a: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ParameterError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class TailSum:
    bc: BC
    n_excluded: int
    s: int
    value: object


def _liouville(profile: DensityProfile, x, power):
    f, d1, d2 = profile._f(x), profile._d1(x), profile._d2(x)
    return (4 * f * d2 - 5 * d1 * d1) / (16 * f ** power)


def asym_coeffs(profile: DensityProfile, tol: float = 1e-12) -> AsymptoticCoefficients:
    a = profile.a
    half = a / 2
    sig = total_sigma(profile)
    num, _ = integrate(lambda x: _liouville(profile, x, 2.5), -half, half, tol=tol,
                       min_panels=_panels_for(profile), breaks=profile.breaks)
    return AsymptoticCoefficients(alpha=a * a / sig ** 2, beta=num / sig, a=a)


def _level(bc: BC, a, n: int):
    """(c, m) with eps_n = c * m^2; c is an mpf when a is."""
    pi2 = mp.pi ** 2 if isinstance(a, mp.mpf) else math.pi ** 2
    if bc in (BC.DD, BC.NN):
        return pi2 / a ** 2, n
    if bc in (BC.DN, BC.ND):
        return pi2 / (4 * a ** 2), 2 * n - 1
    return 4 * pi2 / a ** 2, (n + 1) // 2


def homogeneous_eigenvalue(bc, a: float, n: int) -> float:
    """n-th nonzero eigenvalue (with multiplicity) of -d^2/dx^2 on a string of length a."""
    bc = BC.parse(bc)
    if n < 1:
        raise ParameterError("mode index starts at 1 (zero modes are excluded)")
    c, m = _level(bc, a, n)
    return c * m * m


def _eps(bc, a, n):
    c, m = _level(bc, a, n)
    return c * m * m


# -- closed forms ---------------------------------------------------------------------

_al, _be, _a = sympy.symbols("alpha beta a", positive=True)


def _closed_s1(bc: BC):
    r = sympy.sqrt(_al) * sympy.sqrt(_be)
    y = _a * sympy.sqrt(_be) / sympy.sqrt(_al)
    if bc is BC.DD:
        return _a * sympy.coth(y) / (2 * r) - 1 / (2 * _be)
    if bc is BC.NN:
        return (_a * sympy.tanh(y / 2) / (4 * r) + _a * sympy.coth(y / 2) / (4 * r)
                - 1 / (2 * _be))
    if bc in (BC.DN, BC.ND):
        return _a * sympy.tanh(y) / (2 * r)
    # each periodic level is doubly degenerate
    return _a * sympy.coth(y / 2) / (2 * r) - 1 / _be


@lru_cache(maxsize=None)
def _closed_fn(bc: BC, s: int):
    expr = _closed_s1(bc)
    if s > 1:
        expr = (-1) ** (s - 1) * sympy.diff(expr, _be, s - 1) / sympy.factorial(s - 1)
    return sympy.lambdify((_al, _be, _a), expr, modules="mpmath")


def _beta_zero(bc: BC, alpha, a, s):
    z = mp.zeta(2 * s)
    if bc in (BC.DD, BC.NN):
        return (a * a / (alpha * mp.pi ** 2)) ** s * z
    if bc in (BC.DN, BC.ND):
        return (4 * a * a / (alpha * mp.pi ** 2)) ** s * (1 - mp.mpf(2) ** (-2 * s)) * z
    return 2 * (a * a / (4 * alpha * mp.pi ** 2)) ** s * z


def _work_dps(beta, s, dps):
    base = dps or 17
    if beta == 0:
        return base + 10
    lost = max(0.0, -math.log10(abs(float(beta)))) * (s + 1)
    return int(base + 15 + lost)


def _head(bc, alpha, beta, a, n, s):
    return mp.fsum((alpha * _eps(bc, a, j) + beta) ** (-s)
                   for j in range(1, n + 1))


def _check_positive(bc, alpha, beta, a, n):
    if alpha * _eps(bc, a, n + 1) + beta <= 0:
        raise ParameterError(f"asymptotic eigenvalue of mode {n + 1} is not positive "
                             f"(alpha={alpha}, beta={beta})")


def _closed_tail(bc, alpha, beta, a, n, s):
    if beta == 0:
        full = _beta_zero(bc, alpha, a, s)
    else:
        val = _closed_fn(bc, s)(alpha, mp.mpc(beta) if beta < 0 else beta, a)
        full = mp.re(val)
    return full - _head(bc, alpha, beta, a, n, s)


def _hurwitz_tail(bc, alpha, beta, a, j0, s):
    """sum over j >= j0 of (alpha eps_j + beta)^-s, all terms in the binomial regime."""
    c, _ = _level(bc, a, 1)
    A = alpha * c
    ratio = beta / A
    eps = mp.mpf(10) ** (-mp.mp.dps)
    total = mp.mpf(0)
    k = 0
    while True:
        p = 2 * s + 2 * k
        if bc in (BC.DD, BC.NN):
            z = mp.zeta(p, j0)
        elif bc in (BC.DN, BC.ND):
            z = mp.mpf(2) ** (-p) * mp.zeta(p, j0 - mp.mpf(1) / 2)
        else:
            # j0 is odd here: levels (j0+1)/2, ... each counted twice
            z = 2 * mp.zeta(p, (j0 + 1) // 2)
        term = mp.binomial(-s, k) * ratio ** k * A ** (-s) * z
        total += term
        if abs(term) <= eps * abs(total) or k > 400:
            return total
        k += 1


def _direct_tail(bc, alpha, beta, a, n, s):
    c, _ = _level(bc, a, 1)
    A = alpha * c
    # explicit terms until |beta| / (A m^2) is small, then the series
    j = n + 1
    parts = []
    while True:
        _, m = _level(bc, a, j)
        if abs(beta) <= 0.01 * A * m * m and (bc is not BC.PP or j % 2 == 1):
            break
        parts.append((alpha * _eps(bc, a, j) + beta) ** (-s))
        j += 1
    return mp.fsum(parts) + _hurwitz_tail(bc, alpha, beta, a, j, s)


def tail_sum(coeffs: AsymptoticCoefficients, bc, n_excluded: int, s: int, *,
             method: str = "closed", dps: int = None) -> TailSum:
    """Semiclassical tail sum over modes n_excluded+1, n_excluded+2, ...

    ``dps=None`` returns a float; otherwise an mpmath value with that many
    significant digits.
    """
    bc = BC.parse(bc)
    if s < 1:
        raise ParameterError("tail order s must be >= 1")
    if n_excluded < 0:
        raise ParameterError("n_excluded must be >= 0")
    with mp.workdps(_work_dps(coeffs.beta, s, dps)):
        alpha, beta, a = mp.mpf(coeffs.alpha), mp.mpf(coeffs.beta), mp.mpf(coeffs.a)
        _check_positive(bc, alpha, beta, a, n_excluded)
        if method == "closed":
            val = _closed_tail(bc, alpha, beta, a, n_excluded, s)
        elif method == "direct":
            val = _direct_tail(bc, alpha, beta, a, n_excluded, s)
        else:
            raise ValueError(f"unknown tail method {method!r}")
    value = float(val) if dps is None else mp.mpf(val)
    return TailSum(bc=bc, n_excluded=n_excluded, s=s, value=value)


# -- first-order shift (validation helper) ---------------------------------------------

def _first_order_shift(profile: DensityProfile, n: int, panels: int = None,
                       nodes: int = 16) -> float:
    """<Psi_n| V |Psi_n> for the Liouville-transformed Dirichlet mode n.

    Tends to beta as n grows. Used by the test suite only.
    """
    a = profile.a
    half = a / 2
    panels = panels or max(64, 8 * n, 4 * _panels_for(profile))
    edges = np.linspace(-half, half, panels + 1)
    x, wx, sig = cumulative_on_panels(lambda u: np.sqrt(profile._f(u)), edges, nodes)
    total = float(sig[-1, -1])
    y = a * sig / total - half
    psi = math.sqrt(2 / a) * np.sin(n * math.pi * (y + half) / a)
    Psi2 = (a / total) * np.sqrt(profile._f(x)) * psi ** 2
    return float((wx * Psi2 * _liouville(profile, x, 3)).sum())
