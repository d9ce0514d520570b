"""Gauss-Legendre building blocks and Richardson extrapolation."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import AccuracyError


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point rule on [0, 1]."""
    t, w = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def composite_nodes(lo, hi, panels, nodes_per_panel, breaks=None):
    """Composite Gauss-Legendre rule on [lo, hi].

    ``breaks`` are extra interior points that must coincide with panel edges
    (table knots, for instance); the uniform panels are split at them.
    """
    edges = np.linspace(lo, hi, panels + 1)
    if breaks is not None and len(breaks):
        inner = np.asarray(breaks, dtype=float)
        inner = inner[(inner > lo) & (inner < hi)]
        edges = np.union1d(edges, inner)
    t, w = gauss_legendre(nodes_per_panel)
    widths = np.diff(edges)
    x = (edges[:-1, None] + widths[:, None] * t[None, :]).ravel()
    wt = (widths[:, None] * w[None, :]).ravel()
    return x, wt


def integrate(f, lo, hi, *, tol=1e-13, nodes_per_panel=16, min_panels=4,
              max_panels=1 << 16, breaks=None):
    """Integrate a vectorized ``f`` over [lo, hi] by panel doubling.

    Returns ``(value, err_est)``. Raises AccuracyError when ``max_panels`` is
    reached before two successive estimates agree to ``tol`` (relative, with
    an absolute floor of ``tol``).
    """
    if hi == lo:
        return 0.0, 0.0
    panels = min_panels
    x, w = composite_nodes(lo, hi, panels, nodes_per_panel, breaks)
    prev = float(np.dot(w, f(x)))
    while True:
        panels *= 2
        x, w = composite_nodes(lo, hi, panels, nodes_per_panel, breaks)
        cur = float(np.dot(w, f(x)))
        err = abs(cur - prev)
        if err <= tol * max(1.0, abs(cur)):
            return cur, err
        if panels >= max_panels:
            raise AccuracyError(
                f"quadrature did not converge on [{lo}, {hi}] "
                f"with {panels} panels", value=cur, err_est=err)
        prev = cur


def richardson(values, steps, powers=(2, 4)):
    """Extrapolate ``values[i] ~ V + sum_k c_k steps[i]**powers[k]`` to step 0.

    Needs ``len(values) == len(powers) + 1``. Works elementwise on arrays.
    Returns ``(extrapolated, err_est)`` where the estimate is the change
    relative to the extrapolation that drops the coarsest grid.
    """
    values = np.asarray(values, dtype=float)
    steps = np.asarray(steps, dtype=float)
    m = len(steps)
    if m != len(powers) + 1:
        raise ValueError("need exactly one more grid than eliminated powers")
    A = np.ones((m, m))
    for k, p in enumerate(powers):
        A[:, k + 1] = steps ** p
    coef = np.linalg.solve(A, values.reshape(m, -1))
    best = coef[0]
    if m > 1:
        B = A[1:, :m - 1]
        sub = np.linalg.solve(B, values.reshape(m, -1)[1:])[0]
        err = np.abs(best - sub)
    else:
        err = np.zeros_like(best)
    shape = values.shape[1:]
    return best.reshape(shape), err.reshape(shape)


def cumulative_on_panels(f, edges, nodes_per_panel=16):
    """Composite nodes, weights and the running integral of ``f`` at each node.

    The running integral starts at ``edges[0]``; inside a panel it is
    evaluated by a nested rule on [panel start, node], so it is as accurate
    as the outer rule. Shapes are (panels, nodes_per_panel).
    """
    edges = np.asarray(edges, dtype=float)
    t, w = gauss_legendre(nodes_per_panel)
    widths = np.diff(edges)
    x = edges[:-1, None] + widths[:, None] * t[None, :]
    wx = widths[:, None] * w[None, :]
    panel_int = (wx * f(x)).sum(axis=1)
    start = np.concatenate(([0.0], np.cumsum(panel_int)[:-1]))
    offs = x - edges[:-1, None]
    inner = edges[:-1, None, None] + offs[:, :, None] * t[None, None, :]
    part = (offs[:, :, None] * w[None, None, :] * f(inner)).sum(axis=2)
    return x, wx, start[:, None] + part
