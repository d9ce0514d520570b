"""Green's functions of -d^2/dx^2 on [-a/2, a/2] for five boundary conditions.

NN and PP have a flat zero mode; for those the regularized kernel (the
eigenfunction sum without the zero mode) is returned.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import DomainError, OrderingError


class BoundaryCondition(str, Enum):
    DD = "DD"
    NN = "NN"
    DN = "DN"
    ND = "ND"
    PP = "PP"

    @property
    def has_zero_mode(self) -> bool:
        return self in (BoundaryCondition.NN, BoundaryCondition.PP)

    @classmethod
    def parse(cls, value) -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise ValueError(f"unknown boundary condition {value!r}; "
                             f"expected one of {[b.value for b in cls]}") from None


BC = BoundaryCondition


def _domain(a, *coords):
    half = a / 2
    for c in coords:
        if np.any(np.abs(np.asarray(c, dtype=float)) > half * (1 + 1e-12) + 1e-15):
            raise DomainError(f"coordinate outside [-{half}, {half}]")


def _plus(bc: BC, a, x, y):
    # ordered branch, x >= y assumed
    if bc is BC.DD:
        return (a - 2 * x) * (a + 2 * y) / (4 * a)
    if bc is BC.NN:
        return (a * a + 6 * a * (y - x) + 6 * (x * x + y * y)) / (12 * a)
    if bc is BC.DN:
        return y + a / 2 + 0 * x
    if bc is BC.ND:
        return a / 2 - x + 0 * y
    d = x - y
    return (a * a - 6 * a * d + 6 * d * d) / (12 * a)


def green_plus(bc, a, x, y):
    """The x >= y branch G_+(x, y)."""
    bc = BC.parse(bc)
    _domain(a, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < y):
        raise OrderingError("green_plus needs x >= y")
    out = _plus(bc, a, x, y)
    return out if np.ndim(out) else float(out)


def green(bc, a, x, y):
    """G(x, y) (regularized for NN and PP); symmetric in its arguments."""
    bc = BC.parse(bc)
    _domain(a, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = _plus(bc, a, np.maximum(x, y), np.minimum(x, y))
    return out if np.ndim(out) else float(out)


def green_diagonal(bc, a, x):
    """G(x, x)."""
    bc = BC.parse(bc)
    _domain(a, x)
    x = np.asarray(x, dtype=float)
    if bc is BC.DD:
        out = a / 4 - x * x / a
    elif bc is BC.NN:
        out = a / 12 + x * x / a
    elif bc is BC.DN:
        out = x + a / 2
    elif bc is BC.ND:
        out = a / 2 - x
    else:
        out = a / 12 + 0 * x
    return out if np.ndim(out) else float(out)


def green_matrix(bc, a, x):
    """Dense G(x_i, x_j) on a node vector; no domain check (internal use)."""
    bc = BC.parse(bc)
    x = np.asarray(x, dtype=float)
    X, Y = x[:, None], x[None, :]
    return _plus(bc, a, np.maximum(X, Y), np.minimum(X, Y))


def ordered_kernel(bc, a):
    """Vectorized G_+ without checks, for integrands on the ordered simplex."""
    bc = BC.parse(bc)
    return lambda x, y: _plus(bc, a, x, y)
