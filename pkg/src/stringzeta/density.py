"""String densities Sigma(x) on [-a/2, a/2].

A :class:`DensityProfile` bundles the density, its first two derivatives and
enough metadata (family tag, parameters, smallest length scale, knots) for
the quadrature routines to resolve it. Profiles are immutable.

Profile strings understood by :func:`parse_density`::

    uniform[:a=<f>]
    borg:alpha=<f>
    horgan-chan
    oscillating:eps=<f>
    gottlieb:base=<spec>,alpha=<f>
    table:path=<csv>          (two columns x, Sigma(x))
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError, ParameterError, ProfileError
from .quadrature import integrate

_VALIDITY_SAMPLES = 1001
_CURVATURE_FLAG = 1e3


@dataclass(frozen=True)
class DensityProfile:
    """Density of an inhomogeneous string of length ``a``.

    Use the family constructors (:func:`uniform`, :func:`borg`, ...) rather
    than building one directly.
    """

    a: float
    family: str
    params: tuple = ()
    scale: float = 1.0
    breaks: tuple = ()
    base: Optional["DensityProfile"] = None
    flags: tuple = ()
    _f: Callable = field(default=None, repr=False, compare=False)
    _d1: Callable = field(default=None, repr=False, compare=False)
    _d2: Callable = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ProfileError(f"string length must be positive, got {self.a}")
        xs = np.linspace(-self.a / 2, self.a / 2, _VALIDITY_SAMPLES)
        with np.errstate(all="ignore"):
            vals = np.asarray(self._f(xs), dtype=float)
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            raise ProfileError(f"density {self.spec!r} is not positive and "
                               "finite on the whole string")

    # -- evaluation -------------------------------------------------------
    def _check(self, x):
        x = np.asarray(x, dtype=float)
        half = self.a / 2
        if np.any(np.abs(x) > half * (1 + 1e-12) + 1e-15):
            raise DomainError(f"coordinate outside [-{half}, {half}]")
        return np.clip(x, -half, half)

    def __call__(self, x):
        return evaluate(self, x)

    def d1(self, x):
        """First derivative of the density."""
        return self._d1(self._check(x))

    def d2(self, x):
        """Second derivative of the density."""
        return self._d2(self._check(x))

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    @property
    def spec(self) -> str:
        """Profile string that :func:`parse_density` maps back to this profile."""
        p = self.param_dict
        if self.family == "uniform":
            return "uniform" if self.a == 1 else f"uniform:a={self.a!r}"
        if self.family == "borg":
            return f"borg:alpha={p['alpha']!r}"
        if self.family == "horgan_chan":
            return "horgan-chan"
        if self.family == "oscillating":
            return f"oscillating:eps={p['eps']!r}"
        if self.family == "gottlieb":
            return f"gottlieb:base={self.base.spec},alpha={p['alpha']!r}"
        if self.family == "table":
            return f"table:path={p.get('path', '<memory>')}"
        return self.family


def evaluate(profile: DensityProfile, x):
    """Sigma(x); scalar in, scalar out, arrays elementwise."""
    xc = profile._check(x)
    val = profile._f(xc)
    if np.any(~(np.asarray(val) > 0)):
        raise ProfileError(f"density {profile.spec!r} is not positive at the "
                           "requested points")
    return val if np.ndim(x) else float(val)


# -- families ---------------------------------------------------------------

def uniform(a: float = 1.0) -> DensityProfile:
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    return DensityProfile(a=float(a), family="uniform", params=(), scale=float(a),
                          _f=one, _d1=zero, _d2=zero)


def borg(alpha: float) -> DensityProfile:
    """Borg's Dirichlet-isospectral family on |x| <= 1/2 (alpha > -1)."""
    alpha = float(alpha)
    if not alpha > -1:
        raise ParameterError(f"Borg density needs alpha > -1, got {alpha}")
    c = (1 + alpha) ** 2

    def f(x):
        return c / (1 + alpha * (x + 0.5)) ** 4

    def d1(x):
        return -4 * alpha * c / (1 + alpha * (x + 0.5)) ** 5

    def d2(x):
        return 20 * alpha ** 2 * c / (1 + alpha * (x + 0.5)) ** 6

    # length scale: distance of the pole from the nearest end
    scale = 1.0 if alpha == 0 else min(1.0, abs(1 / alpha) if alpha > 0 else abs(1 / alpha) - 1)
    return DensityProfile(a=1.0, family="borg", params=(("alpha", alpha),),
                          scale=max(scale, 1e-3), _f=f, _d1=d1, _d2=d2)


def horgan_chan() -> DensityProfile:
    """Sigma(x) = 9 / (12 x + 10) on |x| <= 1/2."""
    return DensityProfile(
        a=1.0, family="horgan_chan", scale=1.0,
        _f=lambda x: 9.0 / (12.0 * x + 10.0),
        _d1=lambda x: -108.0 / (12.0 * x + 10.0) ** 2,
        _d2=lambda x: 2592.0 / (12.0 * x + 10.0) ** 3)


def oscillating(eps: float) -> DensityProfile:
    """Sigma(x) = 2 + sin(2 pi (x + 1/2) / eps) on |x| <= 1/2."""
    eps = float(eps)
    if not eps > 0:
        raise ParameterError(f"oscillation period must be positive, got {eps}")
    k = 2 * math.pi / eps
    return DensityProfile(
        a=1.0, family="oscillating", params=(("eps", eps),), scale=min(1.0, eps),
        _f=lambda x: 2.0 + np.sin(k * (x + 0.5)),
        _d1=lambda x: k * np.cos(k * (x + 0.5)),
        _d2=lambda x: -k * k * np.sin(k * (x + 0.5)))


def mobius_map(a: float, alpha: float):
    """The map xi(x) of [-a/2, a/2] onto itself and its first three derivatives."""
    if not 1 + a * alpha > 0:
        raise ParameterError(f"Mobius map singular inside the string for alpha={alpha}")

    def den(x):
        return 2 * a * alpha + 4 * alpha * x + 4

    k = 16 * (1 + a * alpha)
    xi = lambda x: (a * alpha * (a + 2 * x) + 4 * x) / den(x)
    dxi = lambda x: k / den(x) ** 2
    d2xi = lambda x: -8 * alpha * k / den(x) ** 3
    d3xi = lambda x: 96 * alpha ** 2 * k / den(x) ** 4
    return xi, dxi, d2xi, d3xi


def gottlieb_transform(base: DensityProfile, alpha: float) -> DensityProfile:
    """Dirichlet-isospectral partner xi'(x)^2 Sigma(xi(x)) of ``base``."""
    alpha = float(alpha)
    a = base.a
    xi, dxi, d2xi, d3xi = mobius_map(a, alpha)
    if alpha == 0:
        return base

    def f(x):
        return dxi(x) ** 2 * base._f(xi(x))

    def d1(x):
        y = xi(x)
        return 2 * dxi(x) * d2xi(x) * base._f(y) + dxi(x) ** 3 * base._d1(y)

    def d2(x):
        y = xi(x)
        p1, p2, p3 = dxi(x), d2xi(x), d3xi(x)
        return (2 * (p2 ** 2 + p1 * p3) * base._f(y)
                + 5 * p1 ** 2 * p2 * base._d1(y)
                + p1 ** 4 * base._d2(y))

    # the map compresses lengths by at most min xi'
    ends = np.array([-a / 2, a / 2])
    stretch = float(np.max(dxi(ends)))
    return DensityProfile(a=a, family="gottlieb", params=(("alpha", alpha),),
                          scale=base.scale / stretch, base=base,
                          _f=f, _d1=d1, _d2=d2)


def table(x, values, *, path: Optional[str] = None) -> DensityProfile:
    """Cubic-spline density through tabulated knots spanning a symmetric interval."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.shape != v.shape or len(x) < 4:
        raise ProfileError("table needs at least four (x, Sigma) pairs")
    if np.any(np.diff(x) <= 0):
        raise ProfileError("table knots must be strictly increasing")
    a = x[-1] - x[0]
    if abs(x[0] + x[-1]) > 1e-12 * a:
        raise ProfileError("table knots must span a symmetric interval [-a/2, a/2]")
    spline = CubicSpline(x, v, bc_type="clamped")
    d1s, d2s = spline.derivative(1), spline.derivative(2)
    params = (("path", path),) if path else ()
    flags = ()
    curv = np.max(np.abs(d2s(np.linspace(x[0], x[-1], _VALIDITY_SAMPLES))))
    if curv * a * a > _CURVATURE_FLAG * np.mean(np.abs(v)):
        flags = ("large_curvature",)
        warnings.warn("table density has a large spline second derivative; "
                      "asymptotic coefficients may be unreliable", stacklevel=2)
    return DensityProfile(a=float(a), family="table", params=params,
                          scale=float(np.min(np.diff(x))) * 4, breaks=tuple(x[1:-1]),
                          flags=flags,
                          _f=lambda t: spline(t), _d1=lambda t: d1s(t),
                          _d2=lambda t: d2s(t))


def table_from_csv(path: str) -> DensityProfile:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                if rows:
                    raise ProfileError(f"malformed row in {path}: {row}")
                # header line
    if not rows:
        raise ProfileError(f"no data rows in {path}")
    arr = np.array(rows)
    return table(arr[:, 0], arr[:, 1], path=path)


def custom(func: Callable, a: float = 1.0, *, d1: Callable = None,
           d2: Callable = None, name: str = "custom") -> DensityProfile:
    """Wrap an arbitrary vectorized density; missing derivatives use finite differences."""
    h = 1e-4 * a
    half = a / 2

    def _stencil(x):
        # shift stencils inward so no sample leaves the string
        x = np.asarray(x, dtype=float)
        lo = x - 2 * h < -half
        hi = x + 2 * h > half
        return x, lo, hi

    def fd1(x):
        x, lo, hi = _stencil(x)
        out = np.empty_like(x)
        mid = ~(lo | hi)
        xm = x[mid]
        out[mid] = (-func(xm + 2 * h) + 8 * func(xm + h) - 8 * func(xm - h)
                    + func(xm - 2 * h)) / (12 * h)
        for mask, s in ((lo, 1.0), (hi, -1.0)):
            xe = x[mask]
            f = [func(xe + s * k * h) for k in range(5)]
            out[mask] = s * (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3]
                             - 3 * f[4]) / (12 * h)
        return out

    def fd2(x):
        x, lo, hi = _stencil(x)
        out = np.empty_like(x)
        mid = ~(lo | hi)
        xm = x[mid]
        out[mid] = (-func(xm + 2 * h) + 16 * func(xm + h) - 30 * func(xm)
                    + 16 * func(xm - h) - func(xm - 2 * h)) / (12 * h * h)
        for mask, s in ((lo, 1.0), (hi, -1.0)):
            xe = x[mask]
            f = [func(xe + s * k * h) for k in range(6)]
            out[mask] = (45 * f[0] - 154 * f[1] + 214 * f[2] - 156 * f[3]
                         + 61 * f[4] - 10 * f[5]) / (12 * h * h)
        return out

    def _vec(g):
        return lambda x: np.asarray(g(np.atleast_1d(np.asarray(x, dtype=float))),
                                    dtype=float).reshape(np.shape(x))

    return DensityProfile(a=float(a), family=name, scale=float(a),
                          _f=lambda x: np.asarray(func(x), dtype=float),
                          _d1=_vec(d1 or fd1), _d2=_vec(d2 or fd2))


# -- integrals ----------------------------------------------------------------

def _panels_for(profile: DensityProfile) -> int:
    return max(4, int(math.ceil(4 * profile.a / profile.scale)))


def mean_density(profile: DensityProfile, tol: float = 1e-13) -> float:
    """<Sigma> = (1/a) * integral of Sigma over the string."""
    half = profile.a / 2
    val, _ = integrate(profile._f, -half, half, tol=tol,
                       min_panels=_panels_for(profile), breaks=profile.breaks)
    return val / profile.a


def sigma(profile: DensityProfile, x, tol: float = 1e-13):
    """sigma(x) = integral of sqrt(Sigma) from -a/2 to x."""
    xs = profile._check(x)
    half = profile.a / 2
    root = lambda t: np.sqrt(profile._f(t))
    base_panels = _panels_for(profile)
    out = np.empty(np.shape(xs))
    flat = np.atleast_1d(xs)
    res = np.empty(flat.shape)
    for i, xv in enumerate(flat):
        frac = (xv + half) / profile.a
        res[i], _ = integrate(root, -half, float(xv), tol=tol,
                              min_panels=max(2, int(math.ceil(base_panels * frac))),
                              breaks=profile.breaks)
    out = res.reshape(np.shape(xs))
    return out if np.ndim(x) else float(out)


def total_sigma(profile: DensityProfile) -> float:
    """sigma(a/2): the length of the homogeneous string with the same asymptotics."""
    return sigma(profile, profile.a / 2)


# -- spec grammar ---------------------------------------------------------------

def _kv(body: str, spec: str) -> dict:
    out = {}
    for part in body.split(","):
        if "=" not in part:
            raise ProfileError(f"expected key=value in density spec {spec!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _num(v: str, spec: str) -> float:
    try:
        return float(v)
    except ValueError:
        raise ProfileError(f"not a number in density spec {spec!r}: {v!r}") from None


def parse_density(spec: str) -> DensityProfile:
    """Build a profile from its string form (see module docstring)."""
    spec = spec.strip()
    name, _, body = spec.partition(":")
    name = name.strip().lower().replace("_", "-")
    try:
        if name == "uniform":
            a = _num(_kv(body, spec).get("a", "1"), spec) if body else 1.0
            return uniform(a)
        if name == "horgan-chan":
            return horgan_chan()
        if name == "borg":
            return borg(_num(_kv(body, spec)["alpha"], spec))
        if name == "oscillating":
            return oscillating(_num(_kv(body, spec)["eps"], spec))
        if name == "gottlieb":
            if not body.startswith("base=") or ",alpha=" not in body:
                raise ProfileError(f"gottlieb spec needs base=<spec>,alpha=<f>: {spec!r}")
            base_spec, _, alpha = body[len("base="):].rpartition(",alpha=")
            return gottlieb_transform(parse_density(base_spec), _num(alpha, spec))
        if name == "table":
            return table_from_csv(_kv(body, spec)["path"])
    except KeyError as exc:
        raise ProfileError(f"missing parameter {exc} in density spec {spec!r}") from None
    except (ParameterError, OSError) as exc:
        raise ProfileError(str(exc)) from exc
    raise ProfileError(f"unknown density family in {spec!r}")


__all__ = [
    "DensityProfile", "evaluate", "uniform", "borg", "horgan_chan", "oscillating",
    "gottlieb_transform", "mobius_map", "table", "table_from_csv", "custom",
    "mean_density", "sigma", "total_sigma", "parse_density",
]
