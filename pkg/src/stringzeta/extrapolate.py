"""Eigenvalue estimates from spectral sum rules.

Every estimator accepts either a SumRuleTable or a plain mapping {s: Z(s)},
and works on floats or mpmath numbers alike, so exact fixture values can be
carried through at high precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import mpmath as mp

from .asymptotics import AsymptoticCoefficients, tail_sum
from .errors import DataError, TailInconsistencyError
from .sumrules import SumRuleTable

# |denominator| below this fraction of |s_k| counts as converged (double precision)
SHANKS_GUARD = 1e-14


def _zmap(table) -> Mapping:
    if isinstance(table, SumRuleTable):
        return table.as_mapping()
    return {int(k): v for k, v in dict(table).items()}


def _z(zmap: Mapping, s: int):
    try:
        z = zmap[int(s)]
    except KeyError:
        raise DataError(f"order {s} not available (have {sorted(zmap)})") from None
    if not z > 0:
        raise DataError(f"Z({s}) = {z} is not positive")
    return z


def _is_mp(x) -> bool:
    return isinstance(x, (mp.mpf, mp.mpc))


def _root(x, q: int):
    """x^(-1/q), keeping mpmath precision when x is an mpf."""
    if _is_mp(x):
        return x ** (-mp.mpf(1) / q)
    return float(x) ** (-1.0 / q)


def _tail(coeffs, bc, n, q, like):
    if _is_mp(like):
        return tail_sum(coeffs, bc, n, q, dps=mp.mp.dps).value
    return tail_sum(coeffs, bc, n, q).value


@dataclass(frozen=True)
class BoundPair:
    s: int
    lower: object
    upper: object

    def __post_init__(self):
        if self.lower > self.upper * (1 + 1e-12):
            raise DataError(f"lower bound {self.lower} exceeds upper bound {self.upper}; "
                            "the sum rules are inconsistent")

    def contains(self, value, rtol: float = 0.0) -> bool:
        return self.lower * (1 - rtol) <= value <= self.upper * (1 + rtol)


@dataclass(frozen=True)
class ShanksTable:
    columns: tuple
    flags: tuple = field(default=())

    @property
    def best(self):
        return self.columns[-1][-1]

    @property
    def depth(self) -> int:
        return len(self.columns) - 1

    def to_list(self) -> list:
        return [[float(v) for v in col] for col in self.columns]


@dataclass(frozen=True)
class EstimateSequence:
    method: str
    q: tuple
    estimates: tuple

    def __post_init__(self):
        if self.method not in ("waring", "berry"):
            raise DataError(f"unknown estimate method {self.method!r}")
        if len(self.q) != len(self.estimates):
            raise DataError("q and estimates must have equal length")

    def shanks_table(self) -> ShanksTable:
        return shanks_table(self.estimates)

    def to_dict(self) -> dict:
        cols = self.shanks_table().to_list() if len(self.estimates) >= 3 else []
        return {"method": self.method, "q": list(self.q),
                "estimate": [float(v) for v in self.estimates],
                "shanks_columns": cols}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def waring_sequence(table) -> EstimateSequence:
    """Z(q)^(-1/q) for every available order: rigorous lower bounds on E1."""
    zmap = _zmap(table)
    qs = tuple(sorted(zmap))
    return EstimateSequence("waring", qs, tuple(_root(_z(zmap, q), q) for q in qs))


def euler_bounds(table, s: int) -> BoundPair:
    """Z(s+1)^(-1/(s+1)) <= E1 <= Z(s)/Z(s+1)."""
    zmap = _zmap(table)
    z0, z1 = _z(zmap, s), _z(zmap, s + 1)
    return BoundPair(s=s, lower=_root(z1, s + 1), upper=z0 / z1)


def berry_estimate(table, coeffs: AsymptoticCoefficients, bc, q: int):
    """[Z(q) - Z~_1(q)]^(-1/q): the lowest mode with the semiclassical tail removed."""
    return excited_estimate(table, coeffs, bc, q, [])


def berry_sequence(table, coeffs: AsymptoticCoefficients, bc) -> EstimateSequence:
    zmap = _zmap(table)
    qs = tuple(sorted(zmap))
    return EstimateSequence("berry", qs,
                            tuple(berry_estimate(zmap, coeffs, bc, q) for q in qs))


def excited_estimate(table, coeffs: AsymptoticCoefficients, bc, q: int,
                     known_lower_eigs: Sequence = ()):
    """Estimate E_n, n = len(known_lower_eigs) + 1, from the order q - n + 1 sum rule."""
    zmap = _zmap(table)
    n = len(known_lower_eigs) + 1
    p = q - n + 1
    if p < 1:
        raise DataError(f"order q={q} too low for mode {n} (need q - n + 1 >= 1)")
    z = _z(zmap, p)
    rest = z - _tail(coeffs, bc, n, p, z)
    for e in known_lower_eigs:
        rest -= e ** (-p)
    if not rest > 0:
        raise TailInconsistencyError(
            f"Z({p}) minus the tail beyond mode {n} and the lower modes is {rest}; "
            "check the asymptotic coefficients or the sum rules")
    return _root(rest, p)


def _guard(x) -> float:
    return 50 * mp.eps if _is_mp(x) else SHANKS_GUARD


def _shanks_flagged(seq: Sequence):
    out, flags = [], []
    for a, b, c in zip(seq, seq[1:], seq[2:]):
        den = a + c - 2 * b
        if abs(den) <= _guard(b) * abs(b):
            out.append(b)
            flags.append(True)
        else:
            out.append((a * c - b * b) / den)
            flags.append(False)
    return out, flags


def shanks(seq: Sequence) -> list:
    """One Shanks pass: (s_{k-1} s_{k+1} - s_k^2) / (s_{k-1} + s_{k+1} - 2 s_k)."""
    if len(seq) < 3:
        raise DataError("the Shanks transform needs at least 3 entries")
    return _shanks_flagged(list(seq))[0]


def shanks_table(seq: Sequence) -> ShanksTable:
    """Repeated Shanks passes until fewer than 3 entries remain."""
    if len(seq) < 3:
        raise DataError("the Shanks transform needs at least 3 entries")
    cols, flags = [tuple(seq)], [(False,) * len(seq)]
    while len(cols[-1]) >= 3:
        col, fl = _shanks_flagged(list(cols[-1]))
        cols.append(tuple(col))
        flags.append(tuple(fl))
    return ShanksTable(columns=tuple(cols), flags=tuple(flags))
