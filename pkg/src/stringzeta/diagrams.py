"""Cycle diagrams: the inequivalent terms of the x-ordered n-point product.

A diagram of order n >= 3 is a Hamiltonian cycle on the labelled points
1..n, i.e. a cyclic ordering up to rotation and reflection. Orders 1 and 2
are special: a self-loop and a doubled edge.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import ParameterError


@dataclass(frozen=True, order=True)
class CycleDiagram:
    """One inequivalent cycle, stored as its canonical vertex sequence (1-based)."""

    vertices: tuple

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple:
        v = self.vertices
        if len(v) == 1:
            return ((v[0], v[0]),)
        pairs = [tuple(sorted((v[i], v[(i + 1) % len(v)]))) for i in range(len(v))]
        return tuple(sorted(pairs))

    def edge_multiset(self) -> Counter:
        return Counter(self.edges)

    def __str__(self) -> str:
        return "-".join(map(str, self.vertices + self.vertices[:1]))


def canonical_cycle(seq) -> tuple:
    """Lexicographically smallest rotation/reflection of a cyclic vertex sequence."""
    seq = tuple(seq)
    n = len(seq)
    if n <= 2:
        return tuple(sorted(seq))
    cands = []
    for s in (seq, seq[::-1]):
        for r in range(n):
            cands.append(s[r:] + s[:r])
    return min(cands)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple:
    if n == 1:
        return (CycleDiagram((1,)),)
    if n == 2:
        return (CycleDiagram((1, 2)),)
    out = []
    for rest in permutations(range(2, n + 1)):
        # keep one of each reflection pair
        if rest[0] < rest[-1]:
            out.append(CycleDiagram((1,) + rest))
    return tuple(out)


def enumerate_diagrams(n: int) -> list:
    """All inequivalent diagrams of order n, sorted by canonical form."""
    if n < 1:
        raise ParameterError(f"diagram order must be >= 1, got {n}")
    return list(_enumerate(n))


def prefactor(n: int) -> int:
    """Multiplicity of each diagram: 1, 2, then 2n (n rotations x 2 directions)."""
    if n < 1:
        raise ParameterError(f"diagram order must be >= 1, got {n}")
    return n if n <= 2 else 2 * n


def diagram_count(n: int) -> int:
    return 1 if n <= 2 else math.factorial(n - 1) // 2


def edge_index_arrays(n: int):
    """Edges of every order-n diagram as zero-based (i, j) index tuples, i < j.

    For n = 2 the doubled edge is listed twice.
    """
    out = []
    for d in _enumerate(n):
        if n == 2:
            out.append(((0, 1), (0, 1)))
        else:
            out.append(tuple((i - 1, j - 1) for i, j in d.edges))
    return out
