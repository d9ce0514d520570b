import math
from collections import Counter

import pytest

from stringzeta.diagrams import (CycleDiagram, canonical_cycle, diagram_count,
                                 edge_index_arrays, enumerate_diagrams, prefactor)
from stringzeta.errors import ParameterError

# edge lists printed in the paper for orders 4 and 5 (pairs i < j)
PAPER_4 = [
    {(1, 2), (1, 4), (2, 3), (3, 4)},
    {(1, 3), (1, 4), (2, 3), (2, 4)},
    {(1, 2), (1, 3), (2, 4), (3, 4)},
]
PAPER_5 = [
    {(1, 4), (1, 5), (2, 3), (2, 5), (3, 4)},
    {(1, 3), (1, 5), (2, 4), (2, 5), (3, 4)},
    {(1, 2), (1, 5), (2, 4), (3, 5), (3, 4)},
    {(1, 2), (1, 4), (2, 5), (3, 5), (3, 4)},
    {(1, 2), (1, 5), (2, 3), (4, 5), (3, 4)},
    {(1, 2), (1, 3), (2, 5), (4, 5), (3, 4)},
    {(1, 4), (1, 5), (2, 3), (2, 4), (3, 5)},
    {(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)},
    {(1, 3), (1, 5), (2, 3), (2, 4), (4, 5)},
    {(1, 3), (1, 4), (2, 3), (2, 5), (4, 5)},
    {(1, 2), (1, 4), (2, 3), (3, 5), (4, 5)},
    {(1, 2), (1, 3), (2, 4), (3, 5), (4, 5)},
]


def _edge_sets(n):
    return sorted(sorted(d.edges) for d in enumerate_diagrams(n))


@pytest.mark.parametrize("n,paper", [(4, PAPER_4), (5, PAPER_5)])
def test_matches_paper(n, paper):
    assert _edge_sets(n) == sorted(sorted(s) for s in paper)


@pytest.mark.parametrize("n", range(1, 8))
def test_counts(n):
    diags = enumerate_diagrams(n)
    assert len(diags) == diagram_count(n)
    assert len(set(diags)) == len(diags)
    # every diagram times its multiplicity covers all n! orderings of the labels
    if n >= 3:
        assert len(diags) * prefactor(n) == math.factorial(n)


def test_prefactors_match_paper():
    assert [prefactor(n) for n in range(1, 6)] == [1, 2, 6, 8, 10]


def test_low_orders():
    assert enumerate_diagrams(1)[0].edges == ((1, 1),)
    assert enumerate_diagrams(2)[0].edges == ((1, 2), (1, 2))
    assert edge_index_arrays(2) == [((0, 1), (0, 1))]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_regular_degree_two(n):
    for d in enumerate_diagrams(n):
        deg = Counter(v for e in d.edges for v in e)
        assert all(deg[v] == 2 for v in range(1, n + 1))


def test_canonical_cycle_invariance():
    seq = (3, 1, 4, 2, 5)
    canon = canonical_cycle(seq)
    for r in range(5):
        rot = seq[r:] + seq[:r]
        assert canonical_cycle(rot) == canon
        assert canonical_cycle(rot[::-1]) == canon
    assert canon[0] == 1


def test_str_closes_cycle():
    assert str(CycleDiagram((1, 2, 4, 3))) == "1-2-4-3-1"


def test_invalid_order():
    with pytest.raises(ParameterError):
        enumerate_diagrams(0)
    with pytest.raises(ParameterError):
        prefactor(0)
