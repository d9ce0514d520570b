import json
import math

import mpmath as mp
import pytest

from stringzeta import density as dn
from stringzeta.asymptotics import AsymptoticCoefficients
from stringzeta.errors import DataError, TailInconsistencyError
from stringzeta.extrapolate import (BoundPair, EstimateSequence, berry_estimate,
                                    berry_sequence, euler_bounds, excited_estimate,
                                    shanks, shanks_table, waring_sequence)
from stringzeta.sumrules import SumRuleTable, sum_rules

UNIFORM_DD = {s: float(mp.zeta(2 * s)) / math.pi ** (2 * s) for s in range(1, 8)}


def test_uniform_bounds_example():
    b = euler_bounds(UNIFORM_DD, 1)
    assert (b.lower, b.upper) == pytest.approx((math.sqrt(90), 15.0))
    assert b.contains(math.pi ** 2)


def test_borg_bounds_example():
    tab = sum_rules(dn.borg(2.0), "DD", [3, 4])
    b = euler_bounds(tab, 3)
    assert b.lower == pytest.approx(9450 ** 0.25, rel=1e-10)
    assert b.upper == pytest.approx(10.0, rel=1e-10)


def test_bounds_tighten_with_order():
    prev = None
    for s in range(1, 7):
        b = euler_bounds(UNIFORM_DD, s)
        assert b.lower <= math.pi ** 2 <= b.upper
        if prev:
            assert b.lower >= prev.lower and b.upper <= prev.upper
        prev = b


def test_bound_pair_inconsistent():
    with pytest.raises(DataError):
        BoundPair(1, 2.0, 1.0)


def test_missing_or_nonpositive_orders():
    with pytest.raises(DataError):
        euler_bounds({1: 0.1}, 1)
    with pytest.raises(DataError):
        euler_bounds({1: 0.1, 2: -1.0}, 1)


def test_waring_is_increasing_lower_bound():
    seq = waring_sequence(UNIFORM_DD)
    vals = list(seq.estimates)
    assert vals == sorted(vals)
    assert all(v <= math.pi ** 2 for v in vals)


def test_berry_exact_for_homogeneous_string():
    c = AsymptoticCoefficients(1.0, 0.0)
    for q in (1, 2, 5):
        assert berry_estimate(UNIFORM_DD, c, "DD", q) == pytest.approx(math.pi ** 2, rel=1e-10)


def test_excited_estimate_second_mode():
    c = AsymptoticCoefficients(1.0, 0.0)
    e2 = excited_estimate(UNIFORM_DD, c, "DD", 3, [math.pi ** 2])
    assert e2 == pytest.approx(4 * math.pi ** 2, rel=1e-9)
    with pytest.raises(DataError):
        excited_estimate(UNIFORM_DD, c, "DD", 1, [math.pi ** 2])


def test_tail_inconsistency():
    with pytest.raises(TailInconsistencyError):
        berry_estimate({1: 1e-3}, AsymptoticCoefficients(1.0, 0.0), "DD", 1)


def test_shanks_exact_on_geometric_sequence():
    seq = [2 + 3 * 0.5 ** k for k in range(6)]
    assert shanks(seq) == pytest.approx([2.0] * 4)
    with pytest.raises(DataError):
        shanks(seq[:2])


def test_shanks_table_shape_and_guard():
    t = shanks_table([1.0, 1.5, 1.75, 1.875, 1.9375, 1.96875, 1.984375])
    assert [len(c) for c in t.columns] == [7, 5, 3, 1]
    assert t.depth == 3
    assert t.best == pytest.approx(2.0)
    # a converged (constant) sequence is passed through and flagged
    flat = shanks_table([1.0, 1.0, 1.0])
    assert flat.best == 1.0 and flat.flags[1] == (True,)


def test_shanks_preserves_mp_precision():
    with mp.workdps(40):
        seq = [mp.mpf(2) + mp.mpf(3) / 7 ** k for k in range(5)]
        out = shanks_table(seq).best
        assert isinstance(out, mp.mpf)
        assert abs(out - 2) < mp.mpf(10) ** -35


def test_estimate_sequence_serialization():
    seq = berry_sequence(UNIFORM_DD, AsymptoticCoefficients(1.0, 0.0), "DD")
    d = json.loads(seq.to_json())
    assert d["method"] == "berry" and d["q"] == list(range(1, 8))
    assert len(d["shanks_columns"]) == 4
    with pytest.raises(DataError):
        EstimateSequence("magic", (1,), (1.0,))
    with pytest.raises(DataError):
        EstimateSequence("waring", (1, 2), (1.0,))


def test_accepts_sum_rule_table():
    tab = SumRuleTable("DD", tuple(UNIFORM_DD), tuple(UNIFORM_DD.values()), "fixture")
    assert waring_sequence(tab).estimates == waring_sequence(UNIFORM_DD).estimates
