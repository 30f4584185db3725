from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from distext import extensions as ex
from distext.circle import Angle, PointSet, setwise_symmetries
from distext.cycle import CycleColoring, is_distinguishing
from distext.errors import PreconditionError

R, B = ex.R, ex.B


def precoloring(n, W, fill=R, overrides=None):
    pre = [None if v in W else fill for v in range(n)]
    for v, c in (overrides or {}).items():
        pre[v % n] = c
    return pre


def check_triple(t, pre):
    W = set(t.W)
    for col in t.colorings:
        assert all(col.colors[v] == pre[v] for v in range(t.n) if v not in W)
    first, second, third = (c.colors for c in t.colorings)
    assert {v for v in range(t.n) if first[v] != second[v]} == set(t.differ_on)
    assert all(third[v] == first[v] for v in range(t.n) if v not in t.differ_on)
    assert is_distinguishing(t.result)
    assert oracles.is_distinguishing(t.result.colors)


def test_antipodal_examples():
    n, a = 14, 1
    W = ex.family_set(ex.ANTIPODAL, n, a)
    t = ex.build_antipodal_pairs(n, a, precoloring(n, W))
    check_triple(t, precoloring(n, W))
    assert t.branch == "c"
    t = ex.build_antipodal_pairs(n, a, precoloring(n, W, overrides={-a: B}))
    assert t.branch == "d"
    with pytest.raises(PreconditionError, match="quarter"):
        ex.build_antipodal_pairs(8, 2, precoloring(8, {0, 2, 4, 6}))


def test_negation_keeps_original_precoloring():
    n, a = 10, 3
    W = ex.family_set(ex.ANTIPODAL, n, a)
    pre = precoloring(n, W, fill=B)
    t = ex.build_antipodal_pairs(n, a, pre)
    assert t.negated
    check_triple(t, pre)


def test_thirds_examples():
    W = ex.family_set(ex.THIRDS, 6)
    assert W == (0, 2, 3, 4)
    t = ex.build_thirds(6, precoloring(6, W, overrides={1: R, 5: R}))
    assert t.branch == "c" and not t.negated
    assert t.colorings[0].colors == (B, R, B, B, R, R)
    assert is_distinguishing(t.colorings[0])
    t = ex.build_thirds(6, precoloring(6, W, overrides={1: R, 5: B}))
    assert t.branch == "d"
    with pytest.raises(PreconditionError):
        ex.build_thirds(8, [None] * 8)


def test_thirds_twelve_exhaustive():
    W = ex.family_set(ex.THIRDS, 12)
    comp = [v for v in range(12) if v not in W]
    for bits in itertools.product((R, B), repeat=len(comp)):
        pre = precoloring(12, W)
        for v, c in zip(comp, bits):
            pre[v] = c
        check_triple(ex.build_thirds(12, pre), pre)


def test_quarter_examples():
    n, a = 8, 1
    W = ex.family_set(ex.QUARTER, n, a)
    pre = precoloring(n, W, fill=B)
    t = ex.build_quarter(n, a, pre)
    check_triple(t, pre)
    col = t.result.colors
    vals = [col[v] for v in (1, 7, 5, 3)]
    assert max(vals.count(R), vals.count(B)) == 3
    with pytest.raises(PreconditionError, match="n/2"):
        ex.build_quarter(8, 4, precoloring(8, {0, 2, 6, 4}))


def test_quarter_twelve_seeded():
    n, a = 12, 1
    W = ex.family_set(ex.QUARTER, n, a)
    for seed in range(1000):
        rng = random.Random(seed)
        pre = [None if v in W else rng.randint(0, 1) for v in range(n)]
        check_triple(ex.build_quarter(n, a, pre), pre)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(ex.ANTIPODAL, n) for n in (6, 10, 12, 14, 16)] + [(ex.QUARTER, n) for n in (8, 12, 16)]
                       + [(ex.THIRDS, n) for n in (6, 12)] + [(ex.SIXTHS, n) for n in (6, 12)]),
       st.data())
def test_builders_always_find_distinguishing_member(fam_n, data):
    family, n = fam_n
    a = None
    if family == ex.ANTIPODAL:
        a = data.draw(st.sampled_from([x for x in range(1, n // 2) if 4 * x % n]))
    elif family == ex.QUARTER:
        a = data.draw(st.sampled_from([x for x in range(1, n) if x not in (n // 4, n // 2, 3 * n // 4)]))
    W = ex.family_set(family, n, a)
    pre = [None if v in W else data.draw(st.integers(0, 1)) for v in range(n)]
    check_triple(ex.build(family, n, pre, a), pre)


def test_precondition_checks():
    with pytest.raises(PreconditionError, match="exactly off W"):
        ex.build_antipodal_pairs(14, 1, [R] * 14)
    with pytest.raises(PreconditionError, match="length"):
        ex.build_antipodal_pairs(14, 1, [R] * 3)
    with pytest.raises(PreconditionError):
        ex.build(ex.ANTIPODAL, 14, [R] * 14)
    with pytest.raises(ValueError, match="unknown family"):
        ex.build("hexagon", 12, [R] * 12)


def test_triple_serializes():
    n = 12
    W = ex.family_set(ex.SIXTHS, n)
    d = ex.build_thirds(n, precoloring(n, W), shifted=True).to_dict()
    assert d["family"] == ex.SIXTHS and len(d["colorings"]) == 3 and d["distinguishing"][d["chosen"]]


def test_replacement_examples():
    plan = ex.replacement_plan(CycleColoring((R,) * 6))
    assert plan.flips == (0, 1, 3) and plan.method == "constant"
    good = CycleColoring.from_mask(0b000001011, 12)
    assert is_distinguishing(good) and ex.replace_to_distinguishing(good) == ()
    alt = CycleColoring(tuple(i % 2 for i in range(10)))
    flips = ex.replace_to_distinguishing(alt)
    assert len(flips) <= 3 and is_distinguishing(alt.flipped(flips))
    assert oracles.min_flips(alt.colors) <= len(flips)


def test_replacement_exhaustive_small():
    for n in range(6, 13):
        for m in range(1 << n):
            c = CycleColoring.from_mask(m, n)
            plan = ex.replacement_plan(c)
            assert len(plan.flips) <= 3 and is_distinguishing(c.flipped(plan.flips))
            assert not plan.anomalies


@settings(max_examples=200, deadline=None)
@given(st.integers(13, 16), st.data())
def test_replacement_random_larger(n, data):
    c = CycleColoring(tuple(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))))
    plan = ex.replacement_plan(c)
    assert len(plan.flips) <= 3 and is_distinguishing(c.flipped(plan.flips))


def test_replacement_rejects_bad_input():
    with pytest.raises(PreconditionError):
        ex.replacement_plan(CycleColoring((0, 1, 2, 0, 1, 2), 3))
    with pytest.raises(PreconditionError):
        ex.replacement_plan(CycleColoring((0, 1, 1, 0, 1)))


def toggled(blue, toggles):
    pts = set(blue.points) ^ set(toggles)
    return PointSet(tuple(pts))


def test_circle_replacement_examples():
    empty = ex.circle_replacement(PointSet())
    assert empty == tuple(Angle(t) for t in (0, F(1, 3), F(1, 2)))
    asym = PointSet.of(0, F(1, 7), F(3, 7))
    assert ex.circle_replacement(asym) == ()
    pent = PointSet.of(*(F(i, 5) for i in range(5)))
    t = ex.circle_replacement(pent)
    assert 1 <= len(t) <= 3 and len(setwise_symmetries(toggled(pent, t))) == 1


def test_symmetric_three_point_set_needs_toggles():
    # reflection about 1/7 swaps 0 and 2/7
    B3 = PointSet.of(0, F(1, 7), F(2, 7))
    assert len(setwise_symmetries(B3)) == 2
    t = ex.circle_replacement(B3)
    assert 1 <= len(t) <= 3 and len(setwise_symmetries(toggled(B3, t))) == 1


@settings(max_examples=100, deadline=None)
@given(st.sets(st.builds(lambda k, d: F(k, d) % 1, st.integers(0, 23), st.sampled_from([2, 3, 4, 6, 8, 12])),
               max_size=6))
def test_circle_replacement_property(pts):
    blue = PointSet(tuple(pts))
    t = ex.circle_replacement(blue)
    assert len(t) <= 3
    after = toggled(blue, t)
    assert len(after) > 0 and len(setwise_symmetries(after)) == 1
