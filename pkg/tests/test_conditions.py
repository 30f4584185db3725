from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distext import conditions as cond
from distext.circle import CircleIsometry, PointSet, pointwise_stabilizer_trivial
from distext.errors import PreconditionError

P = PointSet.of
PENTAGON = P(*(F(i, 5) for i in range(5)))
SQUARE = P(0, F(1, 4), F(1, 2), F(3, 4))

lattice_sets = st.sets(st.integers(0, 59), min_size=1, max_size=6).map(
    lambda s: PointSet.from_residues(s, 60))
isometries = st.builds(
    lambda r, k, d: CircleIsometry.reflection(F(k, d)) if r else CircleIsometry.rotation(F(k, d)),
    st.booleans(), st.integers(0, 40), st.integers(1, 20))


def test_reflection_witness_examples():
    assert cond.reflection_witness(PENTAGON) is None
    assert cond.reflection_witness(P(0, F(1, 7), F(2, 7), F(4, 7))).value == 0
    assert cond.reflection_witness(P(0)).value == 0


def test_small_turn_examples():
    assert cond.avoids_small_turns(P(0, F(1, 7), F(2, 7), F(4, 7)))
    assert not cond.avoids_small_turns(P(0, F(1, 2), F(1, 7), F(9, 14)))
    assert not cond.avoids_small_turns(P(0, F(1, 5), F(1, 2), F(9, 10)))


def test_quarter_and_fifth_examples():
    assert cond.avoids_quarter_and_fifth_turns(P(0, F(1, 2), F(1, 7), F(9, 14)))
    assert not cond.avoids_quarter_and_fifth_turns(SQUARE)
    assert not cond.avoids_quarter_and_fifth_turns(P(0, F(2, 5), F(1, 7), F(1, 3)))


def test_fifth_turn_examples():
    assert cond.avoids_fifth_turns(SQUARE)
    assert not cond.avoids_fifth_turns(P(0, F(1, 5), F(1, 2), F(3, 4)))
    assert cond.avoids_fifth_turns(PointSet())


def test_regular_polygon_examples():
    assert cond.is_regular_polygon(PENTAGON, 5)
    assert cond.is_regular_polygon(P(F(1, 8), F(3, 8), F(5, 8), F(7, 8)), 4)
    assert not cond.is_regular_polygon(PENTAGON, 4)


@given(lattice_sets)
def test_turn_conditions_weaken(W):
    if cond.avoids_small_turns(W):
        assert cond.avoids_quarter_and_fifth_turns(W)
    if cond.avoids_quarter_and_fifth_turns(W):
        assert cond.avoids_fifth_turns(W)


@settings(max_examples=300)
@given(lattice_sets, isometries)
def test_predicates_are_invariant(W, g):
    V = W.image(g)
    for pred in (cond.avoids_small_turns, cond.avoids_quarter_and_fifth_turns, cond.avoids_fifth_turns):
        assert pred(V) == pred(W)
    assert (cond.reflection_witness(V) is None) == (cond.reflection_witness(W) is None)
    assert cond.is_regular_polygon(V, len(V)) == cond.is_regular_polygon(W, len(W))
    if pointwise_stabilizer_trivial(W):
        assert cond.circle_extension_status(V).verdict == cond.circle_extension_status(W).verdict


def test_classify_examples():
    assert cond.classify_four_point(P(0, F(1, 3), F(1, 2), F(2, 3))).kind == cond.THIRDS
    case = cond.classify_four_point(P(0, F(1, 7), F(1, 2), F(9, 14)))
    assert case.kind == cond.ANTIPODAL_PAIRS and case.param.value == F(1, 7)
    assert cond.classify_four_point(P(0, F(1, 7), F(2, 7), F(4, 7))).kind == cond.REFLECTION_WITNESS
    assert cond.classify_four_point(P(0, F(1, 6), F(1, 3), F(1, 2))).kind == cond.SIXTHS
    with pytest.raises(PreconditionError):
        cond.classify_four_point(SQUARE)


def test_classify_is_exhaustive_on_a_fine_lattice():
    # every 4-subset of 1/60-multiples containing 0 and avoiding quarter and fifth turns
    seen = set()
    for W in itertools.combinations(range(60), 4):
        if W[0] != 0:
            break
        S = PointSet.from_residues(W, 60)
        if cond.avoids_quarter_and_fifth_turns(S):
            kind = cond.classify_four_point(S).kind
            assert kind != cond.UNCLASSIFIED, S
            seen.add(kind)
    assert seen == {cond.REFLECTION_WITNESS, cond.ANTIPODAL_PAIRS, cond.THIRDS, cond.SIXTHS}


def test_status_examples():
    s = cond.circle_extension_status(PENTAGON)
    assert (s.verdict, s.rule) == (cond.FAILS, cond.RULE_PENTAGON)
    s = cond.circle_extension_status(SQUARE)
    assert (s.verdict, s.rule) == (cond.FAILS, cond.RULE_SQUARE)
    assert cond.circle_extension_status(P(0, F(1, 6), F(1, 3), F(1, 2))).verdict == cond.HOLDS
    six = P(0, F(1, 9), F(1, 4), F(1, 3), F(1, 2), F(5, 7))
    assert cond.circle_extension_status(six).rule == cond.RULE_SIX_OR_MORE
    assert cond.circle_extension_status(P(0, F(1, 3), F(1, 2))).verdict == cond.UNKNOWN


def test_status_rejects_nontrivial_stabilizer():
    with pytest.raises(PreconditionError, match="stabilizer"):
        cond.circle_extension_status(P(0, F(1, 2)))


def test_status_family_rules_are_reached():
    # sets failing the fifth-turn and reflection tests land in the named families
    assert cond.circle_extension_status(P(0, F(1, 5), F(1, 2), F(7, 10))).rule == cond.RULE_ANTIPODAL
    assert cond.circle_extension_status(P(0, F(1, 4), F(3, 4), F(1, 5))).rule in (
        cond.RULE_REFLECTION, cond.RULE_QUARTERS)


def test_status_unknown_never_for_five_points():
    for W in itertools.combinations(range(20), 5):
        S = PointSet.from_residues(W, 20)
        assert cond.circle_extension_status(S).verdict != cond.UNKNOWN


@settings(max_examples=200)
@given(st.sets(st.integers(0, 59), min_size=4, max_size=7))
def test_status_monotone(res):
    W = PointSet.from_residues(res, 60)
    for size in range(3, len(res)):
        for sub in itertools.combinations(sorted(res), size):
            V = PointSet.from_residues(sub, 60)
            if pointwise_stabilizer_trivial(V) and cond.circle_extension_status(V).verdict == cond.HOLDS:
                assert cond.circle_extension_status(W).verdict != cond.FAILS


def test_status_serializes():
    d = cond.circle_extension_status(PENTAGON).to_dict()
    assert d == {"verdict": "Fails", "rule": cond.RULE_PENTAGON, "witness": {"kind": "rotation", "param": "1/5"}}
    with pytest.raises(ValueError):
        cond.ExtensionStatus(cond.HOLDS, None)


def test_condition_report_keys():
    r = cond.condition_report(P(0, F(1, 3), F(1, 2), F(2, 3)))
    assert r["four_point_case"]["kind"] == cond.THIRDS
    assert r["reflection_witness"] is None


def test_planar_witness_examples():
    assert cond.planar_half_turn_witness([(0, 0), (1, 0), (0, 1), (2, 3)]) == (0, 0)
    assert cond.planar_half_turn_witness([(5, 5)]) == (5, 5)
    pts = [(0, 0), (1, 1), (2, 2), (-1, 3)]
    w = cond.planar_half_turn_witness(pts)
    assert w == (-1, 3)
    assert all((2 * w[0] - x, 2 * w[1] - y) not in pts for x, y in pts if (x, y) != w)


@given(st.sets(st.tuples(st.fractions(max_denominator=6), st.fractions(max_denominator=6)), min_size=1, max_size=12))
def test_planar_witness_half_turn_leaves_set(pts):
    pts = list(pts)
    w = cond.planar_half_turn_witness(pts)
    members = set(pts)
    assert all((2 * w[0] - x, 2 * w[1] - y) not in members for x, y in pts if (x, y) != w)
