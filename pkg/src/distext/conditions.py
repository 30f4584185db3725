"""Decidable predicates on finite subsets of the circle and the resulting
verdict on whether every precoloring of the complement extends to a
distinguishing 2-coloring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .circle import (
    HALF,
    Angle,
    CircleIsometry,
    PointSet,
    equivalent,
    pointwise_stabilizer_trivial,
)
from .errors import PreconditionError

HOLDS = "Holds"
FAILS = "Fails"
UNKNOWN = "Unknown"

QUARTER = Fraction(1, 4)

THIRDS_TEMPLATE = PointSet.of(0, Fraction(1, 3), HALF, Fraction(2, 3))
SIXTHS_TEMPLATE = PointSet.of(0, Fraction(1, 6), Fraction(1, 3), HALF)


@dataclass(frozen=True)
class ExtensionStatus:
    verdict: str
    rule: str | None = None
    witness: CircleIsometry | PointSet | None = None

    def __post_init__(self):
        if (self.verdict == UNKNOWN) != (self.rule is None):
            raise ValueError("Holds/Fails need a rule; Unknown carries none")

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, CircleIsometry):
            w = w.to_dict()
        elif isinstance(w, PointSet):
            w = str(w)
        return {"verdict": self.verdict, "rule": self.rule, "witness": w}


def _differences(W: PointSet) -> set[Fraction]:
    return {(b.value - a.value) % 1 for a, b in permutations(W.points, 2)}


def avoids_differences(W: PointSet, shifts) -> bool:
    """True iff (W + s) and W are disjoint for every shift s."""
    diffs = _differences(W)
    return not any(Fraction(s) % 1 in diffs for s in shifts)


SMALL_TURNS = tuple(Fraction(i, k) for k in range(2, 6) for i in range(1, k))
QUARTER_AND_FIFTH_TURNS = (Fraction(1, 4), Fraction(3, 4)) + tuple(Fraction(i, 5) for i in range(1, 5))
FIFTH_TURNS = tuple(Fraction(i, 5) for i in range(1, 5))


def avoids_small_turns(W: PointSet) -> bool:
    """No two points differ by i/k for 2 <= k <= 5."""
    return avoids_differences(W, SMALL_TURNS)


def avoids_quarter_and_fifth_turns(W: PointSet) -> bool:
    return avoids_differences(W, QUARTER_AND_FIFTH_TURNS)


def avoids_fifth_turns(W: PointSet) -> bool:
    """All points lie in distinct orbits of the rotation by 1/5."""
    return avoids_differences(W, FIFTH_TURNS)


def reflection_witness(W: PointSet) -> Angle | None:
    """Least w0 in W whose reflection tau_{w0} sends every other point off W."""
    if len(W) == 0:
        raise ValueError("reflection witness needs a nonempty point set")
    for w0 in W.points:
        tau = CircleIsometry.reflection(w0.value)
        if not any(tau.apply(x) in W for x in W.points if x != w0):
            return w0
    return None


def is_regular_polygon(W: PointSet, k: int) -> bool:
    return len(W) == k and all(g == Fraction(1, k) for g in W.gaps())


def antipodal_pairs(W: PointSet) -> Angle | None:
    """If W = {p, p+1/2, q, q+1/2} with q - p != +-1/4, return a = q - p
    (reduced into (0, 1/2)), so W is a rotation of {0, a, 1/2, a + 1/2}."""
    if len(W) != 4:
        return None
    p = W.points[0]
    if p + HALF not in W:
        return None
    rest = [x for x in W.points if x not in (p, p + HALF)]
    q, r = rest
    if r != q + HALF:
        return None
    a = (q.value - p.value) % HALF
    if a == QUARTER:
        return None
    return Angle(a)


def three_quarter_family(W: PointSet) -> tuple[Angle, Angle] | None:
    """If W contains {x - 1/4, x, x + 1/4} and a fourth point y != x + 1/2,
    return (x, y - x), so rotating by -x gives {0, 1/4, 3/4, a}."""
    if len(W) != 4:
        return None
    for x in W.points:
        if x + QUARTER in W and x - QUARTER in W:
            (y,) = [p for p in W.points if p not in (x, x + QUARTER, x - QUARTER)]
            if y != x + HALF:
                return x, y - x
    return None


REFLECTION_WITNESS = "reflection-witness"
ANTIPODAL_PAIRS = "antipodal-pairs"
THIRDS = "thirds"
SIXTHS = "sixths"
UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class FourPointCase:
    kind: str
    param: Angle | None = None


def classify_four_point(W: PointSet) -> FourPointCase:
    """Which shape a 4-point set avoiding quarter and fifth turns takes.

    Every such set either has a reflection witness, is two antipodal pairs,
    or is equivalent to one of two sets built from sixths of a turn.
    UNCLASSIFIED would mean that dichotomy failed.
    """
    if len(W) != 4 or not avoids_quarter_and_fifth_turns(W):
        raise PreconditionError(
            f"four-point classification needs |W| = 4 with no quarter/fifth-turn differences, got {W}"
        )
    w0 = reflection_witness(W)
    if w0 is not None:
        return FourPointCase(REFLECTION_WITNESS, w0)
    a = antipodal_pairs(W)
    if a is not None:
        return FourPointCase(ANTIPODAL_PAIRS, a)
    if equivalent(W, THIRDS_TEMPLATE) is not None:
        return FourPointCase(THIRDS)
    if equivalent(W, SIXTHS_TEMPLATE) is not None:
        return FourPointCase(SIXTHS)
    return FourPointCase(UNCLASSIFIED)


# Rule identifiers carried by ExtensionStatus.
RULE_SIX_OR_MORE = "six-or-more-points"
RULE_PENTAGON = "regular-pentagon"
RULE_FIVE = "five-points-not-pentagon"
RULE_SQUARE = "square"
RULE_FIFTHS = "distinct-fifth-turn-orbits"
RULE_REFLECTION = "reflection-witness"
RULE_ANTIPODAL = "antipodal-pairs"
RULE_THIRDS = "thirds-family"
RULE_SIXTHS = "sixths-family"
RULE_QUARTERS = "three-quarter-family"


def circle_extension_status(W: PointSet) -> ExtensionStatus:
    """Verdict on the precoloring extension property for W under O(2).

    Exceptions are checked before sufficient conditions, so no two rules
    can disagree.  Sets of size 3 or less, and 4-point sets outside every
    characterized family, get Unknown.
    """
    if len(W) == 0 or not pointwise_stabilizer_trivial(W):
        raise PreconditionError(f"pointwise stabilizer of {{{W}}} is nontrivial; the property is undefined")
    size = len(W)
    if size >= 6:
        return ExtensionStatus(HOLDS, RULE_SIX_OR_MORE)
    if size == 5:
        if is_regular_polygon(W, 5):
            return ExtensionStatus(FAILS, RULE_PENTAGON, CircleIsometry.rotation(Fraction(1, 5)))
        return ExtensionStatus(HOLDS, RULE_FIVE)
    if size <= 3:
        return ExtensionStatus(UNKNOWN)

    if is_regular_polygon(W, 4):
        return ExtensionStatus(FAILS, RULE_SQUARE, CircleIsometry.rotation(QUARTER))
    if avoids_fifth_turns(W):
        return ExtensionStatus(HOLDS, RULE_FIFTHS)
    w0 = reflection_witness(W)
    if w0 is not None:
        return ExtensionStatus(HOLDS, RULE_REFLECTION, CircleIsometry.reflection(w0.value))
    if antipodal_pairs(W) is not None:
        return ExtensionStatus(HOLDS, RULE_ANTIPODAL, CircleIsometry.rotation(-W.points[0].value))
    for template, rule in ((THIRDS_TEMPLATE, RULE_THIRDS), (SIXTHS_TEMPLATE, RULE_SIXTHS)):
        g = equivalent(W, template)
        if g is not None:
            return ExtensionStatus(HOLDS, rule, g)
    fam = three_quarter_family(W)
    if fam is not None:
        return ExtensionStatus(HOLDS, RULE_QUARTERS, CircleIsometry.rotation(-fam[0].value))
    return ExtensionStatus(UNKNOWN)


def condition_report(W: PointSet) -> dict:
    """Every predicate on W, as used by the CLI."""
    out = {
        "points": str(W),
        "size": len(W),
        "common_denominator": W.common_denominator() if len(W) else 1,
        "pointwise_stabilizer_trivial": bool(len(W)) and pointwise_stabilizer_trivial(W),
        "reflection_witness": None,
        "avoids_small_turns": avoids_small_turns(W),
        "avoids_quarter_and_fifth_turns": avoids_quarter_and_fifth_turns(W),
        "avoids_fifth_turns": avoids_fifth_turns(W),
        "regular_polygon": len(W) >= 1 and is_regular_polygon(W, len(W)),
    }
    if len(W):
        w0 = reflection_witness(W)
        out["reflection_witness"] = None if w0 is None else str(w0)
    if len(W) == 4 and avoids_quarter_and_fifth_turns(W):
        case = classify_four_point(W)
        out["four_point_case"] = {"kind": case.kind, "param": None if case.param is None else str(case.param)}
    return out


def planar_half_turn_witness(points) -> tuple[Fraction, Fraction]:
    """The lexicographically least point w0 of a finite planar set.

    The half-turn p -> 2*w0 - p sends every other point strictly to the
    left of w0 (or straight below it), so none of them lands back in the
    set.  That guarantee is re-checked before returning.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise ValueError("need at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    w0 = min(pts)
    members = set(pts)
    for p in pts:
        if p != w0 and (2 * w0[0] - p[0], 2 * w0[1] - p[1]) in members:
            raise AssertionError(f"half-turn about {w0} maps {p} back into the set")  # pragma: no cover
    return w0
