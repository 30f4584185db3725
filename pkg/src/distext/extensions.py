"""Explicit extensions of precolorings on C_n, and recoloring to a
distinguishing coloring with at most three changes.

Each family fixes a 4-point set W and a chart of three candidate colorings
of W.  The chart is instantiated inside C_n and every candidate is checked
by the cycle engine; `chosen` points at the first distinguishing one.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .circle import Angle, PointSet, setwise_symmetries
from .cycle import CycleColoring, is_distinguishing
from .errors import ConstructionAnomaly, PreconditionError

log = logging.getLogger(__name__)

R, B = 0, 1

ANTIPODAL = "antipodal"
THIRDS = "thirds"
SIXTHS = "sixths"
QUARTER = "quarter"
FAMILIES = (ANTIPODAL, THIRDS, SIXTHS, QUARTER)


@dataclass(frozen=True)
class CandidateTriple:
    """Candidates (first, second, intermediate) for one precoloring.

    first and second differ exactly on `differ_on`; the intermediate one
    agrees with both off that set.
    """

    colorings: tuple[CycleColoring, CycleColoring, CycleColoring]
    family: str
    W: tuple[int, ...]
    differ_on: tuple[int, ...]
    branch: str
    negated: bool
    chosen: int | None

    @property
    def n(self) -> int:
        return self.colorings[0].n

    @property
    def result(self) -> CycleColoring:
        if self.chosen is None:
            raise ValueError("no candidate is distinguishing")
        return self.colorings[self.chosen]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "W": list(self.W),
            "differ_on": list(self.differ_on),
            "branch": self.branch,
            "negated": self.negated,
            "colorings": [str(c) for c in self.colorings],
            "chosen": self.chosen,
            "distinguishing": [is_distinguishing(c) for c in self.colorings],
        }


def _residue(n: int, frac: Fraction) -> int:
    x = Fraction(frac) * n
    if x.denominator != 1:
        raise PreconditionError(f"{Fraction(frac)} of a turn is not a vertex of C_{n}")
    return int(x) % n


def _check_precoloring(pre: Sequence[int | None], W: Sequence[int], n: int) -> tuple[int | None, ...]:
    pre = tuple(pre)
    if len(pre) != n:
        raise PreconditionError(f"precoloring has length {len(pre)}, expected {n}")
    Wset = set(W)
    for v, c in enumerate(pre):
        if (v in Wset) != (c is None):
            raise PreconditionError(f"precoloring must be defined exactly off W = {sorted(Wset)}; vertex {v} violates this")
        if c is not None and c not in (R, B):
            raise PreconditionError(f"color {c!r} at vertex {v} is not 0 or 1")
    return pre


def _negate(pre: Sequence[int | None]) -> tuple[int | None, ...]:
    return tuple(None if c is None else 1 - c for c in pre)


def _fill(pre: Sequence[int | None], values: dict[int, int]) -> CycleColoring:
    colors = list(pre)
    for v, c in values.items():
        colors[v] = c
    return CycleColoring(tuple(colors), 2)


def _finish(family, W, differ_on, branch, negated, charts, pre, n) -> CandidateTriple:
    colorings = [_fill(pre, chart) for chart in charts]
    if negated:
        colorings = [CycleColoring(tuple(1 - c for c in col.colors), 2) for col in colorings]
    chosen = next((i for i, c in enumerate(colorings) if is_distinguishing(c)), None)
    triple = CandidateTriple(tuple(colorings), family, tuple(sorted(W)), tuple(sorted(differ_on)), branch, negated, chosen)
    if chosen is None:
        raise ConstructionAnomaly(
            f"{family} construction produced no distinguishing candidate in C_{n}",
            record={"kind": "construction-failure", "n": n, **triple.to_dict()},
        )
    return triple


def build_antipodal_pairs(n: int, a: int, precoloring: Sequence[int | None]) -> CandidateTriple:
    """W = {0, a, n/2, a + n/2} with a != +-n/4.

    The branch depends on the precoloring at -a and -a + n/2: (R, R) and
    (R, B) are built directly, the other two by negating colors.
    """
    if n % 2:
        raise PreconditionError("antipodal pairs need n even")
    a %= n
    h = n // 2
    if a in (0, h):
        raise PreconditionError(f"a = {a} collapses W")
    if 4 * a % n == 0:
        raise PreconditionError(f"a = {a} is a quarter turn in C_{n}")
    W = (0, a, h, (a + h) % n)
    pre = _check_precoloring(precoloring, W, n)
    probe = (pre[-a % n], pre[(-a + h) % n])
    negated = probe[0] == B
    if negated:
        pre = _negate(pre)
        probe = (1 - probe[0], 1 - probe[1])
    branch = "c" if probe == (R, R) else "d"
    far = (a + h) % n
    if branch == "c":
        first = {0: B, a: B, h: R, far: B}
        second = {0: R, a: B, h: R, far: R}
    else:
        first = {0: R, a: B, h: R, far: B}
        second = {0: B, a: B, h: R, far: R}
    at_zero = 1 - pre[2 * a % n]
    middle = {0: at_zero, a: B, h: R, far: at_zero if branch == "d" else 1 - at_zero}
    return _finish(ANTIPODAL, W, (0, far), branch, negated, (first, second, middle), pre, n)


# Rows in the order 0, 1/3, 1/2, 2/3 of the thirds chart.
_THIRDS_CHART = {
    "c": ((B, B, B, R), (R, B, B, B), (R, B, B, R)),
    "d": ((B, R, B, R), (R, R, B, B), (B, R, B, B)),
}
_THIRDS_ROWS = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))
_SIXTHS_ROWS = (Fraction(2, 3), Fraction(5, 6), Fraction(0), Fraction(1, 6))


def build_thirds(n: int, precoloring: Sequence[int | None], shifted: bool = False) -> CandidateTriple:
    """W = {0, n/3, n/2, 2n/3}, or with shifted=True the set
    {2n/3, 5n/6, 0, n/6} colored row by row from the same chart.

    Unshifted probes: (5n/6, n/6); branch c is (R, R), d is (B, R).
    Shifted probes: (n/3, n/2); branch c is (R, B), d is (R, R).  Keying
    the shifted set the other way round, c on equal probe colors, leaves
    some precolorings of C_6 and C_12 with no distinguishing candidate.
    """
    if n % 6:
        raise PreconditionError("the thirds family needs 6 | n")
    rows = _SIXTHS_ROWS if shifted else _THIRDS_ROWS
    W = tuple(_residue(n, r) for r in rows)
    pre = _check_precoloring(precoloring, W, n)
    if shifted:
        probes = (Fraction(1, 3), Fraction(1, 2))
        c_key, d_key = (R, B), (R, R)
    else:
        probes = (Fraction(5, 6), Fraction(1, 6))
        c_key, d_key = (R, R), (B, R)
    probe = tuple(pre[_residue(n, p)] for p in probes)
    negated = probe not in (c_key, d_key)
    if negated:
        pre = _negate(pre)
        probe = tuple(1 - x for x in probe)
    branch = "c" if probe == c_key else "d"
    charts = tuple(dict(zip(W, col)) for col in _THIRDS_CHART[branch])
    return _finish(SIXTHS if shifted else THIRDS, W, (W[0], W[3]), branch, negated, charts, pre, n)


def build_quarter(n: int, a: int, precoloring: Sequence[int | None]) -> CandidateTriple:
    """W = {0, n/4, 3n/4, a} with a != n/2, normalized so the color at n/2 is B.

    a is colored so that exactly three of a, -a, a + n/2, -a + n/2 agree.
    """
    if n % 4:
        raise PreconditionError("the quarter family needs 4 | n")
    q, h = n // 4, n // 2
    a %= n
    if a == h:
        raise PreconditionError("a = n/2 is excluded")
    if a in (0, q, 3 * q):
        raise PreconditionError(f"a = {a} collapses W")
    W = (0, q, 3 * q, a)
    pre = _check_precoloring(precoloring, W, n)
    negated = pre[h] != B
    if negated:
        pre = _negate(pre)
    others = [pre[-a % n], pre[(a + h) % n], pre[(-a + h) % n]]
    reds = others.count(R)
    if reds in (0, 3):
        color_a = 1 - others[0]
    else:
        color_a = R if reds == 2 else B
    charts = (
        {0: R, q: B, 3 * q: R, a: color_a},
        {0: B, q: R, 3 * q: R, a: color_a},
        {0: B, q: B, 3 * q: R, a: color_a},
    )
    return _finish(QUARTER, W, (0, q), "c", negated, charts, pre, n)


def build(family: str, n: int, precoloring: Sequence[int | None], a: int | None = None) -> CandidateTriple:
    if family == ANTIPODAL:
        if a is None:
            raise PreconditionError("the antipodal family needs a")
        return build_antipodal_pairs(n, a, precoloring)
    if family == QUARTER:
        if a is None:
            raise PreconditionError("the quarter family needs a")
        return build_quarter(n, a, precoloring)
    if family in (THIRDS, SIXTHS):
        return build_thirds(n, precoloring, shifted=family == SIXTHS)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def family_set(family: str, n: int, a: int | None = None) -> tuple[int, ...]:
    """The vertex set W a family's builder expects."""
    if family == ANTIPODAL:
        return tuple(sorted({0, a % n, n // 2, (a + n // 2) % n}))
    if family == QUARTER:
        return tuple(sorted({0, n // 4, 3 * n // 4, a % n}))
    if family in (THIRDS, SIXTHS):
        rows = _SIXTHS_ROWS if family == SIXTHS else _THIRDS_ROWS
        return tuple(sorted(_residue(n, r) for r in rows))
    raise ValueError(f"unknown family {family!r}")


# -- recoloring ---------------------------------------------------------------------

CONSTANT_FLIPS = (0, 1, 3)


@dataclass
class ReplacementPlan:
    flips: tuple[int, ...]
    method: str
    anomalies: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"flips": list(self.flips), "method": self.method, "anomalies": self.anomalies}


def _mismatched_reflection(c: CycleColoring) -> tuple[int, int] | None:
    """First (w0, d) with c(w0 + d) != c(w0 - d), d not 0, n/2 or a quarter turn."""
    n = c.n
    for w0 in range(n):
        for d in range(1, n // 2):
            if 4 * d % n == 0:
                continue
            if c.colors[(w0 + d) % n] != c.colors[(w0 - d) % n]:
                return w0, d
    return None


def _search_flips(c: CycleColoring, limit: int = 3) -> tuple[int, ...] | None:
    for size in range(limit + 1):
        for flips in itertools.combinations(range(c.n), size):
            if is_distinguishing(c.flipped(flips)):
                return flips
    return None


def replacement_plan(c: CycleColoring) -> ReplacementPlan:
    """At most three vertices whose recoloring makes c distinguishing.

    For even n a reflection through a vertex w0 that swaps two differently
    colored vertices w0 +- a is found; the antipodal-pairs construction on
    {w0, w0 + a, w0 + n/2, w0 + a + n/2} keeps the color at w0 + a, so at
    most the other three change.  When that route does not apply (odd n,
    or no such reflection) a direct search over flip sets is used.
    """
    if c.k != 2:
        raise PreconditionError("recoloring is implemented for 2-colorings")
    n = c.n
    if n < 6:
        raise PreconditionError("recoloring needs n >= 6")
    if is_distinguishing(c):
        return ReplacementPlan((), "already-distinguishing")
    if len(set(c.colors)) == 1:
        flips = CONSTANT_FLIPS
        if is_distinguishing(c.flipped(flips)):
            return ReplacementPlan(flips, "constant")
        return _fallback(c, "constant coloring flips failed")
    found = _mismatched_reflection(c) if n % 2 == 0 else None
    if found is None:
        flips = _search_flips(c)
        if flips is None:
            raise AssertionError(f"no recoloring of size <= 3 for {c}")
        return ReplacementPlan(flips, "search")
    w0, a = found
    h = n // 2
    rotated = tuple(c.colors[(i + w0) % n] for i in range(n))
    W = {0, a, h, (a + h) % n}
    pre = tuple(None if i in W else x for i, x in enumerate(rotated))
    try:
        triple = build_antipodal_pairs(n, a, pre)
    except ConstructionAnomaly as exc:
        return _fallback(c, str(exc), exc.record)
    new = triple.result.colors
    flips = tuple(sorted((i + w0) % n for i in range(n) if new[i] != rotated[i]))
    if len(flips) > 3 or not is_distinguishing(c.flipped(flips)):
        return _fallback(c, f"antipodal construction at w0={w0}, a={a} changed {len(flips)} vertices")
    return ReplacementPlan(flips, "reflection-mismatch")


def _fallback(c: CycleColoring, reason: str, record: dict | None = None) -> ReplacementPlan:
    anomaly = {"kind": "structured-path-failed", "coloring": str(c), "reason": reason}
    if record:
        anomaly["record"] = record
    log.warning("recoloring anomaly: %s", anomaly)
    flips = _search_flips(c)
    if flips is None:
        raise AssertionError(f"no recoloring of size <= 3 for {c}")
    return ReplacementPlan(flips, "search", [anomaly])


def replace_to_distinguishing(c: CycleColoring) -> tuple[int, ...]:
    return replacement_plan(c).flips


# -- circle --------------------------------------------------------------------------

EMPTY_TOGGLES = (Fraction(0), Fraction(1, 3), Fraction(1, 2))


def _next_prime(m: int) -> int:
    def prime(p):
        return p > 1 and all(p % d for d in range(2, int(p ** 0.5) + 1))

    while not prime(m):
        m += 1
    return m


def _toggle(blue: PointSet, toggles) -> PointSet:
    members = set(blue.points)
    for t in toggles:
        members ^= {t}
    return PointSet(tuple(members))


def _asymmetric(blue: PointSet) -> bool:
    # All red or all but finitely many red: only the identity can preserve it
    # when the blue set has no nontrivial setwise symmetry.
    return len(blue) > 0 and len(setwise_symmetries(blue)) == 1


def circle_replacement(blue: PointSet) -> tuple[Angle, ...]:
    """At most three points whose toggling leaves a blue set with trivial
    setwise stabilizer, for the coloring that is red off the finite set."""
    if _asymmetric(blue):
        return ()
    if len(blue) == 0:
        toggles = tuple(Angle(t) for t in EMPTY_TOGGLES)
        if _asymmetric(_toggle(blue, toggles)):
            return toggles
    p = _next_prime(max(4 * blue.common_denominator(), 100) + 1)
    fresh = [Angle(Fraction(j, p)) for j in (1, 3, 7)]
    pool = list(blue.points) + [f for f in fresh if f not in blue]
    for size in (1, 2, 3):
        for toggles in itertools.combinations(pool, size):
            if _asymmetric(_toggle(blue, toggles)):
                return tuple(sorted(toggles))
    raise AssertionError(f"no toggle set of size <= 3 for {blue}")  # pragma: no cover

