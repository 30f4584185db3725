"""Exact arithmetic on the circle R/Z and its isometry group O(2).

Points are rational fractions of a full turn, so 1/2 is the antipode of 0.
Nothing in this module touches floating point.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator

_RATIONAL = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")
HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class Angle:
    """A point of the circle, stored as a fraction of a turn in [0, 1)."""

    value: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value) % 1)

    @classmethod
    def of(cls, num: int, den: int = 1) -> Angle:
        return cls(Fraction(num, den))

    @classmethod
    def parse(cls, text: str) -> Angle:
        if not _RATIONAL.match(text):
            raise ValueError(f"malformed angle {text!r}: expected 'num/den' or an integer")
        try:
            return cls(Fraction(text.replace(" ", "")))
        except ZeroDivisionError:
            raise ValueError(f"malformed angle {text!r}: zero denominator") from None

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def __add__(self, other) -> Angle:
        return Angle(self.value + _fraction(other))

    __radd__ = __add__

    def __sub__(self, other) -> Angle:
        return Angle(self.value - _fraction(other))

    def __rsub__(self, other) -> Angle:
        return Angle(_fraction(other) - self.value)

    def __neg__(self) -> Angle:
        return Angle(-self.value)

    def __mul__(self, k: int) -> Angle:
        if not isinstance(k, int):
            return NotImplemented
        return Angle(self.value * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Angle({self.value})"


def _fraction(x) -> Fraction:
    return x.value if isinstance(x, Angle) else Fraction(x)


ROTATION = "rotation"
REFLECTION = "reflection"


@dataclass(frozen=True)
class CircleIsometry:
    """A rotation x -> x + param or a reflection x -> -x + 2*param.

    A reflection fixes param and param + 1/2, so its parameter is kept in
    [0, 1/2) to give each map a single representation.
    """

    kind: str
    param: Angle

    def __post_init__(self):
        if self.kind not in (ROTATION, REFLECTION):
            raise ValueError(f"unknown isometry kind {self.kind!r}")
        param = self.param if isinstance(self.param, Angle) else Angle(self.param)
        if self.kind == REFLECTION:
            param = Angle(param.value % HALF)
        object.__setattr__(self, "param", param)

    @classmethod
    def rotation(cls, a) -> CircleIsometry:
        return cls(ROTATION, Angle(_fraction(a)))

    @classmethod
    def reflection(cls, a) -> CircleIsometry:
        return cls(REFLECTION, Angle(_fraction(a)))

    @classmethod
    def identity(cls) -> CircleIsometry:
        return cls(ROTATION, Angle())

    @classmethod
    def _reflection_with_offset(cls, t: Fraction) -> CircleIsometry:
        # x -> -x + t
        return cls(REFLECTION, Angle((Fraction(t) % 1) / 2))

    @property
    def is_reflection(self) -> bool:
        return self.kind == REFLECTION

    @property
    def is_identity(self) -> bool:
        return self.kind == ROTATION and self.param.value == 0

    @property
    def offset(self) -> Fraction:
        """The translation part: x -> +-x + offset."""
        if self.kind == ROTATION:
            return self.param.value
        return (2 * self.param.value) % 1

    def apply(self, x: Angle) -> Angle:
        if self.kind == ROTATION:
            return Angle(x.value + self.param.value)
        return Angle(-x.value + 2 * self.param.value)

    __call__ = apply

    def compose(self, other: CircleIsometry) -> CircleIsometry:
        """Return self after other (apply other first)."""
        return compose(self, other)

    def inverse(self) -> CircleIsometry:
        if self.kind == REFLECTION:
            return self
        return CircleIsometry.rotation(-self.param.value)

    def order(self) -> int:
        if self.kind == REFLECTION:
            return 2
        return self.param.den

    def to_dict(self) -> dict:
        return {"kind": self.kind, "param": str(self.param)}

    @classmethod
    def from_dict(cls, d: dict) -> CircleIsometry:
        return cls(d["kind"], Angle.parse(d["param"]))

    def __str__(self) -> str:
        tag = "rot" if self.kind == ROTATION else "ref"
        return f"{tag}({self.param})"


def apply(iso: CircleIsometry, x: Angle) -> Angle:
    return iso.apply(x)


def compose(g: CircleIsometry, h: CircleIsometry) -> CircleIsometry:
    """g after h.  Writing every map as x -> e*x + t with e = +-1:
    (e1, t1) o (e2, t2) = (e1*e2, e1*t2 + t1)."""
    e1 = -1 if g.is_reflection else 1
    e2 = -1 if h.is_reflection else 1
    t = e1 * h.offset + g.offset
    if e1 * e2 == 1:
        return CircleIsometry.rotation(t)
    return CircleIsometry._reflection_with_offset(t)


@dataclass(frozen=True)
class PointSet:
    """A finite subset of the circle, kept sorted by angle."""

    points: tuple[Angle, ...] = field(default_factory=tuple)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Angle) else Angle(_fraction(p)) for p in self.points)
        ordered = tuple(sorted(pts))
        if len(set(ordered)) != len(ordered):
            raise ValueError("duplicate points in point set")
        object.__setattr__(self, "points", ordered)

    @classmethod
    def of(cls, *values) -> PointSet:
        return cls(tuple(Angle(_fraction(v)) for v in values))

    @classmethod
    def parse(cls, text: str) -> PointSet:
        tokens = [t for t in text.split(",") if t.strip()]
        return cls(tuple(Angle.parse(t.strip()) for t in tokens))

    @classmethod
    def from_residues(cls, residues: Iterable[int], n: int) -> PointSet:
        return cls(tuple(Angle(Fraction(r % n, n)) for r in residues))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Angle]:
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return (x if isinstance(x, Angle) else Angle(_fraction(x))) in self._members

    @property
    def _members(self) -> frozenset:
        return frozenset(self.points)

    def image(self, iso: CircleIsometry) -> PointSet:
        return PointSet(tuple(iso.apply(p) for p in self.points))

    def gaps(self) -> tuple[Fraction, ...]:
        """Arc lengths from each point to the next, counterclockwise."""
        pts = [p.value for p in self.points]
        if not pts:
            return ()
        return tuple((pts[(i + 1) % len(pts)] - pts[i]) % 1 or Fraction(1) for i in range(len(pts)))

    def common_denominator(self) -> int:
        return reduce(math.lcm, (p.den for p in self.points), 1)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.points)


@dataclass(frozen=True)
class GapSignature:
    gaps: tuple[Fraction, ...]
    canonical: bool = False

    def __post_init__(self):
        if self.gaps and sum(self.gaps) != 1:
            raise ValueError("gaps must sum to one full turn")


def gap_signature(W: PointSet) -> GapSignature:
    return GapSignature(W.gaps(), canonical=False)


def canonical_signature(W: PointSet) -> GapSignature:
    """Least rotation of the gap list or of its reversal; an O(2) invariant."""
    g = W.gaps()
    if not g:
        return GapSignature((), canonical=True)
    r = g[::-1]
    candidates = [g[i:] + g[:i] for i in range(len(g))]
    candidates += [r[i:] + r[:i] for i in range(len(r))]
    return GapSignature(min(candidates), canonical=True)


def _candidate_isometries(W: PointSet, V: PointSet) -> Iterator[CircleIsometry]:
    """Isometries sending the first point of W onto some point of V.

    Any gamma with gamma(W) = V is among these, rotations first.
    """
    w0 = W.points[0].value
    for v in V.points:
        yield CircleIsometry.rotation(v.value - w0)
    for v in V.points:
        yield CircleIsometry._reflection_with_offset(v.value + w0)


def setwise_symmetries(W: PointSet) -> list[CircleIsometry]:
    if len(W) == 0:
        raise ValueError("setwise symmetries need a nonempty point set")
    found = []
    for g in _candidate_isometries(W, W):
        if g not in found and W.image(g) == W:
            found.append(g)
    return found


def pointwise_stabilizer_trivial(W: PointSet) -> bool:
    """Only reflections have fixed points; tau_a fixes exactly {a, a + 1/2}."""
    if len(W) == 0:
        raise ValueError("pointwise stabilizer of the empty set is all of O(2)")
    if len(W) == 1:
        return False
    if len(W) == 2:
        a, b = W.points
        return (b.value - a.value) % 1 != HALF
    return True


def equivalent(W: PointSet, V: PointSet) -> CircleIsometry | None:
    """Some gamma in O(2) with gamma(W) = V, or None."""
    if len(W) != len(V):
        return None
    if len(W) == 0:
        return CircleIsometry.identity()
    if canonical_signature(W) != canonical_signature(V):
        return None
    for g in _candidate_isometries(W, V):
        if W.image(g) == V:
            return g
    raise AssertionError("equal gap signatures without an isometry")  # pragma: no cover


def embed_in_cycle(W: PointSet, n: int) -> tuple[int, ...]:
    """Residues i with i/n in W.  The inverse of PointSet.from_residues."""
    if n <= 0:
        raise ValueError("cycle length must be positive")
    out = []
    for p in W.points:
        if n % p.den:
            raise ValueError(f"point {p} is not a multiple of 1/{n}")
        out.append(p.num * (n // p.den))
    return tuple(out)
