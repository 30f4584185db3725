"""Exact rotations of the sphere with entries in Q(sqrt 2), free words in
two rotations, and a truncated orbit forest on which every coloring of a
finite root set is preserved by one of the chosen generators.
"""
from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError

# -- the field Q(sqrt 2) ----------------------------------------------------------


@dataclass(frozen=True)
class QSqrt2:
    """a + b*sqrt(2) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def _lift(x) -> QSqrt2:
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, (int, Fraction)):
            return QSqrt2(Fraction(x))
        raise TypeError(f"cannot use {type(x).__name__} in Q(sqrt2)")

    def __add__(self, other) -> QSqrt2:
        o = self._lift(other)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, other) -> QSqrt2:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> QSqrt2:
        return self._lift(other) - self

    def __mul__(self, other) -> QSqrt2:
        o = self._lift(other)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt2:
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 2b^2; zero only for zero."""
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other) -> QSqrt2:
        o = self._lift(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        p = self * o.conjugate()
        return QSqrt2(p.a / n, p.b / n)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2)

    def denominator(self) -> int:
        return math.lcm(self.a.denominator, self.b.denominator)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        surd = "sqrt2" if abs(self.b) == 1 else f"{abs(self.b)}*sqrt2"
        if not self.a:
            return surd if self.b > 0 else f"-{surd}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{surd}"

    def __repr__(self) -> str:
        return f"QSqrt2({self})"

    _TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(sqrt2|√2)?")

    @classmethod
    def parse(cls, text: str) -> QSqrt2:
        """Read '1/3', '-2/3*sqrt2', '1+sqrt2' or '1/3-2/3√2'."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty number")
        a = b = Fraction(0)
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"malformed number {text!r} at {s[pos:]!r}")
            if pos > 0 and not m.group(1):
                raise ValueError(f"malformed number {text!r}: missing sign before {s[pos:]!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3):
                b += sign * coeff
            else:
                a += sign * coeff
            pos = m.end()
        return cls(a, b)


ZERO = QSqrt2()
ONE = QSqrt2(Fraction(1))

# -- matrices and points --------------------------------------------------------------

Vector = tuple  # three QSqrt2 entries


def vector(*xs) -> tuple[QSqrt2, QSqrt2, QSqrt2]:
    if len(xs) != 3:
        raise ValueError("points of the sphere have three coordinates")
    return tuple(QSqrt2._lift(x) for x in xs)


def is_unit(v: Sequence[QSqrt2]) -> bool:
    return sum((x * x for x in v), ZERO) == ONE


def parse_point(text: str) -> tuple[QSqrt2, QSqrt2, QSqrt2]:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"malformed point {text!r}: expected '(x,y,z)'")
    parts = s[1:-1].split(",")
    if len(parts) != 3:
        raise ValueError(f"malformed point {text!r}: expected three coordinates")
    return tuple(QSqrt2.parse(p) for p in parts)


def format_point(v: Sequence[QSqrt2]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


@dataclass(frozen=True)
class Mat3:
    rows: tuple[tuple[QSqrt2, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(QSqrt2._lift(x) for x in r) for r in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs 3x3 entries")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def rotation(cls, rows) -> Mat3:
        """Construct and check membership in SO(3) exactly."""
        m = cls(rows)
        if not m.is_special_orthogonal():
            raise ValueError("matrix is not a rotation")
        return m

    @classmethod
    def identity(cls) -> Mat3:
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(3)) for i in range(3)))

    def __matmul__(self, other):
        if isinstance(other, Mat3):
            cols = list(zip(*other.rows))
            return Mat3(tuple(tuple(sum((x * y for x, y in zip(r, c)), ZERO) for c in cols) for r in self.rows))
        return tuple(sum((x * y for x, y in zip(r, other)), ZERO) for r in self.rows)

    def transpose(self) -> Mat3:
        return Mat3(tuple(zip(*self.rows)))

    def det(self) -> QSqrt2:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def is_special_orthogonal(self) -> bool:
        return self.transpose() @ self == Mat3.identity() and self.det() == ONE

    def inverse(self) -> Mat3:
        """Transpose; valid for rotations."""
        return self.transpose()

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"


def generator_matrices(cos_phi) -> tuple[Mat3, Mat3]:
    """Rotations by phi about the z-axis and about the y-axis.

    cos_phi must be rational, outside {0, +-1, +-1/2}, with
    sin_phi = q*sqrt2 for rational q so the entries stay in Q(sqrt2).
    """
    c = Fraction(cos_phi)
    if c in (0, 1, -1, Fraction(1, 2), Fraction(-1, 2)) or abs(c) > 1:
        raise PreconditionError(f"cos phi = {c} is excluded (must avoid 0, +-1, +-1/2 and lie in (-1, 1))")
    half = (1 - c * c) / 2
    q = _rational_sqrt(half)
    if q is None:
        raise PreconditionError(f"sin phi for cos phi = {c} is not a rational multiple of sqrt2")
    s = QSqrt2(0, q)
    cc = QSqrt2(c)
    A = Mat3.rotation(((cc, -s, ZERO), (s, cc, ZERO), (ZERO, ZERO, ONE)))
    B = Mat3.rotation(((cc, ZERO, -s), (ZERO, ONE, ZERO), (s, ZERO, cc)))
    return A, B


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


# -- words ------------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeWord:
    """A reduced word; letter +i is generator i (1-based), -i its inverse."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        if any(x == 0 for x in letters):
            raise ValueError("letters are nonzero generator indices")
        for x, y in zip(letters, letters[1:]):
            if x == -y:
                raise ValueError(f"word is not reduced: adjacent inverse pair at {x}, {y}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def reduce(cls, letters: Iterable[int]) -> FreeWord:
        stack: list[int] = []
        for x in letters:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        return cls(tuple(stack))

    @classmethod
    def parse(cls, text: str) -> FreeWord:
        """Upper-case letters are generators A, B, C, ...; lower case their inverses."""
        out = []
        for ch in text.replace(" ", ""):
            if not ch.isalpha():
                raise ValueError(f"malformed word {text!r}: bad symbol {ch!r}")
            idx = ord(ch.upper()) - ord("A") + 1
            out.append(idx if ch.isupper() else -idx)
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord.reduce(self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(-x for x in reversed(self.letters)))

    def generators(self) -> set[int]:
        return {abs(x) for x in self.letters}

    def substitute(self, images: Sequence[FreeWord]) -> FreeWord:
        """Replace generator i by images[i-1] and reduce."""
        out: list[int] = []
        for x in self.letters:
            w = images[abs(x) - 1]
            out.extend(w.letters if x > 0 else w.inverse().letters)
        return FreeWord.reduce(out)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(chr(ord("A") + abs(x) - 1) if x > 0 else chr(ord("a") + abs(x) - 1) for x in self.letters)


def evaluate(w: FreeWord, gens: Sequence[Mat3]) -> Mat3:
    """Product of the letters' matrices, leftmost letter leftmost."""
    m = Mat3.identity()
    for x in w.letters:
        g = gens[abs(x) - 1]
        m = m @ (g if x > 0 else g.inverse())
    return m


def rank_family(m: int) -> list[FreeWord]:
    """s_k = A^k B A^-k for k = 1..m, a free basis of a rank-m subgroup."""
    if m < 1:
        raise ValueError("m must be positive")
    return [FreeWord((1,) * k + (2,) + (-1,) * k) for k in range(1, m + 1)]


def stabilizer_check(p: Sequence[QSqrt2], words: Iterable[FreeWord], gens: Sequence[Mat3]) -> bool:
    """True iff no nonempty listed word fixes p."""
    if not is_unit(p):
        raise PreconditionError(f"{format_point(p)} is not exactly a unit vector")
    p = tuple(p)
    for w in words:
        if len(w) and evaluate(w, gens) @ p == p:
            return False
    return True


def words_up_to(length: int, generators: int) -> list[FreeWord]:
    """All nonempty reduced words of length <= length on that many generators."""
    out: list[FreeWord] = []
    level = [FreeWord((x,)) for g in range(1, generators + 1) for x in (g, -g)]
    for _ in range(length):
        out.extend(level)
        level = [FreeWord(w.letters + (x,)) for w in level for g in range(1, generators + 1) for x in (g, -g) if x != -w.letters[-1]]
    return out


# -- freeness -------------------------------------------------------------------------


@dataclass(frozen=True)
class FreenessCertificate:
    free: bool
    max_len: int
    words_checked: int
    per_length: tuple[int, ...]
    counterexample: FreeWord | None = None

    def to_dict(self) -> dict:
        return {
            "free": self.free,
            "max_len": self.max_len,
            "words_checked": self.words_checked,
            "per_length": list(self.per_length),
            "counterexample": None if self.counterexample is None else str(self.counterexample),
        }


def _integer_form(gens: Sequence[Mat3]):
    """Scale every generator by a common denominator D: M = (P + Q*sqrt2) / D."""
    D = reduce(math.lcm, (x.denominator() for g in gens for r in g.rows for x in r), 1)
    mats = []
    for g in gens:
        for h in (g, g.inverse()):
            P = [[int(x.a * D) for x in r] for r in h.rows]
            Q = [[int(x.b * D) for x in r] for r in h.rows]
            mats.append((P, Q))
    return D, mats


def _letter_code(x: int) -> int:
    # generator i -> 2(i-1), its inverse -> 2(i-1) + 1
    return 2 * (abs(x) - 1) + (0 if x > 0 else 1)


def _code_letter(code: int) -> int:
    g = code // 2 + 1
    return g if code % 2 == 0 else -g


def _freeness_branch(args):
    """Breadth-first over reduced words starting with one letter, integer arithmetic.

    Entries of a rotation in Q(sqrt2) and of its Galois conjugate are at most 1
    in absolute value, so both scaled parts stay below D^length.
    """
    first, max_len, D, mats = args
    ngen = len(mats)
    use_obj = D ** (max_len + 1) * 8 >= 2 ** 62
    dt = object if use_obj else np.int64
    P = [np.array(p, dtype=dt) for p, _ in mats]
    Q = [np.array(q, dtype=dt) for _, q in mats]
    cur_p = P[first][None].copy()
    cur_q = Q[first][None].copy()
    last = np.array([first])
    words = np.array([[first]], dtype=np.int16)
    counts = []
    scale = D
    eye = np.eye(3, dtype=dt)
    for length in range(1, max_len + 1):
        counts.append(len(last))
        hit = np.all((cur_p == scale * eye).reshape(len(last), -1), axis=1) & np.all(cur_q.reshape(len(last), -1) == 0, axis=1)
        if hit.any():
            first_hit = min(tuple(int(c) for c in words[i]) for i in np.flatnonzero(hit))
            return counts, list(first_hit)
        if length == max_len:
            break
        nxt_p, nxt_q, nxt_last, nxt_words = [], [], [], []
        for code in range(ngen):
            keep = last != (code ^ 1)
            if not keep.any():
                continue
            a, b = cur_p[keep], cur_q[keep]
            # (a + b r)(p + q r) = (ap + 2bq) + (aq + bp) r
            nxt_p.append(a @ P[code] + 2 * (b @ Q[code]))
            nxt_q.append(a @ Q[code] + b @ P[code])
            nxt_last.append(np.full(int(keep.sum()), code))
            w = words[keep]
            nxt_words.append(np.concatenate([w, np.full((len(w), 1), code, dtype=np.int16)], axis=1))
        cur_p = np.concatenate(nxt_p)
        cur_q = np.concatenate(nxt_q)
        last = np.concatenate(nxt_last)
        words = np.concatenate(nxt_words)
        scale *= D
    return counts, None


def _freeness_exact(gens: Sequence[Mat3], max_len: int):
    """Level by level over reduced words with Mat3 products; the slow reference route."""
    ident = Mat3.identity()
    mats = [h for g in gens for h in (g, g.inverse())]
    counts = []
    level = [((code,), mats[code]) for code in range(len(mats))]
    for length in range(1, max_len + 1):
        counts.append(len(level))
        hits = [w for w, m in level if m == ident]
        if hits:
            return counts, list(min(hits))
        if length < max_len:
            level = [(w + (code,), m @ mats[code]) for w, m in level for code in range(len(mats)) if code != w[-1] ^ 1]
    return counts, None


def verify_freeness(gens: Sequence[Mat3], max_len: int, workers: int = 1, engine: str = "integer") -> FreenessCertificate:
    """Check that no nonempty reduced word of length <= max_len evaluates to I.

    The integer engine splits the words by first letter; with workers > 1
    the branches run in separate processes and their verdicts are combined
    in letter order, so the certificate does not depend on worker count.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if engine == "exact":
        counts, bad = _freeness_exact(gens, max_len)
    elif engine == "integer":
        D, mats = _integer_form(gens)
        jobs = [(code, max_len, D, mats) for code in range(len(mats))]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_freeness_branch, jobs))
        else:
            results = [_freeness_branch(j) for j in jobs]
        hits = [found for _, found in results if found is not None]
        bad = min(hits, key=lambda w: (len(w), w)) if hits else None
        # every branch has scanned at least up to the shortest identity word
        stop = len(bad) if bad else max_len
        counts = [sum(cs[i] for cs, _ in results if i < len(cs)) for i in range(stop)]
    else:
        raise ValueError(f"unknown engine {engine!r}")
    word = None if bad is None else FreeWord(tuple(_code_letter(c) for c in bad))
    return FreenessCertificate(bad is None, max_len, sum(counts), tuple(counts), word)


def reduced_word_count(generators: int, max_len: int) -> int:
    """Nonempty reduced words of length <= max_len on that many generators."""
    k = 2 * generators
    return sum(k * (k - 1) ** (n - 1) for n in range(1, max_len + 1))


# -- orbit forest ---------------------------------------------------------------------

MAX_ROOTS = 2
R, B = 0, 1


@dataclass
class ForestNode:
    root: int
    word: tuple[int, ...]  # letters over the selected generators, applied right to left
    point: tuple[QSqrt2, ...]
    parent: int | None
    label: int | None  # signed 1-based index of the generator on the parent edge
    branch: int | None
    color: int | None  # precoloring; None on roots


@dataclass
class OrbitForest:
    roots: list[tuple[QSqrt2, ...]]
    depth: int
    generators: list[int]  # rank-family indices k of the selected s_k
    nodes: list[ForestNode] = field(default_factory=list)
    thinning: list[dict] = field(default_factory=list)
    extensions: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(e["violations"] for e in self.extensions)

    def node_bound(self) -> int:
        g = len(self.generators)
        if g == 1:
            per_root = 1 + 2 * self.depth
        else:
            per_root = 1 + 2 * g * ((2 * g - 1) ** self.depth - 1) // (2 * g - 2)
        return len(self.roots) * per_root

    def edges(self) -> list[tuple[int, int, int]]:
        return [(n.parent, i, n.label) for i, n in enumerate(self.nodes) if n.parent is not None]

    def to_dict(self) -> dict:
        return {
            "roots": [format_point(p) for p in self.roots],
            "depth": self.depth,
            "generators": [f"s{k}" for k in self.generators],
            "generator_words": [str(w) for w in (rank_family(max(self.generators))[k - 1] for k in self.generators)],
            "thinning": self.thinning,
            "node_count": len(self.nodes),
            "node_bound": self.node_bound(),
            "nodes": [
                {
                    "id": i,
                    "root": n.root,
                    "word": _forest_word_str(n.word, self.generators),
                    "point": format_point(n.point),
                    "color": n.color,
                }
                for i, n in enumerate(self.nodes)
            ],
            "edges": [{"from": a, "to": b, "label": _forest_letter_str(lab, self.generators)} for a, b, lab in self.edges()],
            "extensions": self.extensions,
            "violations": self.violations,
        }


def _forest_letter_str(x: int, generators: Sequence[int]) -> str:
    k = generators[abs(x) - 1]
    return f"s{k}" if x > 0 else f"s{k}^-1"


def _forest_word_str(word: Sequence[int], generators: Sequence[int]) -> str:
    return " ".join(_forest_letter_str(x, generators) for x in word) or "1"


class _Collision(Exception):
    def __init__(self, word: FreeWord, detail: dict):
        super().__init__(detail)
        self.word = word
        self.detail = detail


def _expand(roots, depth, mats, ngen) -> list[ForestNode]:
    nodes: list[ForestNode] = []
    seen: dict[tuple, int] = {}
    for r, p in enumerate(roots):
        if p in seen:
            raise ValueError("roots must be distinct")
        seen[p] = len(nodes)
        nodes.append(ForestNode(r, (), p, None, None, None, None))
    frontier = list(range(len(nodes)))
    for _ in range(depth):
        nxt = []
        for idx in frontier:
            parent = nodes[idx]
            for g in range(1, ngen + 1):
                for x in (g, -g):
                    if parent.word and x == -parent.word[0]:
                        continue
                    pt = mats[x] @ parent.point
                    word = (x,) + parent.word
                    if pt in seen:
                        other = nodes[seen[pt]]
                        # other.word applied to other.root equals word applied to this root
                        link = FreeWord(other.word).inverse() * FreeWord(word)
                        raise _Collision(link, {
                            "roots": sorted({other.root, parent.root}),
                            "words": [list(other.word), list(word)],
                            "cross_root": other.root != parent.root,
                        })
                    seen[pt] = len(nodes)
                    branch = len(nodes) if parent.parent is None else parent.branch
                    nodes.append(ForestNode(parent.root, word, pt, idx, x, branch, None))
                    nxt.append(len(nodes) - 1)
        frontier = nxt
    return nodes


def build_bad_forest(W: Sequence[Sequence[QSqrt2]], depth: int, cos_phi=Fraction(1, 3), max_attempts: int = 16) -> OrbitForest:
    """Materialize the orbit forest of W to the given depth and color it.

    2^|W| generators s_k are taken from the rank family.  A repeated point
    means a stabilizer element or a path between roots; every generator in
    the connecting word is discarded and the expansion restarts with the
    next unused family members.  The j-th coloring of W colors root r with
    bit r of j.  A node one step from root r along s_j^{+-1} takes that
    coloring's color at r; every deeper node copies its branch.  Each
    extension is then scanned for s_j-edges inside the ball joining
    different colors.
    """
    roots = [tuple(QSqrt2._lift(x) for x in p) for p in W]
    if not 1 <= len(roots) <= MAX_ROOTS:
        raise PreconditionError(f"forest construction supports 1 to {MAX_ROOTS} roots, got {len(roots)}")
    for p in roots:
        if len(p) != 3 or not is_unit(p):
            raise PreconditionError(f"{format_point(p)} is not exactly a unit vector")
    if len(set(roots)) != len(roots):
        raise PreconditionError("roots must be distinct")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    A, Bm = generator_matrices(cos_phi)
    need = 2 ** len(roots)
    discarded: set[int] = set()
    thinning: list[dict] = []
    for _ in range(max_attempts):
        chosen: list[int] = []
        k = 1
        while len(chosen) < need:
            if k not in discarded:
                chosen.append(k)
            k += 1
        family = rank_family(max(chosen))
        mats = {}
        for i, kk in enumerate(chosen, start=1):
            m = evaluate(family[kk - 1], (A, Bm))
            mats[i], mats[-i] = m, m.inverse()
        try:
            nodes = _expand(roots, depth, mats, need)
        except _Collision as col:
            removed = sorted(chosen[g - 1] for g in col.word.generators())
            if not removed:  # pragma: no cover - distinct words cannot give the empty link
                raise AssertionError("collision with trivial connecting word")
            discarded.update(removed)
            thinning.append({
                "reason": "path between roots" if col.detail["cross_root"] else "nontrivial stabilizer",
                "connecting_word": _forest_word_str(col.word.letters, chosen),
                "removed": [f"s{k}" for k in removed],
            })
            continue
        forest = OrbitForest(roots, depth, chosen, nodes, thinning)
        _color(forest, mats)
        return forest
    raise PreconditionError(f"no collision-free generator set found after {max_attempts} attempts")


def _color(forest: OrbitForest, mats) -> None:
    nodes = forest.nodes
    need = len(forest.generators)
    for i, n in enumerate(nodes):
        if n.parent is None:
            continue
        b = nodes[n.branch]
        j = abs(b.label) - 1  # index of the coloring of W owned by this branch
        n.color = (j >> n.root) & 1
    where = {n.point: i for i, n in enumerate(nodes)}
    for j in range(need):
        colors = [((j >> n.root) & 1) if n.parent is None else n.color for n in nodes]
        g = j + 1
        checked = violations = 0
        for i, n in enumerate(nodes):
            for x in (g, -g):
                other = where.get(mats[x] @ n.point)
                if other is None or other < i:
                    continue
                checked += 1
                if colors[other] != colors[i]:
                    violations += 1
        forest.extensions.append({
            "coloring_of_W": "".join(str((j >> r) & 1) for r in range(len(forest.roots))),
            "invariant_under": f"s{forest.generators[j]}",
            "edges_checked": checked,
            "violations": violations,
        })


def forest_branch_consistent(forest: OrbitForest) -> bool:
    nodes = forest.nodes
    return all(n.parent is None or n.color == nodes[n.branch].color for n in nodes)
