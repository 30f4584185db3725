"""Exhaustive decision procedures on the cycle C_n under its dihedral group.

Two engines share every entry point:

* a bit-packed engine for 2-colorings, where vertex i is bit i of an int
  and a table of all distinguishing masks is built once per n with numpy;
* a general engine over tuples of colors, any k, no precomputation.

They are kept independent so each can serve as the other's oracle.
"""
from __future__ import annotations

import itertools
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError

TABLE_MAX_N = 26
PACKED_MAX_N = 64


@dataclass(frozen=True)
class DihedralElement:
    """i -> i + shift, or i -> shift - i when reflect is set (mod n)."""

    reflect: bool
    shift: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "shift", self.shift % self.n)

    def apply(self, i: int) -> int:
        return (self.shift - i) % self.n if self.reflect else (i + self.shift) % self.n

    __call__ = apply

    @property
    def is_identity(self) -> bool:
        return not self.reflect and self.shift == 0

    def compose(self, other: DihedralElement) -> DihedralElement:
        """self after other."""
        if self.n != other.n:
            raise ValueError("cannot compose elements of different dihedral groups")
        if not self.reflect:
            return DihedralElement(other.reflect, other.shift + self.shift, self.n)
        # s - (e*i + t) = -e*i + (s - t)
        return DihedralElement(not other.reflect, self.shift - other.shift, self.n)


def dihedral_group(n: int) -> list[DihedralElement]:
    """All 2n elements, identity first."""
    return [DihedralElement(False, s, n) for s in range(n)] + [DihedralElement(True, s, n) for s in range(n)]


@dataclass(frozen=True)
class CycleColoring:
    colors: tuple[int, ...]
    k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if any(c < 0 or c >= self.k for c in self.colors):
            raise ValueError(f"colors must lie in 0..{self.k - 1}")

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def mask(self) -> int:
        if self.k != 2:
            raise ValueError("only 2-colorings pack into a mask")
        return sum(1 << i for i, c in enumerate(self.colors) if c)

    @classmethod
    def from_mask(cls, mask: int, n: int) -> CycleColoring:
        return cls(tuple((mask >> i) & 1 for i in range(n)), 2)

    @classmethod
    def parse(cls, text: str, k: int = 2) -> CycleColoring:
        text = text.strip()
        for ch in text:
            if not ch.isdigit() or int(ch) >= k:
                raise ValueError(f"malformed coloring {text!r}: bad symbol {ch!r} for k={k}")
        return cls(tuple(int(ch) for ch in text), k)

    def act(self, g: DihedralElement) -> CycleColoring:
        """The coloring c o g."""
        return CycleColoring(tuple(self.colors[g.apply(i)] for i in range(self.n)), self.k)

    def flipped(self, positions: Iterable[int]) -> CycleColoring:
        if self.k != 2:
            raise ValueError("flipping is defined for 2-colorings")
        pos = set(positions)
        return CycleColoring(tuple(1 - c if i in pos else c for i, c in enumerate(self.colors)), 2)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.colors)


def precoloring_str(pre: Sequence[int | None]) -> str:
    return "".join("_" if c is None else str(c) for c in pre)


def parse_precoloring(text: str, k: int = 2) -> tuple[int | None, ...]:
    out = []
    for ch in text.strip():
        if ch in "_*-":
            out.append(None)
        elif ch.isdigit() and int(ch) < k:
            out.append(int(ch))
        else:
            raise ValueError(f"malformed precoloring {text!r}: bad symbol {ch!r}")
    return tuple(out)


# -- distinguishing check -----------------------------------------------------

def _bit_reverse(mask: int, n: int) -> int:
    return int(format(mask, f"0{n}b")[::-1], 2) if n else 0


def is_distinguishing_packed(mask: int, n: int) -> bool:
    """Reflections of a mask are exactly the rotations of its bit reversal."""
    full = (1 << n) - 1
    rev = _bit_reverse(mask, n)
    for j in range(n):
        r = ((mask >> j) | (mask << (n - j))) & full
        if (j and r == mask) or r == rev:
            return False
    return True


def is_distinguishing_general(colors: Sequence[int]) -> bool:
    n = len(colors)
    for g in dihedral_group(n)[1:]:
        if all(colors[g.apply(i)] == colors[i] for i in range(n)):
            return False
    return True


def is_distinguishing(c: CycleColoring) -> bool:
    if c.k == 2 and c.n <= PACKED_MAX_N:
        return is_distinguishing_packed(c.mask, c.n)
    return is_distinguishing_general(c.colors)


@lru_cache(maxsize=4)
def distinguishing_table(n: int) -> np.ndarray:
    """Boolean array over all 2^n masks: True where the 2-coloring is distinguishing."""
    if not 1 <= n <= TABLE_MAX_N:
        raise ValueError(f"table engine supports 1 <= n <= {TABLE_MAX_N}")
    dt = np.uint32
    m = np.arange(1 << n, dtype=dt)
    full = dt((1 << n) - 1)
    rev = np.zeros_like(m)
    for i in range(n):
        rev |= ((m >> dt(i)) & dt(1)) << dt(n - 1 - i)
    fixed = np.zeros(1 << n, dtype=bool)
    for j in range(n):
        r = (((m >> dt(j)) | (m << dt(n - j))) & full) if j else m
        if j:
            fixed |= r == m
        fixed |= r == rev
    out = ~fixed
    out.setflags(write=False)
    return out


# -- distinguishing number ------------------------------------------------------

@dataclass(frozen=True)
class DistinguishingNumber:
    n: int
    k: int
    witness: CycleColoring


@lru_cache(maxsize=None)
def distinguishing_witness(n: int) -> DistinguishingNumber:
    if n < 3:
        raise PreconditionError("C_n is a cycle only for n >= 3")
    k = 1
    while True:
        for colors in itertools.product(range(k), repeat=n):
            c = CycleColoring(colors, k)
            if is_distinguishing(c):
                return DistinguishingNumber(n, k, c)
        k += 1


def distinguishing_number(n: int) -> int:
    return distinguishing_witness(n).k


# -- pointwise stabilizers, subsets up to symmetry -----------------------------

def _check_subset(W: Iterable[int], n: int) -> tuple[int, ...]:
    items = [int(w) for w in W]
    Wt = tuple(sorted(set(items)))
    if len(Wt) != len(items):
        raise ValueError(f"repeated vertex in {items}")
    for w in Wt:
        if not 0 <= w < n:
            raise ValueError(f"vertex {w} out of range for C_{n}")
    return Wt


def pointwise_stabilizer_trivial(W: Iterable[int], n: int) -> bool:
    """A reflection i -> s - i fixes i iff 2i = s, so only {a, a + n/2} can
    be fixed by a nonidentity element."""
    Wt = _check_subset(W, n)
    if not Wt:
        raise ValueError("W must be nonempty")
    for g in dihedral_group(n)[1:]:
        if all(g.apply(w) == w for w in Wt):
            return False
    return True


def subset_images(W: Sequence[int], n: int) -> set[tuple[int, ...]]:
    return {tuple(sorted(g.apply(w) for w in W)) for g in dihedral_group(n)}


def canonical_subset(W: Sequence[int], n: int) -> tuple[int, ...]:
    """Lexicographically least sorted image of W under the dihedral group."""
    return min(subset_images(W, n))


def canonical_subsets(n: int, size: int) -> list[tuple[tuple[int, ...], int]]:
    """(canonical representative, orbit size) for every dihedral class of
    size-subsets of Z_n, in lexicographic order of representatives."""
    out = []
    for W in itertools.combinations(range(n), size):
        images = subset_images(W, n)
        if min(images) == W:
            out.append((W, len(images)))
    return out


# -- precoloring extension ------------------------------------------------------

@dataclass(frozen=True)
class ExtensionReport:
    """Whether every precoloring of Z_n - W extends to a distinguishing coloring."""

    holds: bool
    bad_precoloring: tuple[int | None, ...] | None
    tried: int

    def __post_init__(self):
        if self.holds != (self.bad_precoloring is None):
            raise ValueError("a failing report must carry its bad precoloring")

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "bad_precoloring": None if self.bad_precoloring is None else precoloring_str(self.bad_precoloring),
            "tried": self.tried,
        }


def _fold_out_bits(table: np.ndarray, bits: Iterable[int], how: str = "any") -> np.ndarray:
    """Collapse the given bit positions of a table indexed by masks.

    The surviving bits keep their relative order, lowest vertex at bit 0.
    """
    r = table
    for b in sorted(bits, reverse=True):
        r = r.reshape(-1, 2, 1 << b)
        if how == "any":
            r = r[:, 0, :] | r[:, 1, :]
        elif how == "sum":
            r = r[:, 0, :] + r[:, 1, :]
        else:
            r = r[:, 0, :]
        r = r.reshape(-1)
    return r


def _lex_rank(indices: np.ndarray, width: int) -> np.ndarray:
    """Rank masks in lexicographic order of their bit string read from bit 0."""
    idx = indices.astype(np.int64)
    key = np.zeros_like(idx)
    for j in range(width):
        key |= ((idx >> j) & 1) << (width - 1 - j)
    return key


def _validate_extension_input(W, n, k):
    Wt = _check_subset(W, n)
    if not Wt:
        raise PreconditionError("W must be nonempty")
    if not pointwise_stabilizer_trivial(Wt, n):
        raise PreconditionError(f"pointwise stabilizer of {set(Wt)} in C_{n} is nontrivial; the property is undefined")
    if k is None:
        k = distinguishing_number(n)
    return Wt, k


def extension_property_packed(W: Sequence[int], n: int) -> ExtensionReport:
    Wt = tuple(sorted(W))
    reduced = _fold_out_bits(distinguishing_table(n), Wt, "any")
    total = reduced.size
    if reduced.all():
        return ExtensionReport(True, None, total)
    comp = [v for v in range(n) if v not in set(Wt)]
    bad = np.flatnonzero(~reduced)
    keys = _lex_rank(bad, len(comp))
    first = int(bad[int(np.argmin(keys))])
    pre: list[int | None] = [None] * n
    for j, v in enumerate(comp):
        pre[v] = (first >> j) & 1
    return ExtensionReport(False, tuple(pre), int(keys.min()) + 1)


def extension_property_general(W: Sequence[int], n: int, k: int) -> ExtensionReport:
    Wt = tuple(sorted(W))
    comp = [v for v in range(n) if v not in set(Wt)]
    memo: dict[tuple[int, ...], bool] = {}
    tried = 0
    colors = [0] * n
    for pre in itertools.product(range(k), repeat=len(comp)):
        tried += 1
        for v, c in zip(comp, pre):
            colors[v] = c
        ok = False
        for ext in itertools.product(range(k), repeat=len(Wt)):
            for v, c in zip(Wt, ext):
                colors[v] = c
            key = tuple(colors)
            d = memo.get(key)
            if d is None:
                d = memo[key] = is_distinguishing_general(key)
            if d:
                ok = True
                break
        if not ok:
            bad: list[int | None] = [None] * n
            for v, c in zip(comp, pre):
                bad[v] = c
            return ExtensionReport(False, tuple(bad), tried)
    return ExtensionReport(True, None, tried)


def extension_property(W: Iterable[int], n: int, k: int | None = None, engine: str = "auto") -> ExtensionReport:
    """Decide the precoloring extension property for W in C_n with k colors.

    k defaults to the distinguishing number of C_n.  On failure the report
    carries the lexicographically first precoloring (vertices in increasing
    order) that has no distinguishing extension.
    """
    Wt, k = _validate_extension_input(list(W), n, k)
    if engine == "auto":
        engine = "packed" if k == 2 and n <= TABLE_MAX_N else "general"
    if engine == "packed":
        if k != 2:
            raise ValueError("the packed engine handles k = 2 only")
        return extension_property_packed(Wt, n)
    if engine == "general":
        return extension_property_general(Wt, n, k)
    raise ValueError(f"unknown engine {engine!r}")


# -- extension number --------------------------------------------------------

@dataclass(frozen=True)
class CensusEntry:
    size: int
    canonical_set: tuple[int, ...]
    orbit_size: int
    holds: bool
    bad_precoloring: tuple[int | None, ...] | None = None

    def to_dict(self) -> dict:
        d = {
            "size": self.size,
            "canonical_set": list(self.canonical_set),
            "orbit_size": self.orbit_size,
            "holds": self.holds,
        }
        if self.bad_precoloring is not None:
            d["bad_precoloring"] = precoloring_str(self.bad_precoloring)
        return d


@dataclass(frozen=True)
class SizeSummary:
    size: int
    classes: int
    sets: int
    bad_classes: int
    bad_sets: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class ExtensionNumber:
    n: int
    k: int
    ext: int
    census: tuple[CensusEntry, ...] = field(default_factory=tuple)
    sizes: tuple[SizeSummary, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "ext": self.ext,
            "sizes": [s.to_dict() for s in self.sizes],
            "census": [e.to_dict() for e in self.census],
        }


def _sweep_chunk(args) -> list[tuple[bool, tuple[int | None, ...] | None]]:
    n, k, subsets = args
    out = []
    for W in subsets:
        rep = extension_property(W, n, k)
        out.append((rep.holds, rep.bad_precoloring))
    return out


def sweep_subsets(subsets: Sequence[tuple[int, ...]], n: int, k: int = 2, workers: int = 1):
    """Evaluate the extension property on each subset, in input order.

    The list is cut into contiguous slices, one per task; results are
    concatenated in slice order, so the output does not depend on workers.
    """
    subsets = list(subsets)
    if workers <= 1 or len(subsets) < 2:
        return _sweep_chunk((n, k, subsets))
    nchunks = min(len(subsets), workers * 4)
    size = -(-len(subsets) // nchunks)
    chunks = [(n, k, subsets[i:i + size]) for i in range(0, len(subsets), size)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sweep_chunk, chunks):
            out.extend(part)
    return out


def extension_number(n: int, k: int = 2, workers: int = 1, min_size: int = 3) -> ExtensionNumber:
    """Least m such that every trivial-stabilizer W with |W| >= m has the
    extension property, with the census of failing classes below m.

    Sizes are searched upward from min_size.  Once every set of size m works,
    every larger set does too: a precoloring of the complement of a larger
    set, restricted and completed arbitrarily, is a precoloring of the
    complement of one of its m-subsets.
    """
    if n < 6:
        raise PreconditionError("extension numbers are computed for n >= 6")
    if min_size < 1:
        raise ValueError("min_size must be positive")
    census: list[CensusEntry] = []
    sizes: list[SizeSummary] = []
    for m in range(min_size, n + 1):
        classes = [(W, orb) for W, orb in canonical_subsets(n, m) if pointwise_stabilizer_trivial(W, n)]
        results = sweep_subsets([W for W, _ in classes], n, k, workers)
        bad = [(W, orb, pre) for (W, orb), (ok, pre) in zip(classes, results) if not ok]
        census.extend(CensusEntry(m, W, orb, False, pre) for W, orb, pre in bad)
        sizes.append(SizeSummary(m, len(classes), sum(o for _, o in classes), len(bad), sum(o for _, o, _ in bad)))
        if not bad:
            return ExtensionNumber(n, k, m, tuple(census), tuple(sizes))
    raise AssertionError("the full vertex set always has the extension property")  # pragma: no cover


def predicted_extension_number(n: int) -> int:
    if n < 6:
        raise PreconditionError("prediction covers n >= 6")
    if n % 5 == 0:
        return 6
    if n % 4 == 0:
        return 5
    return 4


# -- replacement number -------------------------------------------------------------

def replacement_distances_packed(n: int) -> np.ndarray:
    """Hamming distance from every 2-coloring to the nearest distinguishing one."""
    table = distinguishing_table(n)
    dist = np.full(1 << n, -1, dtype=np.int16)
    frontier = table.copy()
    dist[frontier] = 0
    idx = np.arange(1 << n)
    d = 0
    while (dist < 0).any():
        d += 1
        reach = np.zeros_like(frontier)
        for b in range(n):
            reach |= frontier[idx ^ (1 << b)]
        frontier = reach & (dist < 0)
        if not frontier.any():
            raise AssertionError("no distinguishing coloring is reachable")
        dist[frontier] = d
    return dist


def replacement_number_general(n: int, k: int) -> int:
    """Multi-source BFS over all k^n colorings, one recoloring per step."""
    colorings = list(itertools.product(range(k), repeat=n))
    dist = {c: 0 for c in colorings if is_distinguishing_general(c)}
    if not dist:
        raise PreconditionError(f"no distinguishing {k}-coloring of C_{n}")
    queue = deque(dist)
    while queue:
        c = queue.popleft()
        for i in range(n):
            for col in range(k):
                if col != c[i]:
                    nb = c[:i] + (col,) + c[i + 1:]
                    if nb not in dist:
                        dist[nb] = dist[c] + 1
                        queue.append(nb)
    return max(dist.values())


def replacement_number(n: int, k: int = 2) -> int:
    """Worst case, over all k-colorings, of the fewest recolorings that
    make the coloring distinguishing."""
    if n < 3:
        raise PreconditionError("C_n is a cycle only for n >= 3")
    if k < distinguishing_number(n):
        raise PreconditionError(f"k = {k} is below the distinguishing number of C_{n}")
    if k == 2 and n <= TABLE_MAX_N:
        return int(replacement_distances_packed(n).max())
    return replacement_number_general(n, k)


# -- forbidden extensions ---------------------------------------------------------

def _preserves_partial(colors: dict[int, int], g: DihedralElement, hole: int) -> bool:
    return all(colors[g.apply(x)] == colors[x] for x in colors if g.apply(x) != hole)


def _check_forbidden_input(W, w0, n):
    Wt = _check_subset(W, n)
    if len(Wt) != 4:
        raise PreconditionError("forbidden-extension counting needs |W| = 4")
    if w0 not in Wt:
        raise PreconditionError(f"w0 = {w0} is not in W")
    images = {(2 * w0 - x) % n for x in Wt if x != w0}
    if images & set(Wt):
        raise PreconditionError(f"the reflection through {w0} maps part of W - {{w0}} back into W")
    return Wt


def forbidden_extension_count(W: Iterable[int], w0: int, precoloring: Sequence[int | None], n: int) -> int:
    """Count colorings of W - {w0} that, joined with the precoloring, are
    preserved by the reflection through w0 or by a nontrivial rotation.

    Colorings live on Z_n - {w0}; g preserves c when c(gx) = c(x) for every
    x with both x and gx different from w0.
    """
    Wt = _check_forbidden_input(list(W), w0, n)
    if len(precoloring) != n:
        raise ValueError("precoloring must have one entry per vertex")
    for v in range(n):
        if (v in Wt) != (precoloring[v] is None):
            raise PreconditionError("precoloring must be defined exactly off W")
    group = [DihedralElement(True, 2 * w0, n)] + [DihedralElement(False, r, n) for r in range(1, n)]
    rest = [x for x in Wt if x != w0]
    count = 0
    for ext in itertools.product((0, 1), repeat=len(rest)):
        colors = {v: precoloring[v] for v in range(n) if precoloring[v] is not None}
        colors.update(zip(rest, ext))
        if any(_preserves_partial(colors, g, w0) for g in group):
            count += 1
    return count


def forbidden_table(n: int, w0: int) -> np.ndarray:
    """Over all masks with bit w0 clear: is the partial coloring on
    Z_n - {w0} preserved by the reflection through w0 or a nontrivial rotation?"""
    m = np.arange(1 << n, dtype=np.int64)
    group = [DihedralElement(True, 2 * w0, n)] + [DihedralElement(False, r, n) for r in range(1, n)]
    out = np.zeros(1 << n, dtype=bool)
    for g in group:
        perm = np.zeros_like(m)
        domain = 0
        for x in range(n):
            gx = g.apply(x)
            perm |= ((m >> gx) & 1) << x
            if x != w0 and gx != w0:
                domain |= 1 << x
        out |= ((m ^ perm) & domain) == 0
    return out


@dataclass
class ForbiddenSweep:
    n: int
    instances: int = 0
    max_count: int = 0
    histogram: dict[int, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "instances": self.instances,
            "max_count": self.max_count,
            "histogram": {str(c): v for c, v in sorted(self.histogram.items())},
            "violations": self.violations,
        }


def forbidden_extension_sweep(n: int, bound: int = 6, max_records: int = 20) -> ForbiddenSweep:
    """Count forbidden extensions for every conforming (W, w0, precoloring)
    in C_n.  Instances above the bound are recorded, never dropped silently;
    `instances` and the histogram count them all."""
    result = ForbiddenSweep(n)
    hist = np.zeros(9, dtype=np.int64)
    for w0 in range(n):
        table = forbidden_table(n, w0)
        for others in itertools.combinations([v for v in range(n) if v != w0], 3):
            W = tuple(sorted(others + (w0,)))
            if {(2 * w0 - x) % n for x in others} & set(W):
                continue
            r = _fold_out_bits(table, [w0], "drop")
            rest = [x if x < w0 else x - 1 for x in others]
            counts = _fold_out_bits(r.astype(np.int8), rest, "sum")
            hist += np.bincount(counts, minlength=9)[:9]
            over = np.flatnonzero(counts > bound)
            for idx in over[: max(0, max_records - len(result.violations))]:
                comp = [v for v in range(n) if v not in W]
                pre: list[int | None] = [None] * n
                for j, v in enumerate(comp):
                    pre[v] = (int(idx) >> j) & 1
                result.violations.append(
                    {"n": n, "W": list(W), "w0": w0, "precoloring": precoloring_str(pre), "count": int(counts[idx])}
                )
            if over.size and len(result.violations) >= max_records:
                result.violations.append({"n": n, "truncated": True})
    result.histogram = {c: int(v) for c, v in enumerate(hist) if v}
    result.instances = int(hist.sum())
    result.max_count = max(result.histogram) if result.histogram else 0
    return result
