"""Acceptance suite: one test per criterion, summarized as PASS/FAIL lines."""
from __future__ import annotations

import itertools
import os
import random
import time
from fractions import Fraction as F

import pytest

import oracles
from distext import cli, conditions, cycle
from distext import extensions as ex
from distext import free_rotations as fr
from distext.circle import PointSet, canonical_signature, embed_in_cycle, pointwise_stabilizer_trivial
from distext.errors import ConstructionAnomaly

criterion = pytest.mark.criterion
WORKERS = max(1, min(8, os.cpu_count() or 1))

EXPECTED_EXT = {6: 4, 7: 4, 8: 5, 9: 4, 10: 6, 11: 4, 12: 5, 15: 6, 16: 5, 20: 6}


@criterion(1, "extension numbers of C_n match the table")
def test_extension_numbers(detail):
    got, times = {}, {}
    for n in EXPECTED_EXT:
        start = time.perf_counter()
        got[n] = cycle.extension_number(n, workers=WORKERS if n > 16 else 1).ext
        times[n] = time.perf_counter() - start
    detail(f"{sum(got[n] == EXPECTED_EXT[n] for n in got)}/{len(got)} match, "
           f"max {max(times[n] for n in times if n <= 16):.1f}s for n<=16, n=20 {times[20]:.1f}s")
    assert got == EXPECTED_EXT


@criterion(2, "distinguishing numbers 3 for n<=5 and 2 for 6<=n<=24")
def test_distinguishing_numbers(detail):
    start = time.perf_counter()
    got = {n: cycle.distinguishing_number(n) for n in range(3, 25)}
    detail(f"{time.perf_counter() - start:.2f}s")
    assert got == {n: 3 if n <= 5 else 2 for n in range(3, 25)}


@criterion(3, "pentagon and square embeddings fail with verified bad precolorings")
def test_exception_witnesses(detail):
    pentagon = PointSet.of(*(F(i, 5) for i in range(5)))
    square = PointSet.of(0, F(1, 4), F(1, 2), F(3, 4))
    cases = [(pentagon, n) for n in (10, 15, 20)] + [(square, n) for n in (8, 12)]
    for S, n in cases:
        W = embed_in_cycle(S, n)
        rep = cycle.extension_property(W, n)
        assert not rep.holds, (S, n)
        pre = rep.bad_precoloring
        assert all((v in W) == (pre[v] is None) for v in range(n))
        assert not oracles.has_distinguishing_extension(pre, W, n), (S, n)
    detail(f"{len(cases)} witnesses re-verified")


def _circle_sets(max_den, sizes):
    reps = {}
    for d in range(1, max_den + 1):
        for size in sizes:
            for res in itertools.combinations(range(d), size):
                S = PointSet.from_residues(res, d)
                reps.setdefault(canonical_signature(S), S)
    return list(reps.values())


@criterion(4, "circle verdict Holds implies the property on every C_n, n<=24")
def test_classifier_consistent_with_engine(detail):
    # both sides are invariant under rotations and reflections, so one set
    # per equivalence class and one cycle subset per dihedral class suffice
    memo, checks, violations = {}, 0, []
    for S in _circle_sets(12, (4, 5, 6)):
        if not pointwise_stabilizer_trivial(S):
            continue
        if conditions.circle_extension_status(S).verdict != conditions.HOLDS:
            continue
        d = S.common_denominator()
        for n in range(d, 25, d):
            if n < 3 or n < len(S):
                continue
            key = (n, cycle.canonical_subset(embed_in_cycle(S, n), n))
            if key not in memo:
                memo[key] = cycle.extension_property(key[1], n).holds
            checks += 1
            if not memo[key]:
                violations.append((str(S), n))
    detail(f"{checks} checks, {len(memo)} distinct, {len(violations)} violations")
    assert not violations


def _valid_a(family, n):
    if family == ex.ANTIPODAL:
        return [a for a in range(1, n) if a != n // 2 and 4 * a % n]
    if family == ex.QUARTER:
        return [a for a in range(1, n) if a not in (n // 4, n // 2, 3 * n // 4)]
    return [None]


def _families_for(n):
    out = []
    if n % 2 == 0:
        out.append(ex.ANTIPODAL)
    if n % 6 == 0:
        out += [ex.THIRDS, ex.SIXTHS]
    if n % 4 == 0:
        out.append(ex.QUARTER)
    return [f for f in out if _valid_a(f, n)]


def _try_build(family, n, pre, a):
    try:
        t = ex.build(family, n, pre, a)
    except ConstructionAnomaly as exc:
        return exc.record
    assert cycle.is_distinguishing(t.result)
    return None


@criterion(5, "construction families always yield a distinguishing member")
def test_constructions(detail):
    anomalies, built = [], 0
    for n in range(6, 13):
        for family in _families_for(n):
            for a in _valid_a(family, n):
                W = ex.family_set(family, n, a)
                comp = [v for v in range(n) if v not in W]
                for bits in itertools.product((0, 1), repeat=len(comp)):
                    pre = [None] * n
                    for v, c in zip(comp, bits):
                        pre[v] = c
                    built += 1
                    if (rec := _try_build(family, n, pre, a)) is not None:
                        anomalies.append(rec)
    sampled = {}
    for n in range(13, 17):
        for family in _families_for(n):
            rng = random.Random(f"{family}-{n}")
            for _ in range(10_000):
                a = rng.choice(_valid_a(family, n))
                W = set(ex.family_set(family, n, a))
                pre = [None if v in W else rng.randrange(2) for v in range(n)]
                built += 1
                if (rec := _try_build(family, n, pre, a)) is not None:
                    anomalies.append(rec)
            sampled[(family, n)] = 10_000
    detail(f"{built} precolorings, sampled {sorted(f'{f}@{n}' for f, n in sampled)}, {len(anomalies)} anomalies")
    assert not anomalies


@criterion(6, "replacement number of C_n is 3 for 6<=n<=16")
def test_replacement_numbers(detail):
    engine = {n: cycle.replacement_number(n, 2) for n in range(6, 17)}
    independent = {n: oracles.replacement_number_bfs(n) for n in range(6, 17)}
    brute = {n: oracles.replacement_number(n) for n in range(6, 10)}
    detail(f"engine {set(engine.values())}, bitmask BFS {set(independent.values())}, brute force n<=9")
    assert engine == independent == {n: 3 for n in range(6, 17)}
    assert all(brute[n] == engine[n] for n in brute)


@criterion(7, "forbidden extension count at most 6 for 8<=n<=14")
def test_forbidden_bound(detail):
    worst, instances, violations = 0, 0, []
    for n in range(8, 15):
        s = cycle.forbidden_extension_sweep(n, bound=6)
        worst = max(worst, s.max_count)
        instances += s.instances
        violations += s.violations
    detail(f"{instances} instances, max count {worst}, {len(violations)} anomaly records")
    assert not violations and worst <= 6


@criterion(8, "cos 1/3 rotations are free up to word length 12")
def test_freeness(detail):
    start = time.perf_counter()
    cert = fr.verify_freeness(fr.generator_matrices(F(1, 3)), 12, workers=WORKERS)
    detail(f"{cert.words_checked} words in {time.perf_counter() - start:.1f}s")
    assert cert.free
    assert cert.words_checked == fr.reduced_word_count(2, 12)


@criterion(9, "orbit forests carry invariant extensions with zero violations")
def test_forests(detail):
    one = fr.build_bad_forest([fr.vector(1, 0, 0)], 4)
    two = fr.build_bad_forest([fr.vector(1, 0, 0), fr.parse_point("(1/3, 2/3*sqrt2, 0)")], 3)
    for forest in (one, two):
        assert len(forest.extensions) == 2 ** len(forest.roots)
        assert all(e["edges_checked"] > 0 for e in forest.extensions)
        assert fr.forest_branch_consistent(forest)
    detail(f"{len(one.nodes)} + {len(two.nodes)} nodes, violations {one.violations} + {two.violations}")
    assert one.violations == two.violations == 0


@criterion(10, "packed and general engines agree; reports independent of workers")
def test_engine_self_consistency(detail, capsys):
    colorings = 0
    for n in range(3, 15):
        for m in range(1 << n):
            c = cycle.CycleColoring.from_mask(m, n)
            assert cycle.is_distinguishing_packed(m, n) == cycle.is_distinguishing_general(c.colors)
            colorings += 1
    # every subset size, one representative per dihedral class; the 2-color
    # engines only apply from n = 6, where the distinguishing number is 2
    subsets = 0
    for n in range(6, 15):
        for size in range(1, n + 1):
            for W, _ in cycle.canonical_subsets(n, size):
                if not cycle.pointwise_stabilizer_trivial(W, n):
                    continue
                p = cycle.extension_property(W, n, engine="packed")
                g = cycle.extension_property(W, n, engine="general")
                assert p == g, (n, W)
                subsets += 1
    capsys.readouterr()
    code1, _ = cli.run(["ext", "--n", "12", "--workers", "1"])
    one = capsys.readouterr().out
    code8, _ = cli.run(["ext", "--n", "12", "--workers", "8"])
    eight = capsys.readouterr().out
    detail(f"{colorings} colorings, {subsets} subsets, reports identical: {one == eight}")
    assert code1 == code8 == 0
    assert one == eight
