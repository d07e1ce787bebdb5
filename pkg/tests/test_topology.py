import json
from bisect import bisect_left, bisect_right
from collections import defaultdict
from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given

from cfmap.arith import DomainError, fib
from cfmap.evaluator import evaluate, expand
from cfmap.metric import rho
from cfmap.oracles import brute_force_values, search_preimages
from cfmap.symbolic import GeneralWord, INF, Stream, Word
from cfmap.topology import (
    INSIDE,
    OUTSIDE,
    Interval,
    PreimagePair,
    alternate_is_noncanonical,
    continuity_probe,
    endpoint_probe,
    fundamental_interval,
    irrational_probe,
    preimage,
)

from conftest import unit_rationals

F = Fraction


@pytest.mark.parametrize(
    "block, expected",
    [
        ((1,), Interval(F(1, 2), F(1), False, True)),
        ((2,), Interval(F(1, 3), F(1, 2), False, True)),
        ((1, 1), Interval(F(1, 2), F(2, 3), False, False)),
    ],
)
def test_fundamental_interval_examples(block, expected):
    assert fundamental_interval(Word(block)) == expected


def test_fundamental_interval_digit_oracle_on_grid():
    iv = fundamental_interval(Word((1,)))
    for x in (F(51, 100), F(1, 2), F(1)):
        assert (x in iv) == (expand(x).block[:1] == (1,))


@pytest.mark.parametrize("bad", [Word(()), GeneralWord((1, INF, 2)), Stream((), (1,), 5)])
def test_fundamental_interval_rejects(bad):
    with pytest.raises(DomainError):
        fundamental_interval(bad)


def test_interval_membership_matches_digits():
    xs = sorted({F(p, q) for q in range(1, 301) for p in range(q + 1)})
    with_prefix = defaultdict(list)
    for x in xs:
        block = expand(x).block
        for n in range(1, min(4, len(block)) + 1):
            if max(block[:n]) <= 8:
                with_prefix[block[:n]].append(x)
    for n in range(1, 5):
        for block in product(range(1, 9), repeat=n):
            iv = fundamental_interval(Word(block))
            members = with_prefix.get(block, [])
            assert all(x in iv for x in members)
            lo = bisect_left(xs, iv.lo) if iv.lo_closed else bisect_right(xs, iv.lo)
            hi = bisect_right(xs, iv.hi) if iv.hi_closed else bisect_left(xs, iv.hi)
            assert hi - lo == len(members), block


def test_preimage_examples():
    assert preimage(0) == Word(())
    assert preimage(1) == Word((1,))
    assert tuple(preimage(F(1, 2))) == (Word((2,)), Word((1, 1)))
    assert tuple(preimage(F(1, 3))) == (Word((3,)), Word((2, 1)))
    assert evaluate(Word((2, 1))) == F(1, 3)


@pytest.mark.parametrize("x", [F(1, 2), F(2, 5), F(1, 3)])
def test_alternate_is_noncanonical(x):
    pair = preimage(x)
    assert isinstance(pair, PreimagePair)
    assert alternate_is_noncanonical(pair)


def test_alternate_shape_for_last_digit_two():
    pair = preimage(F(2, 5))
    assert pair.canonical == Word((2, 2))
    assert pair.alternate == Word((2, 1, 1))


def test_preimage_domain():
    with pytest.raises(DomainError):
        preimage(F(3, 2))


@given(unit_rationals(max_q=10**4, open_=True))
def test_preimage_pair_properties(x):
    pair = preimage(x)
    assert evaluate(pair.canonical) == evaluate(pair.alternate) == x
    assert pair.canonical == expand(x)
    c, a = pair.canonical.block, pair.alternate.block
    assert a == c[:-1] + (c[-1] - 1, 1)
    assert alternate_is_noncanonical(pair)


def test_pruned_search_agrees_with_brute_force():
    table = brute_force_values(max_len=4, max_digit=12)
    for q in range(1, 7):
        for p in range(1, q + 1):
            if gcd(p, q) != 1:
                continue
            brute = sorted(w for w in table.get(F(p, q), []))
            assert sorted(search_preimages(p, q, 4, 12)) == brute


def test_no_third_preimage_small():
    for q in range(2, 61):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            pair = preimage(F(p, q))
            found = search_preimages(p, q, len(pair.canonical) + 1, 2 * q)
            assert sorted(found) == sorted([pair.canonical.block, pair.alternate.block])


# -- probes ------------------------------------------------------------------


def test_inside_probe_at_half():
    r = continuity_probe(F(1, 2), INSIDE, 4)
    assert r.limit_word == Word((2,))
    assert [s.t for s in r.samples] == [F(1, 2) - F(1, 4 * 10**j) for j in range(1, 5)]
    assert all(s.word.block[0] == 2 for s in r.samples)
    ds = r.distances
    assert all(a > b for a, b in zip(ds, ds[1:]))
    assert ds == [F(1, 10**j - 1) for j in range(1, 5)]


def test_outside_probe_at_half():
    r = continuity_probe(F(1, 2), OUTSIDE, 4)
    assert r.limit_word == Word((1, 1))
    assert all(s.word.block[:2] == (1, 1) for s in r.samples)
    ds = r.distances
    assert all(a > b for a, b in zip(ds, ds[1:]))


def test_inside_probe_against_wrong_limit():
    r = continuity_probe(F(1, 2), INSIDE, 6, against=Word((1, 1)))
    assert min(r.distances) >= rho(2, 1)


def test_product_distance_does_not_converge_at_half():
    r = continuity_probe(F(1, 2), INSIDE, 8)
    assert all(s.product_distance > F(1, 8) for s in r.samples)


@given(unit_rationals(max_q=50, open_=True))
def test_probes_converge_at_rationals(x):
    pair = preimage(x)
    iv = fundamental_interval(pair.canonical)
    inside = continuity_probe(x, INSIDE, 8)
    outside = continuity_probe(x, OUTSIDE, 8)
    assert all(s.t in iv for s in inside.samples)
    assert not any(s.t in iv for s in outside.samples)
    for report in (inside, outside):
        ts = [abs(s.t - x) for s in report.samples]
        assert all(a > b for a, b in zip(ts, ts[1:]))
        ds = report.distances
        assert all(a > b for a, b in zip(ds[3:], ds[4:]))
        assert ds[-1] < F(1, 100)


def test_probe_arguments():
    with pytest.raises(DomainError):
        continuity_probe(F(0), INSIDE, 4)
    with pytest.raises(DomainError):
        continuity_probe(F(1, 2), "sideways", 4)
    with pytest.raises(DomainError):
        continuity_probe(F(1, 2), INSIDE, 2)


def test_endpoint_probes():
    zero = endpoint_probe(0, 6)
    assert [s.word for s in zero.samples] == [Word((j,)) for j in range(2, 8)]
    assert zero.distances == [F(1, j) for j in range(2, 8)]
    one = endpoint_probe(1, 6)
    for j, s in zip(range(2, 8), one.samples):
        if j > 2:
            assert s.word == Word((1, j - 1))
            assert s.distance == F(1, j - 1)


def test_irrational_probe_golden():
    r = irrational_probe(Stream((), (1,), 8), 6)
    ds = r.distances
    assert all(a > b for a, b in zip(ds, ds[1:]))
    assert ds[-1] < F(1, fib(6) ** 2)


def test_irrational_probe_budget():
    with pytest.raises(DomainError, match="depth budget"):
        irrational_probe(Stream((), (1,), 7), 6)


def test_probe_report_serialization():
    r = continuity_probe(F(1, 3), OUTSIDE, 3)
    doc = json.loads(r.dumps())
    assert doc["limit_word"] == "[2,1]"
    assert [s["distance"] for s in doc["samples"]] == [str(d) for d in r.distances]
    rows = r.to_table().splitlines()
    assert len(rows) == 2 + 3
    assert rows[2].split("\t")[3] == f"{float(r.distances[0]):.6f}"
