"""Exit criteria, one test each. A PASS/FAIL line per criterion is printed in
the terminal summary (see ``pytest_terminal_summary`` in conftest.py)."""

import random
import time
from fractions import Fraction
from math import gcd

import pytest

from cfmap.arith import fib, fib_binet_check
from cfmap.evaluator import convergents, evaluate, expand
from cfmap.metric import dist, rho, tail_bound
from cfmap.oracles import QuadraticValue, exact_tail, search_preimages
from cfmap.symbolic import INF, GeneralWord, Stream, Word, forget
from cfmap.topology import (
    INSIDE,
    OUTSIDE,
    alternate_is_noncanonical,
    continuity_probe,
    endpoint_probe,
    irrational_probe,
    preimage,
)

RESULTS: list[str] = []


class criterion:
    def __init__(self, number: int, title: str, budget_s: float):
        self.number, self.title, self.budget_s = number, title, budget_s
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.budget_s
        status = "PASS" if ok else "FAIL"
        note = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"
        RESULTS.append(
            f"[{status}] {self.number:2d}. {self.title} ({elapsed:.2f}s / {self.budget_s:g}s) {note}".rstrip()
        )
        if exc_type is None:
            assert elapsed < self.budget_s, f"took {elapsed:.1f}s, limit {self.budget_s}s"
        return False


def unit_rationals(max_q, closed=True):
    if closed:
        yield Fraction(0)
        yield Fraction(1)
    for q in range(2, max_q + 1):
        for p in range(1, q):
            if gcd(p, q) == 1:
                yield Fraction(p, q)


def test_01_roundtrip():
    with criterion(1, "round trip eval(expand(p/q)) = p/q, q <= 500", 10) as c:
        n = 0
        for x in unit_rationals(500):
            assert evaluate(expand(x)) == x, x
            n += 1
        c.detail = f"{n} rationals"


def test_02_lipschitz():
    with criterion(2, "Lipschitz |phi(s)-phi(t)| <= rho^N(s,t), 1e5 pairs", 60) as c:
        rng = random.Random(2)

        def gword():
            n = rng.randint(0, 12)
            return GeneralWord(
                tuple(INF if rng.random() < 0.1 else rng.randint(1, 50) for _ in range(n))
            )

        violations = 0
        for _ in range(100_000):
            s, t = gword(), gword()
            if abs(evaluate(s) - evaluate(t)) > dist(s, t).exact:
                violations += 1
        assert violations == 0
        c.detail = "0 violations"


def test_03_metric_axioms():
    with criterion(3, "metric axioms: rho on {1..20,inf}^3, rho^N on 1e4 triples", 20) as c:
        alphabet = list(range(1, 21)) + [INF]
        for m in alphabet:
            for n in alphabet:
                r = rho(m, n)
                assert r >= 0 and (r == 0) == (m == n) and r == rho(n, m)
                for p in alphabet:
                    assert rho(m, p) <= r + rho(n, p)
        rng = random.Random(3)

        def word():
            return Word(tuple(rng.randint(1, 50) for _ in range(rng.randint(0, 12))))

        for _ in range(10_000):
            a, b, cc = word(), word(), word()
            assert dist(a, cc).exact <= dist(a, b).exact + dist(b, cc).exact
        c.detail = f"{len(alphabet) ** 3} rho triples, 10000 word triples"


def test_04_convergent_bounds():
    with criterion(4, "q*_k >= F_{k+1} (equality iff all ones); stream error <= 1/(q_k q_k+1)", 20) as c:
        rng = random.Random(4)
        for _ in range(10_000):
            w = Word(tuple(rng.randint(1, 30) for _ in range(rng.randint(1, 15))))
            conv = convergents(w, len(w))
            for k in range(1, len(w) + 1):
                q = conv[k][1]
                assert q >= fib(k + 1)
                assert (q == fib(k + 1)) == all(d == 1 for d in w.block[:k])
        golden = Stream((), (1,), 26)
        conv = convergents(golden, 26)
        assert all(conv[k][1] == fib(k + 1) for k in range(1, 26))
        oracle = QuadraticValue(golden)
        for k in range(1, 26):
            lo, hi = sorted((conv.value(k), conv.value(k + 1)))
            # the value lies between consecutive convergents, so the error
            # |phi - phi_k| is at most the width
            assert oracle.in_closed(lo, hi)
            assert hi - lo <= Fraction(1, conv[k][1] * conv[k + 1][1])
        enc = evaluate(golden.with_budget(26))
        assert enc.width <= Fraction(1, fib(26) * fib(27))
        c.detail = "10000 words + all-ones stream to depth 25"


def test_05_preimage_doubleton():
    with criterion(5, "preimage doubleton for p/q in (0,1), q <= 200", 120) as c:
        n = 0
        for x in unit_rationals(200, closed=False):
            pair = preimage(x)
            assert evaluate(pair.canonical) == x and evaluate(pair.alternate) == x
            assert alternate_is_noncanonical(pair)
            found = search_preimages(
                x.numerator, x.denominator, len(pair.canonical) + 1, 2 * x.denominator
            )
            assert sorted(found) == sorted([pair.canonical.block, pair.alternate.block]), x
            n += 1
        c.detail = f"{n} rationals, no third preimage"


def _eventually_decreasing(ds):
    tail = ds[len(ds) // 2 :]
    return all(a > b for a, b in zip(tail, tail[1:]))


def test_06_one_sided_continuity():
    with criterion(6, "one-sided limits at x = 1/2 and 30 random rationals (count 8)", 10) as c:
        rng = random.Random(6)
        points = [Fraction(1, 2)]
        while len(points) < 31:
            q = rng.randint(2, 50)
            x = Fraction(rng.randint(1, q - 1), q)
            if x not in points:
                points.append(x)
        for x in points:
            pair = preimage(x)
            for side, limit in ((INSIDE, pair.canonical), (OUTSIDE, pair.alternate)):
                r = continuity_probe(x, side, 8)
                assert r.limit_word == limit
                assert _eventually_decreasing(r.distances), (x, side)
                assert r.distances[-1] < Fraction(1, 100), (x, side)
            n = len(pair.canonical)
            mismatch = rho(pair.canonical.block[n - 1], pair.alternate.block[n - 1]) / fib(n) ** 2
            wrong = continuity_probe(x, INSIDE, 8, against=pair.alternate)
            assert min(wrong.distances) >= mismatch / 2, x
        c.detail = f"{len(points)} points"


def test_07_continuity_at_endpoints_and_irrationals():
    with criterion(7, "continuity at 0, 1 and along the golden stream", 5) as c:
        zero = endpoint_probe(0, 10)
        assert [s.t for s in zero.samples] == [Fraction(1, j) for j in range(2, 12)]
        assert zero.distances == [Fraction(1, j) for j in range(2, 12)]
        one = endpoint_probe(1, 10)
        assert all(a > b for a, b in zip(one.distances, one.distances[1:]))
        assert one.distances[-1] == Fraction(1, 10)
        irr = irrational_probe(Stream((), (1,), 12), 10)
        assert irr.distances[-1] < Fraction(1, fib(9) ** 2)
        c.detail = f"golden final distance {float(irr.distances[-1]):.3e} < 1/F_9^2 = {1 / fib(9) ** 2:.3e}"


def test_08_forget_composition():
    with criterion(8, "phi~(s) = phi(g(s)) and g idempotent on 1e4 general words", 10) as c:
        rng = random.Random(8)
        for _ in range(10_000):
            s = GeneralWord(
                tuple(INF if rng.random() < 0.1 else rng.randint(1, 50) for _ in range(rng.randint(0, 12)))
            )
            g = forget(s)
            assert evaluate(s) == evaluate(g)
            assert forget(g) == g
        c.detail = "10000 words"


def test_09_fibonacci():
    with criterion(9, "Fibonacci vs Binet (n <= 70) and Cassini (n <= 40)", 1) as c:
        assert all(fib_binet_check(n) for n in range(71))
        assert all(fib(n + 1) * fib(n - 1) - fib(n) ** 2 == (-1) ** n for n in range(1, 41))
        c.detail = "71 + 40 identities"


def test_10_tail_bound():
    with criterion(10, "tail_bound(K) >= sum_{k=K+1}^{K+60} 2/F_k^2 for K = 4..30", 1) as c:
        for K in range(4, 31):
            assert tail_bound(K) >= exact_tail(K), K
        c.detail = "27 depths"
