"""Randomized and exhaustive invariant suites, shared by ``cfmap check``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from .arith import fib, fib_binet_check
from .evaluator import convergents, eval_k, evaluate, expand
from .metric import dist, quotient_excess, rho, tail_bound
from .oracles import QuadraticValue, exact_tail, search_preimages
from .symbolic import INF, GeneralWord, Stream, Word, forget, format_seq
from .topology import (
    INSIDE,
    OUTSIDE,
    alternate_is_noncanonical,
    continuity_probe,
    endpoint_probe,
    irrational_probe,
    preimage,
)


@dataclass(frozen=True)
class CheckSize:
    roundtrip_q: int
    lipschitz_pairs: int
    rho_max_digit: int
    metric_triples: int
    convergent_words: int
    stream_depth: int
    preimage_q: int
    probe_points: int
    probe_q: int
    gmap_words: int


SIZES = {
    "small": CheckSize(60, 2_000, 8, 500, 500, 25, 30, 5, 50, 1_000),
    "medium": CheckSize(200, 20_000, 20, 2_000, 2_000, 25, 100, 15, 50, 5_000),
    "large": CheckSize(500, 100_000, 20, 10_000, 10_000, 25, 200, 30, 50, 10_000),
}


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, message: str):
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = message

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}: {self.cases} cases, {self.failures} failures"
        if self.counterexample:
            out += f"; first counterexample: {self.counterexample}"
        return out


def random_general_word(rng: random.Random, max_len=12, max_digit=50, p_inf=0.1) -> GeneralWord:
    n = rng.randint(0, max_len)
    return GeneralWord(
        tuple(INF if rng.random() < p_inf else rng.randint(1, max_digit) for _ in range(n))
    )


def random_word(rng: random.Random, max_len=12, max_digit=50, min_len=0) -> Word:
    n = rng.randint(min_len, max_len)
    return Word(tuple(rng.randint(1, max_digit) for _ in range(n)))


def unit_rationals(max_q: int, *, closed: bool = True):
    """All p/q in [0,1] (or (0,1)) in lowest terms with q <= max_q."""
    if closed:
        yield Fraction(0)
        yield Fraction(1)
    for q in range(2, max_q + 1):
        for p in range(1, q):
            if gcd(p, q) == 1:
                yield Fraction(p, q)


def suite_roundtrip(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("roundtrip", 0)
    for x in unit_rationals(size.roundtrip_q):
        res.cases += 1
        w = expand(x)
        if evaluate(w) != x:
            res.fail(f"x={x} expand={format_seq(w)}")
        elif 0 < x < 1 and w.block[-1] < 2:
            res.fail(f"x={x} non-canonical {format_seq(w)}")
    return res


def suite_lipschitz(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("lipschitz", size.lipschitz_pairs)
    for _ in range(size.lipschitz_pairs):
        s, t = random_general_word(rng), random_general_word(rng)
        if abs(evaluate(s) - evaluate(t)) > dist(s, t).exact:
            res.fail(f"{format_seq(s)} {format_seq(t)}")
    return res


def suite_metric(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("metric", 0)
    alphabet = list(range(1, size.rho_max_digit + 1)) + [INF]
    for m in alphabet:
        for n in alphabet:
            r = rho(m, n)
            res.cases += 1
            if r < 0 or (r == 0) != (m == n) or r != rho(n, m) or r > 2:
                res.fail(f"rho({m},{n})={r}")
            for p in alphabet:
                if rho(m, p) > r + rho(n, p):
                    res.fail(f"rho triangle at {m},{n},{p}")
    for _ in range(size.metric_triples):
        a, b, c = (random_word(rng) for _ in range(3))
        res.cases += 1
        ab, bc, ac = dist(a, b).exact, dist(b, c).exact, dist(a, c).exact
        if ac > ab + bc or ab != dist(b, a).exact or (ab == 0) != (a == b):
            res.fail(f"{format_seq(a)} {format_seq(b)} {format_seq(c)}")
    return res


def suite_convergents(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("convergents", 0)
    for _ in range(size.convergent_words):
        w = random_word(rng, max_len=15, max_digit=30, min_len=1)
        conv = convergents(w, len(w))
        res.cases += 1
        for k in range(1, len(w) + 1):
            q = conv[k][1]
            ones = all(d == 1 for d in w.block[:k])
            if q < fib(k + 1) or (q == fib(k + 1)) != ones:
                res.fail(f"{format_seq(w)} k={k} q={q}")
                break
    streams = [Stream((), (1,), size.stream_depth + 1), Stream((), (2,), 20), Stream((3,), (1, 2), 20)]
    for s in streams:
        depth = s.depth_budget - 1
        conv = convergents(s, depth + 1)
        oracle = QuadraticValue(s)
        for k in range(1, depth + 1):
            res.cases += 1
            q, q1 = conv[k][1], conv[k + 1][1]
            lo, hi = sorted((conv.value(k), conv.value(k + 1)))
            if q < fib(k + 1) or (s.period == (1,) and not s.preperiod and q != fib(k + 1)):
                res.fail(f"{format_seq(s)} k={k} q={q}")
            if hi - lo > Fraction(1, q * q1) or not oracle.in_closed(lo, hi):
                res.fail(f"{format_seq(s)} enclosure at k={k}")
    return res


def suite_preimage(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("preimage", 0)
    for x in unit_rationals(size.preimage_q, closed=False):
        res.cases += 1
        pair = preimage(x)
        ok = (
            evaluate(pair.canonical) == x
            and evaluate(pair.alternate) == x
            and pair.canonical == expand(x)
            and alternate_is_noncanonical(pair)
        )
        if ok:
            found = search_preimages(
                x.numerator, x.denominator, len(pair.canonical) + 1, 2 * x.denominator
            )
            ok = sorted(found) == sorted([pair.canonical.block, pair.alternate.block])
        if not ok:
            res.fail(f"x={x}")
    return res


def _eventually_decreasing_to(ds, bound) -> bool:
    # strictly decreasing over the second half and below bound at the end
    tail = ds[len(ds) // 2 :]
    return all(a > b for a, b in zip(tail, tail[1:])) and ds[-1] < bound


def suite_probe(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("probe", 0)
    points = {Fraction(1, 2)}
    while len(points) < size.probe_points + 1:
        q = rng.randint(2, size.probe_q)
        p = rng.randint(1, q - 1)
        points.add(Fraction(p, q))
    for x in sorted(points):
        res.cases += 1
        pair = preimage(x)
        inside = continuity_probe(x, INSIDE, 8)
        outside = continuity_probe(x, OUTSIDE, 8)
        wrong = continuity_probe(x, INSIDE, 8, against=pair.alternate)
        n = len(pair.canonical)
        mismatch = Fraction(1, fib(n) ** 2) * rho(pair.canonical.block[-1], pair.alternate.block[n - 1])
        if not _eventually_decreasing_to(inside.distances, Fraction(1, 100)):
            res.fail(f"inside x={x}")
        if not _eventually_decreasing_to(outside.distances, Fraction(1, 100)):
            res.fail(f"outside x={x}")
        if min(wrong.distances) < mismatch / 2:
            res.fail(f"wrong limit x={x}")
    res.cases += 3
    zero = endpoint_probe(0, 10)
    if [s.distance for s in zero.samples] != [Fraction(1, j) for j in range(2, 12)]:
        res.fail("x=0 probe")
    one = endpoint_probe(1, 10)
    if not _eventually_decreasing_to(one.distances, Fraction(1, 5)):
        res.fail("x=1 probe")
    irr = irrational_probe(Stream((), (1,), 12), 10)
    if irr.distances[-1] >= Fraction(1, fib(9) ** 2):
        res.fail("golden stream probe")
    return res


def suite_gmap(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("gmap", size.gmap_words)
    for _ in range(size.gmap_words):
        s = random_general_word(rng)
        g = forget(s)
        if evaluate(s) != evaluate(g) or forget(g) != g or quotient_excess(s, g) != 0:
            res.fail(format_seq(s))
    return res


def suite_fib(size: CheckSize, rng: random.Random) -> SuiteResult:
    res = SuiteResult("fib", 0)
    for n in range(71):
        res.cases += 1
        if not fib_binet_check(n):
            res.fail(f"binet n={n}")
    for n in range(1, 41):
        res.cases += 1
        if fib(n + 1) * fib(n - 1) - fib(n) ** 2 != (-1) ** n:
            res.fail(f"cassini n={n}")
    for K in range(4, 31):
        res.cases += 1
        if tail_bound(K) < exact_tail(K):
            res.fail(f"tail K={K}")
    return res


SUITES: dict[str, Callable[[CheckSize, random.Random], SuiteResult]] = {
    "fib": suite_fib,
    "roundtrip": suite_roundtrip,
    "metric": suite_metric,
    "lipschitz": suite_lipschitz,
    "convergents": suite_convergents,
    "gmap": suite_gmap,
    "preimage": suite_preimage,
    "probe": suite_probe,
}


def run_checks(suite: str = "all", size: str = "small", seed: int = 0) -> list[SuiteResult]:
    names = list(SUITES) if suite == "all" else [suite]
    preset = SIZES[size]
    # each suite gets its own generator so results do not depend on suite order
    return [SUITES[name](preset, random.Random(f"{seed}:{name}")) for name in names]
