"""Fundamental intervals, rational preimages and continuity probes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .arith import DomainError, as_rational
from .evaluator import convergents, eval_k, evaluate, expand
from .metric import dist, quotient_excess
from .symbolic import INF, NOT_IN_SIGMA, Seq, Stream, Word, format_seq, stratum, truncate

INSIDE = "inside"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError("empty interval")

    def __contains__(self, x) -> bool:
        x = as_rational(x)
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def _prefix_matches(x: Fraction, block: tuple[int, ...]) -> bool:
    return expand(x).block[: len(block)] == block


def fundamental_interval(sigma: Seq) -> Interval:
    """I_n(sigma): the x in [0,1] whose first n Gauss digits are sigma's block.

    Endpoints come from the convergents; whether each endpoint belongs is
    decided by expanding it and comparing digits.
    """
    n = stratum(sigma)
    if n is NOT_IN_SIGMA or n == INF or n < 1:
        raise DomainError("fundamental interval needs sigma in Σ_n with n ≥ 1")
    sigma = Word(tuple(sigma.digit(k) for k in range(1, n + 1)))
    conv = convergents(sigma, n)
    (p1, q1), (p0, q0) = conv[n], conv[n - 1]
    a = Fraction(p1, q1)
    b = Fraction(p1 + p0, q1 + q0)
    lo, hi = min(a, b), max(a, b)
    return Interval(lo, hi, _prefix_matches(lo, sigma.block), _prefix_matches(hi, sigma.block))


@dataclass(frozen=True)
class PreimagePair:
    canonical: Word
    alternate: Word
    x: Fraction

    def __iter__(self):
        return iter((self.canonical, self.alternate))


def alternate_form(w: Word) -> Word:
    """Rewrite (..., d) as (..., d - 1, 1)."""
    *head, last = w.block
    return Word(tuple(head) + (last - 1, 1))


def preimage(x) -> Union[Word, PreimagePair]:
    """All points of Sigma that evaluate to x.

    0 and 1 have a single preimage; every other rational has exactly two.
    """
    x = as_rational(x)
    if x < 0 or x > 1:
        raise DomainError("domain is [0,1]")
    canonical = expand(x)
    if x == 0 or x == 1:
        return canonical
    return PreimagePair(canonical, alternate_form(canonical), x)


def alternate_is_noncanonical(pair: PreimagePair) -> bool:
    return expand(evaluate(pair.alternate)) != pair.alternate


# -- probes ------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeSample:
    t: Fraction
    word: Word
    distance: Fraction
    product_distance: Fraction


@dataclass
class ProbeReport:
    """Samples t -> x with their digit words and exact distances to a limit.

    ``distance`` is the convergence witness (quotient excess for rational
    limits, rho^N to the budget-depth prefix for streams);
    ``product_distance`` is always plain rho^N to ``limit_word``.
    """

    x: Optional[Fraction]
    side: str
    limit_word: Word
    samples: list[ProbeSample] = field(default_factory=list)

    @property
    def distances(self) -> list[Fraction]:
        return [s.distance for s in self.samples]

    def rows(self):
        return [
            (str(s.t), format_seq(s.word), str(s.distance), f"{float(s.distance):.6f}")
            for s in self.samples
        ]

    def to_table(self) -> str:
        head = f"x={self.x if self.x is not None else 'irrational'} side={self.side} limit={format_seq(self.limit_word)}"
        lines = [head, "t\tword\tdistance\tdistance~"]
        lines += ["\t".join(r) for r in self.rows()]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "x": None if self.x is None else str(self.x),
            "side": self.side,
            "limit_word": format_seq(self.limit_word),
            "samples": [
                {
                    "t": str(s.t),
                    "word": format_seq(s.word),
                    "distance": str(s.distance),
                    "distance_decimal": f"{float(s.distance):.6f}",
                    "product_distance": str(s.product_distance),
                }
                for s in self.samples
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _sample(t: Fraction, limit: Word) -> ProbeSample:
    w = expand(t)
    return ProbeSample(t, w, quotient_excess(w, limit), dist(w, limit).exact)


MAX_SHRINK = 200


def continuity_probe(x, side: str, count: int, against: Optional[Word] = None) -> ProbeReport:
    """Approach a rational x in (0,1) from inside or outside I_n(f(x)).

    Samples are t_j = x +/- 10^-j * delta, j = 1..count, starting from
    delta = min(x, 1-x)/2 and shrinking delta by 10 until every inside sample
    lies in the fundamental interval. The limit is f(x) from inside and the
    alternate preimage from outside, unless ``against`` overrides it.
    """
    x = as_rational(x)
    if not 0 < x < 1:
        raise DomainError("continuity probe needs x in (0,1)")
    if side not in (INSIDE, OUTSIDE):
        raise DomainError("side must be inside or outside")
    if count < 3:
        raise DomainError("count must be >= 3")
    pair = preimage(x)
    interval = fundamental_interval(pair.canonical)
    toward_inside = 1 if interval.lo == x else -1
    direction = toward_inside if side == INSIDE else -toward_inside
    delta = min(x, 1 - x) / 2
    for _ in range(MAX_SHRINK):
        ts = [x + direction * delta / 10**j for j in range(1, count + 1)]
        ok = all(0 < t < 1 for t in ts)
        if side == INSIDE:
            ok = ok and all(t in interval for t in ts)
        else:
            ok = ok and not any(t in interval for t in ts)
        if ok:
            break
        delta /= 10
    else:
        raise DomainError("cannot place samples")
    limit = pair.canonical if side == INSIDE else pair.alternate
    if against is not None:
        limit = against
    return ProbeReport(x, side, limit, [_sample(t, limit) for t in ts])


def endpoint_probe(x, count: int) -> ProbeReport:
    """Continuity at 0 (t_j = 1/j) and at 1 (t_j = 1 - 1/j), j = 2..count+1."""
    x = as_rational(x)
    if count < 1:
        raise DomainError("count must be >= 1")
    js = range(2, count + 2)
    if x == 0:
        ts = [Fraction(1, j) for j in js]
    elif x == 1:
        ts = [1 - Fraction(1, j) for j in js]
    else:
        raise DomainError("endpoint probe is for x = 0 or x = 1")
    limit = expand(x)
    return ProbeReport(x, "two-sided", limit, [_sample(t, limit) for t in ts])


def irrational_probe(s: Stream, count: int) -> ProbeReport:
    """Convergents of a stream against the stream itself.

    With D the depth budget, the samples are the convergents t_k for
    k = D-count+1, ..., D, and each distance is the exact rho^N distance from
    f(t_k) to s^(D), the depth-D prefix of the stream (which is itself within
    tail_bound(D) of s).
    """
    if not isinstance(s, Stream):
        raise DomainError("irrational probe needs a stream")
    if count < 1:
        raise DomainError("count must be >= 1")
    D = s.depth_budget
    if D < count + 2:
        raise DomainError("depth budget exceeded")
    limit = truncate(s, D)
    samples = []
    for k in range(D - count + 1, D + 1):
        t = eval_k(s, k)
        w = expand(t)
        d = dist(w, limit).exact
        samples.append(ProbeSample(t, w, d, d))
    return ProbeReport(None, "two-sided", limit, samples)
