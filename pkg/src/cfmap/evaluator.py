"""Digits from numbers (extended Gauss map) and numbers from digits."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import DomainError, as_rational
from .symbolic import (
    INF,
    ExtDigit,
    GeneralWord,
    Seq,
    Stream,
    Word,
    prefix_digits,
    support,
)


def _check_unit(x) -> Fraction:
    x = as_rational(x)
    if x < 0 or x > 1:
        raise DomainError("domain is [0,1]")
    return x


def gauss_digit(x) -> ExtDigit:
    """floor(1/x) for x in (0,1], infinity at 0."""
    x = _check_unit(x)
    if x == 0:
        return INF
    return x.denominator // x.numerator


def gauss_step(x) -> Fraction:
    """Fractional part of 1/x, extended by 0 -> 0."""
    x = _check_unit(x)
    if x == 0:
        return Fraction(0)
    return Fraction(x.denominator % x.numerator, x.numerator)


def expand(x) -> Word:
    """f(x) for rational x in [0,1], as the Word of its finite digits.

    Each step replaces p/q by (q mod p)/p, so the numerator strictly decreases
    and the loop ends. For x in (0,1) the last digit is at least 2.
    """
    x = _check_unit(x)
    p, q = x.numerator, x.denominator
    digits = []
    while p:
        a, r = divmod(q, p)
        digits.append(a)
        p, q = r, p
    if 0 < x < 1:
        assert digits[-1] >= 2, digits
    return Word(tuple(digits))


@dataclass(frozen=True)
class Convergents:
    """p*_k, q*_k for k = -1, 0, ..., n. Index with ``conv[k] -> (p, q)``."""

    digits: tuple[int, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.digits)

    def __getitem__(self, k: int) -> tuple[int, int]:
        if k < -1 or k > self.n:
            raise IndexError(k)
        return self.p[k + 1], self.q[k + 1]

    def value(self, k: int) -> Fraction:
        p, q = self[k]
        return Fraction(p, q)

    def rows(self):
        return [(k, *self[k]) for k in range(-1, self.n + 1)]


def convergents_of_digits(digits) -> Convergents:
    p = [1, 0]
    q = [0, 1]
    for a in digits:
        if a == INF:
            raise DomainError("convergents require finite digits")
        p.append(a * p[-1] + p[-2])
        q.append(a * q[-1] + q[-2])
    return Convergents(tuple(digits), tuple(p), tuple(q))


def convergents(s: Seq, n: int) -> Convergents:
    if n < 0:
        raise DomainError("convergent depth must be non-negative")
    return convergents_of_digits(prefix_digits(s, n))


def _fold(digits) -> Fraction:
    # innermost level first; an infinite digit contributes reciprocal 0
    value = Fraction(0)
    for d in reversed(digits):
        value = Fraction(0) if d == INF else 1 / (d + value)
    return value


def eval_k(s: Seq, k: int) -> Fraction:
    """The finite continued fraction on the first k digits of s."""
    if k < 0:
        raise DomainError("k must be non-negative")
    return _fold(prefix_digits(s, k))


@dataclass(frozen=True)
class Enclosure:
    """Exact rational bracket around the (irrational) value of a stream."""

    lo: Fraction
    hi: Fraction
    depth: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def enclose(s: Stream, depth: int) -> Enclosure:
    if depth < 1:
        raise DomainError("enclosure depth must be >= 1")
    conv = convergents(s, depth + 1)
    a, b = conv.value(depth), conv.value(depth + 1)
    return Enclosure(min(a, b), max(a, b), depth)


def evaluate(s: Seq) -> Union[Fraction, Enclosure]:
    """phi-tilde(s): exact for finitely supported s, an Enclosure for streams.

    A stream is bracketed by its convergents at depth ``depth_budget - 1`` and
    ``depth_budget``.
    """
    if isinstance(s, Stream):
        if s.depth_budget < 2:
            raise DomainError("stream evaluation needs depth budget >= 2")
        return enclose(s, s.depth_budget - 1)
    ds = support(s)
    # evaluation stops at the first infinity
    if isinstance(s, GeneralWord) and INF in ds:
        ds = ds[: ds.index(INF)]
    return _fold(ds)
