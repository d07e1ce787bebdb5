"""Sequences over the extended positive integers and the forgetting map.

Three concrete sequence types share one digit-access protocol:

* :class:`Word` -- finitely many finite digits followed by an all-infinity tail.
* :class:`GeneralWord` -- like a word, but infinity may appear anywhere.
* :class:`Stream` -- an eventually periodic sequence of finite digits, read
  lazily up to a depth budget.

Infinity is represented by :data:`INF` (``math.inf``), so ``d == INF`` and
ordinary integer comparisons behave as expected.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .arith import DomainError

INF = math.inf
NOT_IN_SIGMA = None

ExtDigit = Union[int, float]

DEFAULT_DEPTH_BUDGET = 64


def is_inf(d: ExtDigit) -> bool:
    return d == INF


def reciprocal(d: ExtDigit) -> Fraction:
    """1/d with the convention 1/inf = 0."""
    if d == INF:
        return Fraction(0)
    return Fraction(1, d)


def check_digit(d, *, allow_inf: bool) -> ExtDigit:
    if d == INF:
        if not allow_inf:
            raise DomainError("infinite digit not allowed here")
        return INF
    if isinstance(d, bool) or not isinstance(d, int):
        raise DomainError(f"digit must be a positive integer or inf, got {d!r}")
    if d < 1:
        raise DomainError(f"digit must be >= 1, got {d}")
    return d


class _Seq:
    """Shared equality and digit access; subclasses provide ``digit`` and ``_key``."""

    def digit(self, k: int) -> ExtDigit:  # pragma: no cover - abstract
        raise NotImplementedError

    def _key(self):  # pragma: no cover - abstract
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, _Seq):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        return format_seq(self)


@dataclass(frozen=True, eq=False)
class Word(_Seq):
    block: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "block", tuple(check_digit(d, allow_inf=False) for d in self.block)
        )

    def __len__(self):
        return len(self.block)

    def digit(self, k: int) -> ExtDigit:
        return self.block[k - 1] if k <= len(self.block) else INF

    def _key(self):
        return ("finite", self.block)

    def __repr__(self):
        return f"Word({list(self.block)})"


@dataclass(frozen=True, eq=False)
class GeneralWord(_Seq):
    """A finitely supported point of the full product space.

    Trailing infinities are dropped on construction; interior ones are kept.
    """

    digits: tuple[ExtDigit, ...] = ()

    def __post_init__(self):
        ds = [check_digit(d, allow_inf=True) for d in self.digits]
        while ds and ds[-1] == INF:
            ds.pop()
        object.__setattr__(self, "digits", tuple(ds))

    def __len__(self):
        return len(self.digits)

    def digit(self, k: int) -> ExtDigit:
        return self.digits[k - 1] if k <= len(self.digits) else INF

    def _key(self):
        return ("finite", self.digits)

    def __repr__(self):
        shown = ["inf" if d == INF else d for d in self.digits]
        return f"GeneralWord({shown})"


def _primitive_period(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for p in range(1, n + 1):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


@dataclass(frozen=True, eq=False)
class Stream(_Seq):
    """``preperiod`` followed by ``period`` repeated forever.

    Digit reads past ``depth_budget`` raise, so every approximation built on a
    stream touches a bounded, known prefix.
    """

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (1,)
    depth_budget: int = field(default=DEFAULT_DEPTH_BUDGET)

    def __post_init__(self):
        pre = tuple(check_digit(d, allow_inf=False) for d in self.preperiod)
        per = tuple(check_digit(d, allow_inf=False) for d in self.period)
        if not per:
            raise DomainError("stream period must be non-empty")
        if self.depth_budget < 1:
            raise DomainError("depth budget must be >= 1")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def normalized(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Minimal (preperiod, period) pair denoting the same sequence."""
        pre = list(self.preperiod)
        per = _primitive_period(self.period)
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = (per[-1],) + per[:-1]
        return tuple(pre), per

    def raw_digit(self, k: int) -> int:
        if k <= len(self.preperiod):
            return self.preperiod[k - 1]
        return self.period[(k - len(self.preperiod) - 1) % len(self.period)]

    def digit(self, k: int) -> int:
        if k > self.depth_budget:
            raise DomainError("depth budget exceeded")
        return self.raw_digit(k)

    def prefix(self, n: int) -> tuple[int, ...]:
        if n > self.depth_budget:
            raise DomainError("depth budget exceeded")
        return tuple(self.raw_digit(k) for k in range(1, n + 1))

    def with_budget(self, depth_budget: int) -> "Stream":
        return Stream(self.preperiod, self.period, depth_budget)

    def _key(self):
        return ("stream",) + self.normalized()

    def __repr__(self):
        return (
            f"Stream(pre={list(self.preperiod)}, per={list(self.period)}, "
            f"budget={self.depth_budget})"
        )


Seq = Union[Word, GeneralWord, Stream]


def finite_seq(digits) -> Union[Word, GeneralWord]:
    """Word when the digits describe a point of Sigma, GeneralWord otherwise."""
    gw = GeneralWord(tuple(digits))
    if all(d != INF for d in gw.digits):
        return Word(gw.digits)
    return gw


def prefix_digits(s: Seq, n: int) -> tuple[ExtDigit, ...]:
    if isinstance(s, Stream):
        return s.prefix(n)
    return tuple(s.digit(k) for k in range(1, n + 1))


def support(s: Union[Word, GeneralWord]) -> tuple[ExtDigit, ...]:
    return s.block if isinstance(s, Word) else s.digits


def stratum(s: Seq):
    """Index of the stratum containing ``s``.

    Returns ``n`` for the n-th finite stratum, ``INF`` for streams and
    ``NOT_IN_SIGMA`` (``None``) when a finite digit follows an infinite one.
    """
    if isinstance(s, Stream):
        return INF
    ds = support(s)
    if any(d == INF for d in ds):
        return NOT_IN_SIGMA
    return len(ds)


def in_sigma(s: Seq) -> bool:
    return stratum(s) is not NOT_IN_SIGMA


def truncate(s: Seq, n: int) -> Union[Word, GeneralWord]:
    """s^(n): the first n digits of s, then infinity forever."""
    if n < 0:
        raise DomainError("truncation length must be non-negative")
    return finite_seq(prefix_digits(s, n))


def forget(s: Seq) -> Union[Word, Stream]:
    """The map g: drop everything after the first infinite digit."""
    if isinstance(s, (Word, Stream)):
        return s
    out = []
    for d in s.digits:
        if d == INF:
            break
        out.append(d)
    return Word(tuple(out))


def equivalent(s: Seq, t: Seq) -> bool:
    return forget(s) == forget(t)


def in_cylinder(u: Seq, sigma: Seq) -> bool:
    """Whether u lies in the cylinder set over sigma (sigma of finite stratum n >= 1)."""
    n = stratum(sigma)
    if n is NOT_IN_SIGMA or n == INF or n < 1:
        raise DomainError("cylinder base must lie in Σ_n, n ≥ 1")
    if not in_sigma(u):
        raise DomainError("cylinder membership is defined for points of Σ")
    if isinstance(u, Stream) and n > u.depth_budget:
        raise DomainError("depth budget exceeded")
    return truncate(u, n) == sigma


# -- text format -------------------------------------------------------------

_INF_TOKENS = {"inf", "∞", "infinity"}
_SEQ_RE = re.compile(r"^\[(.*)\]$", re.S)


def _parse_digits(body: str, *, allow_inf: bool) -> list[ExtDigit]:
    body = body.strip()
    if not body:
        return []
    out: list[ExtDigit] = []
    for tok in body.split(","):
        tok = tok.strip()
        if tok.lower() in _INF_TOKENS:
            if not allow_inf:
                raise DomainError("inf is not allowed in a stream")
            out.append(INF)
            continue
        if not re.fullmatch(r"\+?\d+", tok):
            raise DomainError(f"bad digit {tok!r}")
        out.append(check_digit(int(tok), allow_inf=False))
    return out


def parse_seq(text: str, depth_budget: int = DEFAULT_DEPTH_BUDGET) -> Seq:
    """Parse ``[d1,...,dn]``, ``[3,inf,4]`` or ``[p1,...|a1,...]``."""
    m = _SEQ_RE.match(text.strip())
    if not m:
        raise DomainError(f"sequence must be bracketed: {text!r}")
    body = m.group(1)
    if "|" in body:
        pre_s, _, per_s = body.partition("|")
        if "|" in per_s:
            raise DomainError("at most one '|' in a stream")
        pre = _parse_digits(pre_s, allow_inf=False)
        per = _parse_digits(per_s, allow_inf=False)
        if not per:
            raise DomainError("stream period must be non-empty")
        return Stream(tuple(pre), tuple(per), depth_budget)
    return finite_seq(_parse_digits(body, allow_inf=True))


def _fmt(ds) -> str:
    return ",".join("inf" if d == INF else str(d) for d in ds)


def format_seq(s: Seq) -> str:
    if isinstance(s, Stream):
        return f"[{_fmt(s.preperiod)}|{_fmt(s.period)}]"
    return f"[{_fmt(support(s))}]"
