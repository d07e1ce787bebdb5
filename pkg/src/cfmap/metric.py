"""The metric rho on N_inf and the Fibonacci-weighted product metric.

``dist`` is exact when both sequences are finitely supported. As soon as a
stream is involved the series has infinitely many non-zero terms, so the
result is a bracket ``[S_K, S_K + tail_bound(K)]`` around the true value.

``quotient_excess`` is the convergence witness for the quotient topology on
Sigma: a point w approaches sigma there iff the fibre g^-1(w) falls into every
neighbourhood of the fibre g^-1(sigma). The product metric restricted to Sigma
does not see this (``[2, N, 2]`` stays ~1/8 away from ``[2]`` for all N).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import DomainError, fib, inv_fib_sq, parse_rational
from .symbolic import INF, ExtDigit, Seq, Stream, forget, reciprocal, support

TAIL_MIN_K = 4
RHO_MAX = 2


def rho(m: ExtDigit, n: ExtDigit) -> Fraction:
    if m == n:
        return Fraction(0)
    return reciprocal(m) + reciprocal(n)


def tail_bound(K: int) -> Fraction:
    """Upper bound on sum_{k>K} RHO_MAX / F_k^2.

    For k >= 3, F_{k+1} >= 3/2 F_k, so the terms shrink at least geometrically
    with ratio 4/9; summing gives (18/5) / F_{K+1}^2.
    """
    if K < TAIL_MIN_K:
        raise DomainError("tail bound valid for K ≥ 4")
    return Fraction(18, 5) / fib(K + 1) ** 2


@dataclass(frozen=True)
class DistResult:
    exact: Optional[Fraction] = None
    bracket: Optional[tuple[Fraction, Fraction]] = None
    depth_used: int = field(default=0, compare=False)

    def __post_init__(self):
        if (self.exact is None) == (self.bracket is None):
            raise ValueError("exactly one of exact / bracket must be set")

    @property
    def lo(self) -> Fraction:
        return self.exact if self.exact is not None else self.bracket[0]

    @property
    def hi(self) -> Fraction:
        return self.exact if self.exact is not None else self.bracket[1]

    def __str__(self):
        if self.exact is not None:
            return f"exact {self.exact}"
        lo, hi = self.bracket
        return f"bracket {lo} {hi} depth={self.depth_used}"

    def to_json(self) -> dict:
        if self.exact is not None:
            return {"exact": str(self.exact), "depth_used": self.depth_used}
        return {
            "bracket": [str(self.bracket[0]), str(self.bracket[1])],
            "depth_used": self.depth_used,
        }


_BRACKET_RE = re.compile(r"^bracket\s+(\S+)\s+(\S+)\s+depth=(\d+)$")
_EXACT_RE = re.compile(r"^exact\s+(\S+)$")


def parse_dist(text: str) -> DistResult:
    s = text.strip()
    m = _EXACT_RE.match(s)
    if m:
        # depth_used is not part of the text format for exact results
        return DistResult(exact=parse_rational(m.group(1)))
    m = _BRACKET_RE.match(s)
    if m:
        return DistResult(
            bracket=(parse_rational(m.group(1)), parse_rational(m.group(2))),
            depth_used=int(m.group(3)),
        )
    raise DomainError(f"not a distance: {text!r}")


def _partial(s: Seq, t: Seq, K: int) -> Fraction:
    total = Fraction(0)
    for k in range(1, K + 1):
        a, b = s.digit(k), t.digit(k)
        if a != b:
            total += inv_fib_sq(k) * (reciprocal(a) + reciprocal(b))
    return total


def dist(s: Seq, t: Seq, depth: Optional[int] = None) -> DistResult:
    """rho^N(s, t).

    ``depth`` only matters when a stream is involved; it defaults to the
    smallest depth budget among the stream arguments.
    """
    streams = [x for x in (s, t) if isinstance(x, Stream)]
    if not streams:
        K = max(len(support(s)), len(support(t)))
        return DistResult(exact=_partial(s, t, K), depth_used=max(K, 1))
    avail = min(x.depth_budget for x in streams)
    K = avail if depth is None else depth
    if K > avail:
        raise DomainError("depth budget exceeded")
    lo = _partial(s, t, K)
    return DistResult(bracket=(lo, lo + tail_bound(K)), depth_used=K)


def _sup_rho(c: ExtDigit) -> Fraction:
    # sup over a in N_inf of rho(a, c)
    if c == INF:
        return Fraction(1)
    if c == 1:
        return Fraction(3, 2)
    return 1 + Fraction(1, c)


def quotient_excess(w: Seq, limit: Seq) -> Fraction:
    """sup over a in g^-1(g(w)) of the rho^N-distance from a to g^-1(g(limit)).

    Both arguments must be finitely supported; they are first mapped into
    Sigma by ``forget``. Zero iff the two have the same image under g.
    """
    if isinstance(w, Stream) or isinstance(limit, Stream):
        raise DomainError("quotient excess is computed for finitely supported sequences")
    w, limit = forget(w), forget(limit)
    m, n = len(w), len(limit)
    total = Fraction(0)
    for k in range(1, min(m, n) + 2):
        total += inv_fib_sq(k) * rho(w.digit(k), limit.digit(k))
    for k in range(m + 2, n + 2):
        total += inv_fib_sq(k) * _sup_rho(limit.digit(k))
    return total


def diameter_cap(K: int) -> Fraction:
    return RHO_MAX * sum((inv_fib_sq(k) for k in range(1, K + 1)), Fraction(0)) + tail_bound(K)

