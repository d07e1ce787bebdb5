"""Independent reference computations used by the check suites and tests.

Nothing here calls ``expand``, ``convergents`` or ``dist``; each function
recomputes its answer by a different route.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd

from .symbolic import Stream


def search_preimages(p: int, q: int, max_len: int, max_digit: int) -> list[tuple[int, ...]]:
    """Every word of length <= max_len, digits <= max_digit, evaluating to p/q.

    Digits are tried one at a time, left to right. A digit a is kept only if
    the remainder q/p - a is 0 (word ends) or lies in (0, 1] (the value of any
    non-empty word), which every preimage must satisfy.
    """
    found: list[tuple[int, ...]] = []

    def walk(p: int, q: int, prefix: tuple[int, ...]):
        if len(prefix) >= max_len:
            return
        for a in range(1, max_digit + 1):
            num = q - a * p
            if num < 0:
                break
            if num == 0:
                found.append(prefix + (a,))
            elif num <= p:
                g = gcd(num, p)
                walk(num // g, p // g, prefix + (a,))

    if p == 0:
        return [()]
    walk(p, q, ())
    return found


def brute_force_values(max_len: int, max_digit: int) -> dict[Fraction, list[tuple[int, ...]]]:
    """Evaluate every word with the given bounds by direct nesting."""
    from itertools import product

    table: dict[Fraction, list[tuple[int, ...]]] = {Fraction(0): [()]}
    for n in range(1, max_len + 1):
        for w in product(range(1, max_digit + 1), repeat=n):
            v = Fraction(0)
            for a in reversed(w):
                v = 1 / (a + v)
            table.setdefault(v, []).append(w)
    return table


def _mobius(digits) -> tuple[int, int, int, int]:
    # x = (P + P1 * y) / (Q + Q1 * y) where y is the tail after `digits`
    P, P1, Q, Q1 = 0, 1, 1, 0
    for a in digits:
        P, P1 = a * P + P1, P
        Q, Q1 = a * Q + Q1, Q
    return P, P1, Q, Q1


class QuadraticValue:
    """The exact value of an eventually periodic stream, as a quadratic root.

    ``poly(r)`` evaluates an integer quadratic vanishing at the stream's value.
    Its other root lies outside the closed fundamental interval of the
    preperiod, so on intervals inside that one (e.g. between convergents of
    depth >= len(preperiod)) a sign change brackets the value.
    """

    def __init__(self, s: Stream):
        P, P1, Q, Q1 = _mobius(s.period)
        # purely periodic tail y: Q1 y^2 + (Q - P1) y - P = 0, y in (0,1)
        self.a, self.b, self.c = Q1, Q - P1, -P
        self.pre = _mobius(s.preperiod)
        disc = self.b**2 - 4 * self.a * self.c
        y = (-self.b + math.sqrt(disc)) / (2 * self.a)
        P, P1, Q, Q1 = self.pre
        self.approx = (P + P1 * y) / (Q + Q1 * y)

    def poly(self, r: Fraction) -> Fraction:
        P, P1, Q, Q1 = self.pre
        u = P - Q * r
        v = Q1 * r - P1
        return self.a * u * u + self.b * u * v + self.c * v * v

    def in_closed(self, lo: Fraction, hi: Fraction) -> bool:
        return self.poly(lo) * self.poly(hi) <= 0


def fib_by_matrix(n: int) -> int:
    """F_n from [[1,1],[1,0]]^n by repeated squaring."""
    def mul(A, B):
        return (
            (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
        )

    R = ((1, 0), (0, 1))
    M = ((1, 1), (1, 0))
    while n:
        if n & 1:
            R = mul(R, M)
        M = mul(M, M)
        n >>= 1
    return R[0][1]


def exact_tail(K: int, terms: int = 60) -> Fraction:
    """sum_{k=K+1}^{K+terms} 2 / F_k^2 with F from the matrix power."""
    return sum((Fraction(2, fib_by_matrix(k) ** 2) for k in range(K + 1, K + terms + 1)), Fraction(0))
