"""Exact rationals and Fibonacci numbers.

Rationals are :class:`fractions.Fraction`, which already stores values in
lowest terms with a positive denominator. This module only adds the
constructors, parsers and printers the rest of the package relies on.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

Rational = Fraction

BINET_MAX_N = 70


class DomainError(ValueError):
    """Raised when an argument falls outside an operation's domain."""


def rat(p: int, q: int = 1) -> Fraction:
    """Return ``p/q`` in lowest terms.

    >>> rat(-3, -6)
    Fraction(1, 2)
    """
    if q == 0:
        raise DomainError("zero denominator")
    return Fraction(p, q)


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings; refuse floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise DomainError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, a bare integer, or a decimal string such as ``0.49``.

    Decimals are read exactly (``0.49`` is 49/100); there is no float detour.
    """
    s = text.strip()
    if not s:
        raise DomainError("empty rational")
    if s.lower() in {"inf", "nan", "+inf", "-inf", "infinity"}:
        raise DomainError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise DomainError("zero denominator") from None
    except ValueError:
        raise DomainError(f"not a rational: {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(x)


@lru_cache(maxsize=None)
def _fib_table(n: int) -> tuple[int, ...]:
    a, b = 0, 1
    out = []
    for _ in range(n + 1):
        out.append(a)
        a, b = b, a + b
    return tuple(out)


def fib(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1, by iteration over Python ints."""
    if n < 0:
        raise DomainError("fib index must be non-negative")
    if n < 512:
        return _fib_table(511)[n]
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def binet(n: int) -> float:
    """Binet's closed form evaluated in double precision."""
    root5 = math.sqrt(5.0)
    phi = (1.0 + root5) / 2.0
    psi = (1.0 - root5) / 2.0
    return (phi**n - psi**n) / root5


def fib_binet_check(n: int) -> bool:
    if n < 0:
        raise DomainError("fib index must be non-negative")
    if n > BINET_MAX_N:
        raise DomainError("depth exceeds float-safe range")
    return fib(n) == round(binet(n))


@lru_cache(maxsize=None)
def inv_fib_sq(k: int) -> Fraction:
    """The weight 1/F_k^2 used by the sequence metric (k >= 1)."""
    return Fraction(1, fib(k) ** 2)
