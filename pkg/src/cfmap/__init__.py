"""Exact extended continued fractions: digits, values, metrics and probes."""

from .arith import DomainError, fib, fib_binet_check, format_rational, parse_rational, rat
from .evaluator import (
    Convergents,
    Enclosure,
    convergents,
    eval_k,
    evaluate,
    expand,
    gauss_digit,
    gauss_step,
)
from .metric import DistResult, dist, quotient_excess, rho, tail_bound
from .symbolic import (
    INF,
    NOT_IN_SIGMA,
    GeneralWord,
    Stream,
    Word,
    equivalent,
    forget,
    format_seq,
    in_cylinder,
    parse_seq,
    stratum,
    truncate,
)
from .topology import (
    Interval,
    PreimagePair,
    ProbeReport,
    alternate_is_noncanonical,
    continuity_probe,
    endpoint_probe,
    fundamental_interval,
    irrational_probe,
    preimage,
)

__version__ = "0.1.0"
