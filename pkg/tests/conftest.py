from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from cfmap.symbolic import INF, GeneralWord, Stream, Word

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

digits = st.integers(min_value=1, max_value=50)
ext_digits = st.one_of(digits, st.just(INF))

words = st.lists(digits, max_size=12).map(lambda ds: Word(tuple(ds)))
nonempty_words = st.lists(digits, min_size=1, max_size=12).map(lambda ds: Word(tuple(ds)))
general_words = st.lists(
    st.one_of(digits, digits, digits, st.just(INF)), max_size=12
).map(lambda ds: GeneralWord(tuple(ds)))
streams = st.builds(
    lambda pre, per, budget: Stream(tuple(pre), tuple(per), budget),
    st.lists(st.integers(1, 9), max_size=4),
    st.lists(st.integers(1, 9), min_size=1, max_size=4),
    st.integers(8, 30),
)
finite_seqs = st.one_of(words, general_words)
any_seqs = st.one_of(words, general_words, streams)


@st.composite
def unit_rationals(draw, max_q=10**6, open_=False):
    q = draw(st.integers(2 if open_ else 1, max_q))
    lo, hi = (1, q - 1) if open_ else (0, q)
    p = draw(st.integers(lo, hi))
    return Fraction(p, q)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
