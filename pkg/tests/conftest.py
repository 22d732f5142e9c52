import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hochkit.exact_poly import Polynomial
from hochkit.multiop import MultiDiffOp

small_fracs = st.builds(
    Fraction, st.integers(-5, 5), st.integers(1, 4)
)


@st.composite
def polys(draw, m, max_deg=3, max_terms=4):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg) for _ in range(m)]).filter(
                lambda e: sum(e) <= max_deg
            ),
            small_fracs,
            max_size=max_terms,
        )
    )
    return Polynomial(m, terms)


@st.composite
def multi_index(draw, m, lo=0, hi=3):
    e = draw(st.tuples(*[st.integers(0, hi) for _ in range(m)]).filter(lambda e: lo <= sum(e) <= hi))
    return e


@st.composite
def ops(draw, m, arity, max_order=2, max_deg=2, constant_free=True, max_terms=3):
    lo = 1 if constant_free else 0
    n_terms = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n_terms):
        slots = tuple(draw(multi_index(m, lo, max_order)) for _ in range(arity))
        terms[slots] = draw(polys(m, max_deg, 2))
    return MultiDiffOp(m, arity, terms)


@pytest.fixture
def rng():
    return random.Random(12345)


def x(m, i):
    return Polynomial.variable(m, i)


def evaluation_args(rng, m, k, max_deg=4):
    """Random dense-ish polynomial arguments used to compare operators by evaluation."""
    from hochkit.randgen import random_poly

    return [random_poly(rng, m, max_deg, 4) for _ in range(k)]
