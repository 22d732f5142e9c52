"""Random generators for property checks (seeded ``random.Random`` instances)."""

from fractions import Fraction

from .exact_poly import Polynomial, multi_indices, monomials_up_to
from .hkr import MultiVectorField
from .multiop import MultiDiffOp
from .sder import CompositionWord, VectorField

_COEFFS = [1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-3, 2), Fraction(2, 3), 5, -4]


def random_scalar(rng):
    return Fraction(rng.choice(_COEFFS))


def random_poly(rng, m, max_deg, max_terms=3, nonzero=True):
    monos = monomials_up_to(m, max_deg)
    while True:
        k = rng.randint(1, max_terms)
        p = Polynomial(m, {rng.choice(monos): random_scalar(rng) for _ in range(k)})
        if p or not nonzero:
            return p


def random_op(rng, m, arity, max_order, max_deg, max_terms=3, constant_free=True):
    """Nonzero random operator; slots have order ``1..max_order`` when ``constant_free``."""
    slots = multi_indices(m, 1 if constant_free else 0, max_order)
    while True:
        k = rng.randint(1, max_terms)
        terms = {}
        for _ in range(k):
            s = tuple(rng.choice(slots) for _ in range(arity))
            terms[s] = random_poly(rng, m, max_deg, 2)
        op = MultiDiffOp(m, arity, terms)
        if op:
            return op


def random_vector_field(rng, m, max_deg):
    while True:
        comps = [
            random_poly(rng, m, max_deg, 2) if rng.random() < 0.7 else Polynomial.zero(m)
            for _ in range(m)
        ]
        if any(comps):
            return VectorField(tuple(comps))


def random_word(rng, m, length, max_deg):
    return CompositionWord(tuple(random_vector_field(rng, m, max_deg) for _ in range(length)))


def random_mvf(rng, m, degree, max_deg, max_terms=3):
    """Nonzero random multivector field (requires ``degree <= m``)."""
    from itertools import combinations

    tuples = list(combinations(range(1, m + 1), degree))
    while True:
        comps = {}
        for _ in range(rng.randint(1, max_terms)):
            comps[rng.choice(tuples)] = random_poly(rng, m, max_deg, 2)
        eta = MultiVectorField(m, degree, comps)
        if eta:
            return eta
