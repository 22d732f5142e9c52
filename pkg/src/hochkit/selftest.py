"""Embedded randomized property suite, run by ``hochkit selftest``."""

import random
from fractions import Fraction

from .hkr import alt, mvf_to_op, op_to_mvf, split_cocycle, wedge
from .hochschild import (
    associativity_defect,
    cup,
    cup_many,
    gerstenhaber,
    hochschild_delta,
    hochschild_delta_via_bracket,
)
from .multiop import MultiDiffOp, mu
from .randgen import random_mvf, random_op, random_vector_field, random_word
from .sder import expand_word, sder_decompose, word_order_check
from .dsl import parse_operator


def _shape(rng):
    m = rng.randint(1, 2)
    return m, rng.randint(1, 2), rng.randint(1, 2), rng.randint(0, 2)


def check_delta_squared(rng):
    m, n, r, d = _shape(rng)
    f = random_op(rng, m, n, r, d)
    return hochschild_delta(hochschild_delta(f)).is_zero()


def check_bracket_route(rng):
    m, n, r, d = _shape(rng)
    f = random_op(rng, m, n, r, d)
    return hochschild_delta(f) == hochschild_delta_via_bracket(f)


def check_derivation_law(rng):
    m, _, r, d = _shape(rng)
    f = random_op(rng, m, rng.randint(1, 2), r, d)
    g = random_op(rng, m, 1, r, d)
    lhs = hochschild_delta(cup(f, g))
    dg = cup(f, hochschild_delta(g))
    rhs = cup(hochschild_delta(f), g) + (dg if f.arity % 2 == 0 else -dg)
    return lhs == rhs


def check_graded_jacobi(rng):
    m = rng.randint(1, 2)
    f, g, h = (random_op(rng, m, rng.randint(1, 2), 2, 1, 2) for _ in range(3))
    p, q = f.arity - 1, g.arity - 1
    lhs = gerstenhaber(f, gerstenhaber(g, h))
    t = gerstenhaber(g, gerstenhaber(f, h))
    rhs = gerstenhaber(gerstenhaber(f, g), h) + (-t if (p * q) % 2 else t)
    return lhs == rhs


def check_associativity_defect(rng):
    m = rng.randint(1, 2)
    nu = random_op(rng, m, 2, 2, 1, 3, constant_free=False) + mu(m)
    a, b = associativity_defect(nu)
    return a == b


def check_multiderivation_cocycle(rng):
    m = rng.randint(1, 3)
    xs = [random_vector_field(rng, m, 2).to_op() for _ in range(rng.randint(1, 3))]
    return hochschild_delta(cup_many(xs)).is_zero()


def check_word_order(rng):
    m = rng.randint(1, 2)
    return word_order_check(random_word(rng, m, rng.randint(1, 3), 2))


def check_sder_round_trip(rng):
    m, _, r, d = _shape(rng)
    D = random_op(rng, m, 1, r, d)
    return sder_decompose(D, r).expand(m) == D


def check_alt_kills_coboundaries(rng):
    m, n, r, d = _shape(rng)
    return alt(hochschild_delta(random_op(rng, m, n, r, d))).is_zero()


def check_cup_to_wedge(rng):
    m = rng.randint(2, 3)
    a = rng.randint(1, 2)
    b = rng.randint(1, min(2, m - a)) if m - a >= 1 else 0
    if b == 0:
        a, b = 1, 1
    eta, theta = random_mvf(rng, m, a, 2), random_mvf(rng, m, b, 2)
    return op_to_mvf(cup(mvf_to_op(eta), mvf_to_op(theta))) == wedge(eta, theta)


def check_split(rng):
    m = 2
    E0 = random_op(rng, m, 1, 2, 1)
    eta0 = random_mvf(rng, m, 2, 1)
    D = hochschild_delta(E0) + mvf_to_op(eta0)
    E, eta = split_cocycle(D)
    return eta == eta0 and hochschild_delta(E) == hochschild_delta(E0)


def check_print_parse(rng):
    m, n, r, d = _shape(rng)
    D = random_op(rng, m, n, r + 1, d, constant_free=False)
    return parse_operator(str(D), m) == D


CHECKS = [
    ("delta_squared_zero", check_delta_squared),
    ("delta_bracket_route", check_bracket_route),
    ("delta_derivation_law", check_derivation_law),
    ("graded_jacobi", check_graded_jacobi),
    ("associativity_defect", check_associativity_defect),
    ("multiderivations_are_cocycles", check_multiderivation_cocycle),
    ("word_order_filtration", check_word_order),
    ("sder_decompose_round_trip", check_sder_round_trip),
    ("alt_of_coboundary_zero", check_alt_kills_coboundaries),
    ("cup_to_wedge", check_cup_to_wedge),
    ("cocycle_split", check_split),
    ("print_parse_round_trip", check_print_parse),
]


def run_selftest(count=10, seed=0):
    """Run each check ``count`` times; returns ``[(name, passed, failed)]``."""
    rng = random.Random(seed)
    results = []
    for name, fn in CHECKS:
        ok = bad = 0
        for _ in range(count):
            try:
                good = fn(rng)
            except Exception:  # a crash counts as a failed trial
                good = False
            if good:
                ok += 1
            else:
                bad += 1
        results.append((name, ok, bad))
    return results
