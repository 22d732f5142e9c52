from fractions import Fraction
from itertools import product
from math import comb

import pytest
import sympy

from hochkit.dsl import parse_operator, parse_polynomial
from hochkit.errors import NotACocycleError, WindowMembershipError
from hochkit.hkr import (
    MultiVectorField,
    Truncation,
    alt,
    cohomology_dims,
    cohomology_report,
    delta_matrix,
    enumerate_basis,
    mvf_to_op,
    op_to_mvf,
    slack_scan,
    split_cocycle,
    wedge,
)
from hochkit.hochschild import cup, hochschild_delta
from hochkit.multiop import ZeroCochain, apply
from hochkit.randgen import random_mvf, random_op, random_poly


def D(src, m=None):
    return parse_operator(src, m)


def P(src, m):
    return parse_polynomial(src, m)


def mvf(m, comps):
    return MultiVectorField(m, len(next(iter(comps))), {k: P(v, m) if isinstance(v, str) else v for k, v in comps.items()})


class TestAlt:
    def test_examples(self):
        half = Fraction(1, 2)
        assert alt(D("D[1,0|0,1]")) == D("D[1,0|0,1] - D[0,1|1,0]").scale(half)
        assert alt(D("D[1|1]")).is_zero()

    def test_idempotent(self, rng):
        for _ in range(20):
            E = random_op(rng, 2, rng.randint(1, 3), 2, 1)
            assert alt(alt(E)) == alt(E)

    def test_antisymmetric_by_evaluation(self, rng):
        E = alt(random_op(rng, 2, 3, 2, 1))
        args = [random_poly(rng, 2, 4, 3) for _ in range(3)]
        a = apply(E, args)
        assert apply(E, [args[1], args[0], args[2]]) == -a
        assert apply(E, [args[0], args[2], args[1]]) == -a


class TestPsiJ:
    def test_psi_examples(self):
        half = Fraction(1, 2)
        assert mvf_to_op(mvf(2, {(1, 2): 1})) == D("D[1,0|0,1] - D[0,1|1,0]").scale(half)
        assert mvf_to_op(mvf(2, {(1,): "x1", (2,): "3"})) == D("x1*D[1,0] + 3*D[0,1]")
        assert mvf_to_op(mvf(2, {(1, 2): "x1"})) == D("x1*D[1,0|0,1] - x1*D[0,1|1,0]").scale(half)

    def test_j_examples(self):
        assert op_to_mvf(D("D[1,0|0,1]")) == mvf(2, {(1, 2): 1})
        assert op_to_mvf(D("D[2]")).is_zero()
        assert op_to_mvf(D("D[1] + x1*D[2]")) == mvf(1, {(1,): 1})
        assert op_to_mvf(ZeroCochain(P("x1", 1))) == MultiVectorField(1, 0, {(): P("x1", 1)})

    def test_j_psi_identity(self, rng):
        for _ in range(30):
            m = rng.randint(1, 3)
            n = rng.randint(1, m)
            eta = random_mvf(rng, m, n, 2)
            assert op_to_mvf(mvf_to_op(eta)) == eta

    def test_psi_j_is_alt_on_first_order(self, rng):
        for _ in range(20):
            E = random_op(rng, 3, rng.randint(1, 3), 1, 2)
            assert mvf_to_op(op_to_mvf(E)) == alt(E)

    def test_j_kills_coboundaries(self, rng):
        for _ in range(30):
            E = random_op(rng, 2, rng.randint(1, 2), 3, 2)
            assert op_to_mvf(hochschild_delta(E)).is_zero()

    def test_antisymmetric_canonicalization(self):
        eta = MultiVectorField(2, 2, {(2, 1): P("x1", 2)})
        assert eta.components() == [((1, 2), P("-x1", 2))]
        assert MultiVectorField(2, 2, {(1, 1): 1}).is_zero()


class TestWedge:
    def test_examples(self):
        d1, d2 = mvf(2, {(1,): 1}), mvf(2, {(2,): 1})
        assert wedge(d1, d2) == mvf(2, {(1, 2): 1})
        assert wedge(d1, d1).is_zero()
        assert wedge(mvf(2, {(1,): "x1"}), mvf(2, {(2,): "x2"})) == mvf(2, {(1, 2): "x1*x2"})
        assert wedge(d2, d1) == mvf(2, {(1, 2): -1})

    def test_cup_to_wedge(self, rng):
        for _ in range(25):
            m = 3
            a, b = rng.choice([(1, 1), (1, 2), (2, 1)])
            eta, theta = random_mvf(rng, m, a, 2), random_mvf(rng, m, b, 2)
            assert op_to_mvf(cup(mvf_to_op(eta), mvf_to_op(theta))) == wedge(eta, theta)


def brute_basis_count(m, n, r, d):
    # enumerate the exponent box directly
    box = list(product(range(max(r, d) + 1), repeat=m))
    slots = [a for a in box if 1 <= sum(a) <= r]
    monos = [g for g in box if sum(g) <= d]
    return len(slots) ** n * len(monos)


class TestBasis:
    def test_examples(self):
        assert enumerate_basis(Truncation(1, 1, 1, 0)) == [D("D[1]")]
        b = enumerate_basis(Truncation(1, 1, 2, 1))
        assert set(b) == {D("D[1]"), D("x1*D[1]"), D("D[2]"), D("x1*D[2]")}
        assert len(enumerate_basis(Truncation(2, 1, 1, 1))) == 6

    @pytest.mark.parametrize("m,n,r,d", [(1, 2, 2, 2), (2, 2, 2, 1), (3, 1, 2, 2), (2, 3, 1, 2), (2, 0, 1, 3)])
    def test_counts(self, m, n, r, d):
        t = Truncation(m, n, r, d)
        expected = brute_basis_count(m, n, r, d) if n else comb(m + d, d)
        assert len(enumerate_basis(t)) == expected
        if n:
            assert all(t.contains(b) for b in enumerate_basis(t))

    def test_deterministic(self):
        t = Truncation(2, 2, 2, 1)
        assert enumerate_basis(t) == enumerate_basis(t)


class TestDeltaMatrix:
    def test_vector_fields_are_cocycles(self):
        for d in range(3):
            assert delta_matrix(Truncation(1, 1, 1, d)).is_zero()

    def test_second_derivative_column(self):
        t = Truncation(1, 1, 2, 0)
        basis = enumerate_basis(t)
        target = enumerate_basis(Truncation(1, 2, 2, 0))
        M = delta_matrix(t)
        col = basis.index(D("D[2]"))
        row = target.index(D("D[1|1]"))
        assert M[row, col] == -2
        assert sum(1 for i in range(M.rows) if M[i, col]) == 1

    @pytest.mark.parametrize("m,n,r,d", [(1, 1, 3, 1), (2, 1, 2, 1), (2, 2, 2, 0), (1, 2, 3, 1)])
    def test_square_zero(self, m, n, r, d):
        A = delta_matrix(Truncation(m, n, r, d))
        B = delta_matrix(Truncation(m, n + 1, r, d))
        assert (B @ A).is_zero()

    def test_matches_symbolic_delta(self):
        t = Truncation(2, 1, 2, 1)
        target = enumerate_basis(Truncation(2, 2, 2, 1))
        M = delta_matrix(t)
        for j, b in enumerate(enumerate_basis(t)):
            rebuilt = sum((target[i].scale(M[i, j]) for i in range(M.rows) if M[i, j]),
                          start=hochschild_delta(b).scale(0))
            assert rebuilt == hochschild_delta(b)

    def test_rank_matches_sympy(self):
        M = delta_matrix(Truncation(2, 1, 3, 1))
        assert M.rank() == sympy.Matrix(M.to_dense()).rank()


class TestCohomology:
    def test_degree_zero(self):
        for m, d in [(1, 2), (2, 3), (3, 1)]:
            assert cohomology_dims(m, 1, d, 0) == [comb(m + d, d)]

    def test_m1(self):
        assert cohomology_dims(1, 2, 2, 3) == [3, 3, 0, 0]

    def test_m2(self):
        # H^1: m * binom(m+d, d) truncated vector fields; H^2: bivectors
        assert cohomology_dims(2, 2, 2, 2) == [6, 12, 6]

    def test_degree_one_is_derivations(self):
        for m, r, d in [(1, 3, 1), (2, 1, 2), (3, 2, 1)]:
            assert cohomology_dims(m, r, d, 1)[1] == m * comb(m + d, d)

    def test_report(self):
        rep = cohomology_report(2, 2, 2, 2)
        assert rep == {
            "window": {"m": 2, "n": 2, "r": 2, "d": 2, "slack": 2},
            "dims": [6, 12, 6],
            "basis_sizes": [6, 30, 150],
            "hkr_prediction": [6, 12, 6],
            "match": True,
        }

    def test_slack_scan_is_flat(self):
        scan = slack_scan(2, 1, 1, 2, slacks=range(3))
        assert all(v == [3, 6, 3] for v in scan.values())

    def test_threads_do_not_change_results(self, monkeypatch):
        monkeypatch.setenv("HOCHKIT_THREADS", "4")
        assert cohomology_dims(2, 2, 2, 2) == [6, 12, 6]


class TestSplit:
    def test_alternating_cocycle(self, rng):
        for _ in range(5):
            eta0 = random_mvf(rng, 2, 2, 2)
            E, eta = split_cocycle(mvf_to_op(eta0))
            assert eta == eta0
            assert hochschild_delta(E).is_zero()

    def test_pure_coboundary(self, rng):
        for _ in range(5):
            E0 = random_op(rng, 2, 1, 2, 2)
            D0 = hochschild_delta(E0)
            if not D0:
                continue
            E, eta = split_cocycle(D0)
            assert eta.is_zero()
            assert hochschild_delta(E) == D0

    def test_mixed(self, rng):
        for _ in range(5):
            E0 = random_op(rng, 2, 1, 3, 2)
            eta0 = random_mvf(rng, 2, 1, 1)
            eta0 = wedge(eta0, random_mvf(rng, 2, 1, 1))
            if not eta0:
                continue
            Dc = hochschild_delta(E0) + mvf_to_op(eta0)
            E, eta = split_cocycle(Dc)
            assert eta == eta0
            assert hochschild_delta(E) == hochschild_delta(E0)
            assert Dc == hochschild_delta(E) + mvf_to_op(eta)

    def test_arity_one(self):
        E, eta = split_cocycle(D("x1*D[1,0] + D[0,1]"))
        assert isinstance(E, ZeroCochain) and E.value.is_zero()
        assert eta == mvf(2, {(1,): "x1", (2,): "1"})

    def test_errors(self):
        with pytest.raises(NotACocycleError):
            split_cocycle(D("D[2|1]"))
        with pytest.raises(WindowMembershipError):
            split_cocycle(D("D[2|1]"), Truncation(1, 2, 1, 0))
        with pytest.raises(WindowMembershipError):
            split_cocycle(D("D[0|1]"))
