"""Exact fields and linear algebra."""

from fractions import Fraction

import numpy as np
import pytest

from formstrength.algebra import (
    BinaryField,
    Matrix,
    PrimeField,
    QuadraticExtension,
    RationalField,
    artin_schreier_solve,
    det,
    field_from_order,
    inverse,
    kernel_basis,
    parse_field,
    pfaffian,
    rank,
    rref,
    solve,
)
from formstrength.algebra.linalg import random_alternating, random_invertible, random_matrix

FIELDS = ["gf:2", "gf:3", "gf:5", "gf:7", "gf:2^2", "gf:2^3", "q"]


class TestParseField:
    def test_specs(self):
        assert isinstance(parse_field("q"), RationalField)
        assert isinstance(parse_field("gf:7"), PrimeField)
        assert isinstance(parse_field("gf:2^4"), BinaryField)
        assert isinstance(parse_field("gf:2^1"), PrimeField)

    def test_rejects(self):
        for bad in ("gf:4", "gf:1", "gf:2^17", "r", "gf:", "gf:2^0"):
            with pytest.raises(ValueError):
                parse_field(bad)

    def test_large_prime(self):
        K = parse_field("gf:2147483647")
        assert K.mul(K.from_int(-1), K.from_int(-1)) == 1

    def test_from_order(self):
        assert field_from_order(8) == parse_field("gf:2^3")
        assert field_from_order(5) == parse_field("gf:5")

    def test_all_binary_moduli(self):
        for e in range(2, 17):
            K = parse_field(f"gf:2^{e}")
            assert K.order == 2 ** e
            assert K.mul(5 % K.order, K.inv(5 % K.order)) == K.one


class TestFieldAxioms:
    @pytest.mark.parametrize("spec", FIELDS)
    def test_random_axioms(self, spec):
        K = parse_field(spec)
        rng = np.random.default_rng(1)
        for _ in range(200):
            a, b, c = K.random(rng), K.random(rng), K.random(rng)
            assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
            assert K.add(a, K.neg(a)) == K.zero
            if a != K.zero:
                assert K.mul(a, K.inv(a)) == K.one

    def test_extension_axioms(self):
        for spec in ("gf:3", "gf:2", "gf:2^2"):
            E = parse_field(spec).extension()
            assert E.order == parse_field(spec).order ** 2
            for x in E.elements():
                if x != E.zero:
                    assert E.mul(x, E.inv(x)) == E.one

    def test_rational_exact(self):
        Q = parse_field("q")
        assert Q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
        assert Q.parse("-7/21") == Fraction(-1, 3)


class TestSquareRoots:
    def test_binary_sqrt_exhaustive(self):
        for e in (2, 3, 4):
            K = BinaryField(e)
            for x in K.elements():
                assert K.mul(K.sqrt(x), K.sqrt(x)) == x

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17])
    def test_prime_sqrt(self, p):
        K = PrimeField(p)
        squares = {K.mul(x, x) for x in K.elements()}
        for a in K.elements():
            s = K.sqrt(a)
            assert (s is not None) == (a in squares)
            if s is not None:
                assert K.mul(s, s) == a

    def test_extension_contains_base_roots(self):
        for spec in ("gf:3", "gf:5", "gf:7", "gf:2"):
            K = parse_field(spec)
            E = K.extension()
            for a in K.elements():
                s = E.sqrt(E.embed(a))
                assert s is not None and E.mul(s, s) == E.embed(a)

    def test_rational_sqrt(self):
        Q = parse_field("q")
        assert Q.sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert Q.sqrt(Fraction(2)) is None
        E = Q.extension(Fraction(-1))
        i = E.sqrt(E.embed(Fraction(-1)))
        assert E.mul(i, i) == E.embed(Fraction(-1))

    def test_artin_schreier(self):
        for e in (1, 2, 3):
            K = parse_field(f"gf:2^{e}")
            for c in K.elements():
                s = artin_schreier_solve(K, c)
                if s is None:
                    assert K.trace(c) == 1
                else:
                    assert K.add(K.mul(s, s), s) == c


class TestLinearAlgebra:
    def test_examples(self):
        Q = parse_field("q")
        assert rank(Matrix.identity(Q, 3)) == 3
        assert rank(Matrix.zeros(Q, 2, 3)) == 0
        assert rank(Matrix.from_ints(Q, [[1, 2], [2, 4]])) == 1
        assert kernel_basis(Matrix.identity(Q, 3)) == []
        assert len(kernel_basis(Matrix.zeros(Q, 2, 2))) == 2
        GF2 = parse_field("gf:2")
        assert kernel_basis(Matrix.from_ints(GF2, [[1, 1]])) == [[1, 1]]

    @pytest.mark.parametrize("spec", ["gf:2", "gf:5", "gf:2^3", "q"])
    def test_rank_invariance(self, spec):
        K = parse_field(spec)
        rng = np.random.default_rng(7)
        for _ in range(30):
            m, n = int(rng.integers(1, 6)), int(rng.integers(1, 6))
            M = random_matrix(K, m, n, rng)
            P, Qm = random_invertible(K, m, rng), random_invertible(K, n, rng)
            assert rank(M) == rank(M.T)
            assert rank(P * M * Qm) == rank(M)
            for v in kernel_basis(M):
                assert all(x == K.zero for x in M.apply(v))
            assert len(kernel_basis(M)) == n - rank(M)

    def test_inverse_and_solve(self):
        K = parse_field("gf:7")
        rng = np.random.default_rng(3)
        for _ in range(20):
            A = random_invertible(K, 4, rng)
            assert A * inverse(A) == Matrix.identity(K, 4)
            b = [K.random(rng) for _ in range(4)]
            assert A.apply(solve(A, b)) == b

    def test_singular_inverse(self):
        K = parse_field("q")
        with pytest.raises(ValueError):
            inverse(Matrix.from_ints(K, [[1, 2], [2, 4]]))

    def test_rref_canonical(self):
        K = parse_field("gf:5")
        A = Matrix.from_ints(K, [[0, 2, 4], [1, 1, 1], [1, 3, 0]])
        R = rref(A)
        assert rref(Matrix.from_ints(K, [[1, 3, 0], [0, 2, 4], [1, 1, 1]])) == R


class TestPfaffian:
    def test_examples(self):
        K = parse_field("gf:7")
        a = 3
        assert pfaffian(Matrix(K, [[0, a], [K.neg(a), 0]])) == a
        hyp = Matrix.from_ints(K, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        assert pfaffian(hyp) == 1

    def test_square_is_det(self):
        K = parse_field("gf:7")
        rng = np.random.default_rng(11)
        for _ in range(30):
            A = random_alternating(K, 4, rng)
            pf = pfaffian(A)
            assert K.mul(pf, pf) == det(A)

    @pytest.mark.parametrize("spec", ["gf:5", "gf:2", "gf:2^2"])
    def test_congruence(self, spec):
        K = parse_field(spec)
        rng = np.random.default_rng(5)
        for _ in range(20):
            A = random_alternating(K, 6, rng)
            B = random_matrix(K, 6, 6, rng)
            assert pfaffian(B.T * A * B) == K.mul(det(B), pfaffian(A))

    def test_rejects(self):
        K = parse_field("gf:5")
        with pytest.raises(ValueError):
            pfaffian(Matrix.zeros(K, 3, 3))
        with pytest.raises(ValueError):
            pfaffian(Matrix.from_ints(K, [[0, 1], [1, 0]]))
