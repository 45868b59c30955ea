"""Groebner oracle and brute-force strength."""

import numpy as np
import pytest
import sympy

from formstrength import parse_field, parse_form
from formstrength.forms import Form, random_form
from formstrength.oracle import (
    Budget,
    BudgetExceeded,
    MonomialOrder,
    brute_strength,
    groebner,
    hilbert_function,
    is_regular_sequence,
    koszul_hilbert,
    krull_dim,
    singular_codim,
)
from formstrength.quadforms import jrank_quadric, quad_rank


def P(text, spec="gf:5", n=3):
    return parse_form(text, parse_field(spec), n)


def sympy_basis(forms, p):
    n = forms[0].nvars
    xs = sympy.symbols(f"x1:{n + 1}")
    polys = [sympy.Poly(sum(int(c) * sympy.prod(x ** e for x, e in zip(xs, m))
                            for m, c in f._terms.items()), *xs, modulus=p) for f in forms]
    G = sympy.groebner(polys, *xs, modulus=p, order="grevlex")
    out = []
    for g in G.polys:
        terms = {m: int(c) % p for m, c in g.terms()}
        lead = terms[max(terms, key=lambda m: (sum(m), tuple(-e for e in reversed(m))))]
        inv = pow(lead, -1, p)
        out.append({m: c * inv % p for m, c in terms.items() if c})
    return out


def monic(f):
    K = f.field
    lm = max(f.support(), key=MonomialOrder().key)
    inv = K.inv(f.coeff(lm))
    return {m: int(K.mul(c, inv)) for m, c in f._terms.items()}


class TestGroebner:
    def test_example(self):
        gb = groebner([P("x1*x2 + x3^2"), P("x1^2 - x2*x3")])
        assert len(gb) == 3
        assert krull_dim(gb) == 1
        assert hilbert_function(gb, 5) == [1, 3, 4, 4, 4, 4]

    def test_sympy_cross_check(self):
        rng = np.random.default_rng(17)
        K = parse_field("gf:5")
        for _ in range(15):
            n = int(rng.integers(2, 5))
            forms = [random_form(K, n, 2, rng, 0.5) for _ in range(int(rng.integers(1, 4)))]
            forms = [f for f in forms if f]
            if not forms:
                continue
            ours = sorted(map(monic, groebner(forms)), key=lambda d: sorted(d.items()))
            theirs = sorted(sympy_basis(forms, 5), key=lambda d: sorted(d.items()))
            assert ours == theirs

    def test_idempotent(self):
        gb = groebner([P("x1*x2 + x3^2"), P("x1^2 - x2*x3")])
        assert groebner(list(gb)) == gb

    def test_membership(self):
        F, G = P("x1*x2 + x3^2"), P("x1^2 - x2*x3")
        gb = groebner([F, G])
        H = P("x1", n=3) * F + P("x3", n=3) * G
        assert gb.contains(H)
        assert not gb.contains(P("x1^3"))

    def test_lex(self):
        gb = groebner([P("x1 - x2", n=2), P("x2^2", n=2)], MonomialOrder("lex"))
        assert set(gb.leading_monomials()) == {(1, 0), (0, 2)}

    def test_budget(self):
        forms = [P("x1*x2 + x3^2"), P("x1^2 - x2*x3")]
        with pytest.raises(BudgetExceeded):
            groebner(forms, budget=Budget(max_degree=2))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            groebner([])


class TestDimension:
    def test_krull(self):
        assert krull_dim(groebner([P("x1"), P("x2")])) == 1
        assert krull_dim(groebner([Form.zero(parse_field("gf:5"), 3, 2)])) == 3
        with pytest.raises(ValueError):
            krull_dim(groebner([Form.constant(parse_field("gf:5"), 2, 1)]))

    def test_regular_sequence(self):
        assert is_regular_sequence([P("x1^2"), P("x2^2")])
        assert not is_regular_sequence([P("x1*x2"), P("x1*x3")])
        assert not is_regular_sequence([P("x1^2"), Form.zero(parse_field("gf:5"), 3, 2)])
        assert is_regular_sequence([])

    def test_hilbert(self):
        gb = groebner([P("x1^2"), P("x2^2")])
        assert hilbert_function(gb, 4) == koszul_hilbert(3, 2, 4)
        assert koszul_hilbert(2, 0, 3) == [1, 2, 3, 4]
        assert koszul_hilbert(2, 2, 3) == [1, 2, 1, 0]

    def test_singular_codim(self):
        assert singular_codim([P("x1*x2 + x3*x4", n=4)]) == 4
        assert singular_codim([P("x1*x2", n=4)]) == 2
        with pytest.raises(ValueError):
            singular_codim([Form.zero(parse_field("gf:5"), 2, 2)])

    def test_jrank_agrees(self):
        rng = np.random.default_rng(23)
        for spec in ("gf:3", "gf:5", "gf:7"):
            K = parse_field(spec)
            for _ in range(15):
                n = int(rng.integers(2, 6))
                F = random_form(K, n, 2, rng, 0.4)
                if F:
                    assert singular_codim([F]) == jrank_quadric(F)


class TestBruteStrength:
    def test_examples(self):
        w = brute_strength(P("x1*x2", "gf:2", 2), 1, m=1)
        assert w is not None and w.expand() == P("x1*x2", "gf:2", 2)
        assert brute_strength(P("x1*x2 + x3*x4", "gf:2^2", 4), 1, m=1) is None
        F = P("x1^2 + x2^2", "gf:3", 2)
        assert brute_strength(F, 1, m=1) is None
        w = brute_strength(F, 1)
        assert w.expand() == F.to_field(w.field)

    def test_cubic(self):
        F = P("x1*x2*x3 + x1^3", "gf:3", 3)
        w = brute_strength(F, 1, m=1)
        assert w.expand() == F
        assert brute_strength(P("x1^3 + x2^3 + x3^3 - x1*x2*x3", "gf:7", 3), 1, m=1) is None

    def test_agrees_with_rank(self):
        K = parse_field("gf:3")
        rng = np.random.default_rng(29)
        for _ in range(30):
            F = random_form(K, 3, 2, rng, 0.6)
            if not F:
                continue
            r = quad_rank(F)
            for k in (1, 2):
                found = brute_strength(F, k, m=2) is not None
                assert found == (r <= 2 * k)

    def test_rejects(self):
        with pytest.raises(ValueError):
            brute_strength(P("x1*x2", "q", 2), 1)
        with pytest.raises(ValueError):
            brute_strength(P("x1*x2*x3", "gf:3", 3), 2)
        with pytest.raises(BudgetExceeded):
            brute_strength(P("x1*x2", "gf:7", 6), 1, budget=Budget(max_candidates=10))
