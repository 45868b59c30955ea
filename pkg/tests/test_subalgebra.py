"""Subalgebra construction and certificate verification."""

import dataclasses

import numpy as np
import pytest

from formstrength import GradedSubspace, parse_field, parse_form
from formstrength.bounds import alpha, alpha_eta, etaB2
from formstrength.forms import LinearElimination, random_form
from formstrength.oracle import is_regular_sequence
from formstrength.quadforms import space_min_rank
from formstrength.subalgebra import construct, verify
from formstrength.suites import nforms_fixture


def span(texts, spec="gf:5", n=None):
    K = parse_field(spec)
    return GradedSubspace.span([parse_form(t, K, n) for t in texts], K, n)


class TestExamples:
    def test_two_products(self):
        cert = construct(span(["x1*x2", "x3*x4"], n=4))
        assert cert.count == 3 and cert.bound == 4
        assert len(cert.linear_gens) == 2 and len(cert.quad_gens) == 1
        assert verify(cert)["ok"]

    def test_single_square(self):
        cert = construct(span(["x1^2"], n=1))
        assert cert.linear_gens == [] and len(cert.quad_gens) == 1
        cert = construct(span(["x1^2"], n=1), eta=1)
        assert len(cert.linear_gens) == 1 and cert.quad_gens == []

    def test_strong_input_is_identity(self):
        K = parse_field("gf:5")
        V = GradedSubspace.span(nforms_fixture(K, 2, 1))
        cert = construct(V)
        assert cert.count == 2 and cert.iteration_log == []
        assert verify(cert)["ok"]

    def test_rational_flag(self):
        cert = construct(span(["x1*x2 + x3*x4", "x1^2"], "q", 4))
        assert "unverified-minimum" in cert.flags
        assert cert.to_json()["rewrites"][0]["rewrite"] == "l1*l1"
        assert verify(cert)["ok"]

    def test_rejects(self):
        with pytest.raises(ValueError):
            construct(span(["x1^3"], n=2))
        with pytest.raises(ValueError):
            construct(span(["x1^2"], n=2), eta=-1)
        with pytest.raises(ValueError):
            construct(GradedSubspace(parse_field("gf:5"), 2))

    def test_json(self):
        data = construct(span(["x1*x2", "x3*x4"], n=4)).to_json()
        assert data["bound_record"] == {"claimed": 4, "actual": 3}
        assert data["iteration_log"][0]["round"] == 1
        assert all(r["rewrite"] for r in data["rewrites"])


class TestVerify:
    def test_tampered_certificate(self):
        cert = construct(span(["x1*x2", "x3*x4"], n=4))
        bad = dataclasses.replace(cert, linear_gens=cert.linear_gens[1:])
        res = verify(bad, checks=("containment",))
        assert not res["ok"] and res["checks"]["containment"] == "fail"
        assert any("x1*x2" in msg for msg in res["failures"])

    def test_count_failure(self):
        cert = dataclasses.replace(construct(span(["x1*x2", "x3*x4"], n=4)), bound=2)
        assert verify(cert, checks=("count",))["checks"]["count"] == "fail"

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            verify(construct(span(["x1^2"], n=1)), checks=("nope",))


class TestRandom:
    @pytest.mark.parametrize("spec", ["gf:2", "gf:3", "gf:5"])
    def test_invariants(self, spec):
        K = parse_field(spec)
        rng = np.random.default_rng(13)
        done = 0
        while done < 25:
            n = int(rng.integers(2, 7))
            forms = [random_form(K, n, 1, rng) for _ in range(int(rng.integers(0, 2)))]
            forms += [random_form(K, n, 2, rng, 0.4) for _ in range(int(rng.integers(1, 4)))]
            V = GradedSubspace.span(forms, K, n)
            if V.is_zero() or 2 not in V.degrees():
                continue
            eta = [None, 0, 1][done % 3]
            cert = construct(V, eta)
            n1 = V.dim(1) if 1 in V.degrees() else 0
            n2 = V.dim(2)
            assert cert.bound == etaB2(eta, n1, n2)
            assert cert.count <= cert.bound
            assert len(cert.iteration_log) == n2 - len(cert.quad_gens)
            assert all(rw is not None for rw in cert.rewrites)
            assert is_regular_sequence(cert.generators)
            if cert.quad_gens:
                # post-condition: reduced quadrics are strong enough
                elim = LinearElimination(cert.linear_gens, K, n)
                W = GradedSubspace.span([elim.reduce(q) for q in cert.quad_gens], K, n)
                m = len(cert.quad_gens)
                t = alpha(m) if eta is None else alpha_eta(eta, m)
                assert W.dim(2) == m
                assert space_min_rank(W).rank > 2 * t
            done += 1
