"""Bound functions: frozen values and recursion audits."""

import pytest

from formstrength import bounds as bd
from formstrength.bounds import CharClass

ETAS = range(0, 7)


class TestDegreeTwo:
    def test_alpha(self):
        assert bd.alpha(3) == 2
        assert bd.alpha_eta(2, 1) == 2
        assert bd.alpha_eta(1, 4) == 4
        with pytest.raises(ValueError):
            bd.alpha(0)
        with pytest.raises(ValueError):
            bd.alpha_eta(1, 0)

    def test_A2(self):
        assert bd.A2(0, 3) == 2
        assert bd.etaA2(1, 2, 2) == 4
        assert bd.A2(5, 1) == 5
        with pytest.raises(ValueError):
            bd.A2(1, 0)

    def test_B2_values(self):
        assert bd.B2(0, 2) == 4
        assert bd.etaB2_closed_form(None, 0, 2) == 4
        assert bd.B2(0, 1) == 1
        assert bd.etaB2_recursion(None, 0, 1) == 0
        assert bd.etaB2_closed_form(None, 0, 1) == 0
        assert bd.etaB2(1, 0, 1) == 2
        assert bd.etaB2_closed_form(1, 0, 1) == 3

    def test_pd_bound(self):
        assert [bd.pd_bound_quadrics(n) for n in (1, 2, 3, 4, 5)] == [1, 4, 20, 68, 196]
        for n in range(2, 12):
            assert bd.pd_bound_quadrics(n) == bd.B2(0, n)

    def test_clamp(self):
        for eta in [None, *ETAS]:
            for n1 in range(8):
                for n2 in range(8):
                    assert bd.etaB2(eta, n1, n2) >= n1 + n2

    def test_partial_sums(self):
        for eta in [None, *ETAS]:
            for n1 in range(5):
                for n2 in range(7):
                    for h in range(n2 + 1):
                        first, rest = bd.etaB2_partial_sum(eta, n1, n2, h)
                        assert bd.etaB2_recursion(eta, first, rest) == bd.etaB2_recursion(eta, n1, n2)

    def test_resummed_matches_recursion(self):
        for eta in [None, *ETAS]:
            for n1 in range(8):
                for n2 in range(14):
                    assert bd.etaB2_resummed(eta, n1, n2) == bd.etaB2_recursion(eta, n1, n2)

    def test_discrepancy_is_ceil_half_eta(self):
        for eta in ETAS:
            for n1 in range(7):
                for n2 in range(1, 7):
                    a = bd.etaB2_audit(eta, n1, n2)
                    assert a["closed_form"] - a["recursion"] == -(-eta // 2)

    def test_audit_record(self):
        a = bd.etaB2_audit(None, 0, 1)
        assert a["clamped"] and a["value"] == 1 and a["discrepancy"] == -1


class TestKeyFunctions:
    def test_K3(self):
        assert bd.K3(5) == 10
        assert bd.K3(1) == 2
        assert all(bd.K3(k) < bd.K3(k + 1) for k in range(20))
        with pytest.raises(ValueError):
            bd.K3(1, CharClass.Two)

    def test_K4(self):
        assert [bd.K4(k) for k in (1, 2, 3)] == [196, 147465, 1207959568]
        assert bd.K4(40).bit_length() > 3000
        with pytest.raises(ValueError):
            bd.K4(1, "Three")
        with pytest.raises(ValueError):
            bd.K4(0)

    def test_J3(self):
        assert bd.J3(CharClass.NotTwoThree, 3) == 14
        assert bd.J3(CharClass.Two, 2) == 10
        assert bd.J3(CharClass.Three, 2) == 6

    def test_J_from_K(self):
        assert bd.J_from_K(3, 3) == 14
        for k in range(1, 21):
            assert bd.J_from_K(3, k) == bd.J3("NotTwoThree", k)
        with pytest.raises(ValueError):
            bd.J_from_K(4, 1)
        values = [bd.J_from_K(4, k) for k in range(2, 8)]
        assert values == sorted(values)

    def test_A3(self):
        assert bd.A3(2) == 14
        assert bd.A3(1) == 0
        assert bd.A3(3) == 44
        for n in range(1, 20):
            assert bd.A3(n) == 2 * (4 * n - 1) * (n - 1)

    def test_J2(self):
        assert [bd.J2(k) for k in range(6)] == [0, 0, 1, 1, 2, 2]

    def test_charclass(self):
        assert CharClass.of(2) is CharClass.Two
        assert CharClass.of(3) is CharClass.Three
        assert CharClass.of(0) is CharClass.NotTwoThree
        assert CharClass.of("two") is CharClass.Two


class TestVectorFunctions:
    def test_etaA3(self):
        assert bd.etaA3(1, 0, 0, 1) == (0, 2, 14)
        assert bd.etaA3(1, 1, 1, 1) == (0, 4, 66)
        assert bd.etaA3(2, 0, 1, 0)[1] == 3
        with pytest.raises(ValueError):
            bd.etaA3(1, 2, 0, 0)

    def test_SJ(self):
        assert bd.etaA_SJ(1, (0, 0, 1, 0))[2] == 14
        assert bd.etaA_SJ(1, (0, 0, 1)) == (0, 2, 14)
        with pytest.raises(ValueError):
            bd.etaA_SJ(1, (0, 0, 1), "Two")
        with pytest.raises(ValueError):
            bd.etaA_SJ(1, (0, 0, 0, 0, 1))

    def test_SJ_degree_four_corollary(self):
        for n in range(1, 4):
            for eta in range(3):
                b = 2 * n + eta
                expected = bd.K4(b * 2 * (8 * n + 4 * eta - 1) * (2 * n + eta - 1)) + b - 1
                assert bd.etaA_SJ(eta, (0, 0, 0, n))[3] == expected

    def test_SJ_degree_two_dominates_etaA2(self):
        # the general construction is one above the quadric-only bound
        for n2 in range(1, 9):
            for eta in range(5):
                sj = bd.etaA_SJ(eta, (0, n2))[1]
                assert sj >= bd.etaA2(eta, 0, n2)
                if n2 >= 2:
                    assert sj == bd.etaA2(eta, 0, n2) + 1

    def test_SJrank(self):
        assert bd.etaA_SJrank(1, (0, 0, 1), "Two")[2] == 28
        assert bd.etaA_SJrank(1, (0, 0, 2), "Three")[2] == 45
        base = bd.etaA_SJrank(2, (0, 1, 1), "Two")
        shifted = bd.etaA_SJrank(2, (3, 1, 1), "Two")
        assert all(s - b == 3 for s, b in zip(shifted[1:], base[1:]))
        with pytest.raises(ValueError):
            bd.etaA_SJrank(1, (0, 0, 0, 1), "Two")

    def test_ascending(self):
        for eta in range(4):
            for n1 in range(3):
                for n2 in range(3):
                    for n3 in range(1, 3):
                        v = bd.etaA3(eta, n1, n2, n3)
                        for w in (bd.etaA3(eta + 1, n1, n2, n3), bd.etaA3(eta, n1 + 1, n2, n3),
                                  bd.etaA3(eta, n1, n2, n3 + 1)):
                            assert all(a <= b for a, b in zip(v, w))


class TestGeneralB:
    def test_linear(self):
        assert bd.etaB_general(0, (5, 0, 0, 0)) == 5

    def test_degree_two_modes(self):
        for eta in [None, 0, 1, 2]:
            for n1 in range(4):
                for n2 in range(4):
                    d = bd.etaB_general(eta, (n1, n2), "dominating")
                    e = bd.etaB_general(eta, (n1, n2), "exact")
                    assert d == e == bd.etaB2(eta, n1, n2)

    def test_cubic(self):
        assert bd.etaB_general(1, (0, 0, 1)) == bd.etaB2(1, 28, 28)

    def test_exact_below_dominating(self):
        for eta in (0, 1):
            e = bd.etaB_general(eta, (0, 0, 1), "exact")
            d = bd.etaB_general(eta, (0, 0, 1), "dominating")
            assert e <= d

    def test_exact_cap(self):
        with pytest.raises(ValueError):
            bd.etaB_general(3, (0, 0, 2), "exact", cap=8)

    def test_too_large(self):
        with pytest.raises(bd.BoundTooLarge):
            bd.etaB_general(1, (0, 0, 3))

    def test_needs_eta_above_degree_two(self):
        with pytest.raises(ValueError):
            bd.etaB_general(None, (0, 0, 1))

    def test_C(self):
        assert bd.C_bound(1, 1, 1) == 1
        assert bd.C_bound(1, 2, 2, 1) == bd.etaB2(1, 4, 4)
        for r in range(1, 3):
            for s in range(1, 3):
                for d in (1, 2):
                    c = bd.C_bound(r, s, d, 0)
                    assert c <= bd.C_bound(r + 1, s, d, 0)
                    assert c <= bd.C_bound(r, s + 1, d, 0)
                    if d == 1:
                        assert c <= bd.C_bound(r, s, 2, 0)


class TestMvclpse:
    def test_values(self):
        assert bd.mvclpse_params(2, 1, 3)[0] == 27
        assert bd.mvclpse_params(3, 5, 0) == (5, 0)
        for m in range(6):
            assert bd.mvclpse_params(3, 7, m)[0] == 4 ** m * 7


class TestAscendingGrid:
    def test_degree_two(self):
        for eta in ETAS:
            for n in range(1, 10):
                assert bd.alpha_eta(eta, n) <= bd.alpha_eta(eta, n + 1)
                assert bd.alpha_eta(eta, n) <= bd.alpha_eta(eta + 1, n)
            for n1 in range(6):
                for n2 in range(6):
                    v = bd.etaB2(eta, n1, n2)
                    assert v <= bd.etaB2(eta, n1 + 1, n2)
                    assert v <= bd.etaB2(eta, n1, n2 + 1)
                    assert v <= bd.etaB2(eta + 1, n1, n2)

    def test_key_functions(self):
        for cc in CharClass:
            assert all(bd.J3(cc, k) <= bd.J3(cc, k + 1) for k in range(10))
        assert all(bd.K4(k) < bd.K4(k + 1) for k in range(1, 10))
