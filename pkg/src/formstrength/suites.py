"""Seeded verification suites shared by the CLI ``verify`` command and the
acceptance tests. Each suite returns a :class:`SuiteReport`; randomized
suites draw from ``numpy.random.default_rng(seed)`` (PCG64).
"""

from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from formstrength import bounds as bd
from formstrength.algebra.fields import parse_field
from formstrength.algebra.linalg import rank_rows
from formstrength.forms import (
    Form,
    GradedSubspace,
    LinearElimination,
    change_vars,
    derivative_space,
    format_form,
    monomials,
    random_form,
)
from formstrength.oracle import (
    Budget,
    BudgetExceeded,
    brute_strength,
    groebner,
    hilbert_function,
    is_regular_sequence,
    koszul_hilbert,
    singular_codim,
)
from formstrength.quadforms import (
    _RankEngine,
    hessian_rows,
    max_rank_search,
    normal_form,
    projective_points,
    quad_rank,
    space_min_rank,
    strength_quadric,
)
from formstrength.subalgebra import construct, verify


@dataclass
class SuiteReport:
    suite: str
    params: dict
    instances: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = dc_field(default_factory=list)
    notes: dict = dc_field(default_factory=dict)

    @property
    def verdict(self):
        if self.failed:
            return "fail"
        if self.skipped and not self.passed:
            return "skipped"
        return "pass"

    def record(self, ok, detail=None):
        self.instances += 1
        if ok is None:
            self.skipped += 1
        elif ok:
            self.passed += 1
        else:
            self.failed += 1
            if detail is not None and len(self.failures) < 20:
                self.failures.append(detail)

    def to_json(self):
        return {
            "check": self.suite,
            "params": self.params,
            "verdict": self.verdict,
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "failures": self.failures,
            "notes": self.notes,
        }


def _low_rank_quadric(K, n, rng, max_terms=3):
    """A quadric of modest rank: a short sum of products of random linear forms."""
    f = Form.zero(K, n, 2)
    for _ in range(int(rng.integers(1, max_terms + 1))):
        f = f + random_form(K, n, 1, rng) * random_form(K, n, 1, rng)
    return f


def _random_quadric(K, n, rng):
    if rng.random() < 0.4:
        return _low_rank_quadric(K, n, rng)
    return random_form(K, n, 2, rng, density=float(rng.uniform(0.2, 1.0)))


def all_quadrics(K, n):
    mons = monomials(n, 2)
    for coeffs in product(list(K.elements()), repeat=len(mons)):
        yield Form(K, n, 2, dict(zip(mons, coeffs)))


# ---------------------------------------------------------------------------
# Quadrics


def suite_qucol(field="gf:2", N=3, ks=(1, 2), budget=None):
    """Exhaustive: brute force over the quadratic extension finds a k-collapse
    iff strength_quadric(F) < k (and iff ceil(r/2) <= k)."""
    K = parse_field(field)
    rep = SuiteReport("qucol", {"field": field, "N": N, "k": list(ks)})
    for F in all_quadrics(K, N):
        r = quad_rank(F)
        s = strength_quadric(F) if F else -1
        for k in ks:
            try:
                w = brute_strength(F, k, 2, budget)
            except BudgetExceeded:
                rep.record(None)
                continue
            ok = (w is not None) == (s < k) == ((r + 1) // 2 <= k)
            if ok and w is not None and F:
                ok = w.expand() == F.to_field(w.field)
            rep.record(ok, {"form": format_form(F), "k": k, "rank": r})
    return rep


def suite_normal_form(field="gf:3", trials=1000, max_nvars=8, seed=0):
    """change_vars(F, A) is canonical and dim DF = r (r - 1 for char 2, r odd)."""
    K = parse_field(field)
    rng = np.random.default_rng(seed)
    rep = SuiteReport("normal-form", {"field": field, "trials": trials, "N<=": max_nvars, "seed": seed})
    extensions = 0
    for _ in range(trials):
        n = int(rng.integers(1, max_nvars + 1))
        F = _random_quadric(K, n, rng)
        r = quad_rank(F)
        nf = normal_form(F)
        extensions += nf.extension == 2
        ok = change_vars(F.to_field(nf.field), nf.A) == nf.canonical and nf.rank == r
        expected_dim = r - 1 if K.char == 2 and r % 2 else r
        ok = ok and derivative_space(F).dim() == expected_dim
        rep.record(ok, {"form": format_form(F), "rank": r})
    rep.notes["needed_extension"] = extensions
    return rep


def suite_rk_pencil(field="gf:7", trials=100, max_nvars=6, seed=0):
    """#{c : rank(cF + G) < rank F} <= rank F over all field elements.

    Outside char 2 (or for even r) also checks part (b): when G is not in
    (DF)R, #{c : rank(cF + G) <= rank F} <= rank F.
    """
    K = parse_field(field)
    rng = np.random.default_rng(seed)
    rep = SuiteReport("rk-pencil", {"field": field, "trials": trials, "N<=": max_nvars, "seed": seed})
    worst = 0
    for _ in range(trials):
        n = int(rng.integers(1, max_nvars + 1))
        F = _random_quadric(K, n, rng)
        while not F:
            F = _random_quadric(K, n, rng)
        G = _random_quadric(K, n, rng)
        r = quad_rank(F)
        ranks = [quad_rank(F.scale(c) + G) for c in K.elements()]
        low = sum(1 for x in ranks if x < r)
        worst = max(worst, low)
        ok = low <= r
        if ok and (K.char != 2 or r % 2 == 0):
            elim = LinearElimination(derivative_space(F).basis(), K, n)
            if elim.reduce(G):
                ok = sum(1 for x in ranks if x <= r) <= r
        rep.record(ok, {"F": format_form(F), "G": format_form(G), "rank": r, "bad": low})
    rep.notes["max_bad_count"] = worst
    return rep


def suite_rank_2k(field="gf:5", trials=100, seed=0):
    """Spaces whose Hessian rows span more than 2k dimensions, k in {1, 2}.

    Either some element has rank > 2k, or V lies in (DF)R for a maximal-rank
    F with dim DF <= 2k (so V is not (2k,0)-safe and the hypothesis fails).
    The literal count of instances with min rank > 2k is reported as a note.
    """
    K = parse_field(field)
    rng = np.random.default_rng(seed)
    rep = SuiteReport("rank-2k", {"field": field, "trials": trials, "seed": seed})
    literal = unsafe = 0
    while rep.instances < trials:
        k = 1 + rep.instances % 2
        n = int(rng.integers(2 * k + 1, 7))
        m = int(rng.integers(1, 4))
        V = GradedSubspace.span([random_form(K, n, 2, rng, density=0.4) for _ in range(m)], K, n)
        if V.is_zero():
            continue
        rows = [row for f in V.basis() for row in hessian_rows(f)]
        if rank_rows(K, rows, n) <= 2 * k:
            continue
        literal += space_min_rank(V).rank > 2 * k
        best = max_rank_search(V)
        if best.rank > 2 * k:
            rep.record(True)
            continue
        ext = _RankEngine(V.basis(), K.extension())
        pts = projective_points(ext.K, len(V.basis()))
        if max(ext.rank(c) for c in pts) > 2 * k:
            rep.record(True)
            continue
        DF = derivative_space(best.form)
        elim = LinearElimination(DF.basis(), K, n)
        ok = DF.dim() <= 2 * k and all(not elim.reduce(f) for f in V.basis())
        unsafe += ok
        rep.record(ok, {"k": k, "basis": [format_form(f) for f in V.basis()]})
    rep.notes["min_rank_above_2k"] = literal
    rep.notes["not_safe"] = unsafe
    return rep


# ---------------------------------------------------------------------------
# The nforms example


def nforms_fixture(K, n, k):
    """F_i = sum_j x_j * y_ij with N = (n + 1)(k + 1) variables."""
    N = (n + 1) * (k + 1)
    out = []
    for i in range(n):
        acc = Form.zero(K, N, 2)
        for j in range(k + 1):
            acc = acc + Form.var(K, N, j) * Form.var(K, N, (k + 1) * (i + 1) + j)
        out.append(acc)
    return out


def nforms_expected_height(n, k):
    """Height of I_n(Y) + (x): (k + 1) - n + 1 + (k + 1)."""
    return 2 * (k + 1) - n + 1


def suite_nforms_example(field="gf:101", n=2, k=1, budget=None):
    K = parse_field(field)
    rep = SuiteReport("nforms-example", {"field": field, "n": n, "k": k})
    forms = nforms_fixture(K, n, k)
    eng = _RankEngine(forms)
    ranks = [eng.rank(c) for c in projective_points(K, n)]
    rep.notes["combinations"] = len(ranks)
    rep.record(all(r == 2 * k + 2 for r in ranks), {"ranks": sorted(set(ranks))})
    try:
        rep.record(is_regular_sequence(forms, budget), "not a regular sequence")
        codim = singular_codim(forms, budget)
        rep.notes["singular_codim"] = codim
        rep.notes["expected"] = nforms_expected_height(n, k)
        rep.record(codim == nforms_expected_height(n, k), {"codim": codim})
    except BudgetExceeded:
        rep.record(None)
    return rep


# ---------------------------------------------------------------------------
# Bounds


def suite_bounds_exact():
    """Hand-evaluated values of the bound functions."""
    cases = [
        ("B2(0,2)", bd.B2(0, 2), 4),
        ("pd_bound_quadrics(3)", bd.pd_bound_quadrics(3), 20),
        ("K3(5)", bd.K3(5), 10),
        ("J3(NotTwoThree,3)", bd.J3("NotTwoThree", 3), 14),
        ("J3(Two,2)", bd.J3("Two", 2), 10),
        ("J3(Three,2)", bd.J3("Three", 2), 6),
        ("A3(2)", bd.A3(2), 14),
        ("K4(1)", bd.K4(1), 196),
        ("K4(2)", bd.K4(2), 147465),
        ("K4(3)", bd.K4(3), 1207959568),
        ("etaA3(1,(0,0,1))", bd.etaA3(1, 0, 0, 1), (0, 2, 14)),
    ]
    rep = SuiteReport("bounds-exact", {})
    for name, got, want in cases:
        rep.record(got == want, {"case": name, "got": got, "want": want})
    return rep


def suite_bounds_audit(n1_max=6, n2_max=6, eta_max=4):
    """Recursion vs displayed closed forms on the grid.

    B: agreement except where the clamp at n1 + n2 is active. eta-B: the
    displayed form exceeds the recursion by exactly ceil(eta/2) for n2 >= 1.
    """
    rep = SuiteReport("bounds-audit", {"n1<=": n1_max, "n2<=": n2_max, "eta<=": eta_max})
    clamp_cases = []
    rows = []
    for n1 in range(n1_max + 1):
        for n2 in range(n2_max + 1):
            a = bd.etaB2_audit(None, n1, n2)
            if a["clamped"]:
                clamp_cases.append([n1, n2])
            ok = a["recursion"] == a["closed_form"] and (a["clamped"] or a["discrepancy"] == 0)
            rep.record(ok, a)
            if n2 == 0:
                # the displayed eta form is stated for n2 >= 1
                continue
            for eta in range(eta_max + 1):
                a = bd.etaB2_audit(eta, n1, n2)
                ok = a["closed_form"] - a["recursion"] == -(-eta // 2)
                rep.record(ok, a)
                rows.append(a)
    rep.notes["clamp_cases"] = clamp_cases
    rep.notes["eta_discrepancies"] = sorted({(r["eta"], r["closed_form"] - r["recursion"]) for r in rows})
    return rep


# ---------------------------------------------------------------------------
# Subalgebras and regular sequences


def suite_subalgebra(field="gf:5", trials=200, max_nvars=8, seed=0, budget=None):
    K = parse_field(field)
    rng = np.random.default_rng(seed)
    rep = SuiteReport("subalgebra", {"field": field, "trials": trials, "N<=": max_nvars, "seed": seed})
    rounds = 0
    while rep.instances < trials:
        n = int(rng.integers(2, max_nvars + 1))
        n1 = int(rng.integers(0, 3))
        n2 = int(rng.integers(1, 4))
        forms = [random_form(K, n, 1, rng) for _ in range(n1)]
        forms += [_random_quadric(K, n, rng) for _ in range(n2)]
        V = GradedSubspace.span(forms, K, n)
        if V.is_zero() or 2 not in V.degrees():
            continue
        eta = [None, 0, 1, 2][rep.instances % 4]
        cert = construct(V, eta)
        rounds += len(cert.iteration_log)
        res = verify(cert, budget=budget)
        if res["failures"]:
            rep.record(False, {"basis": [format_form(f) for f in V.basis()], "eta": eta,
                               "failures": res["failures"]})
        elif "skipped" in res["checks"].values():
            rep.record(None)
        else:
            rep.record(True)
    rep.notes["collapse_rounds"] = rounds
    return rep


def _alpha_strong_spaces(K, count, max_nvars, rng):
    """Spaces V of n <= 3 quadrics with enumerated min rank > 2 alpha(n)."""
    out = []
    while len(out) < count:
        m = int(rng.integers(1, 4))
        n = int(rng.integers(2, max_nvars + 1))
        V = GradedSubspace.span([_random_quadric(K, n, rng) for _ in range(m)], K, n)
        if V.is_zero() or V.dim(2) != m:
            continue
        if space_min_rank(V).rank > 2 * bd.alpha(m):
            out.append(V)
    return out


def suite_regseq(field="gf:5", count=50, max_nvars=7, seed=0, budget=None):
    """alpha(n)-strong spaces are regular sequences."""
    K = parse_field(field)
    rng = np.random.default_rng(seed)
    rep = SuiteReport("regseq", {"field": field, "count": count, "N<=": max_nvars, "seed": seed})
    for V in _alpha_strong_spaces(K, count, max_nvars, rng):
        try:
            ok = is_regular_sequence(V.basis(), budget)
        except BudgetExceeded:
            rep.record(None)
            continue
        rep.record(ok, [format_form(f) for f in V.basis()])
    return rep


def suite_hilbert(field="gf:5", count=50, max_nvars=7, seed=0, t_max=6, budget=None):
    """Regular sequences of h quadrics have the Koszul Hilbert function."""
    K = parse_field(field)
    rng = np.random.default_rng(seed)
    rep = SuiteReport("hilbert", {"field": field, "count": count, "N<=": max_nvars, "seed": seed,
                                  "t_max": t_max})
    for V in _alpha_strong_spaces(K, count, max_nvars, rng):
        forms = V.basis()
        try:
            gb = groebner(forms, budget=budget)
        except BudgetExceeded:
            rep.record(None)
            continue
        if not is_regular_sequence(forms, budget):
            continue
        n = forms[0].nvars
        hf = hilbert_function(gb, t_max, n)
        rep.record(hf == koszul_hilbert(n, len(forms), t_max), {"hf": hf})
    return rep


SUITES = {
    "qucol": suite_qucol,
    "normal-form": suite_normal_form,
    "rk-pencil": suite_rk_pencil,
    "rank-2k": suite_rank_2k,
    "nforms-example": suite_nforms_example,
    "bounds-exact": suite_bounds_exact,
    "bounds-audit": suite_bounds_audit,
    "subalgebra": suite_subalgebra,
    "regseq": suite_regseq,
    "hilbert": suite_hilbert,
}
