"""Subalgebras generated by regular sequences containing a space of linear
forms and quadrics.

The loop: reduce the quadrics modulo the pool of linear generators, find a
minimum-rank combination, and either stop (all reduced combinations are
strong enough) or collapse it, absorbing the linear forms of the collapse
into the pool.
"""

from dataclasses import dataclass, field as dc_field
from typing import Optional

from formstrength.algebra.linalg import kernel_rows, rref_rows
from formstrength.bounds import alpha, alpha_eta, etaB2
from formstrength.forms import (
    Form,
    GradedSubspace,
    LinearElimination,
    format_form,
    membership_in_subring,
    monomials,
)
from formstrength.quadforms import (
    _min_rank_combination,
    _min_rank_rational_heuristic,
    closure_min_rank,
    collapse_witness,
    combine,
    minimal_variable_space,
    quad_rank,
)


@dataclass
class SubalgebraCertificate:
    field: object
    nvars: int
    eta: Optional[int]
    inputs: list
    linear_gens: list
    quad_gens: list
    rewrites: list
    iteration_log: list
    extension: int
    bound: int
    flags: list = dc_field(default_factory=list)

    @property
    def generators(self):
        return list(self.linear_gens) + list(self.quad_gens)

    @property
    def count(self):
        return len(self.linear_gens) + len(self.quad_gens)

    @property
    def bound_record(self):
        return {"claimed": self.bound, "actual": self.count}

    def to_json(self):
        return {
            "field": self.field.spec,
            "nvars": self.nvars,
            "eta": self.eta,
            "extension": self.extension,
            "linear_gens": [format_form(f) for f in self.linear_gens],
            "quad_gens": [format_form(f) for f in self.quad_gens],
            "rewrites": [
                {"form": format_form(f), "rewrite": rw.to_text(self._names()) if rw else None}
                for f, rw in zip(self.inputs, self.rewrites)
            ],
            "iteration_log": self.iteration_log,
            "bound_record": self.bound_record,
            "flags": list(self.flags),
        }

    def _names(self):
        return [f"l{i + 1}" for i in range(len(self.linear_gens))] + [
            f"q{i + 1}" for i in range(len(self.quad_gens))
        ]


def _threshold(eta, m):
    return alpha(m) if eta is None else alpha_eta(eta, m)


def _independent(forms, K, n):
    """Echelon basis of the span of linear forms."""
    rows = [f.linear_coeffs() for f in forms if f]
    if not rows:
        return []
    R, _ = rref_rows(K, rows, n)
    return [Form.linear(K, r) for r in R]


def _reduced_dependency(reduced, K, n):
    """Coefficients of a nontrivial combination of ``reduced`` that vanishes, or None."""
    basis = monomials(n, 2)
    cols = [f.vector(basis) for f in reduced]
    rows = [[col[r] for col in cols] for r in range(len(basis))]
    ker = kernel_rows(K, rows, len(reduced))
    return tuple(ker[0]) if ker else None


def construct(V, eta=None, minimum="enumerate"):
    """Run the collapse loop on ``V`` (degrees <= 2); returns a certificate.

    ``minimum`` picks the minimum-rank search used for the stopping test:
    ``enumerate`` scans base-field combinations; ``closure`` additionally
    confirms a stop against the exact closure minimum (characteristic != 2).
    """
    if not isinstance(V, GradedSubspace):
        V = GradedSubspace.span(list(V))
    if V.is_zero():
        raise ValueError("empty space")
    if any(d not in (1, 2) for d in V.degrees()):
        raise ValueError("subalgebra construction needs forms of degree 1 and 2")
    if eta is not None and eta < 0:
        raise ValueError("eta must be nonnegative")
    K, n = V.field, V.nvars
    linear = list(V.basis(1)) if 1 in V.degrees() else []
    quads = list(V.basis(2)) if 2 in V.degrees() else []
    n1, n2 = len(linear), len(quads)
    flags = []
    extension = 1
    log = []
    pool = list(linear)

    while quads:
        elim = LinearElimination(pool, K, n)
        reduced = [elim.reduce(q) for q in quads]
        k_star = _threshold(eta, len(quads))
        dep = _reduced_dependency(reduced, K, n)
        if dep is not None:
            r, coeffs = 0, dep
        elif K.is_finite:
            r, coeffs, _ = _min_rank_combination(reduced)
        else:
            res = _min_rank_rational_heuristic(reduced)
            r, coeffs = res.rank, res.coeffs
        if r > 2 * k_star:
            if not K.is_finite:
                flags.append("unverified-minimum")
            elif minimum == "closure" and K.char != 2:
                if closure_min_rank(reduced) <= 2 * k_star:
                    flags.append("closure-minimum-below-threshold")
            break
        F = combine(quads, coeffs)
        Fbar = combine(reduced, coeffs)
        cofactors, rem = elim.divide(F)
        assert rem == Fbar
        new = [y for y in cofactors if y]
        step = {
            "round": len(log) + 1,
            "threshold": k_star,
            "coefficients": [K.format(c) for c in coeffs],
            "collapsed": format_form(F),
            "reduced": format_form(Fbar),
            "reduced_rank": r,
            "witness": None,
        }
        if Fbar:
            w = collapse_witness(Fbar, k_star)
            step["witness"] = w.to_json()
            extension = max(extension, w.extension)
            new.extend(minimal_variable_space(Fbar))
        before = len(pool)
        pool = _independent(pool + new, K, n)
        step["new_linear"] = len(pool) - before
        log.append(step)
        j0 = next(j for j, c in enumerate(coeffs) if c != K.zero)
        quads = quads[:j0] + quads[j0 + 1:]

    cert = SubalgebraCertificate(
        field=K,
        nvars=n,
        eta=eta,
        inputs=list(V.basis()),
        linear_gens=pool,
        quad_gens=quads,
        rewrites=[],
        iteration_log=log,
        extension=extension,
        bound=etaB2(eta, n1, n2),
        flags=flags,
    )
    gens = cert.generators
    cert.rewrites = [membership_in_subring(f, gens) for f in cert.inputs]
    return cert


def verify(cert, checks=("containment", "count", "regular_sequence"), budget=None):
    """Itemized report: each check maps to ``pass``, ``fail`` or ``skipped``."""
    from formstrength.oracle import Budget, BudgetExceeded, is_regular_sequence

    report = {"checks": {}, "failures": []}
    gens = cert.generators
    for check in checks:
        if check == "containment":
            bad = [f for f in cert.inputs if not gens or membership_in_subring(f, gens) is None]
            for f in bad:
                report["failures"].append(f"containment: {format_form(f)} not in the subalgebra")
            if len(_independent(cert.linear_gens, cert.field, cert.nvars)) != len(cert.linear_gens):
                bad.append(None)
                report["failures"].append("containment: linear generators are dependent")
            report["checks"][check] = "fail" if bad else "pass"
        elif check == "count":
            ok = cert.count <= cert.bound
            if not ok:
                report["failures"].append(f"count: {cert.count} generators exceed bound {cert.bound}")
            report["checks"][check] = "pass" if ok else "fail"
        elif check == "regular_sequence":
            try:
                ok = is_regular_sequence(gens, budget=budget or Budget(max_pairs=20_000))
            except BudgetExceeded:
                report["checks"][check] = "skipped"
                continue
            if not ok:
                report["failures"].append("regular_sequence: generators are not a regular sequence")
            report["checks"][check] = "pass" if ok else "fail"
        else:
            raise ValueError(f"unknown check {check!r}")
    report["ok"] = not report["failures"]
    return report
