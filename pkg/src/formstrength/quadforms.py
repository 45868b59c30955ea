"""Quadratic forms in every characteristic.

Covers rank and normal forms with collapse witnesses, plus space-level
rank searches and the reduced discriminant.

Strength is always measured over the algebraic closure. For quadrics a
quadratic extension of the base field is enough to write down witnesses,
so results carry an ``extension`` tag of 1 (base field) or 2.

Conventions: ``b(u, v) = F(u + v) - F(u) - F(v) = u^T H v`` where ``H`` is
the Hessian of ``F``. In characteristic 2, ``H`` is the alternating
polarization ``B``.
"""

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Optional

from formstrength.algebra.fields import RationalField, artin_schreier_solve
from formstrength.algebra.linalg import (
    Matrix,
    det,
    inverse,
    kernel_rows,
    pfaffian,
    rank_rows,
)
from formstrength.forms import Form, GradedSubspace, LinearElimination, format_form


# ---------------------------------------------------------------------------
# Gram data


@dataclass(frozen=True)
class SymRep:
    """Gram data of a quadric.

    Odd characteristic / Q: ``matrix`` is the symmetric M with F = x^T M x.
    Characteristic 2: ``matrix`` is the alternating B (B_ij = coefficient of
    x_i x_j) and ``diag`` holds the x_i^2 coefficients.
    """

    field: object
    matrix: Matrix
    diag: Optional[tuple] = None

    @property
    def nvars(self):
        return self.matrix.nrows

    def to_form(self):
        K = self.field
        n = self.nvars
        M = self.matrix.rows
        terms = {}
        for i in range(n):
            for j in range(i, n):
                e = [0] * n
                e[i] += 1
                e[j] += 1
                if self.diag is not None:
                    c = self.diag[i] if i == j else M[i][j]
                else:
                    c = M[i][i] if i == j else K.add(M[i][j], M[j][i])
                terms[tuple(e)] = c
        return Form(K, n, 2, terms, check=False)


def _require_quadric(F):
    if F.degree != 2:
        raise ValueError(f"expected a quadric, got degree {F.degree}")


def _pair_index(m):
    idx = [i for i, e in enumerate(m) for _ in range(e)]
    return idx[0], idx[1]


def gram(F):
    """Gram data of ``F``; round-trips exactly through :meth:`SymRep.to_form`."""
    _require_quadric(F)
    K = F.field
    n = F.nvars
    rows = [[K.zero] * n for _ in range(n)]
    if K.char == 2:
        diag = [K.zero] * n
        for m, c in F.terms:
            i, j = _pair_index(m)
            if i == j:
                diag[i] = c
            else:
                rows[i][j] = rows[j][i] = c
        return SymRep(K, Matrix(K, rows, n), tuple(diag))
    half = K.inv(K.from_int(2))
    for m, c in F.terms:
        i, j = _pair_index(m)
        if i == j:
            rows[i][i] = c
        else:
            rows[i][j] = rows[j][i] = K.mul(half, c)
    return SymRep(K, Matrix(K, rows, n))


def hessian_rows(F):
    """Hessian of a quadric as a list of rows (H_ii = 2 c_ii, H_ij = c_ij)."""
    K = F.field
    n = F.nvars
    rows = [[K.zero] * n for _ in range(n)]
    two = K.from_int(2)
    for m, c in F.terms:
        i, j = _pair_index(m)
        if i == j:
            rows[i][i] = K.mul(two, c)
        else:
            rows[i][j] = rows[j][i] = c
    return rows


# ---------------------------------------------------------------------------
# Rank


def _rank_from_hessian(K, H, F):
    n = len(H)
    r = rank_rows(K, H, n)
    if K.char != 2:
        return r
    # characteristic 2: add one iff F is nonzero on the radical of B
    for v in kernel_rows(K, H, n):
        if F.evaluate(v) != K.zero:
            return r + 1
    return r


def quad_rank(F):
    """Least number of variables ``F`` can be written in after a linear change."""
    _require_quadric(F)
    if not F:
        return 0
    return _rank_from_hessian(F.field, hessian_rows(F), F)


# ---------------------------------------------------------------------------
# Normal form


@dataclass
class NormalFormResult:
    """``change_vars(F, A) == canonical`` over ``field``.

    The canonical form is ``y1*y2 + ... + y_{2h-1}*y_{2h}`` plus ``y_r^2`` when
    the rank ``r`` is odd. ``extension`` is 1 over the base field, else 2.
    """

    rank: int
    A: Matrix
    canonical: Form
    field: object
    extension: int

    @property
    def pairs(self):
        return self.rank // 2


def canonical_quadric(K, n, r):
    terms = {}
    for i in range(0, r - 1, 2):
        e = [0] * n
        e[i] = e[i + 1] = 1
        terms[tuple(e)] = K.one
    if r % 2:
        e = [0] * n
        e[r - 1] = 2
        terms[tuple(e)] = K.one
    return Form(K, n, 2, terms, check=False)


class _Geometry:
    """Quadratic space (K^n, F) with vector helpers."""

    def __init__(self, F, K):
        self.K = K
        self.F = F.to_field(K)
        self.n = F.nvars
        self.H = hessian_rows(self.F)
        self._terms = [(*_pair_index(m), c) for m, c in self.F.terms]

    def Q(self, v):
        K = self.K
        acc = K.zero
        for i, j, c in self._terms:
            if v[i] != K.zero and v[j] != K.zero:
                acc = K.add(acc, K.mul(c, K.mul(v[i], v[j])))
        return acc

    def b(self, u, v):
        K = self.K
        acc = K.zero
        for i, ui in enumerate(u):
            if ui == K.zero:
                continue
            acc = K.add(acc, K.mul(ui, K.sum(K.mul(h, vj) for h, vj in zip(self.H[i], v) if h != K.zero)))
        return acc

    def axpy(self, a, x, y):
        """a*x + y"""
        K = self.K
        if a == K.zero:
            return list(y)
        return [K.add(K.mul(a, xi), yi) for xi, yi in zip(x, y)]

    def scale(self, a, x):
        K = self.K
        return [K.mul(a, xi) for xi in x]

    def is_zero(self, v):
        return all(x == self.K.zero for x in v)

    def basis(self):
        K = self.K
        return [[K.one if i == j else K.zero for j in range(self.n)] for i in range(self.n)]


class _Fail(Exception):
    pass


def _split_odd(geo, allow_search):
    """Split into hyperbolic pairs plus the radical (char != 2); may keep one square vector."""
    K = geo.K
    vecs = geo.basis()
    diag = []
    rad = []
    # orthogonal diagonalization
    while vecs:
        k = next((i for i, v in enumerate(vecs) if geo.Q(v) != K.zero), None)
        if k is None:
            hit = next(
                ((i, j) for i in range(len(vecs)) for j in range(i + 1, len(vecs))
                 if geo.b(vecs[i], vecs[j]) != K.zero),
                None,
            )
            if hit is None:
                rad.extend(vecs)
                break
            i, j = hit
            vecs[i] = geo.axpy(K.one, vecs[j], vecs[i])
            k = i
        v = vecs.pop(k)
        a = geo.Q(v)
        two_a = K.add(a, a)
        vecs = [geo.axpy(K.neg(K.div(geo.b(w, v), two_a)), v, w) for w in vecs]
        diag.append((v, a))
    pairs = []
    four = K.from_int(4)
    while len(diag) >= 2:
        hit = None
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                t = K.sqrt(K.neg(K.div(diag[i][1], diag[j][1])))
                if t is not None:
                    hit = (i, j, t)
                    break
            if hit:
                break
        if hit is not None:
            i, j, t = hit
            (u, a), (w, _) = diag[i], diag[j]
            e = geo.axpy(t, w, u)
            f = geo.scale(K.inv(K.mul(four, a)), geo.axpy(K.neg(t), w, u))
            pairs.append((e, f))
            diag = [d for k, d in enumerate(diag) if k not in (i, j)]
            continue
        if len(diag) >= 3 and allow_search and K.is_finite:
            pairs.append(_isotropic_three(geo, diag))
            continue
        raise _Fail()
    g = None
    if diag:
        u, a = diag[0]
        s = K.sqrt(a)
        if s is None:
            raise _Fail()
        g = geo.scale(K.inv(s), u)
    return pairs, g, rad


def _isotropic_three(geo, diag):
    """Split a hyperbolic plane off the first three diagonal vectors (finite field)."""
    K = geo.K
    (u, a), (w, b), (s, c) = diag[:3]
    iso = None
    # look for a x^2 + b y^2 + c = 0 (z = 1), enumerating x
    for x in K.elements():
        rhs = K.neg(K.div(K.add(K.mul(a, K.mul(x, x)), c), b))
        y = K.sqrt(rhs)
        if y is not None:
            iso = geo.axpy(x, u, geo.axpy(y, w, s))
            break
    if iso is None:
        raise _Fail()
    partner = next(z for z in (u, w, s) if geo.b(iso, z) != K.zero)
    fp = geo.scale(K.inv(geo.b(iso, partner)), partner)
    f = geo.axpy(K.neg(geo.Q(fp)), iso, fp)
    rest = None
    for z in (u, w, s):
        zp = geo.axpy(K.neg(geo.b(z, f)), iso, geo.axpy(K.neg(geo.b(z, iso)), f, z))
        if not geo.is_zero(zp):
            rest = zp
            break
    del diag[:3]
    diag.insert(0, (rest, geo.Q(rest)))
    return iso, f


def _split_plane_char2(geo, e, f):
    """Isotropic hyperbolic pair spanning the plane (e, f) with b(e,f)=1, or None."""
    K = geo.K
    a, c = geo.Q(e), geo.Q(f)
    if a == K.zero:
        return e, geo.axpy(c, e, f)
    if c == K.zero:
        return f, geo.axpy(a, f, e)
    y = artin_schreier_solve(K, K.mul(a, c))
    if y is None:
        return None
    ep = geo.axpy(K.div(y, a), e, f)
    fp = geo.axpy(a, ep, e)
    return ep, fp


def _split_char2(geo):
    K = geo.K
    vecs = geo.basis()
    planes = []
    rad = []
    while vecs:
        hit = next(
            ((i, j) for i in range(len(vecs)) for j in range(i + 1, len(vecs))
             if geo.b(vecs[i], vecs[j]) != K.zero),
            None,
        )
        if hit is None:
            rad.extend(vecs)
            break
        i, j = hit
        e = vecs[i]
        f = geo.scale(K.inv(geo.b(e, vecs[j])), vecs[j])
        vecs = [v for k, v in enumerate(vecs) if k not in (i, j)]
        vecs = [geo.axpy(geo.b(v, f), e, geo.axpy(geo.b(v, e), f, v)) for v in vecs]
        planes.append((e, f))
    # radical: F restricted there is the square of a linear form
    g = None
    k0 = next((k for k, r in enumerate(rad) if geo.Q(r) != K.zero), None)
    others = []
    if k0 is not None:
        g = geo.scale(K.inv(K.sqrt(geo.Q(rad[k0]))), rad[k0])
        for k, r in enumerate(rad):
            if k != k0:
                others.append(geo.axpy(K.sqrt(geo.Q(r)), g, r))
    else:
        others = rad
    pairs = []
    bad = []
    for e, f in planes:
        split = _split_plane_char2(geo, e, f)
        if split is None:
            bad.append((e, f))
        else:
            pairs.append(split)
    while bad:
        e, f = bad.pop()
        if g is not None:
            ep = geo.axpy(K.sqrt(geo.Q(e)), g, e)
            pairs.append((ep, geo.axpy(geo.Q(f), ep, f)))
            continue
        if not bad:
            raise _Fail()
        e2, f2 = bad.pop()
        v = geo.axpy(K.sqrt(K.div(geo.Q(e), geo.Q(e2))), e2, e)
        fpp = geo.axpy(geo.Q(f), v, f)
        pairs.append((v, fpp))
        u1, u2 = [geo.axpy(geo.b(u, fpp), v, geo.axpy(geo.b(u, v), fpp, u)) for u in (e2, f2)]
        u2 = geo.scale(K.inv(geo.b(u1, u2)), u2)
        split = _split_plane_char2(geo, u1, u2)
        if split is None:
            bad.append((u1, u2))
        else:
            pairs.append(split)
    return pairs, g, others


def _assemble(geo, pairs, g, rad):
    cols = []
    for e, f in pairs:
        cols.extend([e, f])
    if g is not None:
        cols.append(g)
    cols.extend(rad)
    r = 2 * len(pairs) + (1 if g is not None else 0)
    A = Matrix.from_columns(geo.K, cols, geo.n)
    return r, A


def _normal_form_over(F, K, allow_search):
    geo = _Geometry(F, K)
    if K.char == 2:
        pairs, g, rad = _split_char2(geo)
    else:
        pairs, g, rad = _split_odd(geo, allow_search)
    r, A = _assemble(geo, pairs, g, rad)
    return NormalFormResult(r, A, canonical_quadric(K, F.nvars, r), K, 1 if K == F.field else 2)


def _diagonal_values(F):
    K = F.field
    geo = _Geometry(F, K)
    vals = []
    vecs = geo.basis()
    while vecs:
        k = next((i for i, v in enumerate(vecs) if geo.Q(v) != K.zero), None)
        if k is None:
            hit = next(
                ((i, j) for i in range(len(vecs)) for j in range(i + 1, len(vecs))
                 if geo.b(vecs[i], vecs[j]) != K.zero),
                None,
            )
            if hit is None:
                break
            i, j = hit
            vecs[i] = geo.axpy(K.one, vecs[j], vecs[i])
            k = i
        v = vecs.pop(k)
        a = geo.Q(v)
        vecs = [geo.axpy(K.neg(K.div(geo.b(w, v), K.add(a, a))), v, w) for w in vecs]
        vals.append(a)
    return vals


def _pairable(vals, is_square):
    """Replays the pairwise greedy of ``_split_odd`` on diagonal values alone."""
    vals = list(vals)
    while len(vals) >= 2:
        hit = next(
            ((i, j) for i in range(len(vals)) for j in range(i + 1, len(vals))
             if is_square(-vals[i] / vals[j])),
            None,
        )
        if hit is None:
            return False
        vals = [v for k, v in enumerate(vals) if k not in hit]
    return not vals or is_square(vals[0])


def _q_extension_candidates(F):
    """Non-square rationals d for which F splits over Q(sqrt d) by pairwise steps."""
    K = F.field
    vals = _diagonal_values(F)
    cands = [-vals[i] / vals[j] for i in range(len(vals)) for j in range(i + 1, len(vals))]
    cands.extend(vals)
    out = []
    for d in cands:
        if K.sqrt(d) is not None or any(K.sqrt(d / e) is not None for e in out):
            continue
        if _pairable(vals, lambda c: K.sqrt(c) is not None or K.sqrt(c / d) is not None):
            out.append(d)
    return out


def normal_form(F):
    """Canonical hyperbolic form of ``F`` over the base field or its quadratic extension."""
    _require_quadric(F)
    K = F.field
    try:
        return _normal_form_over(F, K, allow_search=True)
    except _Fail:
        pass
    if K.is_finite:
        return _normal_form_over(F, K.extension(), allow_search=False)
    for d in _q_extension_candidates(F):
        try:
            return _normal_form_over(F, K.extension(d), allow_search=False)
        except _Fail:
            continue
    raise ValueError("no single quadratic extension of Q splits this form")


# ---------------------------------------------------------------------------
# Strength and collapse


@dataclass
class CollapseWitness:
    """``sum_t G_t * H_t == F`` over ``field`` (extension tag 1 or 2)."""

    pairs: list
    field: object
    extension: int
    base_spec: str = ""

    def expand(self, nvars=None, degree=2):
        K = self.field
        if not self.pairs:
            return Form.zero(K, nvars or 0, degree)
        acc = None
        for G, H in self.pairs:
            acc = G * H if acc is None else acc + G * H
        return acc

    def __len__(self):
        return len(self.pairs)

    def to_json(self):
        return {
            "field": self.base_spec or self.field.base.spec,
            "extension": self.extension,
            "extension_field": self.field.spec,
            "pairs": [[format_form(G), format_form(H)] for G, H in self.pairs],
        }


def strength_quadric(F):
    """ceil(r/2) - 1 for a nonzero quadric of rank r."""
    _require_quadric(F)
    if not F:
        raise ValueError("strength of the zero form is undefined")
    r = quad_rank(F)
    return (r + 1) // 2 - 1


def collapse_witness(F, k):
    """A k-collapse of ``F`` read off the normal form, or ``None`` when rank > 2k."""
    _require_quadric(F)
    r = quad_rank(F)
    if r > 2 * k:
        return None
    nf = normal_form(F)
    K = nf.field
    n = F.nvars
    P = inverse(nf.A)
    ys = [Form.linear(K, list(P.rows[i])) for i in range(n)]
    pairs = [(ys[i], ys[i + 1]) for i in range(0, nf.rank - 1, 2)]
    if nf.rank % 2:
        pairs.append((ys[nf.rank - 1], ys[nf.rank - 1]))
    return CollapseWitness(pairs, K, nf.extension, F.field.spec)


def jrank_quadric(F):
    """Height of (F, partial derivatives of F); equals the rank for a quadric."""
    _require_quadric(F)
    if not F:
        raise ValueError("J-rank of the zero form is undefined")
    return quad_rank(F)


# ---------------------------------------------------------------------------
# Minimal variable spaces


def minimal_variable_space(F):
    """Basis of the smallest space of linear forms W with F in K[W]."""
    _require_quadric(F)
    K = F.field
    n = F.nvars
    H = hessian_rows(F)
    ker = kernel_rows(K, H, n)
    if K.char == 2 and ker:
        vals = [K.sqrt(F.evaluate(v)) for v in ker]
        j0 = next((j for j, s in enumerate(vals) if s != K.zero), None)
        if j0 is not None:
            ker = [
                [K.sub(a, K.mul(K.div(vals[j], vals[j0]), c)) for a, c in zip(v, ker[j0])]
                for j, v in enumerate(ker)
                if j != j0
            ]
    if not ker:
        return [Form.var(K, n, i) for i in range(n)]
    return [Form.linear(K, row) for row in kernel_rows(K, ker, n)]


# ---------------------------------------------------------------------------
# Spaces of quadrics


def projective_points(K, m):
    """Nonzero coefficient vectors, first nonzero entry 1, in a fixed order."""
    elems = list(K.elements())
    for lead in range(m):
        head = (K.zero,) * lead + (K.one,)
        for tail in product(elems, repeat=m - lead - 1):
            yield head + tail


def combine(forms, coeffs):
    K = forms[0].field
    acc = Form.zero(K, forms[0].nvars, forms[0].degree)
    for c, f in zip(coeffs, forms):
        if c != K.zero:
            acc = acc + f.scale(c)
    return acc


class _RankEngine:
    """Fast rank of combinations via precomputed Hessians."""

    def __init__(self, forms, K=None):
        self.forms = [f.to_field(K) for f in forms] if K is not None else list(forms)
        self.K = self.forms[0].field
        self.n = self.forms[0].nvars
        self.H = [hessian_rows(f) for f in self.forms]

    def rank(self, coeffs):
        K = self.K
        n = self.n
        H = [[K.zero] * n for _ in range(n)]
        for c, Hf in zip(coeffs, self.H):
            if c == K.zero:
                continue
            for i in range(n):
                row, src = H[i], Hf[i]
                for j in range(n):
                    if src[j] != K.zero:
                        row[j] = K.add(row[j], K.mul(c, src[j]))
        if K.char != 2:
            return rank_rows(K, H, n)
        return _rank_from_hessian(K, H, combine(self.forms, coeffs))


@dataclass
class MinRankResult:
    rank: int
    coeffs: Optional[tuple]
    form: Optional[Form]
    backend: str
    exact_over_closure: bool
    caveat: str = ""


def _min_rank_combination(forms, K=None, stop_at=None):
    """Least rank over projective rational combinations (dependent or zero forms allowed)."""
    eng = _RankEngine(forms, K)
    best = None
    for coeffs in projective_points(eng.K, len(forms)):
        if all(c == eng.K.zero for c, f in zip(coeffs, eng.forms) if f):
            continue
        comb = combine(eng.forms, coeffs)
        if not comb:
            continue
        r = eng.rank(coeffs)
        if best is None or r < best[0]:
            best = (r, coeffs, comb)
            if stop_at is not None and r <= stop_at:
                break
    return best


ENUMERATE_CAVEAT = "minimum over base-field combinations; the closure minimum may be smaller"


def space_min_rank(V, backend="enumerate", budget=None):
    """Minimum rank of a nonzero element of a space of quadrics."""
    forms = _quadric_basis(V)
    K = forms[0].field
    if backend == "enumerate":
        if not K.is_finite:
            return _min_rank_rational_heuristic(forms)
        r, coeffs, comb = _min_rank_combination(forms)
        return MinRankResult(r, coeffs, comb, "enumerate", False, ENUMERATE_CAVEAT)
    if backend == "closure":
        r = closure_min_rank(forms, budget=budget)
        found = None
        if K.is_finite:
            found = _min_rank_combination(forms, stop_at=r)
            if found is not None and found[0] != r:
                found = None
        coeffs, comb = (found[1], found[2]) if found else (None, None)
        return MinRankResult(r, coeffs, comb, "closure", True)
    raise ValueError(f"unknown backend {backend!r}")


def _min_rank_rational_heuristic(forms, height=2):
    K = forms[0].field
    vals = [K.from_int(v) for v in range(-height, height + 1)]
    eng = _RankEngine(forms)
    best = None
    m = len(forms)
    for lead in range(m):
        for tail in product(vals, repeat=m - lead - 1):
            coeffs = (K.zero,) * lead + (K.one,) + tail
            r = eng.rank(coeffs)
            if best is None or r < best[0]:
                best = (r, coeffs)
    comb = combine(forms, best[1])
    return MinRankResult(best[0], best[1], comb, "enumerate", False,
                         f"heuristic over Q: coefficients of height <= {height}")


def _quadric_basis(V):
    if isinstance(V, GradedSubspace):
        if V.is_zero():
            raise ValueError("empty space")
        if V.degrees() != [2]:
            raise ValueError("space must consist of quadrics")
        return V.basis(2)
    forms = [f for f in V if f]
    if not forms:
        raise ValueError("empty space")
    for f in forms:
        _require_quadric(f)
    return forms


@dataclass
class StrengthResult:
    strength: int
    min_rank: int
    backend: str
    exact_over_closure: bool
    caveat: str = ""
    witness: Optional[Form] = None


def space_strength(V, backend="enumerate", budget=None):
    res = space_min_rank(V, backend, budget)
    return StrengthResult((res.rank + 1) // 2 - 1, res.rank, res.backend,
                          res.exact_over_closure, res.caveat, res.form)


def _parametric_minors(forms, size):
    """All ``size``-minors of sum_i t_i M_i as forms in the parameters t."""
    K = forms[0].field
    m = len(forms)
    n = forms[0].nvars
    Hs = [hessian_rows(f) for f in forms]
    entries = [
        [Form.linear(K, [Hs[k][i][j] for k in range(m)]) for j in range(n)]
        for i in range(n)
    ]
    memo = {}

    def minor(rows, cols):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            val = entries[rows[0]][cols[0]]
        else:
            r0, rest = rows[0], rows[1:]
            val = Form.zero(K, m, len(rows))
            for k, c in enumerate(cols):
                e = entries[r0][c]
                if not e:
                    continue
                sub = minor(rest, cols[:k] + cols[k + 1:])
                if not sub:
                    continue
                term = e * sub
                val = val + term if k % 2 == 0 else val - term
        memo[key] = val
        return val

    out = []
    for rows in combinations(range(n), size):
        for cols in combinations(range(n), size):
            v = minor(rows, cols)
            if v:
                out.append(v)
    return out


def closure_min_rank(forms, budget=None):
    """Exact minimum rank over the algebraic closure via minors + Groebner bases.

    Only for characteristic != 2, where rank is the Gram rank.
    """
    from formstrength.oracle import Budget, groebner, krull_dim

    forms = _quadric_basis(forms)
    K = forms[0].field
    if K.char == 2:
        raise ValueError("closure backend supports characteristic != 2 only")
    n = forms[0].nvars
    budget = budget or Budget()
    for r in range(0, n + 1):
        minors = _parametric_minors(forms, r + 1) if r < n else []
        if not minors:
            return r
        gb = groebner(minors, budget=budget)
        if gb.is_unit():
            continue
        if krull_dim(gb) >= 1:
            return r
    return n


@dataclass
class MaxRankResult:
    form: Form
    rank: int
    coeffs: tuple
    exact: bool


def max_rank_search(V):
    forms = _quadric_basis(V)
    K = forms[0].field
    eng = _RankEngine(forms)
    if K.is_finite:
        best = None
        for coeffs in projective_points(K, len(forms)):
            r = eng.rank(coeffs)
            if best is None or r > best[0]:
                best = (r, coeffs)
        return MaxRankResult(combine(forms, best[1]), best[0], best[1], True)
    # Q: greedy pencils; at most r values of c lower the rank of cF + G
    m = len(forms)
    coeffs = [K.one] + [K.zero] * (m - 1)
    cur = eng.rank(coeffs)
    improved = True
    while improved:
        improved = False
        for j in range(m):
            for c in range(1, forms[0].nvars + 2):
                trial = list(coeffs)
                trial[j] = K.add(trial[j], K.from_int(c))
                if all(x == K.zero for x in trial):
                    continue
                r = eng.rank(trial)
                if r > cur:
                    coeffs, cur, improved = trial, r, True
    return MaxRankResult(combine(forms, coeffs), cur, tuple(coeffs), False)


def max_rank_element(V):
    """An element of maximal rank (exhaustive over finite fields, greedy over Q)."""
    return max_rank_search(V).form


# ---------------------------------------------------------------------------
# Reducibility classification


@dataclass
class ReducibleClassification:
    """``kind`` is one of CommonLinearFactor, TwoVariableSpace, Char2AllSquares,
    NotAllReducible. ``data`` holds the linear forms or the witness."""

    kind: str
    data: list = dc_field(default_factory=list)
    note: str = ""

    @property
    def all_reducible(self):
        return self.kind != "NotAllReducible"

    def to_json(self):
        return {"kind": self.kind, "data": [format_form(f) for f in self.data], "note": self.note}


def _divides(ell, F):
    elim = LinearElimination([ell])
    return not elim.reduce(F)


def _rational_linear_factors(F):
    nf = normal_form(F)
    if nf.rank > 2 or nf.extension != 1:
        return []
    P = inverse(nf.A)
    K = F.field
    return [Form.linear(K, list(P.rows[i])) for i in range(nf.rank)]


def classify_all_reducible(V):
    forms = _quadric_basis(V)
    K = forms[0].field
    if K.char == 2 and all(not any(m.count(1) for m in f.support()) for f in forms):
        return ReducibleClassification("Char2AllSquares")
    ranks = [quad_rank(f) for f in forms]
    bad = next((f for f, r in zip(forms, ranks) if r >= 3), None)
    if bad is not None:
        return ReducibleClassification("NotAllReducible", [bad])
    for ell in _rational_linear_factors(forms[0]):
        if all(_divides(ell, f) for f in forms):
            return ReducibleClassification("CommonLinearFactor", [_monic(ell)])
    W = []
    for f in forms:
        W.extend(minimal_variable_space(f))
    rows = [w.linear_coeffs() for w in W]
    from formstrength.algebra.linalg import rref_rows

    R, _ = rref_rows(K, rows, forms[0].nvars)
    if len(R) <= 2:
        return ReducibleClassification("TwoVariableSpace", [Form.linear(K, r) for r in R])
    found = _min_rank_combination_max(forms, K)
    if found is None and K.is_finite:
        found = _min_rank_combination_max(forms, K.extension())
    if found is None:
        return ReducibleClassification(
            "NotAllReducible", [], "no witness in the base field or its quadratic extension"
        )
    return ReducibleClassification("NotAllReducible", [found])


def _min_rank_combination_max(forms, K):
    """First combination of closure rank >= 3 over K (finite K only)."""
    if not K.is_finite:
        res = max_rank_search(forms)
        return res.form if res.rank >= 3 else None
    eng = _RankEngine(forms, K if K != forms[0].field else None)
    for coeffs in projective_points(eng.K, len(forms)):
        if eng.rank(coeffs) >= 3:
            return combine(eng.forms, coeffs)
    return None


def _monic(ell):
    c = ell.leading()[1]
    return ell.scale(ell.field.inv(c))


# ---------------------------------------------------------------------------
# Reduced discriminant


def reduced_discriminant_report(F, nvars=None):
    """``{"value", "method"}``; the value vanishes iff rank < N."""
    _require_quadric(F)
    if nvars is not None and nvars != F.nvars:
        F = F.pad(nvars)
    K = F.field
    n = F.nvars
    if K.char != 2:
        M = gram(F).matrix
        return {"value": det(M), "method": "gram-determinant"}
    B = gram(F).matrix
    if n % 2:
        pf = [pfaffian(B.delete(i)) if n > 1 else K.one for i in range(n)]
        return {"value": F.evaluate(pf), "method": "pfaffian-substitution"}
    if K.order == 2:
        QQ = RationalField()
        H = Matrix(QQ, [[QQ.from_int(int(x)) for x in row] for row in hessian_rows(F)], n)
        H = Matrix(QQ, [[QQ.from_int(2 * int(F.coeff(_sq(n, i)))) if i == j else H[i, j]
                         for j in range(n)] for i in range(n)], n)
        d = det(H)
        return {"value": int(d) % 2, "method": "integer-lift"}
    value = K.one if quad_rank(F) == n else K.zero
    return {"value": value, "method": "criterion-by-rank"}


def _sq(n, i):
    e = [0] * n
    e[i] = 2
    return tuple(e)


def reduced_discriminant(F, nvars=None):
    return reduced_discriminant_report(F, nvars)["value"]
