"""Homogeneous forms and graded subspaces of forms.

Variables are 0-based in the Python API (``x1`` in text is index 0).
Monomials are exponent tuples; stored terms are kept in graded-lex
descending order, which for a fixed degree is plain reverse-lex order on
exponent tuples.
"""

from itertools import combinations_with_replacement
import re

from formstrength.algebra.linalg import Matrix, rank, rref_rows, solve_rows

MAX_VARS = 64


def monomials(nvars, degree):
    """All exponent tuples of the given total degree, grlex descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Form:
    """A homogeneous polynomial over an exact field.

    ``terms`` maps exponent tuples to nonzero coefficients. The zero form is
    the empty map and still carries its declared degree.
    """

    __slots__ = ("field", "nvars", "degree", "_terms", "_hash")

    def __init__(self, field, nvars, degree, terms=None, check=True):
        if not 0 <= nvars <= MAX_VARS:
            raise ValueError(f"variable count must be in 0..{MAX_VARS}")
        self.field = field
        self.nvars = nvars
        self.degree = degree
        zero = field.zero
        clean = {}
        for m, c in (terms or {}).items():
            if c == zero:
                continue
            if check:
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} does not have {nvars} exponents")
                if sum(m) != degree:
                    raise ValueError(f"monomial {m} is not of degree {degree}")
            clean[m] = c
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    # construction ---------------------------------------------------------------
    @classmethod
    def zero(cls, field, nvars, degree):
        return cls(field, nvars, degree, {}, check=False)

    @classmethod
    def var(cls, field, nvars, i, coeff=None):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, 1, {tuple(e): field.one if coeff is None else coeff}, check=False)

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, 0, {(0,) * nvars: c}, check=False)

    @classmethod
    def linear(cls, field, coeffs):
        """The linear form sum_i coeffs[i] x_i."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c != field.zero:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(field, n, 1, terms, check=False)

    @classmethod
    def from_vector(cls, field, nvars, degree, vector, basis=None):
        basis = basis if basis is not None else monomials(nvars, degree)
        return cls(field, nvars, degree, dict(zip(basis, vector)), check=False)

    # basic access -----------------------------------------------------------------
    @property
    def terms(self):
        """Terms as ``(monomial, coefficient)`` pairs in grlex descending order."""
        return list(self._terms.items())

    def coeff(self, m):
        return self._terms.get(tuple(m), self.field.zero)

    def support(self):
        return list(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading(self):
        """Leading (monomial, coefficient) in grlex order."""
        return next(iter(self._terms.items()))

    def variables(self):
        """Indices of variables that occur."""
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def vector(self, basis=None):
        basis = basis if basis is not None else monomials(self.nvars, self.degree)
        z = self.field.zero
        return [self._terms.get(m, z) for m in basis]

    def linear_coeffs(self):
        if self.degree != 1:
            raise ValueError("not a linear form")
        out = [self.field.zero] * self.nvars
        for m, c in self._terms.items():
            out[m.index(1)] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, self.degree, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Form({format_form(self)!r}, {self.field.spec}, N={self.nvars})"

    def __str__(self):
        return format_form(self)

    # arithmetic -----------------------------------------------------------------------
    def _check(self, other):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("forms live in different rings")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and self and other:
            raise ValueError("sum of forms of different degree")
        deg = self.degree if self else other.degree
        F = self.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = F.add(out[m], c) if m in out else c
        return Form(F, self.nvars, deg, out, check=False)

    def __neg__(self):
        F = self.field
        return Form(F, self.nvars, self.degree, {m: F.neg(c) for m, c in self._terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.field
        if c == F.zero:
            return Form.zero(F, self.nvars, self.degree)
        return Form(F, self.nvars, self.degree, {m: F.mul(c, a) for m, a in self._terms.items()}, check=False)

    def __mul__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        F = self.field
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                v = F.mul(c1, c2)
                out[m] = F.add(out[m], v) if m in out else v
        return Form(F, self.nvars, self.degree + other.degree, out, check=False)

    def pow(self, n):
        result = Form.constant(self.field, self.nvars, self.field.one)
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, point):
        F = self.field
        acc = F.zero
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                for _ in range(e):
                    v = F.mul(v, x)
            acc = F.add(acc, v)
        return acc

    def to_field(self, K):
        """Embed coefficients into an extension ``K`` of the current field."""
        if K == self.field:
            return self
        if K.base != self.field:
            raise ValueError(f"cannot embed {self.field.spec} into {K.spec}")
        return Form(K, self.nvars, self.degree, {m: K.embed(c) for m, c in self._terms.items()}, check=False)

    def pad(self, nvars):
        """Same form in a ring with more variables appended."""
        extra = (0,) * (nvars - self.nvars)
        return Form(self.field, nvars, self.degree, {m + extra: c for m, c in self._terms.items()}, check=False)

    # calculus ---------------------------------------------------------------------------
    def partial(self, i):
        """Formal derivative in x_i (0-based); characteristic cancellation is exact."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for N={self.nvars}")
        F = self.field
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e == 0:
                continue
            v = F.mul(F.from_int(e), c)
            if v == F.zero:
                continue
            nm = m[:i] + (e - 1,) + m[i + 1:]
            out[nm] = F.add(out[nm], v) if nm in out else v
        return Form(F, self.nvars, max(self.degree - 1, 0), out, check=False)

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    # substitution ---------------------------------------------------------------------------
    def substitute(self, images):
        """Replace x_i by the linear form ``images[i]`` (any common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not self._terms:
            target = images[0] if images else None
            n = target.nvars if target is not None else self.nvars
            K = target.field if target is not None else self.field
            return Form.zero(K, n, self.degree)
        K = images[0].field
        n = images[0].nvars
        cache = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return cache[key]

        result = {}
        for m, c in self._terms.items():
            term = Form.constant(K, n, K.embed(c) if K != self.field else c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for mm, cc in term._terms.items():
                result[mm] = K.add(result[mm], cc) if mm in result else cc
        return Form(K, n, self.degree, result, check=False)


def change_vars(F, A):
    """``F(A x)``: substitute x_i -> sum_j A[i][j] x_j. ``A`` must be invertible."""
    if A.nrows != A.ncols or A.nrows != F.nvars:
        raise ValueError("change of variables has the wrong size")
    if rank(A) != A.nrows:
        raise ValueError("change of variables is singular")
    K = A.field
    G = F.to_field(K) if K != F.field else F
    images = [Form.linear(K, list(row)) for row in A.rows]
    return G.substitute(images)


def iterated_euler(F):
    """sum_{i,j} x_i x_j d^2F/dx_i dx_j, which equals d(d-1) F."""
    n = F.nvars
    acc = Form.zero(F.field, n, F.degree)
    xs = [Form.var(F.field, n, i) for i in range(n)]
    for i in range(n):
        Fi = F.partial(i)
        if not Fi:
            continue
        for j in range(n):
            Fij = Fi.partial(j)
            if Fij:
                acc = acc + xs[i] * xs[j] * Fij
    if not acc:
        return Form.zero(F.field, n, F.degree)
    return acc


# ---------------------------------------------------------------------------
# Graded subspaces


def echelon_forms(forms):
    """Canonical RREF basis of the span of same-degree forms."""
    forms = [f for f in forms if f]
    if not forms:
        return []
    F = forms[0].field
    n, d = forms[0].nvars, forms[0].degree
    support = sorted({m for f in forms for m in f.support()}, reverse=True)
    rows = [f.vector(support) for f in forms]
    R, _ = rref_rows(F, rows, len(support))
    return [Form.from_vector(F, n, d, r, support) for r in R]


class GradedSubspace:
    """Span of homogeneous forms, stored as one canonical echelon basis per degree."""

    __slots__ = ("field", "nvars", "_bases")

    def __init__(self, field, nvars, bases=None):
        self.field = field
        self.nvars = nvars
        self._bases = {d: tuple(b) for d, b in (bases or {}).items() if b}

    @classmethod
    def span(cls, forms, field=None, nvars=None):
        forms = list(forms)
        if field is None or nvars is None:
            if not forms:
                raise ValueError("cannot infer the ring of an empty span")
            field, nvars = forms[0].field, forms[0].nvars
        groups = {}
        for f in forms:
            if f.field != field or f.nvars != nvars:
                raise ValueError("forms live in different rings")
            if f:
                groups.setdefault(f.degree, []).append(f)
        return cls(field, nvars, {d: echelon_forms(g) for d, g in groups.items()})

    def basis(self, degree=None):
        if degree is not None:
            return list(self._bases.get(degree, ()))
        return [f for d in sorted(self._bases) for f in self._bases[d]]

    forms = basis

    def degrees(self):
        return sorted(self._bases)

    def dim(self, degree=None):
        if degree is not None:
            return len(self._bases.get(degree, ()))
        return sum(len(b) for b in self._bases.values())

    def dimension_sequence(self):
        return dimension_sequence(self)

    def is_zero(self):
        return not self._bases

    def contains(self, f):
        if not f:
            return True
        basis = self.basis(f.degree)
        return len(echelon_forms(basis + [f])) == len(basis)

    def change_vars(self, A):
        return GradedSubspace.span(
            [change_vars(f, A) for f in self.basis()], A.field, self.nvars
        )

    def to_field(self, K):
        return GradedSubspace.span([f.to_field(K) for f in self.basis()], K, self.nvars)

    def __eq__(self, other):
        return (
            isinstance(other, GradedSubspace)
            and self.field == other.field
            and self.nvars == other.nvars
            and self._bases == other._bases
        )

    def __hash__(self):
        return hash((self.field, self.nvars, tuple(sorted(self._bases.items()))))

    def __repr__(self):
        inner = ", ".join(str(f) for f in self.basis())
        return f"GradedSubspace[{self.field.spec}, N={self.nvars}]({inner})"


def dimension_sequence(V):
    """(n_1, ..., n_d) up to the top nonzero degree; ``()`` for the zero space."""
    if V.is_zero():
        return ()
    top = max(V.degrees())
    return tuple(V.dim(d) for d in range(1, top + 1))


def derivative_space(F):
    """Span of all first partial derivatives of ``F``."""
    return GradedSubspace.span(F.gradient(), F.field, F.nvars)


class LinearElimination:
    """Elimination of the pivot variables of a space of independent linear forms.

    Rows are the RREF of the given linear forms; row ``s`` has pivot variable
    ``pivots[s]`` and is the only row containing it.
    """

    def __init__(self, linear_forms, field=None, nvars=None, allow_dependent=False):
        linear_forms = list(linear_forms)
        if linear_forms:
            field, nvars = linear_forms[0].field, linear_forms[0].nvars
        self.field = field
        self.nvars = nvars
        for f in linear_forms:
            if f.degree != 1 and f:
                raise ValueError("elimination needs linear forms")
        rows = [f.linear_coeffs() for f in linear_forms if f]
        R, pivots = rref_rows(field, rows, nvars) if rows else ([], [])
        if len(pivots) < len(linear_forms) and not allow_dependent:
            raise ValueError("linear forms are dependent")
        self.rows = R
        self.pivots = pivots
        self.forms = [Form.linear(field, r) for r in R]
        K = field
        images = []
        pivot_row = {p: k for k, p in enumerate(pivots)}
        for i in range(nvars):
            if i in pivot_row:
                r = R[pivot_row[i]]
                coeffs = [K.zero if j == i else K.neg(r[j]) for j in range(nvars)]
            else:
                coeffs = [K.one if j == i else K.zero for j in range(nvars)]
            images.append(Form.linear(K, coeffs))
        self._images = images
        self._pivot_row = pivot_row

    def __len__(self):
        return len(self.pivots)

    def reduce(self, f):
        """Image of ``f`` with the pivot variables eliminated."""
        if not self.pivots or not f:
            return f
        return f.substitute(self._images)

    def divide(self, f):
        """Write ``f = sum_s y_s * ell_s + r`` with ``r`` free of pivot variables.

        Returns ``(cofactors, r)``; ``cofactors[s]`` has degree ``deg f - 1``.
        """
        K = self.field
        n = self.nvars
        cof = [dict() for _ in self.pivots]
        work = dict(f._terms)
        rem = {}
        while work:
            m = max(work)
            c = work.pop(m)
            p = next((i for i in self.pivots if m[i]), None)
            if p is None:
                rem[m] = c
                continue
            s = self._pivot_row[p]
            q = m[:p] + (m[p] - 1,) + m[p + 1:]
            cof[s][q] = K.add(cof[s][q], c) if q in cof[s] else c
            for j, a in enumerate(self.rows[s]):
                if j == p or a == K.zero:
                    continue
                mm = q[:j] + (q[j] + 1,) + q[j + 1:]
                v = K.neg(K.mul(c, a))
                if mm in work:
                    v = K.add(work[mm], v)
                    if v == K.zero:
                        del work[mm]
                        continue
                work[mm] = v
        d = f.degree
        cofactors = [Form(K, n, d - 1, t, check=False) for t in cof]
        return cofactors, Form(K, n, d, rem, check=False)


def reduce_mod_linear(V, L):
    """Image of ``V`` after eliminating the pivot variables of ``span(L)``.

    The ambient variable count is kept; pivot variables simply no longer occur.
    """
    elim = LinearElimination(L, V.field, V.nvars)
    return GradedSubspace.span([elim.reduce(f) for f in V.basis()], V.field, V.nvars)


# ---------------------------------------------------------------------------
# Subring membership


class Rewrite:
    """A polynomial expression sum_t c_t * prod_{i in idx_t} g_i in generators g."""

    def __init__(self, field, terms):
        self.field = field
        self.terms = [(c, tuple(idx)) for c, idx in terms if c != field.zero]

    def expand(self, gens):
        if not gens:
            raise ValueError("no generators")
        K = self.field
        n = gens[0].nvars
        acc = None
        for c, idx in self.terms:
            term = Form.constant(K, n, c)
            for i in idx:
                term = term * gens[i]
            acc = term if acc is None else acc + term
        return acc

    def to_text(self, names=None):
        if not self.terms:
            return "0"
        parts = []
        for c, idx in self.terms:
            fac = "*".join((names[i] if names else f"g{i + 1}") for i in idx)
            parts.append(fac if c == self.field.one else f"{self.field.format(c)}*{fac}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Rewrite({self.to_text()})"


def _products_of_degree(degrees, d, start=0):
    """Multisets of generator indices (non-decreasing) with total degree d."""
    if d == 0:
        yield ()
        return
    for i in range(start, len(degrees)):
        if degrees[i] <= d:
            for rest in _products_of_degree(degrees, d - degrees[i], i):
                yield (i,) + rest


def membership_in_subring(F, gens):
    """Express ``F`` as a polynomial in ``gens`` (exact linear solve), or ``None``."""
    for g in gens:
        if g.degree <= 0:
            raise ValueError("generators must have positive degree")
    K = F.field
    if not F:
        return Rewrite(K, [])
    degrees = [g.degree if g else 10 ** 9 for g in gens]
    products = list(_products_of_degree(degrees, F.degree))
    if not products:
        return None
    expanded = []
    for idx in products:
        p = gens[idx[0]]
        for i in idx[1:]:
            p = p * gens[i]
        expanded.append(p)
    support = sorted({m for p in expanded for m in p.support()} | set(F.support()), reverse=True)
    # Columns are products; rows are monomials.
    cols = [p.vector(support) for p in expanded]
    rows = [[col[r] for col in cols] for r in range(len(support))]
    x = solve_rows(K, rows, len(products), F.vector(support))
    if x is None:
        return None
    return Rewrite(K, list(zip(x, products)))


# ---------------------------------------------------------------------------
# Text format


class ParseError(ValueError):
    def __init__(self, message, text, pos, line=1):
        self.text = text
        self.pos = pos
        self.line = line
        self.column = pos + 1
        super().__init__(f"line {line}, column {pos + 1}: {message}")


_TOKEN = re.compile(
    r"\s*(?:(?P<var>x(?P<idx>\d+)(?:\^(?P<exp>\d+))?)"
    r"|(?P<ext>\[[^\]]*\])"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<op>[-+*]))"
)


def parse_form(text, field, nvars=None, degree=None, line=1):
    """Parse the ``c*x1^2*x3 + ...`` grammar into a homogeneous :class:`Form`."""
    pos = 0
    raw_terms = []  # (sign, coefficient-or-None, exponents dict, start)
    sign = 1
    expect_term = True
    cur = None
    n_seen = 0
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start, line)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        pos = m.end()
        if m.group("op") in ("+", "-"):
            flip = -1 if m.group("op") == "-" else 1
            if cur is not None:
                if cur["dangling"]:
                    raise ParseError("dangling '*'", text, start, line)
                raw_terms.append(cur)
                cur = None
                sign = flip
            else:
                sign *= flip
            expect_term = True
            continue
        if m.group("op") == "*":
            if cur is None or cur["dangling"]:
                raise ParseError("unexpected '*'", text, start, line)
            cur["dangling"] = True
            continue
        # a factor
        if cur is not None and not cur["dangling"]:
            raise ParseError("missing operator between factors", text, start, line)
        if cur is None:
            cur = {"sign": sign, "coeffs": [], "exps": {}, "dangling": False, "start": start}
            sign = 1
            expect_term = False
        cur["dangling"] = False
        if m.group("var"):
            i = int(m.group("idx"))
            if i < 1:
                raise ParseError("variables are numbered from x1", text, start, line)
            e = int(m.group("exp")) if m.group("exp") else 1
            cur["exps"][i - 1] = cur["exps"].get(i - 1, 0) + e
            n_seen = max(n_seen, i)
        else:
            tok = m.group("ext") or m.group("num")
            try:
                cur["coeffs"].append(_parse_scalar(field, tok))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coefficient {tok!r}: {exc}", text, start, line) from None
    if cur is not None:
        if cur["dangling"]:
            raise ParseError("dangling '*'", text, text_len, line)
        raw_terms.append(cur)
    elif raw_terms or text.strip():
        raise ParseError("expected a term", text, text_len, line)
    if not raw_terms:
        raise ParseError("empty polynomial", text, 0, line)
    if nvars is None:
        nvars = max(n_seen, 1)
    elif n_seen > nvars:
        raise ParseError(f"variable x{n_seen} exceeds N={nvars}", text, 0, line)
    K = field
    terms = {}
    for t in raw_terms:
        c = K.one
        for a in t["coeffs"]:
            c = K.mul(c, a)
        if t["sign"] < 0:
            c = K.neg(c)
        e = [0] * nvars
        for i, k in t["exps"].items():
            e[i] += k
        mono = tuple(e)
        if c == K.zero:
            continue
        terms[mono] = K.add(terms[mono], c) if mono in terms else c
    terms = {m: c for m, c in terms.items() if c != K.zero}
    degs = {sum(m) for m in terms}
    if len(degs) > 1:
        raise ParseError("polynomial is not homogeneous", text, 0, line)
    if degs:
        d = degs.pop()
        if degree is not None and d != degree:
            raise ParseError(f"expected degree {degree}, got {d}", text, 0, line)
    else:
        d = degree if degree is not None else 0
    return Form(K, nvars, d, terms, check=False)


def _parse_scalar(field, tok):
    if tok.startswith("["):
        if not hasattr(field, "conj"):
            raise ValueError(f"{field.spec} has no extension coefficients")
        return field.parse(tok)
    return field.parse(tok)


def format_form(f):
    """Inverse of :func:`parse_form` (coefficient one omitted)."""
    if not f:
        return "0"
    K = f.field
    out = []
    for m, c in f.terms:
        negative = False
        text = K.format(c)
        if text.startswith("-"):
            negative, text = True, text[1:]
        mono = "*".join(
            (f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}") for i, e in enumerate(m) if e
        )
        if not mono:
            piece = text
        elif text == "1":
            piece = mono
        else:
            piece = f"{text}*{mono}"
        if not out:
            out.append(("-" if negative else "") + piece)
        else:
            out.append((" - " if negative else " + ") + piece)
    return "".join(out)


def parse_forms(lines, field, nvars=None):
    """Parse one polynomial per line; ``#`` starts a comment; blank lines skipped."""
    items = []
    for lineno, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            items.append((lineno, body))
    if nvars is None:
        nvars = 1
        for _, body in items:
            for m in re.finditer(r"x(\d+)", body):
                nvars = max(nvars, int(m.group(1)))
    return [parse_form(body, field, nvars, line=lineno) for lineno, body in items]


def random_form(field, nvars, degree, rng, density=1.0):
    """Uniform random form (each coefficient kept with probability ``density``)."""
    terms = {}
    for m in monomials(nvars, degree):
        if density >= 1.0 or rng.random() < density:
            terms[m] = field.random(rng)
    return Form(field, nvars, degree, terms, check=False)


def linear_matrix(forms, field, nvars):
    """Coefficient matrix (rows = linear forms)."""
    return Matrix(field, [f.linear_coeffs() for f in forms], nvars)
