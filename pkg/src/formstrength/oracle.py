"""Independent verification machinery.

* a Buchberger Groebner-basis engine (normal selection with the product and
  chain criteria; reduced monic output) plus queries built on it;
* exhaustive brute-force collapse search over small finite fields.

Every expensive routine takes a :class:`Budget`; running out raises
:class:`BudgetExceeded`, which callers report as "skipped", never as failure.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb

from formstrength.forms import Form, LinearElimination, monomials


class BudgetExceeded(RuntimeError):
    """A verification ran past its configured budget; the outcome is indeterminate."""


@dataclass
class Budget:
    max_pairs: int = 200_000
    max_degree: int = 16
    max_candidates: int = 5_000_000


class MonomialOrder:
    """grevlex (default) or lex, optionally after permuting variable priority."""

    def __init__(self, name="grevlex", priority=None):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self.priority = tuple(priority) if priority is not None else None

    def key(self, m):
        if self.priority is not None:
            m = tuple(m[i] for i in self.priority)
        if self.name == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.name, self.priority) == (other.name, other.priority)

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"


GREVLEX = MonomialOrder("grevlex")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Poly:
    """Sparse polynomial as a dict plus a cached leading monomial."""

    __slots__ = ("terms", "lm")

    def __init__(self, terms, key):
        self.terms = terms
        self.lm = max(terms, key=key) if terms else None


class GroebnerBasis:
    def __init__(self, forms, order, field, nvars):
        self.forms = forms
        self.order = order
        self.field = field
        self.nvars = nvars

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def leading_monomials(self):
        return [max(f.support(), key=self.order.key) for f in self.forms]

    def is_unit(self):
        return any(f.degree == 0 for f in self.forms)

    def reduce(self, f):
        """Normal form of ``f`` modulo the basis."""
        key = self.order.key
        K = self.field
        basis = [(_Poly(dict(g._terms), key)) for g in self.forms]
        rem = _reduce(dict(f._terms), basis, K, key)
        return Form(K, self.nvars, f.degree, rem, check=False)

    def contains(self, f):
        return not self.reduce(f)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.forms == other.forms

    def __repr__(self):
        return f"GroebnerBasis({[str(f) for f in self.forms]})"


def _reduce(terms, basis, K, key, budget_steps=None):
    """Full reduction; returns the remainder dict."""
    p = dict(terms)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        g = next((g for g in basis if _divides(g.lm, m)), None)
        if g is None:
            rem[m] = p.pop(m)
            continue
        q = _quot(m, g.lm)
        factor = K.div(c, g.terms[g.lm])
        for gm, gc in g.terms.items():
            mm = tuple(a + b for a, b in zip(gm, q))
            v = K.sub(p.get(mm, K.zero), K.mul(factor, gc))
            if v == K.zero:
                p.pop(mm, None)
            else:
                p[mm] = v
    return rem


def _spoly(f, g, K):
    L = _lcm(f.lm, g.lm)
    qf, qg = _quot(L, f.lm), _quot(L, g.lm)
    cf, cg = f.terms[f.lm], g.terms[g.lm]
    out = {}
    for m, c in f.terms.items():
        mm = tuple(a + b for a, b in zip(m, qf))
        out[mm] = K.mul(c, cg)
    for m, c in g.terms.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        v = K.sub(out.get(mm, K.zero), K.mul(c, cf))
        if v == K.zero:
            out.pop(mm, None)
        else:
            out[mm] = v
    return out


def groebner(gens, order=None, budget=None):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    order = order or GREVLEX
    budget = budget or Budget()
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (zero forms fix the ring)")
    K = gens[0].field
    n = gens[0].nvars
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerBasis([], order, K, n)
    key = order.key
    G = []
    for g in gens:
        rem = _reduce(g._terms, G, K, key)
        if rem:
            G.append(_Poly(rem, key))
    pairs = set()
    for j in range(len(G)):
        for i in range(j):
            pairs.add((i, j))
    processed = 0

    def pair_key(ij):
        L = _lcm(G[ij[0]].lm, G[ij[1]].lm)
        return (sum(L), key(L), ij)

    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        fi, fj = G[i], G[j]
        if fi is None or fj is None:
            continue
        L = _lcm(fi.lm, fj.lm)
        if sum(L) > budget.max_degree:
            raise BudgetExceeded(f"S-pair degree {sum(L)} exceeds cap {budget.max_degree}")
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        # chain criterion
        if any(
            k not in (i, j)
            and G[k] is not None
            and _divides(G[k].lm, L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded(f"more than {budget.max_pairs} S-pairs")
        s = _spoly(fi, fj, K)
        active = [g for g in G if g is not None]
        rem = _reduce(s, active, K, key)
        if not rem:
            continue
        h = _Poly(rem, key)
        if sum(h.lm) == 0:
            G = [_Poly({h.lm: K.one}, key)]
            pairs = set()
            break
        G.append(h)
        t = len(G) - 1
        for k in range(t):
            if G[k] is not None:
                pairs.add((k, t))
    return GroebnerBasis(_interreduce(G, K, key, n), order, K, n)


def _interreduce(G, K, key, n):
    polys = [g for g in G if g is not None]
    # drop elements whose leading monomial is divisible by another's
    minimal = []
    for idx, g in enumerate(polys):
        if any(
            _divides(h.lm, g.lm) and (h.lm != g.lm or jdx < idx)
            for jdx, h in enumerate(polys)
            if jdx != idx
        ):
            continue
        minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = [h for jdx, h in enumerate(minimal) if jdx != idx]
        lead_c = g.terms[g.lm]
        tail = {m: c for m, c in g.terms.items() if m != g.lm}
        rem = _reduce(tail, others, K, key)
        inv = K.inv(lead_c)
        terms = {m: K.mul(inv, c) for m, c in rem.items()}
        terms[g.lm] = K.one
        out.append(terms)
    forms = [Form(K, n, sum(next(iter(t))), t, check=False) for t in out]
    forms.sort(key=lambda f: key(max(f.support(), key=key)))
    return forms


def krull_dim(gb):
    """Largest set of variables containing the support of no leading monomial."""
    if gb.is_unit():
        raise ValueError("empty variety: the ideal is the unit ideal")
    n = gb.nvars
    if not gb.forms:
        return n
    masks = []
    for m in gb.leading_monomials():
        mask = sum(1 << i for i, e in enumerate(m) if e)
        masks.append(mask)
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            smask = sum(1 << i for i in S)
            if all(mask & ~smask for mask in masks):
                return size
    return 0


def hilbert_function(gb, t_max, nvars=None):
    """dim_K (R/I)_t for t = 0..t_max, by counting standard monomials."""
    n = gb.nvars if nvars is None else nvars
    if gb.is_unit():
        return [0] * (t_max + 1)
    lms = gb.leading_monomials()
    out = []
    for t in range(t_max + 1):
        if not lms:
            out.append(comb(n - 1 + t, t))
            continue
        out.append(sum(1 for m in monomials(n, t) if not any(_divides(l, m) for l in lms)))
    return out


def koszul_hilbert(nvars, h, t_max):
    """Coefficients of (1 - t^2)^h / (1 - t)^N up to t_max."""
    num = [0] * (t_max + 1)
    for j in range(h + 1):
        if 2 * j <= t_max:
            num[2 * j] = (-1) ** j * comb(h, j)
    out = []
    for t in range(t_max + 1):
        out.append(sum(num[s] * comb(nvars - 1 + t - s, t - s) for s in range(t + 1)))
    return out


def is_regular_sequence(forms, budget=None):
    """Homogeneous forms are a regular sequence iff codim equals their number."""
    forms = list(forms)
    if not forms:
        return True
    if any(not f for f in forms):
        return False
    for f in forms:
        if f.degree < 1:
            raise ValueError("forms must have positive degree")
    n = forms[0].nvars
    gb = groebner(forms, budget=budget)
    return krull_dim(gb) == n - len(forms)


def jacobian_minors(forms):
    """All maximal minors of the Jacobian matrix of ``forms``."""
    h = len(forms)
    n = forms[0].nvars
    J = [f.gradient() for f in forms]
    out = []
    for cols in combinations(range(n), h):
        m = _det_forms([[J[i][c] for c in cols] for i in range(h)])
        if m:
            out.append(m)
    return out


def _det_forms(rows):
    if len(rows) == 1:
        return rows[0][0]
    acc = None
    for k, e in enumerate(rows[0]):
        if not e:
            continue
        sub = _det_forms([r[:k] + r[k + 1:] for r in rows[1:]])
        if not sub:
            continue
        term = e * sub
        if k % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        first = rows[0][0]
        deg = sum(r[0].degree for r in rows)
        return Form.zero(first.field, first.nvars, deg)
    return acc


def singular_codim(forms, budget=None):
    """Height of (forms) + (maximal Jacobian minors), i.e. codim of the singular locus."""
    forms = [f for f in forms if f]
    if not forms:
        raise ValueError("no forms")
    n = forms[0].nvars
    gens = list(forms) + jacobian_minors(forms)
    gb = groebner(gens, budget=budget)
    if gb.is_unit():
        return n
    return n - krull_dim(gb)


# ---------------------------------------------------------------------------
# Brute-force collapse search


@dataclass
class BruteWitness:
    pairs: list
    field: object

    def expand(self):
        acc = None
        for G, H in self.pairs:
            acc = G * H if acc is None else acc + G * H
        return acc


def _quad_index(n):
    mons = monomials(n, 2)
    return mons, {m: k for k, m in enumerate(mons)}


def _linear_forms(E, n, projective):
    elems = list(E.elements())
    if not projective:
        return [tuple(v) for v in product(elems, repeat=n)]
    out = []
    for lead in range(n):
        head = (E.zero,) * lead + (E.one,)
        for tail in product(elems, repeat=n - lead - 1):
            out.append(head + tail)
    return out


@lru_cache(maxsize=8)
def _rank_le2_table(E, n):
    """Map: coefficient vector of l1*l2 -> (l1, l2), first occurrence in a fixed order."""
    mons, index = _quad_index(n)
    size = len(mons)
    table = {}
    zero = E.zero
    for l1 in _linear_forms(E, n, projective=True):
        for l2 in _linear_forms(E, n, projective=False):
            vec = [zero] * size
            for i in range(n):
                if l1[i] == zero:
                    continue
                for j in range(n):
                    if l2[j] == zero:
                        continue
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    k = index[tuple(e)]
                    vec[k] = E.add(vec[k], E.mul(l1[i], l2[j]))
            key = tuple(vec)
            if key not in table:
                table[key] = (l1, l2)
    return table


def brute_strength(F, k, m=2, budget=None):
    """Exhaustive search for a collapse of ``F`` with at most ``k`` products over GF(q^m).

    Degree 2: products of two linear forms, any ``k``. Degree 3: ``k = 1``
    only, by divisibility by every linear form. Returns a :class:`BruteWitness`
    or ``None``.
    """
    K = F.field
    if not K.is_finite:
        raise ValueError("brute force needs a finite field")
    if m not in (1, 2):
        raise ValueError("extension degree must be 1 or 2")
    budget = budget or Budget()
    E = K if m == 1 else K.extension()
    n = F.nvars
    G = F.to_field(E)
    if F.degree == 2:
        q = E.order
        cost = ((q ** n - 1) // (q - 1)) * q ** n
        if cost > budget.max_candidates:
            raise BudgetExceeded(f"{cost} candidate products exceed the budget")
        return _brute_quadric(G, k, E)
    if F.degree == 3:
        if k != 1:
            raise ValueError("degree-3 brute force supports k = 1 only")
        cands = (E.order ** n - 1) // (E.order - 1)
        if cands > budget.max_candidates:
            raise BudgetExceeded(f"{cands} linear forms exceed the budget")
        if not G:
            return BruteWitness([], E)
        for ell in _linear_forms(E, n, projective=True):
            L = Form.linear(E, list(ell))
            cof, rem = LinearElimination([L]).divide(G)
            if not rem:
                return BruteWitness([(L, cof[0])], E)
        return None
    raise ValueError("brute force supports degrees 2 and 3")


def _brute_quadric(G, k, E):
    n = G.nvars
    mons, _ = _quad_index(n)
    table = _rank_le2_table(E, n)
    target = tuple(G.vector(mons))

    def witness(entries):
        return BruteWitness(
            [(Form.linear(E, list(a)), Form.linear(E, list(b))) for a, b in entries], E
        )

    if not G:
        return witness([])
    if k < 1:
        return None

    def search(vec, depth):
        if vec in table:
            return [table[vec]]
        if depth <= 1:
            return None
        for s, pair in table.items():
            rest = tuple(E.sub(a, b) for a, b in zip(vec, s))
            found = search(rest, depth - 1)
            if found is not None:
                return [pair] + found
        return None

    found = search(target, k)
    if found is None:
        return None
    found = [p for p in found if any(c != E.zero for c in p[0]) and any(c != E.zero for c in p[1])]
    return witness(found)
