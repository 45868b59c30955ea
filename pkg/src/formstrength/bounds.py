"""Explicit strength / subalgebra bound functions on arbitrary-precision ints.

Bound values are plain Python ints. Recursions are the normative definitions;
displayed closed forms are kept as separate comparators so that any
disagreement is visible rather than silently reconciled.
"""

from enum import Enum
from functools import lru_cache


class CharClass(str, Enum):
    NotTwoThree = "NotTwoThree"
    Two = "Two"
    Three = "Three"

    @classmethod
    def of(cls, value):
        """Accept a CharClass or its name; an int is read as a characteristic."""
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return {2: cls.Two, 3: cls.Three}.get(value, cls.NotTwoThree)
        for c in cls:
            if c.value.lower() == str(value).lower():
                return c
        raise ValueError(f"unknown characteristic class {value!r}")


class BoundTooLarge(OverflowError):
    """A bound would exceed the configured bit-size guard."""


def _ceil_half(x):
    return -(-x // 2)


def _check_nat(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")


# ---------------------------------------------------------------------------
# Degree 2


def alpha(n):
    """alpha(n) = n - 1: strength making n independent quadrics a regular sequence."""
    if n < 1:
        raise ValueError("alpha needs n >= 1")
    return n - 1


def alpha_eta(eta, n):
    """alpha_eta(1) = ceil((eta+1)/2); alpha_eta(n) = n - 1 + ceil(eta/2) for n >= 2."""
    _check_nat(eta=eta)
    if n < 1:
        raise ValueError("alpha_eta needs n >= 1")
    if n == 1:
        return _ceil_half(eta + 1)
    return n - 1 + _ceil_half(eta)


def _alpha_opt(eta, n):
    return alpha(n) if eta is None else alpha_eta(eta, n)


def A2(n1, n2):
    _check_nat(n1=n1)
    if n2 < 1:
        raise ValueError("A2 needs n2 >= 1")
    return alpha(n2) + n1


def etaA2(eta, n1, n2):
    _check_nat(n1=n1)
    if n2 < 1:
        raise ValueError("etaA2 needs n2 >= 1")
    return alpha_eta(eta, n2) + n1


def etaB2_recursion(eta, n1, n2):
    """The raw recursion B(n1, 0) = n1, B(n1, n2) = B(2 n1 + 2 alpha(n2), n2 - 1)."""
    _check_nat(n1=n1, n2=n2)
    while n2 > 0:
        n1 = 2 * n1 + 2 * _alpha_opt(eta, n2)
        n2 -= 1
    return n1


def etaB2(eta, n1, n2):
    """Normative degree-2 subalgebra bound: the recursion, clamped below at n1 + n2."""
    return max(n1 + n2, etaB2_recursion(eta, n1, n2))


def B2(n1, n2):
    return etaB2(None, n1, n2)


def etaB2_partial_sum(eta, n1, n2, h):
    """Formula (*) after h unrollings: (2^h n1 + sum_t 2^(h-t) alpha(n2 - t), n2 - h)."""
    if not 0 <= h <= n2:
        raise ValueError("need 0 <= h <= n2")
    first = (1 << h) * n1 + sum((1 << (h - t)) * _alpha_opt(eta, n2 - t) for t in range(h))
    return first, n2 - h


def etaB2_resummed(eta, n1, n2):
    """Exact closed form of the raw recursion, from resumming formula (*)."""
    _check_nat(n1=n1, n2=n2)
    if n2 == 0:
        return n1
    p = 1 << n2
    base = p * n1 + 2 * p * (n2 - 2) + 4
    if eta is None:
        return base
    c = _ceil_half(eta)
    return base + c * (2 * p - 2) + 2 * (_ceil_half(eta + 1) - c)


def etaB2_closed_form(eta, n1, n2):
    """The displayed closed forms, evaluated verbatim (comparator only)."""
    _check_nat(n1=n1, n2=n2)
    p = 1 << n2
    if eta is None:
        return p * (n1 + 2 * n2 - 4) + 4
    c = _ceil_half(eta)
    return p * (n1 + 2 * n2 + 2 * c - 4) - c + 5 + (-1) ** eta


def etaB2_audit(eta, n1, n2):
    """Recursion vs displayed closed form, with the discrepancy spelled out."""
    raw = etaB2_recursion(eta, n1, n2)
    value = etaB2(eta, n1, n2)
    closed = etaB2_closed_form(eta, n1, n2)
    return {
        "eta": eta,
        "n1": n1,
        "n2": n2,
        "value": value,
        "recursion": raw,
        "clamped": value != raw,
        "closed_form": closed,
        "discrepancy": closed - value,
    }


def pd_bound_quadrics(n):
    """Projective-dimension bound for ideals generated by n quadrics."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return 1
    return (1 << (n + 1)) * (n - 2) + 4


# ---------------------------------------------------------------------------
# Key functions and J-rank functions


def _require_ntt(cc, what):
    if CharClass.of(cc) is not CharClass.NotTwoThree:
        raise ValueError(f"{what} is only available outside characteristics 2 and 3")


def K3(k, cc=CharClass.NotTwoThree):
    _require_ntt(cc, "K3")
    _check_nat(k=k)
    return 2 * k


def K4(k, cc=CharClass.NotTwoThree):
    _require_ntt(cc, "K4")
    if k < 1:
        raise ValueError("K4 needs k >= 1")
    return 6 * k * (k + 1) * 4 ** (k * (k + 1)) + (k + 1) ** 2


def J2(k):
    """Strength forcing a quadric to have rank (= J-rank) at least k."""
    _check_nat(k=k)
    return max(0, _ceil_half(k - 1))


def J3(cc, k):
    cc = CharClass.of(cc)
    _check_nat(k=k)
    if k == 0:
        return 0
    if cc is CharClass.NotTwoThree:
        return (2 * k + 1) * (k - 1)
    if cc is CharClass.Two:
        return 2 * (k - 1) * (2 * k + 1)
    return 2 * k * k - k


def A3(n, cc=CharClass.NotTwoThree):
    """Strength making n independent cubics a regular sequence: J3(2n - 1)."""
    if n < 1:
        raise ValueError("A3 needs n >= 1")
    return J3(cc, 2 * n - 1)


def _A_prev(i):
    if i == 3:
        return lambda k: alpha(k) if k >= 1 else 0
    if i == 4:
        return lambda k: A3(k) if k >= 1 else 0
    raise ValueError("J_from_K supports i in {3, 4}")


def J_from_K(i, k, A_prev=None):
    """J_i(k) = K_i(k A_{i-1}(k)) + k - 1."""
    if i not in (3, 4):
        raise ValueError("J_from_K supports i in {3, 4}")
    if k < 1:
        raise ValueError("J_from_K needs k >= 1")
    A_prev = A_prev or _A_prev(i)
    arg = k * A_prev(k)
    if i == 3:
        return K3(arg) + k - 1
    if arg < 1:
        raise ValueError(f"K4 argument k*A3(k) = {arg} must be >= 1")
    return K4(arg) + k - 1


def J4(k):
    return J_from_K(4, k)


# ---------------------------------------------------------------------------
# Vector-valued A functions


def _delta(delta):
    delta = tuple(int(x) for x in delta)
    if len(delta) > 4:
        raise ValueError("dimension sequences are limited to degree 4")
    if any(x < 0 for x in delta):
        raise ValueError("dimension sequence entries must be nonnegative")
    return delta


def etaA3(eta, n1, n2, n3, cc=CharClass.NotTwoThree):
    _check_nat(eta=eta, n1=n1, n2=n2, n3=n3)
    if n2 == 0 and n3 == 0:
        raise ValueError("etaA3 needs n2 >= 1 or n3 >= 1")
    b = 2 * (n2 + n3) + eta + (1 if n2 else 0)
    return (0, _ceil_half(b) + n1, J3(cc, b) + n1)


def etaA_SJ(eta, delta, cc=CharClass.NotTwoThree):
    """Key-function construction; degrees >= 3 need characteristic not 2 or 3."""
    delta = _delta(delta)
    _check_nat(eta=eta)
    d = len(delta)
    if d >= 3 and CharClass.of(cc) is not CharClass.NotTwoThree:
        raise ValueError("degree >= 3 in characteristic 2 or 3: use etaA_SJrank")
    n1 = delta[0] if delta else 0
    h = sum(1 for x in delta[1:] if x)
    nprime = sum(delta[1:])
    b = h - 1 + 2 * nprime + eta
    out = [0]
    for i in range(2, d + 1):
        if i == 2:
            out.append(_ceil_half(b) + n1)
        elif i == 3:
            out.append(K3(b * alpha(b)) + b - 1 + n1 if b >= 1 else n1)
        else:
            arg = b * A3(b) if b >= 1 else 0
            if arg < 1:
                raise ValueError("degree-4 entry needs b * A3(b) >= 1")
            out.append(K4(arg) + b - 1 + n1)
    return tuple(out[:d]) if d else ()


def etaA_SJrank(eta, delta, cc=CharClass.NotTwoThree):
    """J-rank construction: entry i is J_i(h - 1 + 2(n - n1) + eta) + n1."""
    delta = _delta(delta)
    _check_nat(eta=eta)
    cc = CharClass.of(cc)
    d = len(delta)
    if d >= 4 and cc is not CharClass.NotTwoThree:
        raise ValueError("no degree-4 J-rank function in characteristic 2 or 3")
    n1 = delta[0] if delta else 0
    h = sum(1 for x in delta[1:] if x)
    arg = max(0, h - 1 + 2 * (sum(delta) - n1) + eta)
    out = [0]
    for i in range(2, d + 1):
        if i == 2:
            out.append(J2(arg) + n1)
        elif i == 3:
            out.append(J3(cc, arg) + n1)
        else:
            out.append(J4(arg) + n1)
    return tuple(out[:d]) if d else ()


def etaA(eta, delta, cc=CharClass.NotTwoThree):
    """SJ outside characteristics 2, 3; SJrank there."""
    if CharClass.of(cc) is CharClass.NotTwoThree:
        return etaA_SJ(eta, delta, cc)
    return etaA_SJrank(eta, delta, cc)


# ---------------------------------------------------------------------------
# General B via the dimension-sequence recursion

DEFAULT_MAX_BITS = 1 << 22
DEFAULT_EXACT_CAP = 64


def _fast_etaB2(eta, n1, n2, max_bits):
    if n2 + max(n1, n2, 1).bit_length() + 4 > max_bits:
        raise BoundTooLarge(f"etaB2({n1}, {n2}) exceeds {max_bits} bits")
    return max(n1 + n2, etaB2_resummed(eta, n1, n2))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def etaB_general(eta, delta, mode="dominating", cc=CharClass.NotTwoThree,
                 cap=DEFAULT_EXACT_CAP, max_bits=DEFAULT_MAX_BITS):
    """eta-B of a dimension sequence of degree <= 4.

    The top nonzero degree i loses one form and 2*etaA_i(delta) new forms go to
    lower degrees: all compositions in ``exact`` mode, every lower degree at
    once in ``dominating`` mode (an upper bound since the function ascends).
    """
    if mode not in ("dominating", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    cc = CharClass.of(cc)
    delta = _delta(delta)
    while delta and delta[-1] == 0:
        delta = delta[:-1]

    @lru_cache(maxsize=None)
    def rec(dl):
        while dl and dl[-1] == 0:
            dl = dl[:-1]
        if len(dl) <= 1:
            return dl[0] if dl else 0
        if len(dl) == 2:
            return _fast_etaB2(eta, dl[0], dl[1], max_bits)
        if eta is None:
            raise ValueError("degrees >= 3 need an explicit eta")
        i = len(dl)
        A_i = etaA(eta, dl, cc)[i - 1]
        new = 2 * A_i
        if new.bit_length() > max_bits:
            raise BoundTooLarge(f"2*etaA_{i} has {new.bit_length()} bits")
        lowered = dl[:-1] + (dl[-1] - 1,)
        if mode == "dominating":
            best = rec(tuple(x + new for x in lowered[:-1]) + (lowered[-1],))
        else:
            if new > cap:
                raise ValueError(f"exact mode would distribute {new} forms (cap {cap})")
            best = 0
            for comp in _compositions(new, i - 1):
                cand = tuple(x + c for x, c in zip(lowered[:-1], comp)) + (lowered[-1],)
                best = max(best, rec(cand))
        return max(sum(dl), best)

    return rec(delta)


def C_bound(r, s, d, eta=None, cc=CharClass.NotTwoThree, max_bits=DEFAULT_MAX_BITS):
    """Projective-dimension bound for cokernels of r x s matrices of degree <= d."""
    for name, v in (("r", r), ("s", s), ("d", d)):
        if v < 1:
            raise ValueError(f"{name} must be >= 1")
    if d > 4:
        raise ValueError("degree limited to 4")
    delta = (r * s * d,) * d
    return etaB_general(eta, delta, "dominating", cc, max_bits=max_bits)


def mvclpse_params(a, k, m):
    """(k_m, b_m) with k_m = (a+1)^m k and b_m = (a+1)^(m-1) a k (b_0 = 0)."""
    _check_nat(a=a, k=k, m=m)
    k_m = (a + 1) ** m * k
    b_m = (a + 1) ** (m - 1) * a * k if m >= 1 else 0
    return k_m, b_m


# Registry used by the CLI: name -> (callable, ordered argument names)
BOUND_FUNCTIONS = {
    "alpha": (alpha, ("n",)),
    "alpha-eta": (alpha_eta, ("eta", "n")),
    "A2": (A2, ("n1", "n2")),
    "etaA2": (etaA2, ("eta", "n1", "n2")),
    "B2": (B2, ("n1", "n2")),
    "etaB2": (etaB2, ("eta", "n1", "n2")),
    "pd-quadrics": (pd_bound_quadrics, ("n",)),
    "K3": (K3, ("k",)),
    "K4": (K4, ("k",)),
    "J3": (lambda cc, k: J3(cc, k), ("cc", "k")),
    "A3": (A3, ("n",)),
    "J-from-K": (lambda i, k: J_from_K(i, k), ("i", "k")),
    "mvclpse": (mvclpse_params, ("a", "k", "m")),
}
