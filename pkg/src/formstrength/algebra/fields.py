"""Exact scalar fields.

Elements are plain Python values so arithmetic stays cheap:

* ``PrimeField``: ints in ``[0, p)``
* ``BinaryField``: ints in ``[0, 2^e)``, the bit pattern of a polynomial in the
  fixed modulus basis
* ``RationalField``: ``fractions.Fraction``
* ``QuadraticExtension``: pairs ``(a, b)`` meaning ``a + b*w`` over a base field

A field object carries the operations; elements never know their field.
"""

from fractions import Fraction
from functools import lru_cache
import math
import re

# Primitive polynomials x^e + ... used as GF(2^e) moduli (bit i = coefficient of x^i).
BINARY_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

PRIME_LIMIT = 2 ** 31


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


class Field:
    """Common interface. Subclasses fill in the arithmetic."""

    char = 0
    order = None  # None for infinite fields
    spec = "?"

    # arithmetic -------------------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def is_zero(self, a):
        return a == self.zero

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def dot(self, u, v):
        acc = self.zero
        for a, b in zip(u, v):
            if a != self.zero and b != self.zero:
                acc = self.add(acc, self.mul(a, b))
        return acc

    # square roots -------------------------------------------------------------
    def is_square(self, a):
        return self.sqrt(a) is not None

    def sqrt(self, a):
        raise NotImplementedError

    # misc -----------------------------------------------------------------------
    @property
    def is_finite(self):
        return self.order is not None

    @property
    def base(self):
        """The field this one extends (itself for a base field)."""
        return self

    def embed(self, a):
        """Map an element of ``self.base`` into this field."""
        return a

    def extension(self, d=None):
        """The quadratic extension used for closure-semantics witnesses."""
        return QuadraticExtension(self, d)

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)


class PrimeField(Field):
    def __init__(self, p):
        if not (2 <= p < PRIME_LIMIT) or not is_prime(p):
            raise ValueError(f"GF({p}): modulus must be a prime below 2^31")
        self.p = p
        self.char = p
        self.order = p
        self.spec = f"gf:{p}"
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def random(self, rng):
        return int(rng.integers(0, self.p))

    def sqrt(self, a):
        a %= self.p
        if a == 0 or self.p == 2:
            return a
        return _tonelli_shanks(self, a)

    def parse(self, text):
        return int(text.strip()) % self.p

    def format(self, a):
        return str(a)

    def to_int(self, a):
        return a

    # GF(2) doubles as a characteristic-2 field for trace / Artin-Schreier helpers.
    def trace(self, a):
        return a if self.p == 2 else None

    @property
    def bit_length(self):
        return 1

    def to_bits(self, a):
        return [a]

    def from_bits(self, bits):
        return bits[0]


class BinaryField(Field):
    def __init__(self, e):
        if e not in BINARY_MODULI:
            raise ValueError(f"GF(2^{e}): exponent must be in 1..16")
        self.e = e
        self.modulus = BINARY_MODULI[e]
        self.char = 2
        self.order = 1 << e
        self.spec = f"gf:2^{e}"
        self.zero = 0
        self.one = 1
        self._exp, self._log = _binary_tables(e)

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def from_int(self, n):
        return n & 1

    def elements(self):
        return iter(range(self.order))

    def random(self, rng):
        return int(rng.integers(0, self.order))

    def sqrt(self, a):
        # Frobenius is a bijection; its inverse is x -> x^(2^(e-1)).
        return self.pow(a, 1 << (self.e - 1))

    def trace(self, a):
        """Absolute trace to GF(2), returned as 0 or 1."""
        t, x = 0, a
        for _ in range(self.e):
            t ^= x
            x = self.mul(x, x)
        return t

    def to_bits(self, a):
        return [(a >> i) & 1 for i in range(self.e)]

    def from_bits(self, bits):
        return sum(b << i for i, b in enumerate(bits))

    @property
    def bit_length(self):
        return self.e

    def parse(self, text):
        v = int(text.strip())
        if not 0 <= v < self.order:
            raise ValueError(f"{text!r} is not a bit pattern of GF(2^{self.e})")
        return v

    def format(self, a):
        return str(a)

    def to_int(self, a):
        return a


@lru_cache(maxsize=None)
def _binary_tables(e):
    mod, order = BINARY_MODULI[e], 1 << e
    exp = [0] * (2 * order)
    log = [0] * order
    x = 1
    for i in range(order - 1):
        exp[i] = x
        if i and x == 1:
            raise ValueError(f"modulus for e={e} is not primitive")
        log[x] = i
        x <<= 1
        if x & order:
            x ^= mod
    if x != 1:
        raise ValueError(f"modulus for e={e} is not primitive")
    for i in range(order - 1, 2 * order):
        exp[i] = exp[i - (order - 1)]
    return tuple(exp), tuple(log)


class RationalField(Field):
    char = 0
    order = None
    spec = "q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def pow(self, a, n):
        if n < 0:
            return self.inv(a) ** -n
        return Fraction(a) ** n

    def from_int(self, n):
        return Fraction(n)

    def elements(self):
        raise TypeError("Q is infinite")

    def random(self, rng, height=5):
        return Fraction(int(rng.integers(-height, height + 1)))

    def sqrt(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def parse(self, text):
        return Fraction(text.strip())

    def format(self, a):
        return str(a)

    def to_int(self, a):
        return str(a)


class QuadraticExtension(Field):
    """K(w) with w^2 = d (odd characteristic or Q) or w^2 = w + t (characteristic 2).

    For a finite base the defining element is chosen canonically: the least
    non-square d, or the least t with absolute trace 1. Over Q a non-square
    ``d`` must be supplied.
    """

    def __init__(self, base, d=None):
        if isinstance(base, QuadraticExtension):
            raise ValueError("towers of extensions are not supported")
        self._base = base
        self.char = base.char
        self.order = None if base.order is None else base.order ** 2
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)
        self.artin_schreier = base.char == 2
        if self.artin_schreier:
            self.t = _least_trace_one(base) if d is None else d
            self.d = None
        else:
            if d is None:
                if not base.is_finite:
                    raise ValueError("a quadratic extension of Q needs an explicit non-square")
                d = next(x for x in base.elements() if x != base.zero and base.sqrt(x) is None)
            d = base.parse(str(d))
            if base.sqrt(d) is not None:
                raise ValueError(f"{base.format(d)} is already a square")
            self.d = d
            self.t = None
        tag = base.format(self.t if self.artin_schreier else self.d)
        self.spec = f"{base.spec}[{tag}]"
        self._nonsquare = None

    @property
    def base(self):
        return self._base

    def embed(self, a):
        return (a, self._base.zero)

    def extension(self, d=None):
        raise ValueError("towers of extensions are not supported")

    def in_base(self, x):
        return x[1] == self._base.zero

    def add(self, x, y):
        K = self._base
        return (K.add(x[0], y[0]), K.add(x[1], y[1]))

    def sub(self, x, y):
        K = self._base
        return (K.sub(x[0], y[0]), K.sub(x[1], y[1]))

    def neg(self, x):
        K = self._base
        return (K.neg(x[0]), K.neg(x[1]))

    def mul(self, x, y):
        K = self._base
        a, b = x
        c, e = y
        ac, be = K.mul(a, c), K.mul(b, e)
        cross = K.add(K.mul(a, e), K.mul(b, c))
        if self.artin_schreier:
            return (K.add(ac, K.mul(be, self.t)), K.add(cross, be))
        return (K.add(ac, K.mul(be, self.d)), cross)

    def conj(self, x):
        K = self._base
        a, b = x
        if self.artin_schreier:
            return (K.add(a, b), b)
        return (a, K.neg(b))

    def norm(self, x):
        K = self._base
        a, b = x
        if self.artin_schreier:
            return K.add(K.add(K.mul(a, a), K.mul(a, b)), K.mul(self.t, K.mul(b, b)))
        return K.sub(K.mul(a, a), K.mul(self.d, K.mul(b, b)))

    def inv(self, x):
        n = self.norm(x)
        if n == self._base.zero:
            raise ZeroDivisionError("inverse of zero")
        ninv = self._base.inv(n)
        c = self.conj(x)
        return (self._base.mul(c[0], ninv), self._base.mul(c[1], ninv))

    def from_int(self, n):
        return (self._base.from_int(n), self._base.zero)

    def elements(self):
        els = list(self._base.elements())
        return ((a, b) for b in els for a in els)

    def random(self, rng):
        return (self._base.random(rng), self._base.random(rng))

    def sqrt(self, x):
        K = self._base
        if self.in_base(x):
            s = K.sqrt(x[0])
            if s is not None:
                return (s, K.zero)
            if not self.artin_schreier:
                s = K.sqrt(K.div(x[0], self.d))
                if s is not None:
                    return (K.zero, s)
            if not K.is_finite:
                return None
        if not K.is_finite:
            # Solve (a + b w)^2 = x: a^2 + d b^2 = x0, 2ab = x1.
            return _sqrt_q_extension(self, x)
        if self.artin_schreier:
            return self.pow(x, self.order // 2)
        return _tonelli_shanks(self, x)

    def nonsquare(self):
        if self._nonsquare is None:
            half = (self.order - 1) // 2
            self._nonsquare = next(
                x for x in self.elements() if x != self.zero and self.pow(x, half) != self.one
            )
        return self._nonsquare

    @property
    def bit_length(self):
        return 2 * self._base.bit_length

    def to_bits(self, x):
        return self._base.to_bits(x[0]) + self._base.to_bits(x[1])

    def from_bits(self, bits):
        e = self._base.bit_length
        return (self._base.from_bits(bits[:e]), self._base.from_bits(bits[e:]))

    def parse(self, text):
        text = text.strip()
        if text.startswith("["):
            a, b = text.strip("[]").split(",")
            return (self._base.parse(a), self._base.parse(b))
        return self.embed(self._base.parse(text))

    def format(self, x):
        if self.in_base(x):
            return self._base.format(x[0])
        return f"[{self._base.format(x[0])},{self._base.format(x[1])}]"

    def to_int(self, x):
        return [self._base.to_int(x[0]), self._base.to_int(x[1])]


def _least_trace_one(base):
    if base.char != 2 or not base.is_finite:
        raise ValueError("Artin-Schreier extensions need a binary base field")
    return next(x for x in base.elements() if base.trace(x) == 1)


def _sqrt_q_extension(F, x):
    # Over Q(sqrt d): x0 + x1 w is a square iff its norm is a rational square n and
    # (x0 + n)/2 or (x0 - n)/2 gives a rational a^2 with matching b = x1/(2a).
    K = F.base
    n = K.sqrt(F.norm(x))
    if n is None:
        return None
    for s in (n, -n):
        a = K.sqrt((x[0] + s) / 2)
        if a is None:
            continue
        if a == 0:
            b = K.sqrt(x[0] / F.d) if x[1] == 0 else None
            if b is not None:
                return (K.zero, b)
            continue
        b = x[1] / (2 * a)
        if F.mul((a, b), (a, b)) == x:
            return (a, b)
    return None


def _tonelli_shanks(F, a):
    """Square root in a finite field of odd order, or None."""
    if a == F.zero:
        return a
    q = F.order
    half = (q - 1) // 2
    if F.pow(a, half) != F.one:
        return None
    s, m = 0, q - 1
    while m % 2 == 0:
        s, m = s + 1, m // 2
    if isinstance(F, PrimeField):
        z = next(c for c in range(2, F.p) if pow(c, half, F.p) == F.p - 1)
    else:
        z = F.nonsquare()
    c = F.pow(z, m)
    x = F.pow(a, (m + 1) // 2)
    t = F.pow(a, m)
    r = s
    while t != F.one:
        i, tt = 0, t
        while tt != F.one:
            tt = F.mul(tt, tt)
            i += 1
        b = c
        for _ in range(r - i - 1):
            b = F.mul(b, b)
        x = F.mul(x, b)
        c = F.mul(b, b)
        t = F.mul(t, c)
        r = i
    return x


def artin_schreier_solve(F, c):
    """Return s with s^2 + s = c in a finite characteristic-2 field, or None."""
    if F.char != 2 or not F.is_finite:
        raise ValueError("Artin-Schreier equations need a finite field of characteristic 2")
    n = F.bit_length
    # Columns of the GF(2)-linear map s -> s^2 + s on the bit basis.
    cols = []
    for i in range(n):
        bits = [0] * n
        bits[i] = 1
        s = F.from_bits(bits)
        cols.append(F.to_bits(F.add(F.mul(s, s), s)))
    target = F.to_bits(c)
    # Rows r: sum_i cols[i][r] * x_i = target[r]; eliminate over GF(2) with bitmasks.
    rows = []
    for r in range(n):
        mask = sum(cols[i][r] << i for i in range(n))
        rows.append([mask, target[r]])
    pivots = []
    for col in range(n):
        bit = 1 << col
        piv = next((j for j in range(len(pivots), n) if rows[j][0] & bit), None)
        if piv is None:
            continue
        k = len(pivots)
        rows[k], rows[piv] = rows[piv], rows[k]
        for j in range(n):
            if j != k and rows[j][0] & bit:
                rows[j][0] ^= rows[k][0]
                rows[j][1] ^= rows[k][1]
        pivots.append(col)
    if any(rows[j][1] for j in range(len(pivots), n)):
        return None
    sol = [0] * n
    for k, col in enumerate(pivots):
        sol[col] = rows[k][1]
    return F.from_bits(sol)


_SPEC_RE = re.compile(r"^gf:(\d+)(?:\^(\d+))?$")


@lru_cache(maxsize=None)
def parse_field(spec):
    """Parse ``"q"``, ``"gf:p"`` or ``"gf:2^e"`` into a (cached) field object."""
    text = spec.strip().lower()
    if text in ("q", "qq", "rationals"):
        return RationalField()
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"bad field spec {spec!r}; expected 'q', 'gf:p' or 'gf:2^e'")
    p = int(m.group(1))
    if m.group(2) is None:
        return PrimeField(p)
    e = int(m.group(2))
    if p != 2:
        raise ValueError("only prime fields and binary fields GF(2^e) are supported")
    if e == 1:
        return PrimeField(2)
    return BinaryField(e)


def field_from_order(q):
    """GF(q) for q prime or a power of two."""
    if is_prime(q):
        return parse_field(f"gf:{q}")
    e = q.bit_length() - 1
    if q == 1 << e:
        return parse_field(f"gf:2^{e}")
    raise ValueError(f"no supported field of order {q}")
