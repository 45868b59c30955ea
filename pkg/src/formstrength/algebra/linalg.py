"""Dense exact linear algebra over the fields of :mod:`formstrength.algebra.fields`.

Everything is plain Gaussian elimination with the lowest-index pivot, so
kernels and echelon forms are reproducible across runs.
"""


class Matrix:
    """Immutable dense matrix; ``rows`` is a tuple of tuples of field elements."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field, m, n):
        return cls(field, [[field.zero] * n for _ in range(m)], n)

    @classmethod
    def from_ints(cls, field, rows):
        return cls(field, [[field.from_int(v) for v in r] for r in rows])

    @classmethod
    def from_columns(cls, field, cols, nrows=None):
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field.spec}]({body})"

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def T(self):
        return Matrix(self.field, list(zip(*self.rows)) if self.nrows else [], self.nrows)

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return Matrix(self.field, matmul(self.field, self.rows, other.rows, other.ncols), other.ncols)
        return NotImplemented

    def apply(self, v):
        """Matrix times column vector, as a list."""
        F = self.field
        return [F.dot(r, v) for r in self.rows]

    def __add__(self, other):
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c):
        F = self.field
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def map(self, field, fn):
        return Matrix(field, [[fn(a) for a in r] for r in self.rows], self.ncols)

    def is_symmetric(self):
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def is_alternating(self):
        F = self.field
        n = self.nrows
        if n != self.ncols:
            return False
        return all(self.rows[i][i] == F.zero for i in range(n)) and all(
            self.rows[i][j] == F.neg(self.rows[j][i]) for i in range(n) for j in range(i)
        )

    def delete(self, i, j=None):
        """Drop row ``i`` and column ``j`` (defaults to ``i``)."""
        j = i if j is None else j
        return Matrix(
            self.field,
            [r[:j] + r[j + 1:] for k, r in enumerate(self.rows) if k != i],
            self.ncols - 1,
        )


def matmul(F, A, B, ncols=None):
    if ncols is None:
        ncols = len(B[0]) if B else 0
    cols = list(zip(*B)) if B else [()] * ncols
    return [[F.dot(r, c) for c in cols] for r in A]


def rref_rows(F, rows, ncols):
    """Reduced row echelon form of a list of rows.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows (pivot
    entries equal to one) and ``pivots[k]`` is the pivot column of ``R[k]``.
    """
    R = [list(r) for r in rows]
    zero = F.zero
    pivots = []
    top = 0
    for col in range(ncols):
        piv = None
        for i in range(top, len(R)):
            if R[i][col] != zero:
                piv = i
                break
        if piv is None:
            continue
        R[top], R[piv] = R[piv], R[top]
        prow = R[top]
        inv = F.inv(prow[col])
        if inv != F.one:
            prow = [F.mul(inv, a) for a in prow]
            R[top] = prow
        for i in range(len(R)):
            if i != top:
                c = R[i][col]
                if c != zero:
                    row = R[i]
                    R[i] = [F.sub(a, F.mul(c, b)) if b != zero else a for a, b in zip(row, prow)]
        pivots.append(col)
        top += 1
        if top == len(R):
            break
    return R[:top], pivots


def rref(M):
    R, pivots = rref_rows(M.field, M.rows, M.ncols)
    return Matrix(M.field, R, M.ncols), pivots


def rank(M):
    """Row rank by exact elimination."""
    return len(rref_rows(M.field, M.rows, M.ncols)[1])


def rank_rows(F, rows, ncols):
    return len(rref_rows(F, rows, ncols)[1])


def kernel_rows(F, rows, ncols):
    """Basis of the right kernel of the matrix with the given rows."""
    R, pivots = rref_rows(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for k, pc in enumerate(pivots):
            v[pc] = F.neg(R[k][free])
        basis.append(v)
    return basis


def kernel_basis(M):
    """Right kernel: list of column vectors ``v`` with ``M v = 0``."""
    return kernel_rows(M.field, M.rows, M.ncols)


def det(M):
    F = M.field
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    A = [list(r) for r in M.rows]
    result = F.one
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            result = F.neg(result)
        p = A[col][col]
        result = F.mul(result, p)
        pinv = F.inv(p)
        for i in range(col + 1, n):
            c = A[i][col]
            if c != F.zero:
                c = F.mul(c, pinv)
                A[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(A[i], A[col])]
    return result


def pfaffian(M):
    """Pfaffian of an alternating matrix of even size."""
    F = M.field
    n = M.nrows
    if n != M.ncols or n % 2:
        raise ValueError("Pfaffian needs an even-sized square matrix")
    if not M.is_alternating():
        raise ValueError("Pfaffian needs an alternating matrix")
    A = [list(r) for r in M.rows]
    zero = F.zero
    result = F.one

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in A:
            r[i], r[j] = r[j], r[i]

    def add_multiple(target, source, c):
        # row_t += c row_s and col_t += c col_s (a congruence, keeps Pf)
        A[target] = [F.add(a, F.mul(c, b)) for a, b in zip(A[target], A[source])]
        for r in A:
            r[target] = F.add(r[target], F.mul(c, r[source]))

    for k in range(0, n, 2):
        j = next((j for j in range(k + 1, n) if A[k][j] != zero), None)
        if j is None:
            return zero
        if j != k + 1:
            swap(k + 1, j)
            result = F.neg(result)
        a = A[k][k + 1]
        result = F.mul(result, a)
        ainv = F.inv(a)
        for i in range(k + 2, n):
            if A[k][i] != zero:
                add_multiple(i, k + 1, F.neg(F.mul(A[k][i], ainv)))
        b = A[k + 1][k]
        binv = F.inv(b)
        for i in range(k + 2, n):
            if A[k + 1][i] != zero:
                add_multiple(i, k, F.neg(F.mul(A[k + 1][i], binv)))
    return result


def solve_rows(F, rows, ncols, rhs):
    """One solution ``x`` of ``A x = rhs`` (free variables zero), or ``None``."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref_rows(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for k, pc in enumerate(pivots):
        x[pc] = R[k][ncols]
    return x


def solve(M, b):
    return solve_rows(M.field, M.rows, M.ncols, b)


def inverse(M):
    F = M.field
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(M.rows)]
    R, pivots = rref_rows(F, aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return Matrix(F, [r[n:] for r in R], n)


def random_matrix(F, m, n, rng):
    return Matrix(F, [[F.random(rng) for _ in range(n)] for _ in range(m)], n)


def random_invertible(F, n, rng):
    while True:
        A = random_matrix(F, n, n, rng)
        if rank(A) == n:
            return A


def random_alternating(F, n, rng):
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = F.random(rng)
            rows[i][j] = a
            rows[j][i] = F.neg(a)
    return Matrix(F, rows, n)
