"""Dense exact linear algebra over cyclotomic fields."""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import NotSquare, Singular, Inconsistent, OrderCapExceeded
from .exactnum import CycloNumber, rational


def _c(x, n):
    if isinstance(x, CycloNumber):
        return x if x.order == n else x.embed(lcm(n, x.order))
    return rational(x, n)


class Matrix:
    """rows x cols matrix of CycloNumbers in a common field order."""

    __slots__ = ("rows", "cols", "order", "data", "_hash")

    def __init__(self, rows_data, order=None):
        rows_data = [list(r) for r in rows_data]
        n = 1 if order is None else order
        for r in rows_data:
            for x in r:
                if isinstance(x, CycloNumber):
                    n = lcm(n, x.order)
        self.rows = len(rows_data)
        self.cols = len(rows_data[0]) if rows_data else 0
        if any(len(r) != self.cols for r in rows_data):
            raise ValueError("ragged matrix")
        self.order = n
        self.data = tuple(tuple(_c(x, n).embed(n) if isinstance(x, CycloNumber) else rational(x, n) for x in r)
                          for r in rows_data)
        self._hash = None

    @classmethod
    def _make(cls, data, order):
        m = cls.__new__(cls)
        m.data = tuple(tuple(r) for r in data)
        m.rows = len(m.data)
        m.cols = len(m.data[0]) if m.data else 0
        m.order = order
        m._hash = None
        return m

    @classmethod
    def identity(cls, n, order=1):
        one, zero = rational(1, order), rational(0, order)
        return cls._make([[one if i == j else zero for j in range(n)] for i in range(n)], order)

    @classmethod
    def zeros(cls, r, c, order=1):
        zero = rational(0, order)
        return cls._make([[zero] * c for _ in range(r)], order)

    @classmethod
    def diag(cls, entries, order=None):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], order)

    @classmethod
    def from_columns(cls, columns, order=None):
        return cls([list(r) for r in zip(*columns)], order)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self):
        return [list(r) for r in self.data]

    def with_order(self, n):
        if n == self.order:
            return self
        return Matrix._make([[x.embed(n) for x in r] for r in self.data], n)

    def _align(self, other):
        n = lcm(self.order, other.order)
        return self.with_order(n), other.with_order(n)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        a, b = self._align(other)
        return Matrix._make([[x + y for x, y in zip(r, s)] for r, s in zip(a.data, b.data)], a.order)

    def __sub__(self, other):
        a, b = self._align(other)
        return Matrix._make([[x - y for x, y in zip(r, s)] for r, s in zip(a.data, b.data)], a.order)

    def __neg__(self):
        return Matrix._make([[-x for x in r] for r in self.data], self.order)

    def scale(self, c):
        n = self.order
        if isinstance(c, CycloNumber):
            n = lcm(n, c.order)
            c = c.embed(n)
        src = self.with_order(n)
        return Matrix._make([[x * c for x in r] for r in src.data], n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scale(other)
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self._align(other)
        bt = list(zip(*b.data))
        zero = rational(0, a.order)
        out = []
        for r in a.data:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for col in bt:
                s = zero
                for k, x in nz:
                    y = col[k]
                    if y:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Matrix._make(out, a.order)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scale(other)
        return NotImplemented

    def apply(self, vec):
        """Matrix times column vector (sequence)."""
        n = self.order
        for x in vec:
            if isinstance(x, CycloNumber):
                n = lcm(n, x.order)
        v = [_c(x, n).embed(n) for x in vec]
        a = self.with_order(n)
        out = []
        for r in a.data:
            s = rational(0, n)
            for x, y in zip(r, v):
                if x and y:
                    s = s + x * y
            out.append(s)
        return tuple(out)

    def transpose(self):
        return Matrix._make(list(zip(*self.data)), self.order)

    T = property(transpose)

    def __pow__(self, k):
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.rows, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.data)
        return self._hash

    def is_identity(self):
        return all((x == 1) if i == j else (not x)
                   for i, r in enumerate(self.data) for j, x in enumerate(r))

    def __repr__(self):
        return "Matrix(" + repr([[str(x) for x in r] for r in self.data]) + ")"


def det(A: Matrix):
    """Determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise NotSquare("determinant of a non-square matrix")
    n, N = A.rows, A.order
    if n == 0:
        return rational(1, N)
    M = [list(r) for r in A.data]
    sign = 1
    prev_inv = rational(1, N)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return rational(0, N)
        piv = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                v = piv * M[i][j]
                if mik and M[k][j]:
                    v = v - mik * M[k][j]
                M[i][j] = v * prev_inv
            M[i][k] = rational(0, N)
        prev_inv = piv.inverse()
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def det_cofactor(A: Matrix):
    """Laplace expansion; reference implementation for small n."""
    if A.rows != A.cols:
        raise NotSquare("determinant of a non-square matrix")
    return _laplace([list(r) for r in A.data], A.order)


def _laplace(M, N):
    n = len(M)
    if n == 0:
        return rational(1, N)
    if n == 1:
        return M[0][0]
    s = rational(0, N)
    for j in range(n):
        if M[0][j]:
            minor = [r[:j] + r[j + 1:] for r in M[1:]]
            t = M[0][j] * _laplace(minor, N)
            s = s + t if j % 2 == 0 else s - t
    return s


def rref(A: Matrix):
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    M = [list(r) for r in A.data]
    rows, cols = A.rows, A.cols
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv if x else x for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y if y else x for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Matrix._make(M, A.order) if M else A, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def inverse(A: Matrix) -> Matrix:
    if A.rows != A.cols:
        raise NotSquare("inverse of a non-square matrix")
    n, N = A.rows, A.order
    aug = Matrix._make([list(r) + list(e) for r, e in zip(A.data, Matrix.identity(n, N).data)], N)
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Matrix._make([r[n:] for r in R.data], N)


def kernel(A: Matrix):
    """Basis of the right null space, one vector per free column."""
    R, piv = rref(A)
    N = A.order
    free = [c for c in range(A.cols) if c not in piv]
    basis = []
    for f in free:
        v = [rational(0, N)] * A.cols
        v[f] = rational(1, N)
        for i, p in enumerate(piv):
            v[p] = -R.data[i][f]
        basis.append(tuple(v))
    return basis


def eigenspace(g: Matrix, lam) -> list:
    n = g.rows
    N = lcm(g.order, lam.order if isinstance(lam, CycloNumber) else 1)
    shifted = g.with_order(N) - Matrix.identity(n, N).scale(lam)
    return kernel(shifted)


def matrix_order(g: Matrix, cap: int = 10000) -> int:
    p = g
    for k in range(1, cap + 1):
        if p.is_identity():
            return k
        p = p * g
    raise OrderCapExceeded(f"order exceeds {cap}")


@dataclass
class Solution:
    particular: tuple
    nullspace: list

    @property
    def unique(self):
        return not self.nullspace


def solve_linear(A: Matrix, b) -> Solution:
    n = A.order
    for x in b:
        if isinstance(x, CycloNumber):
            n = lcm(n, x.order)
    A = A.with_order(n)
    aug = Matrix._make([list(r) + [_c(x, n).embed(n)] for r, x in zip(A.data, b)], n)
    R, piv = rref(aug)
    if A.cols in piv:
        raise Inconsistent("linear system has no solution")
    x = [rational(0, n)] * A.cols
    for i, p in enumerate(piv):
        x[p] = R.data[i][A.cols]
    return Solution(tuple(x), kernel(A))


# -- generic ring matrices (polynomial entries) ------------------------------------

def det_generic(M, zero):
    """Determinant of a small square list-of-lists over any commutative ring.

    Laplace expansion along the first row with memoised minors, so the cost is
    O(2^n n) ring operations.
    """
    n = len(M)
    memo = {}

    def minor(r, cols):
        if r == n:
            return None  # empty product marker
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = zero
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            a = M[r][j]
            if a:
                sub = minor(r + 1, cols | (1 << j))
                t = a if sub is None else a * sub
                acc = acc + t if sign > 0 else acc - t
            sign = -sign
        memo[key] = acc
        return acc

    if n == 0:
        raise ValueError("empty matrix")
    return minor(0, 0)


def adjugate_generic(M, zero):
    """adj(M) with adj(M)[i][j] = (-1)^(i+j) det(M without row j, column i)."""
    n = len(M)
    if n == 1:
        return [[zero + 1]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [r[:i] + r[i + 1:] for k, r in enumerate(M) if k != j]
            d = det_generic(sub, zero)
            out[i][j] = d if (i + j) % 2 == 0 else -d
    return out
