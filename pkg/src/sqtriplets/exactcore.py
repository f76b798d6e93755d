"""Exact rational linear algebra and the binomial transition matrix.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere in the package.  Vectors are plain lists of Fractions and
matrices are :class:`RatMatrix` instances (a thin wrapper that remembers its
shape, so that 0 x k and k x 0 matrices behave).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "RatMatrix",
    "EchelonSpace",
    "binom",
    "transition_matrix",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "primitive_vector",
    "DegenerateSolutionError",
    "parse_rational",
    "format_rational",
]


class DegenerateSolutionError(ValueError):
    """Raised when a zero vector is asked to be normalized."""


def binom(x: int, p: int) -> int:
    """Binomial coefficient C(x, p) for any integer x.

    Uses the falling factorial x(x-1)...(x-p+1)/p!, so negative x is fine.
    Negative p gives 0.
    """
    if p < 0:
        return 0
    num = 1
    den = 1
    for k in range(p):
        num *= x - k
        den *= k + 1
    return num // den


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RatMatrix:
    """Dense rectangular matrix of Fractions with a fixed shape."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            self.data = [[Fraction(x) for x in row] for row in data]
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise ValueError(f"data does not have shape {rows}x{cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        columns = list(columns)
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = Fraction(1)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def copy(self) -> "RatMatrix":
        m = RatMatrix(self.rows, self.cols)
        m.data = [row[:] for row in self.data]
        return m

    def transpose(self) -> "RatMatrix":
        m = RatMatrix(self.cols, self.rows)
        m.data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return m

    T = property(transpose)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = RatMatrix(self.rows, other.cols)
        ocols = other.cols
        odata = other.data
        for i, row in enumerate(self.data):
            acc = [Fraction(0)] * ocols
            for k, a in enumerate(row):
                if a:
                    orow = odata[k]
                    for j in range(ocols):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
            out.data[i] = acc
        return out

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.data]

    def __mul__(self, scalar) -> "RatMatrix":
        s = Fraction(scalar)
        m = RatMatrix(self.rows, self.cols)
        m.data = [[s * x for x in row] for row in self.data]
        return m

    __rmul__ = __mul__

    def __neg__(self) -> "RatMatrix":
        return self * -1

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        m = RatMatrix(self.rows, self.cols)
        m.data = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        return m

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __pow__(self, k: int) -> "RatMatrix":
        if self.rows != self.cols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out = RatMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        m = RatMatrix(len(row_idx), len(col_idx))
        m.data = [[self.data[i][j] for j in col_idx] for i in row_idx]
        return m

    def column(self, j: int) -> list:
        return [row[j] for row in self.data]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list:
        return [row[:] for row in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def transition_matrix(n: int) -> RatMatrix:
    """The (n+1) x (n+1) matrix with entry (i, j) = (-1)^j C(n-j, i)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    data = [[(-1) ** j * binom(n - j, i) for j in range(n + 1)] for i in range(n + 1)]
    return RatMatrix(n + 1, n + 1, data)


def rref(m: RatMatrix):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    a = [row[:] for row in m.data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        if inv != 1:
            a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(rows):
            if i != r:
                f = a[i][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    out = RatMatrix(rows, cols)
    out.data = a
    return out, pivots


def _integer_rank(a: list) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        prow = a[r]
        for i in range(r + 1, rows):
            f = a[i][c]
            row = a[i]
            a[i] = [(p * x - f * y) // prev for x, y in zip(row, prow)]
        prev = p
        r += 1
        if r == rows:
            break
    return r


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if all(x.denominator == 1 for row in m.data for x in row):
        return _integer_rank([[x.numerator for x in row] for row in m.data])
    return len(rref(m)[1])


def nullspace(m: RatMatrix) -> list:
    """Basis of the right nullspace.

    One vector per free column f of the reduced echelon form: 1 at f, minus
    the reduced entries at the pivot columns, zero elsewhere.  The basis is
    therefore fully determined by the matrix.
    """
    cols = m.cols
    if m.rows == 0:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red.data[r][f]
        basis.append(v)
    return basis


def solve(m: RatMatrix, b: Sequence):
    """One solution x of m x = b, or None if inconsistent.

    Free variables are set to zero, so the answer is unique whenever the
    columns of m are independent.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    aug = RatMatrix(m.rows, m.cols + 1, [list(row) + [bi] for row, bi in zip(m.data, b)])
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red.data[r][m.cols]
    return x


class EchelonSpace:
    """Incrementally built subspace of k^dim supporting membership tests.

    Stored rows are kept with a leading 1 and zeros at the pivots of all
    earlier rows, so reducing a vector in insertion order clears every pivot.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows = []  # list of (pivot, row)

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        w = [Fraction(x) for x in v]
        for p, row in self._rows:
            f = w[p]
            if f:
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Add v; returns True when it enlarged the space."""
        w = self.reduce(v)
        for p, x in enumerate(w):
            if x:
                inv = 1 / x
                self._rows.append((p, [y * inv for y in w]))
                return True
        return False

    def extend(self, vectors: Iterable[Sequence]) -> None:
        for v in vectors:
            self.add(v)


def primitive_vector(v: Sequence) -> list:
    """Scale a rational vector to a primitive integer vector.

    Denominators are cleared, the gcd of the entries is divided out and the
    sign is chosen so the first nonzero entry is positive.
    """
    v = [Fraction(x) for x in v]
    if not any(v):
        raise DegenerateSolutionError("zero vector has no primitive representative")
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return ints
