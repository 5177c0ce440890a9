"""Exact rational linear algebra: polynomials, dense matrices, permutations.

Scalars are :class:`fractions.Fraction`, which already keeps values in lowest
terms with a positive denominator.  Everything here is immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

Rational = Fraction


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: a binary float has no business in a zero count.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL.fullmatch(text):
            raise ValueError(f"expected an integer or p/q, got {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Polynomial:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, *roots) -> "Polynomial":
        """Monic polynomial prod(x - r) over the given roots (with multiplicity)."""
        p = cls([1])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        # zero polynomial gets degree -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.leading()
        return Polynomial(c / lc for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lc = divisor.leading()
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for shift in range(len(rem) - dd - 1, -1, -1):
            c = rem[shift + dd] / lc
            quot[shift] = c
            if c:
                for i, d in enumerate(divisor.coeffs):
                    rem[shift + i] -= c * d
        return Polynomial(quot), Polynomial(rem[:dd] if dd > 0 else [])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, m: "Matrix") -> "Matrix":
        """Horner evaluation at a square matrix."""
        n = m.rows
        acc = Matrix.zeros(n, n)
        eye = Matrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + eye.scale(c)
        return acc

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return self.to_string()

    def to_string(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for deg in range(self.degree, -1, -1):
            c = self.coeffs[deg]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if deg == 0:
                body = format_rational(mag)
            else:
                power = var if deg == 1 else f"{var}^{deg}"
                body = power if mag == 1 else f"{format_rational(mag)}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


class Matrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        es = tuple(to_rational(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix size")
        if len(es) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(es)}")
        self.rows = rows
        self.cols = cols
        self.entries: tuple[Fraction, ...] = es

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, (e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if isinstance(other, Matrix):
            return self.shape == other.shape and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(e) for e in r) + "]" for r in self.to_rows())
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix(self.rows, self.cols, (c * e for e in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return Matrix(self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def support(self) -> "Matrix":
        """0/1 matrix marking the nonzero entries."""
        return Matrix(self.rows, self.cols, (int(e != 0) for e in self.entries))

    def flatten(self) -> tuple[Fraction, ...]:
        return self.entries

    def block(self, bi: int, bj: int, size: int) -> "Matrix":
        """The ``size`` x ``size`` sub-block at block coordinates (bi, bj)."""
        return Matrix(size, size, (self[bi * size + r, bj * size + c]
                                   for r in range(size) for c in range(size)))

    def permute(self, images: Sequence[int]) -> "Matrix":
        """Simultaneous row/column reindexing: result[i][j] = self[s(i)][s(j)]."""
        n = self.rows
        return Matrix(n, n, (self.entries[images[i] * n + images[j]] for i in range(n) for j in range(n)))

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            p = aug[c][c]
            aug[c] = [x / p for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Matrix(n, n, (x for r in aug for x in r[n:]))


class Permutation:
    """Bijection of {0..n-1}; ``images[i]`` is the image of i."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"{imgs} is not a permutation of 0..{len(imgs) - 1}")
        self.images = imgs

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self o other)(i) = self(other(i))."""
        return Permutation(self.images[j] for j in other.images)

    def matrix(self) -> Matrix:
        return monomial_matrix(self, [1] * len(self.images))


def _require_square(m: Matrix, what: str) -> None:
    if not m.is_square:
        raise ValueError(f"{what} needs a square matrix, got {m.rows}x{m.cols}")


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; block (i, j) is a[i, j] * b."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = []
    for i, k in product(range(a.rows), range(b.rows)):
        for j in range(a.cols):
            x = a[i, j]
            out.extend(x * y for y in b.row(k))
    return Matrix(rows, cols, out)


def det(m: Matrix) -> Fraction:
    """Determinant by Bareiss fraction-free elimination.

    Entries are first brought to a common denominator so the elimination runs
    on integers and every Bareiss division is exact.
    """
    _require_square(m, "det")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = 1
    for e in m.entries:
        scale = scale * e.denominator // _gcd(scale, e.denominator)
    a = [[int(e * scale) for e in m.row(i)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale ** n)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def row_echelon(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form of a list of rows; returns only the nonzero rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    width = len(rows[0])
    pivot_row = 0
    for c in range(width):
        piv = next((r for r in range(pivot_row, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        p = rows[pivot_row][c]
        rows[pivot_row] = [x / p for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows[:pivot_row]


def rank(m: Matrix) -> int:
    return len(row_echelon(m.to_rows()))


def nullspace(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    rref = row_echelon(m.to_rows())
    pivots = []
    for r in rref:
        pivots.append(next(i for i, x in enumerate(r) if x != 0))
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in zip(rref, pivots):
            v[pc] = -r[f]
        basis.append(tuple(v))
    return basis


def charpoly(m: Matrix) -> Polynomial:
    """Monic det(xI - m), via the Faddeev-LeVerrier recurrence (exact over Q)."""
    _require_square(m, "charpoly")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    eye = Matrix.identity(n)
    aux = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        aux = m @ aux + eye.scale(coeffs[n - k + 1])
        am = m @ aux
        trace = sum((am[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
    return Polynomial(coeffs)


def minpoly(m: Matrix) -> Polynomial:
    """Lowest-degree monic dependency among the vectorized powers I, m, m^2, ..."""
    _require_square(m, "minpoly")
    n = m.rows
    powers = [Matrix.identity(n).entries]
    current = Matrix.identity(n)
    for d in range(1, n + 1):
        current = current @ m
        powers.append(current.entries)
        # columns are vec(m^0) .. vec(m^d); a kernel vector is a vanishing polynomial
        stacked = Matrix(n * n, d + 1, (powers[j][i] for i in range(n * n) for j in range(d + 1)))
        kernel = nullspace(stacked)
        if kernel:
            # minimality of d makes the kernel one-dimensional with nonzero top coefficient
            return Polynomial(kernel[0]).monic()
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def hadamard_square(m: Matrix) -> Matrix:
    return Matrix(m.rows, m.cols, (e * e for e in m.entries))


def monomial_matrix(sigma: Permutation, scales: Sequence) -> Matrix:
    """M_sigma * diag(scales): column i equals scales[i] * e_{sigma(i)}."""
    n = len(sigma)
    if len(scales) != n:
        raise ValueError(f"{len(scales)} scales for a permutation of {n} points")
    qs = [to_rational(s) for s in scales]
    if any(q == 0 for q in qs):
        raise ValueError("monomial matrix needs nonzero scales")
    out = [Fraction(0)] * (n * n)
    for i, q in enumerate(qs):
        out[sigma(i) * n + i] = q
    return Matrix(n, n, out)
