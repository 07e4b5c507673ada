"""Small exact matrix helpers.

Two kinds of matrices appear in this package: matrices over a field of plain
scalars (Fraction or CycloNumber), handled by the f_* functions on lists of
lists, and matrices over the fraction field of the Laurent ring, handled by
KMatrix, which keeps one common polynomial denominator per matrix so that
products only ever multiply polynomials.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ComputationError
from .scalars import LaurentFraction, LaurentPoly, MonomialOrder


# -- plain field matrices (lists of lists of Fraction/CycloNumber) -------------


def f_mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [
        [sum((a[i][k] * b[k][j] for k in range(m) if a[i][k]), Fraction(0)) for j in range(p)]
        for i in range(n)
    ]


def f_mat_transpose(a):
    return [list(col) for col in zip(*a)]


def f_identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def f_det(a):
    n = len(a)
    m = [row[:] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = _inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
    return det


def f_inverse(a):
    n = len(a)
    m = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ComputationError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = _inv(m[col][col])
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def f_solve(a, rhs_cols):
    """Solve a X = rhs for possibly many right-hand columns."""
    inv = f_inverse(a)
    return f_mat_mul(inv, rhs_cols)


def _inv(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1, 1) / x
    return x.field.inverse(x)


# -- matrices over the Laurent fraction field ----------------------------------


class KMatrix:
    """Matrix over K kept as (numerator polynomial matrix, common denominator)."""

    __slots__ = ("num", "den", "order")

    def __init__(self, num, den: LaurentPoly, order: MonomialOrder):
        self.num = num
        self.den = den
        self.order = order

    @classmethod
    def identity(cls, n: int, rank: int, order: MonomialOrder) -> "KMatrix":
        one, zero = LaurentPoly.one(rank), LaurentPoly.zero(rank)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)],
                   LaurentPoly.one(rank), order)

    @classmethod
    def from_polys(cls, rows, order: MonomialOrder) -> "KMatrix":
        rank = rows[0][0].rank
        return cls([list(r) for r in rows], LaurentPoly.one(rank), order)

    @classmethod
    def from_fractions(cls, rows, order: MonomialOrder) -> "KMatrix":
        """Combine a matrix of LaurentFractions over their product denominator."""
        dens = []
        for row in rows:
            for x in row:
                dens.append(x.den)
        rank = rows[0][0].rank
        den = LaurentPoly.one(rank)
        seen = []
        for d in dens:
            if not d.is_constant() or d.constant_coefficient() != 1:
                seen.append(d)
        for d in seen:
            den = den * d
        out = []
        for row in rows:
            out_row = []
            for x in row:
                q = den.exact_divide(x.den, order)
                assert q is not None
                out_row.append(x.num * q)
            out.append(out_row)
        return cls(out, den, order)

    @property
    def dim(self):
        return len(self.num)

    @property
    def rank(self):
        return self.den.rank

    def entry(self, i: int, j: int) -> LaurentFraction:
        return LaurentFraction(self.num[i][j], self.den, self.order)

    def fractions(self):
        return [[self.entry(i, j) for j in range(len(self.num[0]))] for i in range(self.dim)]

    def __mul__(self, other: "KMatrix") -> "KMatrix":
        a, b = self.num, other.num
        n, m, p = len(a), len(b), len(b[0])
        zero = LaurentPoly.zero(self.rank)
        out = []
        for i in range(n):
            row = []
            ai = a[i]
            for j in range(p):
                acc = zero
                for k in range(m):
                    if ai[k] and b[k][j]:
                        acc = acc + ai[k] * b[k][j]
                row.append(acc)
            out.append(row)
        return KMatrix(out, self.den * other.den, self.order)

    def __add__(self, other: "KMatrix") -> "KMatrix":
        if self.den == other.den:
            return KMatrix([[x + y for x, y in zip(r1, r2)]
                            for r1, r2 in zip(self.num, other.num)], self.den, self.order)
        return KMatrix(
            [[x * other.den + y * self.den for x, y in zip(r1, r2)]
             for r1, r2 in zip(self.num, other.num)],
            self.den * other.den, self.order)

    def __sub__(self, other: "KMatrix") -> "KMatrix":
        return self + other.scale_poly(LaurentPoly.constant(self.rank, -1))

    def scale_poly(self, p: LaurentPoly) -> "KMatrix":
        return KMatrix([[x * p for x in row] for row in self.num], self.den, self.order)

    def scale_fraction(self, x: LaurentFraction) -> "KMatrix":
        return KMatrix([[e * x.num for e in row] for row in self.num],
                       self.den * x.den, self.order)

    def transpose(self) -> "KMatrix":
        return KMatrix([list(col) for col in zip(*self.num)], self.den, self.order)

    def __eq__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        for r1, r2 in zip(self.num, other.num):
            for x, y in zip(r1, r2):
                if x * other.den != y * self.den:
                    return False
        return True

    def __repr__(self):
        return f"KMatrix({self.dim}x{len(self.num[0])}, den={self.den!r})"

    def is_polynomial(self) -> bool:
        return all(x.exact_divide(self.den, self.order) is not None
                   for row in self.num for x in row)

    def poly_entries(self):
        out = []
        for row in self.num:
            orow = []
            for x in row:
                q = x.exact_divide(self.den, self.order)
                if q is None:
                    raise ComputationError("matrix entry is not polynomial")
                orow.append(q)
            out.append(orow)
        return out

    def det(self) -> LaurentFraction:
        """Fraction-free (Bareiss) determinant of num, divided by den^dim."""
        n = self.dim
        m = [row[:] for row in self.num]
        sign = 1
        prev = LaurentPoly.one(self.rank)
        for k in range(n - 1):
            if not m[k][k]:
                piv = next((r for r in range(k + 1, n) if m[r][k]), None)
                if piv is None:
                    return LaurentFraction.zero(self.rank, self.order)
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    val = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    q = val.exact_divide(prev, self.order)
                    if q is None:
                        raise ComputationError("Bareiss division failed")
                    m[i][j] = q
            prev = m[k][k]
        det_num = m[n - 1][n - 1] if n else LaurentPoly.one(self.rank)
        if sign < 0:
            det_num = -det_num
        den = LaurentPoly.one(self.rank)
        for _ in range(n):
            den = den * self.den
        return LaurentFraction(det_num, den, self.order)

    def inverse(self) -> "KMatrix":
        n = self.dim
        fr = self.fractions()
        aug = [row + [LaurentFraction.from_poly(
            LaurentPoly.one(self.rank) if i == j else LaurentPoly.zero(self.rank), self.order)
            for j in range(n)] for i, row in enumerate(fr)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ComputationError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            pinv = aug[col][col].inverse()
            aug[col] = [x * pinv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return KMatrix.from_fractions([row[n:] for row in aug], self.order)
