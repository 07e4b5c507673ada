"""Exact arithmetic in real cyclotomic fields Q(2*cos(2*pi/N)).

All scalar coefficients in this package live in a field F = Q(delta) with
delta = 2*cos(2*pi/N) for some conductor N determined by the Coxeter matrix.
Elements are polynomials in delta reduced modulo the minimal polynomial of
delta over Q, which is derived from the cyclotomic polynomial Phi_N by the
half-trace substitution x^j + x^-j -> p_j(y), p_0 = 2, p_1 = y,
p_{j+1} = y*p_j - p_{j-1}.

For conductors whose field is Q itself (N in {1,2,3,4,6} after reduction) the
field hands out plain Fractions; otherwise elements are CycloNumber instances.
Sign determination is exact: delta is enclosed in a certified rational interval
(initially from Taylor bounds on cos, then refined by bisection against the
minimal polynomial), widened-precision evaluation terminates because a nonzero
algebraic number has nonzero magnitude.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ComputationError, InputError

# 50 verified decimal digits; only used to seed the initial isolating interval
# for delta, after which refinement is purely algebraic.
_PI_LO = Fraction("3.14159265358979323846264338327950288419716939937510")
_PI_HI = _PI_LO + Fraction(1, 10**50)

_RATIONAL_TWO_COS = {
    (0, 1): Fraction(2),
    (1, 2): Fraction(-2),
    (1, 3): Fraction(-1),
    (1, 4): Fraction(0),
    (1, 6): Fraction(1),
}


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients of Phi_n, ascending degree, computed by exact division."""
    # x^n - 1 = prod_{d | n} Phi_d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d:
            continue
        phi_d = cyclotomic_polynomial(d)
        poly = _poly_divide_exact(poly, phi_d)
    return poly


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q[i] = c // den[-1]
        for j, d in enumerate(den):
            num[i + j] -= q[i] * d
    assert all(c == 0 for c in num)
    return q


def real_minimal_polynomial(n: int) -> tuple[Fraction, ...]:
    """Monic minimal polynomial of 2*cos(2*pi/n) over Q, ascending degree."""
    if n == 1:
        return (Fraction(-2), Fraction(1))
    if n == 2:
        return (Fraction(2), Fraction(1))
    phi = cyclotomic_polynomial(n)
    m = (len(phi) - 1) // 2
    # Phi_n is palindromic for n >= 3; Phi_n(x)/x^m = a_m + sum a_{m+j}(x^j + x^-j)
    p_prev = [Fraction(2)]           # p_0
    p_cur = [Fraction(0), Fraction(1)]  # p_1 = y
    psi = [Fraction(phi[m])]
    for j in range(1, m + 1):
        pj = p_prev if j == 0 else p_cur
        psi = _poly_add(psi, [Fraction(phi[m + j]) * c for c in pj])
        if j < m:
            nxt = _poly_add([Fraction(0)] + p_cur, [-c for c in p_prev])
            p_prev, p_cur = p_cur, nxt
    assert psi[-1] == 1
    return tuple(psi)


def _poly_add(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def reduced_conductor(orders) -> int:
    """Smallest N with Q(2cos(2pi/N)) containing 2cos(2pi/m) for all given m.

    Orders in {1,2,3,4,6} have rational cosine; m = 2m' with m' odd reduces to
    m' since the corresponding real cyclotomic fields coincide.
    """
    need = set()
    for m in orders:
        if m % 4 == 2:
            m //= 2
        if m in (1, 2, 3, 4, 6):
            continue
        need.add(m)
    n = 1
    for m in need:
        n = n * m // gcd(n, m)
    return n


class CycloNumber:
    """Element of Q(delta): coordinate vector in the power basis of delta."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "RealCyclotomicField", coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def __repr__(self):
        return f"CycloNumber({self.field.conductor}, {self.field.format(self)!r})"

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.field is not self.field and other.field.conductor != self.field.conductor:
                raise ComputationError("mixed cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.field, tuple(a * other for a in self.coeffs))
        return CycloNumber(self.field, self.field._mul_reduce(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self.field.inverse(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.field.inverse(self)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)


class RealCyclotomicField:
    """The field Q(delta), delta = 2*cos(2*pi/conductor), with exact sign."""

    _cache: dict[int, "RealCyclotomicField"] = {}

    def __new__(cls, conductor: int):
        if conductor in cls._cache:
            return cls._cache[conductor]
        self = super().__new__(cls)
        cls._cache[conductor] = self
        self._init(conductor)
        return self

    def _init(self, conductor: int):
        self.conductor = conductor
        self.min_poly = real_minimal_polynomial(conductor)
        self.degree = len(self.min_poly) - 1
        self._interval = None
        self._cheb_cache = {}

    # -- element construction -------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def from_rational(self, r):
        r = Fraction(r)
        if self.is_rational:
            return r
        return CycloNumber(self, (r,) + (Fraction(0),) * (self.degree - 1))

    def element(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) > self.degree:
            coeffs = tuple(self._reduce(list(coeffs)))
        else:
            coeffs = coeffs + (Fraction(0),) * (self.degree - len(coeffs))
        if self.is_rational:
            return coeffs[0]
        return CycloNumber(self, coeffs)

    @property
    def zero(self):
        return self.from_rational(0)

    @property
    def one(self):
        return self.from_rational(1)

    def delta(self):
        """The generator 2*cos(2*pi/conductor) as a field element."""
        if self.is_rational:
            return -self.min_poly[0]
        return self.element((0, 1))

    def coords(self, x) -> tuple:
        """Coordinates in the power basis of delta (constant term first)."""
        if isinstance(x, CycloNumber):
            return x.coeffs
        return (Fraction(x),) + (Fraction(0),) * (self.degree - 1)

    # -- arithmetic kernels ---------------------------------------------------

    def _reduce(self, coeffs: list) -> list:
        d = self.degree
        mp = self.min_poly
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d):
                    coeffs[i - d + j] -= c * mp[j]
            coeffs.pop()
        while len(coeffs) < d:
            coeffs.append(Fraction(0))
        return coeffs

    def _mul_reduce(self, a: tuple, b: tuple) -> tuple:
        d = self.degree
        out = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return tuple(self._reduce(out))

    def inverse(self, x):
        if isinstance(x, (int, Fraction)):
            if x == 0:
                raise ZeroDivisionError("field inverse of zero")
            return Fraction(1, 1) / Fraction(x)
        if not any(x.coeffs):
            raise ZeroDivisionError("field inverse of zero")
        # extended Euclid in Q[y] against the minimal polynomial
        r0, r1 = list(self.min_poly), list(x.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_add(s0, [-c for c in _poly_mul(q, s1)])
        lead = r0[_poly_deg(r0)]
        assert _poly_deg(r0) == 0, "minimal polynomial not coprime to element"
        inv = [c / lead for c in s0]
        return CycloNumber(self, tuple(self._reduce(inv)))

    # -- rationality, integrality, norms --------------------------------------

    def rational_part_only(self, x) -> bool:
        if isinstance(x, (int, Fraction)):
            return True
        return all(c == 0 for c in x.coeffs[1:])

    def as_fraction(self, x) -> Fraction:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if not self.rational_part_only(x):
            raise ComputationError("element is irrational")
        return x.coeffs[0]

    def is_ring_integer(self, x) -> bool:
        """Membership in Z[delta]: integer coordinates in the power basis."""
        return all(c.denominator == 1 for c in self.coords(x))

    def norm(self, x) -> Fraction:
        """Field norm to Q: determinant of multiplication by x."""
        if self.is_rational:
            return Fraction(x)
        cols = []
        cur = x if isinstance(x, CycloNumber) else self.from_rational(x)
        basis = self.from_rational(1)
        delta = self.delta()
        for _ in range(self.degree):
            cols.append(self.coords(cur * basis))  # coords of x * delta^i
            basis = basis * delta
        mat = [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]
        return _fraction_det(mat)

    # -- special values --------------------------------------------------------

    def two_cos(self, num: int, den: int):
        """2*cos(2*pi*num/den) as a field element.

        Requires the angle to live in this field (den divides the conductor
        after the standard reductions); raises InputError otherwise.
        """
        if den <= 0:
            raise InputError("two_cos: denominator must be positive")
        num %= den
        g = gcd(num, den) if num else den
        num, den = num // g, den // g
        if den > 2 and num > den // 2:
            num = den - num  # cos(2pi(1 - t)) = cos(2pi t)
        if (num, den) in _RATIONAL_TWO_COS:
            return self.from_rational(_RATIONAL_TWO_COS[(num, den)])
        if den % 4 == 2:
            # num odd, m' = den/2 odd: 2cos(pi*num/m') = -2cos(2pi*((m'-num)/2)/m')
            mp = den // 2
            assert num % 2 == 1 and (mp - num) % 2 == 0
            return -self.two_cos((mp - num) // 2, mp)
        if self.conductor % den != 0:
            return self._two_cos_fail(num, den)
        return self._cheb(num * (self.conductor // den))

    def _two_cos_fail(self, num, den):
        raise InputError(
            f"2cos(2pi*{num}/{den}) does not lie in Q(2cos(2pi/{self.conductor}))")

    def _cheb(self, k: int):
        """2*cos(2*pi*k/conductor) via p_k(delta), p_{j+1} = delta*p_j - p_{j-1}."""
        n = self.conductor
        k %= n
        k = min(k, n - k)
        if k in self._cheb_cache:
            return self._cheb_cache[k]
        prev, cur = self.from_rational(2), self.delta()
        if k == 0:
            val = prev
        else:
            for _ in range(k - 1):
                prev, cur = cur, self.delta() * cur - prev
            val = cur
        self._cheb_cache[k] = val
        return val

    # -- exact sign -------------------------------------------------------------

    def sign(self, x) -> int:
        """Exact sign of a field element under the embedding delta = 2cos(2pi/N)."""
        if isinstance(x, (int, Fraction)):
            return (x > 0) - (x < 0)
        if not any(x.coeffs):
            return 0
        if self.rational_part_only(x):
            c = x.coeffs[0]
            return (c > 0) - (c < 0)
        lo, hi = self._delta_enclosure()
        for _ in range(400):
            vlo, vhi = _interval_horner(x.coeffs, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            lo, hi = self._refine(lo, hi)
        raise ComputationError("sign determination failed to converge")

    def _delta_enclosure(self):
        if self._interval is None:
            n = self.conductor
            x_lo, x_hi = 2 * _PI_LO / n, 2 * _PI_HI / n
            c_lo, c_hi = _cos_bounds(x_lo, x_hi)
            lo, hi = 2 * c_lo, 2 * c_hi
            if _poly_eval(self.min_poly, lo) * _poly_eval(self.min_poly, hi) >= 0:
                raise ComputationError("initial enclosure failed to isolate delta")
            self._interval = (lo, hi)
        return self._interval

    def _refine(self, lo, hi):
        mid = (lo + hi) / 2
        v = _poly_eval(self.min_poly, mid)
        if v == 0:
            lo = hi = mid
        elif v * _poly_eval(self.min_poly, lo) < 0:
            hi = mid
        else:
            lo = mid
        self._interval = (lo, hi)
        return self._interval

    # -- text form ---------------------------------------------------------------

    def format(self, x) -> str:
        """Canonical string: polynomial in `d`, descending powers, no spaces."""
        coeffs = self.coords(x)
        if all(c == 0 for c in coeffs):
            return "0"
        parts = []
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if c == 0:
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "d"
            else:
                mono = f"d^{k}"
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(sign + body)
        return "".join(parts)

    def parse(self, text: str):
        """Inverse of format(); accepts any sum of rational*d^k terms."""
        text = text.strip().replace(" ", "")
        if not text:
            raise InputError("empty field-coefficient string")
        coeffs = [Fraction(0)] * max(self.degree, 2)
        i = 0
        while i < len(text):
            sign = 1
            while i < len(text) and text[i] in "+-":
                if text[i] == "-":
                    sign = -sign
                i += 1
            j = i
            while j < len(text) and text[j] not in "+-":
                j += 1
            term, i = text[i:j], j
            if not term:
                raise InputError(f"bad field-coefficient string {text!r}")
            if "d" in term:
                head, _, tail = term.partition("d")
                coef = Fraction(head.rstrip("*")) if head.rstrip("*") else Fraction(1)
                power = int(tail[1:]) if tail.startswith("^") else 1
            else:
                coef, power = Fraction(term), 0
            if power >= len(coeffs):
                coeffs.extend([Fraction(0)] * (power + 1 - len(coeffs)))
            coeffs[power] += sign * coef
        return self.element(coeffs)


# -- small exact-polynomial helpers over Fraction lists ----------------------


def _poly_deg(p):
    d = len(p) - 1
    while d > 0 and p[d] == 0:
        d -= 1
    return d


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    db, lb = _poly_deg(b), b[_poly_deg(b)]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(_poly_deg(a) - db, -1, -1):
        c = a[i + db] / lb
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, a[:db] if db else [Fraction(0)]


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _interval_horner(coeffs, lo, hi):
    vlo = vhi = Fraction(0)
    for c in reversed(coeffs):
        if vlo == vhi == 0:
            prods = [Fraction(0)]
        else:
            prods = [vlo * lo, vlo * hi, vhi * lo, vhi * hi]
        vlo, vhi = min(prods) + c, max(prods) + c
    return vlo, vhi


def _cos_bounds(x_lo, x_hi, terms: int = 25):
    # cos decreasing on (0, pi); arguments here are 2*pi/N <= 2*pi/3 < pi
    def point(x):
        s, t, xx = Fraction(0), Fraction(1), x * x
        for k in range(terms):
            s += t if k % 2 == 0 else -t
            t = t * xx / ((2 * k + 1) * (2 * k + 2))
        return s - t, s + t

    lo1, _ = point(x_hi)
    _, hi1 = point(x_lo)
    return lo1, hi1


def _fraction_det(mat) -> Fraction:
    n = len(mat)
    mat = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            f = mat[r][col] * inv
            if f:
                for c in range(col, n):
                    mat[r][c] -= f * mat[col][c]
    return det
