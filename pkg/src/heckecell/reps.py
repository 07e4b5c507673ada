"""Matrix representations of the Hecke algebra and their leading coefficients.

Constructors: one-dimensional characters, the two-dimensional dihedral series,
seminormal models for types A and B (standard Young (bi)tableaux acted on
through Jucys-Murphy residues), and file-loaded representations (explicit
matrices or W-graphs). Every constructor validates the defining relations.

From a representation this module computes its Schur element and the derived
invariants (a, f), an invariant symmetric bilinear form, the balancing change
of basis that puts every entry of eps^a rho(T_w) inside the valuation ring,
and the tensor of leading matrix coefficients: the constant terms of
(-1)^{l(w)} eps^a rho_{ij}(T_w), the raw input of the asymptotic ring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ComputationError, InputError, VerificationError
from .hecke import HeckeAlgebra
from .matrices import KMatrix
from .scalars import LaurentFraction, LaurentPoly, exp_neg, exp_sub

DIRECT_CHECK_MAX = 48


class MatrixRep:
    """A matrix representation of H over the Laurent fraction field."""

    def __init__(self, alg: HeckeAlgebra, label: str, gens, gram: KMatrix | None = None,
                 validate: bool = True):
        self.alg = alg
        self.label = label
        self.gens = list(gens)
        self.dim = gens[0].dim
        self.gram = gram
        self._words = {0: KMatrix.identity(self.dim, alg.rank, alg.order)}
        if validate:
            self.validate()

    def __repr__(self):
        return f"MatrixRep({self.label!r}, dim={self.dim})"

    def matrix(self, w: int) -> KMatrix:
        got = self._words.get(w)
        if got is None:
            wp, s = self.alg.table.right_parent(w)
            got = self._words[w] = self.matrix(wp) * self.gens[s]
        return got

    def clear_cache(self):
        self._words = {0: self._words[0]}

    def validate(self):
        """Quadratic relation per generator, braid relation per pair."""
        alg = self.alg
        n = alg.table.system.ngens
        ident = KMatrix.identity(self.dim, alg.rank, alg.order)
        for s in range(n):
            m = self.gens[s]
            if m * m != ident + m.scale_poly(alg.xi[s]):
                raise VerificationError(
                    f"braid violation: quadratic relation fails for generator {s} in {self.label}")
        for s in range(n):
            for t in range(s + 1, n):
                mst = alg.table.system.matrix[s][t]
                a = b = ident
                for k in range(mst):
                    a = a * self.gens[s if k % 2 == 0 else t]
                    b = b * self.gens[t if k % 2 == 0 else s]
                if a != b:
                    raise VerificationError(
                        f"braid violation: pair ({s},{t}) of order {mst} in {self.label}")

    def trace_poly(self, w: int) -> LaurentPoly:
        """trace(rho(T_w)) as a Laurent polynomial (always exact)."""
        m = self.matrix(w)
        acc = LaurentPoly.zero(self.alg.rank)
        for i in range(self.dim):
            acc = acc + m.num[i][i]
        q = acc.exact_divide(m.den, self.alg.order)
        if q is None:
            raise ComputationError("representation not defined over expected ring")
        return q

    def character_at_one(self, w: int):
        """Classical character value: trace with every eps^g specialized to 1."""
        total = Fraction(0)
        for c in self.trace_poly(w).terms.values():
            total = c + total
        return total


@dataclass
class SchurData:
    """c: Schur element; a: its half-valuation shift; f: leading coefficient."""

    c: LaurentPoly
    a: tuple
    f: object


def schur_data(rep: MatrixRep) -> SchurData:
    alg = rep.alg
    table = alg.table
    traces = [rep.trace_poly(w) for w in range(table.size)]
    acc = LaurentPoly.zero(alg.rank)
    for w in range(table.size):
        acc = acc + traces[w] * traces[table.inverse[w]]
    c = acc.scale(Fraction(1, rep.dim))
    g = c.min_exponent(alg.order)
    if any(x % 2 for x in g):
        raise ComputationError(f"Schur element of {rep.label} has odd valuation {g}")
    a = tuple(-x // 2 for x in g)
    if alg.order.is_negative(a):
        raise ComputationError(f"negative a-invariant for {rep.label}")
    f = c.terms[g]
    if table.field.sign(f) <= 0:
        raise VerificationError(f"leading Schur coefficient of {rep.label} is not positive")
    return SchurData(c, a, f)


# -- invariant bilinear forms ---------------------------------------------------


def gram_average(rep: MatrixRep) -> KMatrix:
    """sum_w rho(T_w)^tr rho(T_w), normalized into the valuation ring.

    Only for representations with polynomial matrix entries; the seminormal
    models attach an equivalent solved diagonal form instead.
    """
    alg = rep.alg
    if any(not g.is_polynomial() for g in rep.gens):
        raise ComputationError("averaged Gram matrix requires polynomial matrix entries")
    d = rep.dim
    zero = LaurentPoly.zero(alg.rank)
    acc = [[zero] * d for _ in range(d)]
    for w in range(alg.table.size):
        entries = rep.matrix(w).poly_entries()
        for i in range(d):
            for j in range(i, d):
                s = acc[i][j]
                for k in range(d):
                    if entries[k][i] and entries[k][j]:
                        s = s + entries[k][i] * entries[k][j]
                acc[i][j] = s
    for i in range(d):
        for j in range(i):
            acc[i][j] = acc[j][i]
    omega = normalize_gram(KMatrix.from_polys(acc, alg.order))
    check_intertwining(rep, omega)
    return omega


def normalize_gram(omega: KMatrix) -> KMatrix:
    """Scale by a monomial so all entries have valuation >= 0, some exactly 0."""
    order = omega.order
    gmin = None
    for i in range(omega.dim):
        for j in range(omega.dim):
            x = omega.entry(i, j)
            if x:
                g, _ = x.valuation()
                if gmin is None or order.less(g, gmin):
                    gmin = g
    if gmin is None:
        raise ComputationError("zero Gram matrix")
    if not any(gmin):
        return omega
    return KMatrix([[x.shift(exp_neg(gmin)) for x in row] for row in omega.num],
                   omega.den, order)


def invariant_gram(rep: MatrixRep) -> KMatrix:
    """The attached invariant form if present, otherwise the literal average."""
    if rep.gram is not None:
        omega = normalize_gram(rep.gram)
        check_intertwining(rep, omega)
        return omega
    return gram_average(rep)


def check_intertwining(rep: MatrixRep, omega: KMatrix) -> None:
    """Omega rho(T_s) = rho(T_s)^tr Omega for all generators (which suffices)."""
    if omega != omega.transpose():
        raise VerificationError(f"Gram matrix for {rep.label} is not symmetric")
    for s, g in enumerate(rep.gens):
        if omega * g != g.transpose() * omega:
            raise VerificationError(
                f"Gram matrix for {rep.label} fails intertwining at generator {s}")


@dataclass
class BalanceCertificate:
    balanced: bool
    det_valuation: tuple | None
    det_leading: object


def is_balanced(rep: MatrixRep, omega: KMatrix, schur: SchurData | None = None,
                cross_check: bool = True) -> BalanceCertificate:
    """Balancedness criterion: det of the normalized form is a unit of O.

    The form must be normalized (entries in O, not all in the maximal ideal).
    With Schur data on a small group the direct definition is cross-checked.
    """
    alg = rep.alg
    check_intertwining(rep, omega)
    for i in range(omega.dim):
        for j in range(omega.dim):
            x = omega.entry(i, j)
            if x and alg.order.is_negative(x.valuation()[0]):
                raise VerificationError("Gram matrix not normalized into O")
    g, r = omega.det().valuation()
    flag = g is not None and not alg.order.is_positive(g) and not alg.order.is_negative(g)
    if cross_check and schur is not None and alg.table.size <= DIRECT_CHECK_MAX:
        direct = _directly_balanced(rep, schur.a)
        if direct != flag:
            raise ComputationError(
                f"balancedness criterion disagrees with the direct definition for {rep.label}")
    return BalanceCertificate(flag, g, r)


def _directly_balanced(rep: MatrixRep, a: tuple) -> bool:
    alg = rep.alg
    for w in range(alg.table.size):
        m = rep.matrix(w)
        for i in range(rep.dim):
            for j in range(rep.dim):
                g, _ = m.entry(i, j).valuation()
                if g is not None and alg.order.is_negative(tuple(x + y for x, y in zip(g, a))):
                    return False
    return True


def balance(rep: MatrixRep) -> MatrixRep:
    """Change basis so the representation becomes balanced.

    Diagonalizes the invariant form by congruence over K, fixes the global
    parity and sign of the diagonal valuations, rescales each basis vector by
    eps^{-g_i} with g_i half the diagonal valuation, and conjugates.
    """
    alg = rep.alg
    order = alg.order
    omega = invariant_gram(rep)
    d = rep.dim
    frac = omega.fractions()
    one = LaurentFraction.from_poly(LaurentPoly.one(alg.rank), order)
    zero = LaurentFraction.zero(alg.rank, order)
    basis = [[one if i == j else zero for j in range(d)] for i in range(d)]  # columns
    m = [row[:] for row in frac]
    for k in range(d):
        if not m[k][k]:
            piv = next((j for j in range(k + 1, d) if m[j][j]), None)
            if piv is None:
                raise ComputationError("form degenerate")
            _swap_sym(m, basis, k, piv)
        for i in range(k + 1, d):
            if m[k][i]:
                f = m[k][i] / m[k][k]
                for c in range(d):
                    basis[c][i] = basis[c][i] - f * basis[c][k]
                for c in range(d):
                    m[c][i] = m[c][i] - f * m[c][k]
                for c in range(d):
                    m[i][c] = m[i][c] - f * m[k][c]
    diag = [m[i][i] for i in range(d)]
    vals = []
    for x in diag:
        g, r = x.valuation()
        if g is None:
            raise ComputationError("form degenerate")
        vals.append((g, r))
    # global parity fix: any K-scalar multiple of the form is as good
    parity = tuple(x % 2 for x in vals[0][0])
    if any(parity):
        shift = parity  # eps^{-parity} times the form fixes all parities at once
        diag = [LaurentFraction(x.num.shift(exp_neg(shift)), x.den, order) for x in diag]
        vals = [(exp_sub(g, shift), r) for g, r in vals]
    field = alg.table.field
    if field.sign(vals[0][1]) < 0:
        diag = [-x for x in diag]
        vals = [(g, -r) for g, r in vals]
    half = []
    for g, r in vals:
        if any(x % 2 for x in g):
            raise ComputationError("diagonal form value with odd valuation")
        if field.sign(r) <= 0:
            raise ComputationError("diagonal form value with non-positive leading term")
        half.append(tuple(x // 2 for x in g))
    # conjugator C = P diag(eps^{-g_i}); new rep = C^{-1} rho C
    cmat = KMatrix.from_fractions(basis, order)
    scalemat = KMatrix(
        [[LaurentPoly.monomial(exp_neg(half[j])) if i == j else LaurentPoly.zero(alg.rank)
          for j in range(d)] for i in range(d)],
        LaurentPoly.one(alg.rank), order)
    conj = cmat * scalemat
    conj_inv = conj.inverse()
    new_gens = [conj_inv * g * conj for g in rep.gens]
    new_gram_rows = [[(diag[i] if i == j else zero) for j in range(d)] for i in range(d)]
    for i in range(d):
        g2 = exp_neg(tuple(2 * x for x in half[i]))
        x = new_gram_rows[i][i]
        new_gram_rows[i][i] = LaurentFraction(x.num.shift(g2), x.den, order)
    new_gram = KMatrix.from_fractions(new_gram_rows, order)
    out = MatrixRep(alg, rep.label, new_gens, gram=normalize_gram(new_gram), validate=False)
    check_intertwining(out, out.gram)
    return out


def _swap_sym(m, basis, i, j):
    d = len(m)
    for c in range(d):
        basis[c][i], basis[c][j] = basis[c][j], basis[c][i]
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]


# -- leading matrix coefficients -------------------------------------------------


@dataclass
class LeadingTensor:
    """Constant terms of (-1)^{l(w)} eps^a rho_{ij}(T_w) for one representation."""

    label: str
    dim: int
    a: tuple
    f: object
    mats: list  # per element id: d x d list of field scalars, or None if zero
    support: frozenset

    def entry(self, w: int, i: int, j: int):
        m = self.mats[w]
        return m[i][j] if m is not None else Fraction(0)


def leading_tensor(rep: MatrixRep, schur: SchurData) -> LeadingTensor:
    alg = rep.alg
    order = alg.order
    a = schur.a
    zero_key = order.key(order.zero)
    mats = []
    support = set()
    for w in range(alg.table.size):
        m = rep.matrix(w)
        den_min = m.den.min_exponent(order)
        den_lead = m.den.terms[den_min]
        den_inv = None
        sign = -1 if alg.table.length[w] % 2 else 1
        rows = []
        any_nonzero = False
        for i in range(rep.dim):
            row = []
            for j in range(rep.dim):
                num = m.num[i][j]
                if not num:
                    row.append(Fraction(0))
                    continue
                gn = num.min_exponent(order)
                val = order.key(tuple(x - y + z for x, y, z in zip(gn, den_min, a)))
                if val < zero_key:
                    raise VerificationError(f"representation not balanced: {rep.label}")
                if val > zero_key:
                    row.append(Fraction(0))
                    continue
                if den_inv is None:
                    den_inv = _scalar_inv(den_lead)
                c = num.terms[gn] * den_inv
                if sign < 0:
                    c = -c
                row.append(c)
                any_nonzero = True
            rows.append(row)
        if any_nonzero:
            mats.append(rows)
            support.add(w)
        else:
            mats.append(None)
    return LeadingTensor(rep.label, rep.dim, a, schur.f, mats, frozenset(support))


def _scalar_inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return 1 / c
    return c.field.inverse(c)


def verify_schur_relations(alg: HeckeAlgebra, tensors: list) -> list:
    """Check both orthogonality families for a complete tensor collection:

        sum_w c^{ij}_{w,lam} c^{kl}_{w^{-1},mu} = d_il d_jk d_{lam,mu} f_lam
        sum_lam sum_{i,j} f^{-1} c^{ij}_{x,lam} c^{ji}_{y^{-1},lam} = d_xy

    Returns a list of violation descriptions (empty means all hold exactly).
    Raises if the family is incomplete (sum of squared dimensions != |W|).
    """
    if not tensors:
        raise VerificationError("missing irreducibles: empty family")
    size = alg.table.size
    total = sum(t.dim * t.dim for t in tensors)
    if total != size:
        raise VerificationError(
            f"missing irreducibles: sum of squared dimensions {total} != group order {size}")
    inverse = alg.table.inverse
    violations = []
    for li, t1 in enumerate(tensors):
        for lj, t2 in enumerate(tensors):
            pairs = [(w, inverse[w]) for w in t1.support if inverse[w] in t2.support]
            for i in range(t1.dim):
                for j in range(t1.dim):
                    for k in range(t2.dim):
                        for l in range(t2.dim):
                            acc = Fraction(0)
                            for w, winv in pairs:
                                acc = t1.mats[w][i][j] * t2.mats[winv][k][l] + acc
                            want = t1.f if (li == lj and i == l and j == k) else Fraction(0)
                            if acc != want:
                                violations.append(
                                    f"first family fails at ({t1.label},{t2.label},"
                                    f"i={i},j={j},k={k},l={l})")
    finv = [_scalar_inv(t.f) for t in tensors]
    for x in range(size):
        for y in range(size):
            yinv = inverse[y]
            acc = Fraction(0)
            for t, fi in zip(tensors, finv):
                mx, my = t.mats[x], t.mats[yinv]
                if mx is None or my is None:
                    continue
                s = Fraction(0)
                for i in range(t.dim):
                    for j in range(t.dim):
                        s = mx[i][j] * my[j][i] + s
                acc = acc + fi * s
            want = Fraction(1) if x == y else Fraction(0)
            if acc != want:
                violations.append(f"second family fails at (x={x},y={y})")
    return violations


# -- constructors -----------------------------------------------------------------


def one_dim_rep(alg: HeckeAlgebra, signs) -> MatrixRep:
    """T_s -> v_s (sign +1 on the class of s) or -v_s^{-1} (sign -1).

    `signs` maps each generator index to +-1, constant on conjugacy classes.
    """
    n = alg.table.system.ngens
    for cls in alg.table.system.generator_classes():
        if len({signs[s] for s in cls}) != 1:
            raise InputError("one-dimensional signs must be constant on conjugacy classes")
    gens = []
    for s in range(n):
        p = alg.v[s] if signs[s] > 0 else -alg.vinv[s]
        gens.append(KMatrix.from_polys([[p]], alg.order))
    label = "onedim:" + "".join("+" if signs[s] > 0 else "-" for s in range(n))
    gram = KMatrix.from_polys([[LaurentPoly.one(alg.rank)]], alg.order)
    return MatrixRep(alg, label, gens, gram=gram)


def index_rep(alg: HeckeAlgebra) -> MatrixRep:
    return one_dim_rep(alg, [1] * alg.table.system.ngens)


def sign_rep(alg: HeckeAlgebra) -> MatrixRep:
    return one_dim_rep(alg, [-1] * alg.table.system.ngens)


def dihedral_rep(alg: HeckeAlgebra, j: int) -> MatrixRep:
    """The two-dimensional representation rho_j of a rank-2 system of order 2m.

    rho_j(T_{s1}) = [[-v1^{-1}, 0], [mu_j, v1]],
    rho_j(T_{s2}) = [[v2, 1], [0, -v2^{-1}]],
    mu_j = v1 v2^{-1} + zeta^j + zeta^{-j} + v1^{-1} v2  (zeta of order m),
    with the invariant form
    Omega_j = [[v1 mu_j (v2 + v2^{-1}), v1 mu_j], [v1 mu_j, v1 (v1 + v1^{-1})]].
    """
    system = alg.table.system
    if system.ngens != 2:
        raise InputError("dihedral representations need a rank-2 system")
    m = system.matrix[0][1]
    jmax = (m - 2) // 2 if m % 2 == 0 else (m - 1) // 2
    if not 1 <= j <= jmax:
        raise InputError(f"dihedral index j={j} out of range 1..{jmax}")
    field = alg.table.field
    rank = alg.rank
    v1, v1i = alg.v[0], alg.vinv[0]
    v2, v2i = alg.v[1], alg.vinv[1]
    zeta = LaurentPoly.constant(rank, field.two_cos(j, m))
    mu = v1 * v2i + zeta + v1i * v2
    zero = LaurentPoly.zero(rank)
    one = LaurentPoly.one(rank)
    m1 = KMatrix.from_polys([[-v1i, zero], [mu, v1]], alg.order)
    m2 = KMatrix.from_polys([[v2, one], [zero, -v2i]], alg.order)
    omega = KMatrix.from_polys(
        [[v1 * mu * (v2 + v2i), v1 * mu], [v1 * mu, v1 * (v1 + v1i)]], alg.order)
    return MatrixRep(alg, f"dihedral:{j}", [m1, m2], gram=omega)


# -- seminormal models for types A and B --------------------------------------------


def partitions(n: int):
    """All partitions of n, decreasing parts, lexicographically decreasing."""
    if n == 0:
        return [()]
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(n, n, [])
    return out


def bipartitions(n: int):
    out = []
    for k in range(n, -1, -1):
        for lam in partitions(k):
            for mu in partitions(n - k):
                out.append((lam, mu))
    return out


def standard_tableaux(shape):
    """Standard fillings of a (multi-component) shape with 1..n.

    A shape is a tuple of partitions; a tableau maps each entry k to a cell
    (component, row, column). Returned as tuples of cells indexed by k-1.
    """
    total = sum(sum(part) for part in shape)
    out = []

    def rec(heights, placed, k):
        # heights[c][r] = number of filled cells in row r of component c
        if k > total:
            out.append(tuple(placed))
            return
        for c, part in enumerate(shape):
            for r, rowlen in enumerate(part):
                filled = heights[c][r]
                if filled < rowlen and (r == 0 or heights[c][r - 1] > filled):
                    heights[c][r] += 1
                    placed.append((c, r, filled))
                    rec(heights, placed, k + 1)
                    placed.pop()
                    heights[c][r] -= 1

    rec([[0] * len(part) for part in shape], [], 1)
    return out


def _tableau_swap(tab, k):
    """Swap entries k and k+1 (1-based); cells are exchanged."""
    cells = list(tab)
    cells[k - 1], cells[k] = cells[k], cells[k - 1]
    return tuple(cells)


def _swap_is_standard(tab, k):
    """After swapping k, k+1 the filling is standard iff the two cells are in
    different components, or neither same row nor same column."""
    (c1, r1, col1), (c2, r2, col2) = tab[k - 1], tab[k]
    if c1 != c2:
        return True
    return r1 != r2 and col1 != col2


def seminormal_rep(alg: HeckeAlgebra, shape) -> MatrixRep:
    """Seminormal model on standard (bi)tableaux of the given shape.

    Works for type A_n (shape: one partition of n+1) and type B_n (shape: pair
    of partitions of total size n). The Jucys-Murphy residue of entry k in a
    tableau is the signed monomial r_k = +- eps^g below; the generator for the
    transposition (k, k+1) acts on the pair {t, swap(t)} with diagonal entries
    (v - v^-1)/(1 - r_k/r_{k+1}) and on 1 x 1 blocks by v or -v^-1.
    """
    system = alg.table.system
    name = system.name
    if name.startswith("A"):
        nfold = int(name[1])
        if not (isinstance(shape, tuple) and shape and isinstance(shape[0], int)):
            raise InputError("type A shape must be a single partition tuple")
        if sum(shape) != nfold + 1:
            raise InputError(f"partition must have size {nfold + 1}")
        comps = (tuple(shape),)
        special = None
        trans_of_gen = {s: s + 1 for s in range(system.ngens)}  # gen s: (s+1, s+2)
        label = f"A:{shape}"
    elif name.startswith("B"):
        nfold = int(name[1])
        if not (isinstance(shape, tuple) and len(shape) == 2):
            raise InputError("type B shape must be a pair of partitions")
        comps = (tuple(shape[0]), tuple(shape[1]))
        if sum(comps[0]) + sum(comps[1]) != nfold:
            raise InputError(f"bipartition must have total size {nfold}")
        special = 0
        trans_of_gen = {s: s for s in range(1, system.ngens)}  # gen s: (s, s+1)
        label = f"B:{shape}"
    else:
        raise InputError("seminormal models exist for named types A_n and B_n only")
    tabs = standard_tableaux(comps)
    if not tabs:
        raise InputError("invalid shape: no standard tableaux")
    index = {t: i for i, t in enumerate(tabs)}
    d = len(tabs)
    order = alg.order
    rank = alg.rank
    weight_a = alg.weights.of_gen(1) if special is not None else alg.weights.of_gen(0)
    weight_b = alg.weights.of_gen(0) if special is not None else None
    va, vai = (LaurentPoly.monomial(weight_a), LaurentPoly.monomial(exp_neg(weight_a)))

    def residue(tab, k):
        """(sign, exponent) of the Jucys-Murphy monomial of entry k."""
        c, r, col = tab[k - 1]
        content = col - r
        g = tuple(2 * content * x for x in weight_a)
        if special is None:
            return 1, g
        if c == 0:
            return 1, tuple(x + y for x, y in zip(g, weight_b))
        return -1, tuple(x - y for x, y in zip(g, weight_b))

    gens: list = [None] * system.ngens
    if special is not None:
        vb, vbi = LaurentPoly.monomial(weight_b), LaurentPoly.monomial(exp_neg(weight_b))
        rows = [[LaurentPoly.zero(rank)] * d for _ in range(d)]
        for t, tab in enumerate(tabs):
            rows[t][t] = vb if tab[0][0] == 0 else -vbi
        gens[special] = KMatrix.from_polys(rows, order)
    xi = va - vai
    for s, k in trans_of_gen.items():
        entries = [[LaurentFraction.zero(rank, order)] * d for _ in range(d)]
        done = set()
        for t, tab in enumerate(tabs):
            if t in done:
                continue
            s1, g1 = residue(tab, k)
            s2, g2 = residue(tab, k + 1)
            ratio = LaurentPoly.monomial(exp_sub(g1, g2), s1 * s2)
            den = LaurentPoly.one(rank) - ratio
            if not den:
                raise ComputationError("coincident residues in seminormal construction")
            if not _swap_is_standard(tab, k):
                # same row: eigenvalue v; same column: -v^{-1}
                same_row = tab[k - 1][1] == tab[k][1]
                entries[t][t] = LaurentFraction.from_poly(va if same_row else -vai, order)
                done.add(t)
                continue
            u = index[_tableau_swap(tab, k)]
            a_t = LaurentFraction(xi, den, order)
            a_u = LaurentFraction.from_poly(xi, order) - a_t
            entries[t][t] = a_t
            entries[u][u] = a_u
            entries[u][t] = LaurentFraction.from_poly(LaurentPoly.one(rank), order)
            entries[t][u] = a_t * a_u + LaurentFraction.from_poly(LaurentPoly.one(rank), order)
            done.add(t)
            done.add(u)
        gens[s] = KMatrix.from_fractions(entries, order)
    gram = _seminormal_gram(gens, d, rank, order)
    return MatrixRep(alg, label, gens, gram=gram)


def _seminormal_gram(gens, d, rank, order) -> KMatrix:
    """Diagonal invariant form: g_u / g_t = M[t][u] / M[u][t] along blocks."""
    one = LaurentFraction.from_poly(LaurentPoly.one(rank), order)
    vals = [None] * d
    vals[0] = one
    pending = [0]
    while pending:
        t = pending.pop()
        for g in gens:
            for u in range(d):
                if u == t:
                    continue
                mtu, mut = g.num[t][u], g.num[u][t]
                if mtu or mut:
                    if not (mtu and mut):
                        raise ComputationError("one-sided block in seminormal generator")
                    ratio = LaurentFraction(mtu, mut, order)
                    val = vals[t] * ratio
                    if vals[u] is None:
                        vals[u] = val
                        pending.append(u)
                    elif vals[u] != val:
                        raise ComputationError("inconsistent diagonal form ratios")
    if any(v is None for v in vals):
        raise ComputationError("tableau graph is not connected")
    zero = LaurentFraction.zero(rank, order)
    return KMatrix.from_fractions(
        [[vals[i] if i == j else zero for j in range(d)] for i in range(d)], order)


# -- file-loaded representations ------------------------------------------------------


def rep_from_dict(alg: HeckeAlgebra, data: dict) -> MatrixRep:
    label = data.get("label", "loaded")
    if "generators" in data:
        gens = []
        n = alg.table.system.ngens
        field = alg.table.field
        for s in range(n):
            key = str(s)
            if key not in data["generators"]:
                raise InputError(f"generator {s} missing from representation file")
            rows = data["generators"][key]
            mat = [[LaurentPoly.from_str(x, alg.rank, field) for x in row] for row in rows]
            dims = {len(rows)} | {len(r) for r in rows}
            if len(dims) != 1:
                raise InputError("generator matrices must be square of equal size")
            gens.append(KMatrix.from_polys(mat, alg.order))
        return MatrixRep(alg, label, gens)
    if "wgraph" in data:
        return _wgraph_rep(alg, label, data["wgraph"])
    raise InputError("representation file needs 'generators' or 'wgraph'")


def _wgraph_rep(alg: HeckeAlgebra, label: str, wg: dict) -> MatrixRep:
    """T_s e_x = v_s e_x + sum_{y: s in I_y} mu_{y,x} e_y  (s not in I_x),
       T_s e_x = -v_s^{-1} e_x                             (s in I_x)."""
    verts = [frozenset(v) for v in wg["vertices"]]
    d = len(verts)
    n = alg.table.system.ngens
    field = alg.table.field
    rank = alg.rank
    mu = {}
    for e in wg.get("edges", []):
        u, v = int(e["u"]), int(e["v"])
        w = e.get("weight", 1)
        p = (LaurentPoly.from_str(w, rank, field) if isinstance(w, str)
             else LaurentPoly.constant(rank, Fraction(w)))
        mu[(u, v)] = p
        mu.setdefault((v, u), p)
    gens = []
    for s in range(n):
        rows = [[LaurentPoly.zero(rank)] * d for _ in range(d)]
        for x in range(d):
            if s in verts[x]:
                rows[x][x] = -alg.vinv[s]
            else:
                rows[x][x] = alg.v[s]
                for y in range(d):
                    if y != x and s in verts[y] and (y, x) in mu:
                        rows[y][x] = mu[(y, x)]
        gens.append(KMatrix.from_polys(rows, alg.order))
    return MatrixRep(alg, label, gens)


def load_rep(alg: HeckeAlgebra, path) -> MatrixRep:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read representation file {path}: {exc}") from exc
    return rep_from_dict(alg, data)


# -- complete built-in families ---------------------------------------------------------


def builtin_family(alg: HeckeAlgebra) -> list:
    """One representation per irreducible, for the shipped types."""
    system = alg.table.system
    name = system.name
    if name.startswith("A"):
        n = int(name[1])
        return [seminormal_rep(alg, lam) for lam in partitions(n + 1)]
    if name.startswith("B"):
        n = int(name[1])
        return [seminormal_rep(alg, bp) for bp in bipartitions(n)]
    if name.startswith("I2:"):
        m = system.matrix[0][1]
        reps = []
        if m % 2 == 0:
            for signs in ([1, 1], [-1, -1], [1, -1], [-1, 1]):
                reps.append(one_dim_rep(alg, signs))
            jmax = (m - 2) // 2
        else:
            reps.append(one_dim_rep(alg, [1, 1]))
            reps.append(one_dim_rep(alg, [-1, -1]))
            jmax = (m - 1) // 2
        for j in range(1, jmax + 1):
            reps.append(dihedral_rep(alg, j))
        return reps
    raise InputError(
        f"no complete built-in family for type {name or 'custom'};"
        " supply representation files")
