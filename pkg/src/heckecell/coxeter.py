"""Finite Coxeter systems: enumeration, lengths, descents, weight functions.

Elements are enumerated once by breadth-first search in a faithful reflection
representation over F = Q(2cos(2pi/N)) with Cartan-style integer-in-Z[delta]
entries, then identified by small integer ids. All downstream tables
(multiplication, inverses, descent bitsets, reduced words) are stored on the
table and never mutated afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ComputationError
from .fields import RealCyclotomicField, reduced_conductor
from .scalars import MonomialOrder

DEFAULT_BOUND = 20000

_CLASSICAL_ORDERS = {
    "A1": 2, "A2": 6, "A3": 24, "A4": 120,
    "B2": 8, "B3": 48, "H3": 120,
}


def _type_matrix(name: str):
    """Coxeter matrix for a named type; I2(m) spelled 'I2:m'."""
    name = name.strip()
    if name.startswith("I2:"):
        m = int(name[3:])
        if not 3 <= m <= 12:
            raise InputError("I2(m) supported for 3 <= m <= 12")
        return ((1, m), (m, 1))
    if name in ("A1", "A2", "A3", "A4"):
        n = int(name[1])
        return tuple(
            tuple(1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n))
            for i in range(n)
        )
    if name in ("B2", "B3"):
        n = int(name[1])
        return tuple(
            tuple(
                1 if i == j else (4 if {i, j} == {0, 1} else (3 if abs(i - j) == 1 else 2))
                for j in range(n)
            )
            for i in range(n)
        )
    if name == "H3":
        return ((1, 5, 2), (5, 1, 3), (2, 3, 1))
    raise InputError(f"unknown Coxeter type {name!r}")


@dataclass(frozen=True)
class CoxeterSystem:
    """A finite Coxeter system: generators 0..n-1 and the matrix (m_st)."""

    matrix: tuple
    name: str = ""

    def __post_init__(self):
        m = self.matrix
        n = len(m)
        for i in range(n):
            if len(m[i]) != n or m[i][i] != 1:
                raise InputError("Coxeter matrix must be square with 1 on the diagonal")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise InputError("Coxeter matrix must be symmetric")
                if i != j and m[i][j] < 2:
                    raise InputError("off-diagonal Coxeter matrix entries must be >= 2")

    @classmethod
    def named(cls, name: str) -> "CoxeterSystem":
        return cls(_type_matrix(name), name=name)

    @property
    def ngens(self) -> int:
        return len(self.matrix)

    @property
    def bond_orders(self) -> list:
        return [self.matrix[i][j] for i in range(self.ngens) for j in range(i, self.ngens)]

    @property
    def conductor(self) -> int:
        return reduced_conductor(self.bond_orders)

    # spec name for the field-fixing invariant of the system
    N = conductor

    def coefficient_field(self) -> RealCyclotomicField:
        return RealCyclotomicField(self.conductor)

    def generator_classes(self) -> list:
        """Conjugacy classes of generators: connected by a path of odd bonds."""
        parent = list(range(self.ngens))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(self.ngens):
            for j in range(i + 1, self.ngens):
                if self.matrix[i][j] % 2 == 1:
                    parent[find(i)] = find(j)
        classes = {}
        for i in range(self.ngens):
            classes.setdefault(find(i), []).append(i)
        return sorted(classes.values(), key=lambda c: min(c))


class ElementTable:
    """Complete enumeration of a finite Coxeter group.

    Attributes (all immutable after construction):
      size          |W|
      word[w]       the ShortLex-least reduced word found during BFS
      length[w]     l(w)
      rmult[w][s]   index of w*s
      lmult[w][s]   index of s*w
      inverse[w]    index of w^{-1}
      left_descents[w], right_descents[w]   bitmask ints over generators
      by_length     element ids grouped by length
      longest       id of the longest element
    """

    def __init__(self, system: CoxeterSystem, bound: int = DEFAULT_BOUND):
        self.system = system
        self.field = system.coefficient_field()
        self._enumerate(bound)

    def _gen_matrices(self):
        F = self.field
        n = self.system.ngens
        cartan = [[None] * n for _ in range(n)]
        for s in range(n):
            for t in range(n):
                if s == t:
                    cartan[s][t] = F.from_rational(2)
                elif self.system.matrix[s][t] == 2:
                    cartan[s][t] = F.zero
                elif s < t:
                    cartan[s][t] = F.from_rational(-1)
                else:
                    m = self.system.matrix[s][t]
                    cartan[s][t] = -(F.from_rational(2) + F.two_cos(1, m))
        mats = []
        for s in range(n):
            rows = []
            for u in range(n):
                row = []
                for t in range(n):
                    e = F.one if u == t else F.zero
                    if u == s:
                        e = e - cartan[s][t]
                    row.append(e)
                rows.append(tuple(row))
            mats.append(tuple(rows))
        return mats

    @staticmethod
    def _matmul(a, b):
        n = len(a)
        return tuple(
            tuple(sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), Fraction(0))
                  for j in range(n))
            for i in range(n)
        )

    def _enumerate(self, bound: int):
        n = self.system.ngens
        gens = self._gen_matrices()
        identity = tuple(
            tuple(self.field.one if i == j else self.field.zero for j in range(n))
            for i in range(n)
        )
        index = {identity: 0}
        mats = [identity]
        self.word = [()]
        self.length = [0]
        rmult = [[None] * n]
        frontier = [0]
        while frontier:
            new_frontier = []
            for w in frontier:
                mw = mats[w]
                for s in range(n):
                    m2 = self._matmul(mw, gens[s])
                    idx = index.get(m2)
                    if idx is None:
                        idx = len(mats)
                        if idx > bound:
                            raise InputError("group not finite or bound too small")
                        index[m2] = idx
                        mats.append(m2)
                        self.word.append(self.word[w] + (s,))
                        self.length.append(self.length[w] + 1)
                        rmult.append([None] * n)
                        new_frontier.append(idx)
                    rmult[w][s] = idx
            frontier = new_frontier
        self.size = len(mats)
        self.rmult = rmult
        self.lmult = [[None] * n for _ in range(self.size)]
        for w in range(self.size):
            for s in range(n):
                self.lmult[w][s] = index[self._matmul(gens[s], mats[w])]
        self.inverse = [None] * self.size
        for w in range(self.size):
            acc = 0
            for s in reversed(self.word[w]):
                acc = self.rmult[acc][s]
            self.inverse[w] = acc
        self.left_descents = [0] * self.size
        self.right_descents = [0] * self.size
        for w in range(self.size):
            for s in range(n):
                if self.length[self.lmult[w][s]] < self.length[w]:
                    self.left_descents[w] |= 1 << s
                if self.length[self.rmult[w][s]] < self.length[w]:
                    self.right_descents[w] |= 1 << s
        maxlen = max(self.length)
        self.by_length = [[] for _ in range(maxlen + 1)]
        for w in range(self.size):
            self.by_length[self.length[w]].append(w)
        longest = self.by_length[maxlen]
        if len(longest) != 1:
            raise ComputationError("longest element is not unique")
        self.longest = longest[0]

    def mult(self, w1: int, w2: int) -> int:
        acc = w1
        for s in self.word[w2]:
            acc = self.rmult[acc][s]
        return acc

    def gen(self, s: int) -> int:
        """Element id of the generator s."""
        return self.rmult[0][s]

    def has_left_descent(self, w: int, s: int) -> bool:
        return bool(self.left_descents[w] >> s & 1)

    def has_right_descent(self, w: int, s: int) -> bool:
        return bool(self.right_descents[w] >> s & 1)

    def first_left_descent(self, w: int) -> int:
        d = self.left_descents[w]
        if not d:
            raise ComputationError("identity has no descent")
        return (d & -d).bit_length() - 1

    def right_parent(self, w: int):
        """(w', s) with w = w' s along the stored word; None for the identity."""
        if not self.word[w]:
            return None
        s = self.word[w][-1]
        return self.rmult[w][s], s


@dataclass(frozen=True)
class WeightFunction:
    """L: W -> Z^rank, determined by its values on the generators."""

    rank: int
    values: tuple  # tuple of exponent tuples, one per generator

    def of_gen(self, s: int):
        return self.values[s]

    def of(self, table: ElementTable, w: int):
        g = [0] * self.rank
        for s in table.word[w]:
            for i, x in enumerate(self.values[s]):
                g[i] += x
        return tuple(g)


def universal_weights(system: CoxeterSystem) -> WeightFunction:
    """One coordinate per generator conjugacy class; the class of the last
    generator comes first, matching the (a, b) labelling of the two-class
    diagrams (B_n, even I2) where `a` sits on the tail generators."""
    classes = system.generator_classes()
    k = len(classes)
    coord_of_class = {}
    for pos, cls in enumerate(reversed(classes)):
        coord_of_class[tuple(cls)] = pos
    values = []
    for s in range(system.ngens):
        for cls in classes:
            if s in cls:
                vec = [0] * k
                vec[coord_of_class[tuple(cls)]] = 1
                values.append(tuple(vec))
                break
    return WeightFunction(k, tuple(values))


def equal_weights(system: CoxeterSystem) -> WeightFunction:
    return WeightFunction(1, tuple((1,) for _ in range(system.ngens)))


def validate_weights(system: CoxeterSystem, weights: WeightFunction,
                     order: MonomialOrder) -> list:
    """Class-constancy and strict positivity; returns violation strings."""
    problems = []
    if order.rank != weights.rank:
        problems.append(
            f"order rank {order.rank} does not match weight rank {weights.rank}")
        return problems
    for cls in system.generator_classes():
        vals = {weights.of_gen(s) for s in cls}
        if len(vals) > 1:
            problems.append(
                f"conjugate generators with unequal weights: class {cls}")
    for s in range(system.ngens):
        if not order.is_positive(weights.of_gen(s)):
            problems.append(f"L(s) > 0 fails for generator {s}: {weights.of_gen(s)}")
    return problems
