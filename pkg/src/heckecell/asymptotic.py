"""The asymptotic ring built from leading matrix coefficients.

Given one balanced representation per irreducible, the structure constants

    gamma_{x,y,z} = sum_lam f_lam^{-1} trace(M_x^lam M_y^lam M_z^lam)

(with M_w^lam the leading-coefficient matrix of T_w) define an associative
F-algebra on the basis {t_w}: t_x t_y = sum_z gamma_{x,y,z^{-1}} t_z. Its
identity is sum_{w in D} n_w t_w with n_w = sum_lam f^{-1} trace(M_{w^{-1}}),
its trace t_w -> n_{w^{-1}} makes {t_w}, {t_{w^{-1}}} dual bases, and the
matrices M^lam themselves are its irreducible representations. The nonzero
gamma live inside blocks: connected components of the graph joining elements
that share a representation with a nonzero leading matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import ComputationError, VerificationError
from .hecke import HeckeAlgebra
from .matrices import f_mat_mul


@dataclass
class Report:
    """Outcome of a verification suite: named checks with violation lists."""

    checks: dict = dc_field(default_factory=dict)

    def record(self, name: str, violations: list):
        self.checks[name] = violations

    @property
    def ok(self) -> bool:
        return all(not v for v in self.checks.values())

    def summary(self) -> str:
        lines = []
        for name, violations in self.checks.items():
            status = "pass" if not violations else f"FAIL ({len(violations)})"
            lines.append(f"{name}: {status}")
            for v in violations[:5]:
                lines.append(f"  - {v}")
        return "\n".join(lines)


class AsymptoticRing:
    """Structure constants, identity, trace and blocks of the asymptotic ring."""

    def __init__(self, alg: HeckeAlgebra, tensors: list):
        size = alg.table.size
        total = sum(t.dim * t.dim for t in tensors)
        if total != size:
            raise VerificationError(
                f"missing irreducibles: sum of squared dimensions {total} != {size}")
        self.alg = alg
        self.tensors = list(tensors)
        self.size = size
        self._build_blocks()
        self._build_gamma()

    # -- construction -------------------------------------------------------------

    def _build_blocks(self):
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in self.tensors:
            sup = sorted(t.support)
            for w in sup[1:]:
                parent[find(w)] = find(sup[0])
        groups: dict = {}
        for w in range(self.size):
            groups.setdefault(find(w), []).append(w)
        self.blocks = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
        self.block_of = [None] * self.size
        for bi, block in enumerate(self.blocks):
            for w in block:
                self.block_of[w] = bi
        self.block_of_label = {}
        for t in self.tensors:
            bis = {self.block_of[w] for w in t.support}
            if len(bis) != 1:
                raise ComputationError(f"representation {t.label} meets several blocks")
            self.block_of_label[t.label] = next(iter(bis))

    def _build_gamma(self):
        inverse = self.alg.table.inverse
        finv = [_inv(t.f) for t in self.tensors]
        gamma: dict = {}
        for bi, block in enumerate(self.blocks):
            tens = [(t, fi) for t, fi in zip(self.tensors, finv)
                    if self.block_of_label[t.label] == bi]
            for x in block:
                for y in block:
                    prods = []
                    for t, fi in tens:
                        mx, my = t.mats[x], t.mats[y]
                        if mx is not None and my is not None:
                            prods.append((t, fi, f_mat_mul(mx, my)))
                    if not prods:
                        continue
                    for z in block:
                        acc = Fraction(0)
                        for t, fi, pxy in prods:
                            mz = t.mats[z]
                            if mz is None:
                                continue
                            d = t.dim
                            s = Fraction(0)
                            for i in range(d):
                                pi = pxy[i]
                                for k in range(d):
                                    if pi[k]:
                                        s = pi[k] * mz[k][i] + s
                            if s:
                                acc = acc + fi * s
                        if acc:
                            gamma[(x, y, z)] = acc
        self.gamma = gamma
        n = [Fraction(0)] * self.size
        for t, fi in zip(self.tensors, finv):
            for w in t.support:
                m = t.mats[w]
                tr = Fraction(0)
                for i in range(t.dim):
                    tr = m[i][i] + tr
                if tr:
                    n[inverse[w]] = n[inverse[w]] + fi * tr
        self.n_vec = n
        self.d_set = [w for w in range(self.size) if n[w]]

    # -- ring operations ---------------------------------------------------------------

    def gamma_at(self, x: int, y: int, z: int):
        return self.gamma.get((x, y, z), Fraction(0))

    def multiply(self, a: dict, b: dict) -> dict:
        """Product of two elements given as {w: coefficient} in the t-basis."""
        inverse = self.alg.table.inverse
        out: dict = {}
        for x, cx in a.items():
            bx = self.block_of[x]
            for y, cy in b.items():
                if self.block_of[y] != bx:
                    continue
                c = cx * cy
                for z in self.blocks[bx]:
                    g = self.gamma.get((x, y, inverse[z]))
                    if g:
                        cur = out.get(z)
                        cur = c * g if cur is None else cur + c * g
                        if cur:
                            out[z] = cur
                        elif z in out:
                            del out[z]
        return {z: c for z, c in out.items() if c}

    def basis_product(self, x: int, y: int) -> dict:
        return self.multiply({x: Fraction(1)}, {y: Fraction(1)})

    def identity_element(self) -> dict:
        return {w: self.n_vec[w] for w in self.d_set}

    def trace(self, a: dict):
        inverse = self.alg.table.inverse
        acc = Fraction(0)
        for w, c in a.items():
            nw = self.n_vec[inverse[w]]
            if nw:
                acc = acc + c * nw
        return acc

    def rep_matrix(self, label: str, w: int):
        """The irreducible representation t_w -> leading matrix, for one label."""
        for t in self.tensors:
            if t.label == label:
                if t.mats[w] is not None:
                    return t.mats[w]
                return [[Fraction(0)] * t.dim for _ in range(t.dim)]
        raise ComputationError(f"unknown representation label {label}")

    # -- verification ---------------------------------------------------------------------

    def verify(self, seed: int = 0, exhaustive_max: int = 16,
               random_triples: int = 10000) -> Report:
        """Ring axioms and symmetries; any violation is build-breaking."""
        inverse = self.alg.table.inverse
        report = Report()

        bad = []
        for (x, y, z), g in self.gamma.items():
            if self.gamma.get((y, z, x), Fraction(0)) != g:
                bad.append(f"cyclic symmetry fails at ({x},{y},{z})")
            if self.gamma.get((inverse[y], inverse[x], inverse[z]), Fraction(0)) != g:
                bad.append(f"anti-involution symmetry fails at ({x},{y},{z})")
            if not (self.block_of[x] == self.block_of[y] == self.block_of[z]):
                bad.append(f"gamma crosses blocks at ({x},{y},{z})")
        report.record("gamma symmetries", bad)

        bad = []
        for x in range(self.size):
            for y in range(self.size):
                acc = Fraction(0)
                for w in self.blocks[self.block_of[x]]:
                    g = self.gamma.get((inverse[x], y, w))
                    if g:
                        nw = self.n_vec[w]
                        if nw:
                            acc = acc + g * nw
                want = Fraction(1) if x == y else Fraction(0)
                if acc != want:
                    bad.append(f"dual-pairing identity fails at ({x},{y})")
        report.record("gamma/n duality", bad)

        one = self.identity_element()
        bad = []
        for x in range(self.size):
            tx = {x: Fraction(1)}
            if self.multiply(one, tx) != tx or self.multiply(tx, one) != tx:
                bad.append(f"identity fails at {x}")
        report.record("two-sided identity", bad)

        bad = []
        for x in range(self.size):
            for y in range(self.size):
                want = Fraction(1) if x == y else Fraction(0)
                if self.trace(self.basis_product(x, inverse[y])) != want:
                    bad.append(f"trace dual-basis fails at ({x},{y})")
        report.record("trace dual bases", bad)

        bad = []
        if self.size <= exhaustive_max:
            triples = ((x, y, z) for x in range(self.size)
                       for y in range(self.size) for z in range(self.size))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(self.size), rng.randrange(self.size),
                        rng.randrange(self.size)) for _ in range(random_triples))
        for x, y, z in triples:
            lhs = self.multiply(self.basis_product(x, y), {z: Fraction(1)})
            rhs = self.multiply({x: Fraction(1)}, self.basis_product(y, z))
            if lhs != rhs:
                bad.append(f"associativity fails at ({x},{y},{z})")
        report.record("associativity", bad)

        bad = []
        limit = 20
        for t in self.tensors:
            block = self.blocks[self.block_of_label[t.label]]
            pairs = ([(x, y) for x in block for y in block]
                     if len(block) <= limit else
                     _sample_pairs(block, seed, 400))
            for x, y in pairs:
                prod = self.basis_product(x, y)
                acc = [[Fraction(0)] * t.dim for _ in range(t.dim)]
                for z, c in prod.items():
                    mz = t.mats[z]
                    if mz is None:
                        continue
                    for i in range(t.dim):
                        for jj in range(t.dim):
                            if mz[i][jj]:
                                acc[i][jj] = acc[i][jj] + c * mz[i][jj]
                direct = f_mat_mul(self.rep_matrix(t.label, x), self.rep_matrix(t.label, y))
                if any(acc[i][jj] != direct[i][jj]
                       for i in range(t.dim) for jj in range(t.dim)):
                    bad.append(f"representation property fails for {t.label} at ({x},{y})")
        report.record("irreducible representations", bad)
        return report

    def compare_with_kl(self) -> Report:
        """Entrywise comparison with the Kazhdan-Lusztig side gamma constants,
        plus the a-value link: a nonzero leading matrix at z forces a(z) = a_lam."""
        alg = self.alg
        report = Report()
        bad = []
        for x in range(self.size):
            for y in range(self.size):
                for z in range(self.size):
                    kl = alg.gamma_constant(x, y, z)
                    ours = self.gamma.get((x, y, z), Fraction(0))
                    if ours != kl:
                        bad.append(f"gamma mismatch at ({x},{y},{z}): reps {ours} vs kl {kl}")
        report.record("gamma equality", bad)
        bad = []
        for t in self.tensors:
            for w in t.support:
                if alg.a_value(w) != t.a:
                    bad.append(f"a({w}) != a-invariant of {t.label}")
        report.record("a-value link", bad)
        return report


def _sample_pairs(block, seed, count):
    rng = random.Random(seed)
    return [(rng.choice(block), rng.choice(block)) for _ in range(count)]


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return 1 / c
    return c.field.inverse(c)


def l_blocks(ring: AsymptoticRing):
    """(blocks, block_of_element, block_of_label)."""
    return ring.blocks, ring.block_of, ring.block_of_label
