"""Representation constructors, Schur data, balancing, leading coefficients."""

import json
from fractions import Fraction

import pytest

from conftest import get_session
from heckecell.errors import InputError, VerificationError
from heckecell.matrices import KMatrix
from heckecell.reps import (balance, builtin_family, dihedral_rep, gram_average,
                            index_rep, invariant_gram, is_balanced, leading_tensor,
                            load_rep, one_dim_rep, rep_from_dict, schur_data,
                            seminormal_rep, sign_rep, verify_schur_relations)
from heckecell.scalars import LaurentPoly


def test_one_dimensional_traces():
    alg = get_session("B2").algebra
    rind, rsgn = index_rep(alg), sign_rep(alg)
    for w in range(alg.table.size):
        lw = alg.weights.of(alg.table, w)
        assert rind.trace_poly(w) == LaurentPoly.monomial(lw)
        sign = -1 if alg.table.length[w] % 2 else 1
        assert rsgn.trace_poly(w) == LaurentPoly.monomial(tuple(-x for x in lw), sign)
    with pytest.raises(InputError, match="constant on conjugacy classes"):
        one_dim_rep(get_session("A2").algebra, [1, -1])


def test_a1_leading_coefficients():
    alg = get_session("A1").algebra
    for rep, expect in ((index_rep(alg), {0: 1, 1: 0}), (sign_rep(alg), {0: 0, 1: 1})):
        t = leading_tensor(rep, schur_data(rep))
        for w, val in expect.items():
            assert t.entry(w, 0, 0) == val


def test_a1_schur_elements():
    alg = get_session("A1").algebra
    si = schur_data(index_rep(alg))
    assert si.c == LaurentPoly(1, {(0,): 1, (2,): 1}) and si.a == (0,) and si.f == 1
    ss = schur_data(sign_rep(alg))
    assert ss.c == LaurentPoly(1, {(0,): 1, (-2,): 1}) and ss.a == (1,) and ss.f == 1


def test_dihedral_mu_at_m3():
    # equal parameters, m = 3: mu_1 = 1 + (zeta + zeta^{-1}) + 1 = 1
    alg = get_session("I2:3").algebra
    rep = dihedral_rep(alg, 1)
    # off-diagonal entry of rho(T_{s1}) is mu_1
    assert rep.gens[0].entry(1, 0).as_laurent() == LaurentPoly.one(1)
    with pytest.raises(InputError, match="out of range"):
        dihedral_rep(alg, 2)


@pytest.mark.parametrize("m", range(3, 13))
def test_dihedral_construction_and_gram_equal_parameters(m):
    """Construction validates the quadratic and braid relations; the attached
    form intertwines; its constant matrix is diag(2 + zeta^j + zeta^{-j}, 1)."""
    alg = get_session(f"I2:{m}").algebra
    field = alg.table.field
    jmax = (m - 2) // 2 if m % 2 == 0 else (m - 1) // 2
    for j in range(1, jmax + 1):
        rep = dihedral_rep(alg, j)
        omega = invariant_gram(rep)
        cert = is_balanced(rep, omega, schur_data(rep))
        assert cert.balanced
        consts = [[omega.entry(i, k).constant_term() for k in range(2)] for i in range(2)]
        zz = field.two_cos(j, m)
        assert consts[0][0] == zz + 2
        assert consts[1][1] == 1 and consts[0][1] == 0 and consts[1][0] == 0


@pytest.mark.parametrize("m", [4, 6, 8, 10, 12])
def test_dihedral_gram_identity_when_first_weight_larger(m):
    alg = get_session(f"I2:{m}", "universal", "b-first").algebra
    jmax = (m - 2) // 2
    for j in range(1, jmax + 1):
        rep = dihedral_rep(alg, j)
        omega = invariant_gram(rep)
        consts = [[omega.entry(i, k).constant_term() for k in range(2)] for i in range(2)]
        assert consts == [[1, 0], [0, 1]]


def test_gram_average_proportional_to_attached_form():
    alg = get_session("I2:5").algebra
    rep = dihedral_rep(alg, 2)
    om = invariant_gram(rep)
    ga = gram_average(rep)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert ga.entry(i, j) * om.entry(k, l) == ga.entry(k, l) * om.entry(i, j)


def test_seminormal_a1_is_index():
    alg = get_session("A1").algebra
    rep = seminormal_rep(alg, (2,))
    ind = index_rep(alg)
    for w in range(2):
        assert rep.trace_poly(w) == ind.trace_poly(w)


def test_seminormal_a2_matches_dihedral():
    # A2 and I2:3 have the same Coxeter matrix, hence identical element tables
    a2 = get_session("A2").algebra
    i23 = get_session("I2:3").algebra
    sn = seminormal_rep(a2, (2, 1))
    dh = dihedral_rep(i23, 1)
    assert schur_data(sn).a == (1,)
    for w in range(6):
        assert sn.trace_poly(w) == dh.trace_poly(w)


def test_seminormal_b2_matches_dihedral():
    b2 = get_session("B2").algebra
    i24 = get_session("I2:4").algebra
    sn = seminormal_rep(b2, ((1,), (1,)))
    dh = dihedral_rep(i24, 1)
    for w in range(8):
        assert sn.trace_poly(w) == dh.trace_poly(w)
    with pytest.raises(InputError):
        seminormal_rep(b2, ((2,), (1,)))


def test_character_orthogonality_at_one():
    """Specializing eps -> 1 gives the classical character: it must be a
    rational integer, have degree chi(1) = dim, and satisfy the first
    orthogonality relation sum_w chi(w) chi(w^{-1}) = |W|."""
    for name in ("A2", "A3", "B2"):
        alg = get_session(name).algebra
        for rep in builtin_family(alg):
            vals = [rep.character_at_one(w) for w in range(alg.table.size)]
            assert all(Fraction(v).denominator == 1 for v in vals)
            assert vals[0] == rep.dim
            total = sum(vals[w] * vals[alg.table.inverse[w]]
                        for w in range(alg.table.size))
            assert total == alg.table.size
            rep.clear_cache()


def test_braid_validation_rejects_corrupt_matrices():
    alg = get_session("I2:4").algebra
    good = dihedral_rep(alg, 1)
    bad_gens = [good.gens[0], good.gens[1].scale_poly(LaurentPoly.monomial((1,)))]
    from heckecell.reps import MatrixRep
    with pytest.raises(VerificationError, match="braid violation"):
        MatrixRep(alg, "corrupt", bad_gens)


def test_unbalanced_after_monomial_conjugation():
    """Conjugating by diag(eps, 1) yields an equivalent representation whose
    own normalized invariant form acquires a singular constant matrix."""
    alg = get_session("I2:4").algebra
    rep = dihedral_rep(alg, 1)
    sd = schur_data(rep)
    d = KMatrix.from_polys(
        [[LaurentPoly.monomial((1,)), LaurentPoly.zero(1)],
         [LaurentPoly.zero(1), LaurentPoly.one(1)]], alg.order)
    dinv = KMatrix.from_polys(
        [[LaurentPoly.monomial((-1,)), LaurentPoly.zero(1)],
         [LaurentPoly.zero(1), LaurentPoly.one(1)]], alg.order)
    from heckecell.reps import MatrixRep
    twisted = MatrixRep(alg, "twisted", [dinv * g * d for g in rep.gens])
    omega = gram_average(twisted)
    cert = is_balanced(twisted, omega, sd)
    assert not cert.balanced

    # balancing recovers an equivalent balanced model with the same invariants
    fixed = balance(twisted)
    cert2 = is_balanced(fixed, fixed.gram, sd)
    assert cert2.balanced


def test_balance_restores_gamma_table():
    """The leading tensors of a rebalanced twisted model generate the same
    structure constants as the original family (choice independence)."""
    from heckecell.asymptotic import AsymptoticRing
    from heckecell.reps import MatrixRep
    alg = get_session("I2:4").algebra
    family = builtin_family(alg)
    tens = []
    for r in family:
        sd = schur_data(r)
        tens.append(leading_tensor(r, sd))
    base = AsymptoticRing(alg, tens)

    rep = dihedral_rep(alg, 1)
    sd = schur_data(rep)
    d = KMatrix.from_polys(
        [[LaurentPoly.monomial((2,)), LaurentPoly.zero(1)],
         [LaurentPoly.zero(1), LaurentPoly.one(1)]], alg.order)
    dinv = KMatrix.from_polys(
        [[LaurentPoly.monomial((-2,)), LaurentPoly.zero(1)],
         [LaurentPoly.zero(1), LaurentPoly.one(1)]], alg.order)
    twisted = MatrixRep(alg, "dihedral:1", [dinv * g * d for g in rep.gens])
    fixed = balance(twisted)
    tens2 = [leading_tensor(fixed if r.label == "dihedral:1" else r, schur_data(r))
             for r in family]
    other = AsymptoticRing(alg, tens2)
    assert base.gamma == other.gamma


def test_balanced_seminormal_b2_has_integral_tensor():
    session = get_session("B2")
    for t in session.tensors:
        for m in t.mats:
            if m is None:
                continue
            for row in m:
                for c in row:
                    assert Fraction(c).denominator == 1


@pytest.mark.parametrize("m", [5, 7])
def test_dihedral_tensors_lie_in_the_cosine_ring(m):
    session = get_session(f"I2:{m}")
    field = session.table.field
    for t in session.tensors:
        for mat in t.mats:
            if mat is None:
                continue
            for row in mat:
                for c in row:
                    assert field.is_ring_integer(c)


def test_a4_seminormal_smoke():
    from heckecell.reps import partitions, standard_tableaux
    session = get_session("A4")
    assert sum(len(standard_tableaux((tuple(p),)))**2 for p in partitions(5)) == 120
    rep = seminormal_rep(session.algebra, (3, 2))
    assert rep.dim == 5
    sd = schur_data(rep)
    assert sd.a == (2,) and sd.f == 1
    rep.clear_cache()


def test_h3_needs_representation_files():
    with pytest.raises(InputError, match="supply representation files"):
        builtin_family(get_session("H3").algebra)


def test_schur_relations_and_duplicate_detection():
    session = get_session("I2:5")
    alg = session.algebra
    assert verify_schur_relations(alg, session.tensors) == []
    # same total dimension but a repeated irreducible: cross-orthogonality fails
    fam = builtin_family(alg)
    fam[1] = fam[0]
    tens = [leading_tensor(r, schur_data(r)) for r in fam]
    assert verify_schur_relations(alg, tens)
    # incomplete family: dimension count gate
    with pytest.raises(VerificationError, match="missing irreducibles"):
        verify_schur_relations(alg, tens[:2])


def test_minimality_of_the_shift():
    """Some entry of eps^a rho(T_w) has constant term != 0: the tensor of a
    balanced representation is never empty, and a smaller shift would fail."""
    for name in ("A2", "B2"):
        session = get_session(name)
        for t in session.tensors:
            assert t.support


def test_a_value_link_equal_parameters():
    for name in ("A2", "B2", "I2:3", "I2:4", "I2:5", "I2:6"):
        session = get_session(name)
        alg = session.algebra
        for t in session.tensors:
            for w in t.support:
                assert alg.a_value(w) == t.a


# -- file loading -------------------------------------------------------------------


def test_explicit_file_roundtrip(tmp_path):
    session = get_session("I2:4")
    alg = session.algebra
    rep = dihedral_rep(alg, 1)
    field = alg.table.field
    data = {
        "label": "rho1",
        "dim": 2,
        "generators": {
            str(s): [[rep.gens[s].entry(i, j).as_laurent().to_str(field)
                      for j in range(2)] for i in range(2)]
            for s in range(2)
        },
    }
    path = tmp_path / "rho1.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    loaded = load_rep(alg, path)
    for s in range(2):
        assert loaded.gens[s] == rep.gens[s]


def test_wgraph_degenerate_and_two_dimensional():
    alg = get_session("A2").algebra
    ind = rep_from_dict(alg, {"label": "ind", "wgraph": {"vertices": [[]], "edges": []}})
    assert ind.trace_poly(alg.table.gen(0)) == index_rep(alg).trace_poly(alg.table.gen(0))
    sgn = rep_from_dict(alg, {"label": "sgn", "wgraph": {"vertices": [[0, 1]], "edges": []}})
    assert sgn.trace_poly(alg.table.gen(0)) == sign_rep(alg).trace_poly(alg.table.gen(0))
    two = rep_from_dict(alg, {
        "label": "refl",
        "wgraph": {"vertices": [[0], [1]], "edges": [{"u": 0, "v": 1, "weight": 1}]},
    })
    sn = seminormal_rep(alg, (2, 1))
    for w in range(6):
        assert two.trace_poly(w) == sn.trace_poly(w)


def test_wgraph_braid_violation_rejected():
    alg = get_session("A2").algebra
    with pytest.raises(VerificationError, match="braid violation"):
        rep_from_dict(alg, {
            "label": "bad",
            "wgraph": {"vertices": [[0], [1]],
                       "edges": [{"u": 0, "v": 1, "weight": 2}]},
        })


def test_load_rep_parse_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError, match="cannot read"):
        load_rep(get_session("A2").algebra, path)
