"""Concrete invariant algebras: extraction, annihilator, embeddings."""

from fractions import Fraction

import pytest

from qinvar import linalg as la
from qinvar.invariant import (
    AlgebraError,
    FiniteAlgebra,
    check_idempotent,
    check_invariant_homomorphism,
    invariant_subalgebra,
    left_regular_embedding,
    linear_invariant_algebra,
    matrix_algebra,
    unflatten_matrix,
)
from qinvar.scalars import GF, QQ

from conftest import lower_triangular_2x2


def _matmul2(a, b):
    """Independent 2x2 oracle for the matrix-unit structure constants."""
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(2)) for j in range(2))
        for i in range(2)
    )


def test_matrix_algebra_against_direct_multiplication():
    m2 = matrix_algebra(QQ, 2)
    units = [unflatten_matrix(m2.basis_vector(i), 2) for i in range(4)]
    for i in range(4):
        for j in range(4):
            via_table = unflatten_matrix(
                m2.mul(m2.basis_vector(i), m2.basis_vector(j)), 2
            )
            direct = _matmul2(units[i], units[j])
            assert via_table == direct


def test_check_idempotent(m2_qq):
    algebra, q = m2_qq
    assert check_idempotent(algebra, q)                      # E11
    assert check_idempotent(algebra, algebra.unit)           # unit
    assert check_idempotent(algebra, (Fraction(0),) * 4)     # zero
    assert not check_idempotent(algebra, (Fraction(2), Fraction(0), Fraction(0), Fraction(0)))


def test_invariant_subalgebra_dimension_and_content(inv_m2_qq):
    inv = inv_m2_qq
    assert inv.dim == 3
    # lower-triangular matrices: E11, E21, E22 (indices 0, 2, 3 row-major)
    expected = (
        (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),
    )
    assert inv.basis == expected


def test_invariant_subalgebra_closure_is_exact(inv_m2_qq):
    inv = inv_m2_qq
    for b1 in inv.basis:
        for b2 in inv.basis:
            assert inv.contains(inv.mul(b1, b2))


def test_degenerate_idempotents(m2_qq):
    algebra, _ = m2_qq
    assert invariant_subalgebra(algebra, algebra.unit).dim == algebra.dim
    assert invariant_subalgebra(algebra, (Fraction(0),) * 4).dim == algebra.dim


def test_invariant_subalgebra_rejects_non_idempotent(m2_qq):
    algebra, _ = m2_qq
    with pytest.raises(AlgebraError):
        invariant_subalgebra(algebra, (Fraction(2), Fraction(0), Fraction(0), Fraction(0)))


def test_annihilator_lower_triangular(inv_m2_qq):
    from qinvar.invariant import annihilator

    ann = annihilator(inv_m2_qq)
    assert len(ann) == 2
    assert ann == (
        (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),   # E21
        (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),   # E22
    )


def test_annihilator_degenerate(m2_qq):
    from qinvar.invariant import annihilator

    algebra, _ = m2_qq
    assert annihilator(invariant_subalgebra(algebra, algebra.unit)) == ()
    inv0 = invariant_subalgebra(algebra, (Fraction(0),) * 4)
    assert len(annihilator(inv0)) == algebra.dim


def test_annihilator_inclusions_exhaustive(lt_gf3):
    from qinvar.invariant import annihilator

    f = lt_gf3.field
    ann = annihilator(lt_gf3)
    amb = lt_gf3.ambient
    for x in lt_gf3.elements():
        for vec in (
            la.vec_sub(f, amb.mul(lt_gf3.q, x), x),
            la.vec_sub(f, amb.mul(x, lt_gf3.q), x),
            la.vec_sub(f, amb.mul(lt_gf3.q, x), amb.mul(x, lt_gf3.q)),
        ):
            assert la.span_contains(f, ann, vec)


def test_linear_invariant_algebra_w_span_e2():
    end, q = linear_invariant_algebra(QQ, 2, [(Fraction(0), Fraction(1))])
    assert q == (Fraction(1), Fraction(0), Fraction(0), Fraction(0))  # E11
    assert invariant_subalgebra(end, q).dim == 3


def test_linear_invariant_algebra_degenerate():
    end, q = linear_invariant_algebra(QQ, 2, [])
    assert unflatten_matrix(q, 2) == la.mat_identity(QQ, 2)
    assert invariant_subalgebra(end, q).dim == 4
    full = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    end2, q2 = linear_invariant_algebra(QQ, 2, full)
    assert all(v == 0 for v in q2)
    assert invariant_subalgebra(end2, q2).dim == 4


def test_linear_invariant_algebra_rejects_dependent_w():
    with pytest.raises(AlgebraError):
        linear_invariant_algebra(
            QQ, 2, [(Fraction(1), Fraction(0)), (Fraction(2), Fraction(0))]
        )


def test_left_regular_embedding_clauses(inv_m2_qq):
    emb = left_regular_embedding(inv_m2_qq)
    assert emb.verdict.ok, emb.verdict.summary()
    assert emb.end_algebra.dim == 9
    hom = check_invariant_homomorphism(emb.phi, inv_m2_qq, emb.codomain)
    assert hom.ok, hom.summary()
    # phi(q)·phi(q) = phi(q) transports idempotency
    q_l = emb.q_left
    assert la.mat_mul(QQ, q_l, q_l) == q_l


def test_left_regular_embedding_gf(lt_gf3):
    emb = left_regular_embedding(lt_gf3)
    assert emb.verdict.ok, emb.verdict.summary()


def test_embedding_degenerate_q_zero(m2_qq):
    algebra, _ = m2_qq
    inv0 = invariant_subalgebra(algebra, (Fraction(0),) * 4)
    emb = left_regular_embedding(inv0)
    assert emb.verdict.ok
    assert la.mat_is_zero(QQ, emb.q_left)


def test_zero_map_fails_unit_clause(inv_m2_qq):
    emb = left_regular_embedding(inv_m2_qq)
    zero_phi = la.mat_zero(QQ, emb.codomain.dim, inv_m2_qq.dim)
    verdict = check_invariant_homomorphism(zero_phi, inv_m2_qq, emb.codomain)
    names = {c.name: c.ok for c in verdict.checks}
    assert not names["phi(1_A) = 1_B"]


def test_identity_map_is_invariant_homomorphism(inv_m2_qq):
    inv = inv_m2_qq
    phi = la.mat_identity(QQ, inv.dim)
    verdict = check_invariant_homomorphism(phi, inv, inv)
    assert verdict.ok


def test_algebra_construction_validates():
    f = QQ
    with pytest.raises(AlgebraError):
        # e0*e0 = e1, e0*e1 = 0, e1*anything = 0 is not associative with unit e0
        FiniteAlgebra(f, 2, (f.one, f.zero), [(0, 0, 0, f.one), (1, 1, 0, f.one)])
    with pytest.raises(AlgebraError):
        FiniteAlgebra(f, 2, (f.one, f.one, f.one), [])  # bad unit length
    with pytest.raises(AlgebraError):
        FiniteAlgebra(f, 2, (f.one, f.zero), [(0, 0, 5, f.one)])  # bad index


def test_lower_triangular_fixture_is_whole_invariant_algebra(lt_gf3):
    # with q = E11, qxq = qx holds for every lower-triangular x
    assert lt_gf3.dim == 3
    assert len(list(lt_gf3.elements())) == 27


def test_lower_triangular_matches_matrix_subalgebra():
    # the 3-dim fixture is the lower-triangular corner of the 2x2 algebra
    lt = lower_triangular_2x2(QQ)
    m2 = matrix_algebra(QQ, 2)
    embed = {0: 0, 1: 2, 2: 3}  # E11, E21, E22 row-major positions

    def lift(v):
        out = [Fraction(0)] * 4
        for i, value in enumerate(v):
            out[embed[i]] = value
        return tuple(out)

    for i in range(3):
        for j in range(3):
            prod = lt.mul(lt.basis_vector(i), lt.basis_vector(j))
            assert lift(prod) == m2.mul(lift(lt.basis_vector(i)), lift(lt.basis_vector(j)))
