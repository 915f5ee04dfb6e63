"""Structure-constant algebras: validation, ideals, radical, separability."""
from fractions import Fraction

import pytest

from hopfsplit.algebra import (
    AlgebraObject,
    BimoduleObject,
    CertificationFailed,
    IdealData,
    NotNilpotentWithin,
    NotSeparable,
    SmallCharUnsupported,
    ideal_generated_by,
    ideal_power_nilpotency,
    is_ideal,
    quotient_algebra,
    radical,
    separability_idempotent,
    verify_separability_idempotent,
)
from hopfsplit.builtin import group_algebra
from hopfsplit.fields import GF, QQ
from hopfsplit.linalg import Matrix, Subspace
from hopfsplit.tensors import v_basis


def one_dim_field_algebra(f):
    return AlgebraObject(f, 1, {(0, 0): {0: f.one()}}, [f.one()], ("1",))


def dual_numbers(f):
    one = f.one()
    mul = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}}
    return AlgebraObject(f, 2, mul, [one, f.zero()], ("1", "x"))


def truncated_cubic(f):
    one = f.one()
    mul = {
        (0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one},
        (0, 2): {2: one}, (2, 0): {2: one}, (1, 1): {2: one},
    }
    return AlgebraObject(f, 3, mul, [one, f.zero(), f.zero()], ("1", "x", "x2"))


def test_one_dimensional_algebra_passes():
    assert one_dim_field_algebra(QQ).validate().ok


def test_dual_numbers_pass():
    # the 8 associativity triples hold by hand: x*x = 0 absorbs everything
    assert dual_numbers(QQ).validate().ok


def test_missing_unit_detected():
    f = QQ
    a = AlgebraObject(f, 2, {(0, 0): {1: f.one()}}, [f.one(), f.zero()])
    rep = a.validate()
    assert not rep.ok
    assert any("unit" in name for name, _ in rep.failures())


def test_non_associative_detected():
    f = QQ
    # e0 e0 = e1, e1 e0 = e0 with unit nominally e0 breaks associativity
    mul = {(0, 0): {1: f.one()}, (1, 0): {0: f.one()}}
    a = AlgebraObject(f, 2, mul, [f.one(), f.zero()])
    rep = a.validate()
    assert not rep.ok


def test_ideal_generated_by_zero():
    a = dual_numbers(QQ)
    ideal = ideal_generated_by(a, Matrix.zeros(QQ, 2, 1))
    assert ideal.dim == 0


def test_ideal_generated_by_x():
    a = dual_numbers(QQ)
    # f picks x: 1*x*1 = x and x*x = 0, so the ideal is span(x)
    ideal = ideal_generated_by(a, Matrix.column(QQ, [Fraction(0), Fraction(1)]))
    assert ideal.dim == 1
    assert ideal.subspace.contains_vector([Fraction(0), Fraction(1)])


def test_ideal_generated_in_group_algebra():
    a = group_algebra(2, QQ).as_algebra()
    # f picks g - 1: enumerate products shows the ideal is span(g - 1)
    ideal = ideal_generated_by(a, Matrix.column(QQ, [Fraction(-1), Fraction(1)]))
    assert ideal.dim == 1
    assert ideal.subspace.contains_vector([Fraction(-1), Fraction(1)])


def test_ideal_minimality():
    # <f> is the smallest ideal containing the image of f
    a = truncated_cubic(QQ)
    fmat = Matrix.column(QQ, [Fraction(0), Fraction(0), Fraction(1)])  # picks x^2
    ideal = ideal_generated_by(a, fmat)
    assert ideal.dim == 1
    bigger = Subspace.from_vectors(QQ, 3, [v_basis(QQ, 3, 1), v_basis(QQ, 3, 2)])
    assert is_ideal(a, bigger)
    assert bigger.contains(ideal.subspace)


def test_nilpotency_zero_ideal():
    a = dual_numbers(QQ)
    powers, idx = ideal_power_nilpotency(a, IdealData(a, Subspace.zero(QQ, 2)))
    assert idx == 2  # I = 0 means I^2 = 0; least n >= 2


def test_nilpotency_cubic():
    a = truncated_cubic(QQ)
    ideal = IdealData(a, Subspace.from_vectors(QQ, 3, [v_basis(QQ, 3, 1), v_basis(QQ, 3, 2)]))
    powers, idx = ideal_power_nilpotency(a, ideal)
    assert idx == 3
    assert [p.dim for p in powers] == [2, 1, 0]


def test_not_nilpotent():
    a = group_algebra(2, QQ).as_algebra()
    ideal = IdealData(a, Subspace.from_vectors(QQ, 2, [[Fraction(-1), Fraction(1)]]))
    with pytest.raises(NotNilpotentWithin):
        ideal_power_nilpotency(a, ideal)


def test_radical_semisimple_group_algebra():
    a = group_algebra(3, QQ).as_algebra()
    assert radical(a).dim == 0


def test_radical_dual_numbers():
    a = dual_numbers(QQ)
    rad = radical(a)
    assert rad.dim == 1
    assert rad.subspace.contains_vector([Fraction(0), Fraction(1)])


def test_radical_small_char_needs_candidate():
    a = dual_numbers(GF(2))
    with pytest.raises(SmallCharUnsupported):
        radical(a)
    cand = IdealData(a, Subspace.from_vectors(GF(2), 2, [[0, 1]]))
    assert radical(a, cand).dim == 1


def test_radical_certification_rejects_non_radical():
    a = truncated_cubic(GF(2))
    # span(x^2) is a nilpotent ideal but the quotient is not separable
    cand = IdealData(a, Subspace.from_vectors(GF(2), 3, [[0, 0, 1]]))
    with pytest.raises(CertificationFailed):
        radical(a, cand)


def test_separability_idempotent_unit_algebra():
    e = separability_idempotent(one_dim_field_algebra(QQ))
    assert e == [Fraction(1)]


def test_separability_idempotent_group_algebra():
    a = group_algebra(2, QQ).as_algebra()
    e = separability_idempotent(a)
    # 1/2 (1 (x) 1 + g (x) g), verified again by direct contraction
    assert e == [Fraction(1, 2), Fraction(0), Fraction(0), Fraction(1, 2)]
    verify_separability_idempotent(a, e)


def test_separability_maschke_obstruction():
    a = group_algebra(2, GF(2)).as_algebra()
    with pytest.raises(NotSeparable):
        separability_idempotent(a)


def test_quotient_by_zero():
    a = dual_numbers(QQ)
    q, proj = quotient_algebra(a, IdealData(a, Subspace.zero(QQ, 2)))
    assert q.dim == 2
    assert proj == Matrix.identity(QQ, 2)


def test_quotient_dual_numbers():
    a = dual_numbers(QQ)
    q, proj = quotient_algebra(a, IdealData(a, Subspace.from_vectors(QQ, 2, [[Fraction(0), Fraction(1)]])))
    assert q.dim == 1
    assert q.validate().ok


def test_regular_bimodule():
    a = group_algebra(3, GF(5)).as_algebra()
    m = BimoduleObject.regular(a)
    assert m.validate().ok


def test_ideal_generated_is_minimal_randomized():
    # <f> is the smallest ideal containing Im f: any ideal containing Im f
    # contains <f>, and multiplicative maps killing f kill <f>
    import random

    rng = random.Random(31)
    a = truncated_cubic(QQ)
    for _ in range(10):
        vec = [QQ.from_int(rng.randrange(-2, 3)) for _ in range(3)]
        vec[0] = QQ.zero()  # keep it inside the augmentation part
        fmat = Matrix.column(QQ, vec)
        ideal = ideal_generated_by(a, fmat)
        assert ideal.subspace.contains_vector(vec)
        assert is_ideal(a, ideal.subspace)
        # quotient map is multiplicative and kills f, hence kills the ideal
        from hopfsplit.algebra import quotient_algebra

        q, proj = quotient_algebra(a, ideal)
        img = proj.apply(vec)
        assert all(QQ.is_zero(x) for x in img)
        for t in range(ideal.dim):
            img = proj.apply(ideal.subspace.basis.row_list(t))
            assert all(QQ.is_zero(x) for x in img)


def test_trace_radical_quotient_is_separable():
    # char 0: the trace-form radical has a separable quotient
    for name_alg in (dual_numbers(QQ), truncated_cubic(QQ)):
        rad = radical(name_alg)
        q, _ = quotient_algebra(name_alg, rad)
        separability_idempotent(q)  # raises if not separable


def test_separability_idempotent_in_comodule_context():
    # K[Z2] as a comodule algebra over itself: the Casimir element must
    # additionally be coinvariant for the diagonal coactions
    from hopfsplit.builtin import group_algebra

    h = group_algebra(2, QQ)

    class _Ctx:
        hopf = h
        coact_r = h.as_coalgebra().comul_matrix()
        coact_l = h.as_coalgebra().comul_matrix()

    e = separability_idempotent(h.as_algebra(), _Ctx())
    assert e == [Fraction(1, 2), Fraction(0), Fraction(0), Fraction(1, 2)]
