"""Exact linear algebra: canonical RREF, solving, kernels, subspaces."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfsplit.fields import GF, QQ
from hopfsplit.linalg import InconsistentSystem, Matrix, Subspace, subspace_ops


def test_identity_solve():
    a = Matrix.identity(QQ, 2)
    x, ker = a.solve(Matrix.column(QQ, [Fraction(1), Fraction(0)]))
    assert x == [Fraction(1), Fraction(0)]
    assert ker.rows == 0


def test_zero_inconsistent():
    a = Matrix.zeros(QQ, 1, 1)
    with pytest.raises(InconsistentSystem):
        a.solve(Matrix.column(QQ, [Fraction(1)]))


def test_mod7_inverse():
    # 3 x = 1 over F_7: oracle by modular inverse enumeration
    f = GF(7)
    oracle = next(t for t in range(7) if (3 * t) % 7 == 1)
    assert oracle == 5
    a = Matrix.from_rows(f, [[3]])
    x, _ = a.solve(Matrix.column(f, [1]))
    assert x == [5]


def test_rref_canonical_both_backends():
    rows = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
    for field in (QQ, GF(7)):
        m = Matrix.from_rows(field, [[field.from_int(x) for x in r] for r in rows])
        r, piv = m.rref()
        assert piv == [0, 1]
        assert r.rows == 2
        # pivots scaled to one, pivot columns cleared
        assert field.is_one(r[0, 0]) and field.is_one(r[1, 1])
        assert field.is_zero(r[0, 1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=5))
def test_rank_nullity_qq(rows):
    m = Matrix.from_rows(QQ, [[Fraction(x) for x in r] for r in rows])
    assert m.rank() + m.kernel().rows == m.cols


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=6))
def test_kernel_annihilates_gf5(rows):
    f = GF(5)
    m = Matrix.from_rows(f, rows)
    ker = m.kernel()
    for i in range(ker.rows):
        assert all(v == 0 for v in m.apply(ker.row_list(i)))


def test_solve_verified_by_multiplication():
    rng = random.Random(7)
    f = GF(11)
    for _ in range(25):
        rows = [[rng.randrange(11) for _ in range(4)] for _ in range(3)]
        a = Matrix.from_rows(f, rows)
        xs = [rng.randrange(11) for _ in range(4)]
        b = Matrix.column(f, a.apply(xs))
        x, ker = a.solve(b)
        assert a.apply(x) == b.col_list(0)
        for i in range(ker.rows):
            assert all(v == 0 for v in a.apply(ker.row_list(i)))


def test_subspace_lattice():
    f = QQ
    e1 = [Fraction(1), Fraction(0)]
    e2 = [Fraction(0), Fraction(1)]
    u = Subspace.from_vectors(f, 2, [e1])
    v = Subspace.from_vectors(f, 2, [e2])
    assert (u + v).dim == 2
    assert u.intersect(u) == u
    assert subspace_ops("sum", u, v) == subspace_ops("sum", v, u)
    assert subspace_ops("contains", u + v, u)
    full = Subspace.full(f, 2)
    comp = u.quotient_complement(full)
    assert comp.rows == 1 and comp.row_list(0) == e2
    # complement really completes u to the full space
    assert (u + Subspace.from_matrix_rows(comp)).dim == 2


def test_quotient_complement_requires_containment():
    f = QQ
    u = Subspace.from_vectors(f, 2, [[Fraction(1), Fraction(0)]])
    v = Subspace.from_vectors(f, 2, [[Fraction(0), Fraction(1)]])
    with pytest.raises(ValueError):
        u.quotient_complement(v)


def test_intersection_nontrivial():
    f = GF(5)
    u = Subspace.from_vectors(f, 3, [[1, 0, 0], [0, 1, 0]])
    v = Subspace.from_vectors(f, 3, [[0, 1, 0], [0, 0, 1]])
    w = u.intersect(v)
    assert w.dim == 1
    assert w.contains_vector([0, 1, 0])


def test_inverse_round_trip():
    f = GF(13)
    m = Matrix.from_rows(f, [[2, 1, 0], [1, 1, 1], [0, 3, 1]])
    inv = m.inverse()
    assert m @ inv == Matrix.identity(f, 3)
    assert inv @ m == Matrix.identity(f, 3)


def test_large_prime_python_backend():
    p = 2**61 - 1  # Mersenne prime beyond the numpy fast path
    f = GF(p)
    m = Matrix.from_rows(f, [[2, 1], [1, 1]])
    inv = m.inverse()
    assert m @ inv == Matrix.identity(f, 2)


def test_chunked_rref_matches_reference():
    # the numpy path reduces rows in chunks; the result must be the
    # canonical RREF, identical to a plain single-pass elimination
    rng = random.Random(12345)
    f = GF(7)
    rows = [[rng.randrange(7) for _ in range(9)] for _ in range(3000)]
    m = Matrix.from_rows(f, rows)
    assert m.is_np()
    got, piv = m.rref()

    def reference_rref(rows, p):
        rows = [list(r) for r in rows]
        piv = []
        r = 0
        for c in range(len(rows[0])):
            k = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
            if k is None:
                continue
            rows[r], rows[k] = rows[k], rows[r]
            inv = pow(rows[r][c], p - 2, p)
            rows[r] = [(x * inv) % p for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] % p:
                    q = rows[i][c]
                    rows[i] = [(x - q * y) % p for x, y in zip(rows[i], rows[r])]
            piv.append(c)
            r += 1
        return [rows[i] for i in range(r)], piv

    ref, refpiv = reference_rref(rows, 7)
    assert piv == refpiv
    assert got.to_rows() == ref


def test_quotient_basis_returns_subspace():
    f = QQ
    u = Subspace.from_vectors(f, 3, [[Fraction(1), Fraction(0), Fraction(0)]])
    full = Subspace.full(f, 3)
    comp = subspace_ops("quotient_basis", u, full)
    assert isinstance(comp, Subspace)
    assert comp.dim == 2
    assert (u + comp).dim == 3
