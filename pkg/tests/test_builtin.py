"""Builtin constructors, including the p^4 two-generator family."""
import random
from fractions import Fraction

import pytest

from hopfsplit.builtin import build_ha, builtin, group_algebra, sweedler_h4, taft
from hopfsplit.fields import GF, QQ
from hopfsplit.tensors import v_basis


def test_group_algebra_trivial():
    h = group_algebra(1, QQ)
    assert h.dim == 1 and h.validate().ok


def test_sweedler_validated():
    h = sweedler_h4(QQ)
    assert h.dim == 4
    assert h.validate().ok
    # S(x) = -gx: basis 1, x, g, gx
    assert h.antipode.col_list(1) == [Fraction(0), Fraction(0), Fraction(0), Fraction(-1)]


def test_taft2_is_sweedler():
    a = taft(2, QQ.neg(QQ.one()), QQ)
    b = sweedler_h4(QQ)
    assert a.mul == b.mul and a.comul == b.comul and a.antipode == b.antipode


def test_taft_needs_primitive_root():
    with pytest.raises(ValueError):
        taft(3, QQ.one(), QQ)


def test_builtin_dispatch():
    h = builtin("group_algebra", QQ, n=3)
    assert h.dim == 3
    h2 = builtin("taft", GF(7), n=3)
    assert h2.dim == 9


def test_ha_parameter_validation(ha_f7):
    with pytest.raises(ValueError):
        build_ha(2, GF(7), 1, 1)  # p must be odd
    with pytest.raises(ValueError):
        build_ha(3, GF(7), 3, 1)  # 3^3 = 27 != 1 mod 7
    with pytest.raises(ValueError):
        build_ha(3, GF(7), 2, 0)  # a must be nonzero


def test_ha_relations(ha_f7):
    h = ha_f7
    f = h.field
    assert h.dim == 81

    def idx(i, j, r):
        return (i * 3 + j) * 3 + r

    c = v_basis(f, 81, idx(1, 0, 0))
    x1 = v_basis(f, 81, idx(0, 1, 0))
    x2 = v_basis(f, 81, idx(0, 0, 1))
    # x1 c = lam^-1 c x1 with lam = 2
    prod = h.product(x1, c)
    assert prod[idx(1, 1, 0)] == f.inv(2)
    assert sum(1 for v in prod if v) == 1
    # x2 c = lam c x2
    prod = h.product(x2, c)
    assert prod[idx(1, 0, 1)] == 2
    # x2 x1 = lam x1 x2 + a (c^2 - 1)
    prod = h.product(x2, x1)
    assert prod[idx(0, 1, 1)] == 2
    assert prod[idx(2, 0, 0)] == 1
    assert prod[idx(0, 0, 0)] == f.neg(f.one())
    # x1^p = c^p - 1
    x1sq = h.product(x1, x1)
    x1cube = h.product(x1sq, x1)
    assert x1cube[idx(3, 0, 0)] == 1 and x1cube[idx(0, 0, 0)] == f.neg(f.one())
    # c^(p^2) = 1
    acc = v_basis(f, 81, 0)
    for _ in range(9):
        acc = h.product(acc, c)
    assert acc == v_basis(f, 81, 0)


def test_ha_monomial_associativity_spot_checks(ha_f7):
    # generator triples and random monomial triples (the full tensor check
    # runs inside validate() during construction)
    h = ha_f7
    f = h.field
    rng = random.Random(99)
    gens = [((1, 0, 0)), ((0, 1, 0)), ((0, 0, 1))]

    def idx(m):
        return (m[0] * 3 + m[1]) * 3 + m[2]

    triples = [(a, b, c) for a in gens for b in gens for c in gens]
    for _ in range(500):
        triples.append(tuple((rng.randrange(9), rng.randrange(3), rng.randrange(3)) for _ in range(3)))
    for a, b, c in triples:
        va, vb, vc = (v_basis(f, 81, idx(m)) for m in (a, b, c))
        assert h.product(h.product(va, vb), vc) == h.product(va, h.product(vb, vc))


def test_ha_comultiplication_generators(ha_f7):
    h = ha_f7
    f = h.field

    def idx(i, j, r):
        return (i * 3 + j) * 3 + r

    # Delta(x1) = c (x) x1 + x1 (x) 1
    d = h.comul.get(idx(0, 1, 0), {})
    assert d == {(idx(1, 0, 0), idx(0, 1, 0)): f.one(), (idx(0, 1, 0), idx(0, 0, 0)): f.one()}
