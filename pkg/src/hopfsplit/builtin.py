"""Builtin Hopf objects: group algebras, their duals, Taft algebras and the
p^4-dimensional two-generator family used by the end-to-end runs.

The two-generator family H(a) is built by normal-form rewriting on
monomials c^i x1^j x2^r (0 <= i < p^2, 0 <= j, r < p) subject to

    c^(p^2) = 1,   x1^p = x2^p = c^p - 1,
    x1 c = lam^-1 c x1,   x2 c = lam c x2,   x2 x1 = lam x1 x2 + a(c^2 - 1),

with lam a primitive p-th root of unity; c is grouplike and
Delta(xi) = c (x) xi + xi (x) 1.  c^p is central since lam^p = 1, so the
power reductions commute with everything.
"""
from __future__ import annotations

from .fields import ScalarField
from .hopf import BialgebraObject, HopfObject, upgrade_to_hopf
from .linalg import Matrix


def group_algebra(n: int, field: ScalarField) -> HopfObject:
    """K[Z_n]: basis g^0..g^(n-1), grouplike basis, S(g^i) = g^-i."""
    f = field
    mul = {(i, j): {(i + j) % n: f.one()} for i in range(n) for j in range(n)}
    unit = [f.one() if i == 0 else f.zero() for i in range(n)]
    comul = {k: {(k, k): f.one()} for k in range(n)}
    counit = [f.one()] * n
    s = Matrix.from_entries(f, n, n, {((-i) % n, i): f.one() for i in range(n)})
    h = HopfObject(f, n, mul, unit, comul, counit, s, tuple(f"g^{i}" for i in range(n)))
    h.validate().require("group algebra")
    return h


def dual_group_algebra(n: int, field: ScalarField) -> HopfObject:
    """Functions on Z_n: pointwise product of delta functions, convolution coproduct."""
    f = field
    mul = {(i, i): {i: f.one()} for i in range(n)}
    unit = [f.one()] * n
    comul = {k: {(i, (k - i) % n): f.one() for i in range(n)} for k in range(n)}
    counit = [f.one() if k == 0 else f.zero() for k in range(n)]
    s = Matrix.from_entries(f, n, n, {((-i) % n, i): f.one() for i in range(n)})
    h = HopfObject(f, n, mul, unit, comul, counit, s, tuple(f"d{i}" for i in range(n)))
    h.validate().require("dual group algebra")
    return h


def taft(n: int, lam, field: ScalarField) -> HopfObject:
    """Taft algebra of dimension n^2: g^n = 1, x^n = 0, x g = lam g x,
    Delta(g) = g (x) g, Delta(x) = g (x) x + x (x) 1."""
    f = field
    if f.pow(lam, n) != f.one() or any(f.pow(lam, d) == f.one() for d in range(1, n)):
        raise ValueError("lam must be a primitive n-th root of unity")
    dim = n * n

    def idx(i, j):  # basis g^i x^j
        return i * n + j

    mul: dict = {}
    for i1 in range(n):
        for j1 in range(n):
            for i2 in range(n):
                for j2 in range(n):
                    # (g^i1 x^j1)(g^i2 x^j2) = lam^(j1*i2) g^(i1+i2) x^(j1+j2)
                    if j1 + j2 >= n:
                        continue  # x^n = 0
                    c = f.pow(lam, j1 * i2)
                    mul.setdefault((idx(i1, j1), idx(i2, j2)), {})[idx((i1 + i2) % n, j1 + j2)] = c
    unit = [f.zero()] * dim
    unit[idx(0, 0)] = f.one()
    # Delta(g^i x^j) = (g(x)g)^i (g(x)x + x(x)1)^j, expanded with the
    # q-binomial coefficients for lam
    comul: dict = {}
    qbin = _gauss_binomials(f, lam, n)
    for i in range(n):
        for j in range(n):
            col: dict = {}
            for t in range(j + 1):
                # (g(x)x + x(x)1)^j = sum_t qbin[j][t] g^t x^(j-t) (x) x^t
                c = qbin[j][t]
                left = idx((i + t) % n, j - t)
                right = idx(i, t)
                col[(left, right)] = f.add(col.get((left, right), f.zero()), c)
            comul[idx(i, j)] = col
    counit = [f.one() if j == 0 else f.zero() for i in range(n) for j in range(n)]
    b = BialgebraObject(f, dim, mul, unit, comul, counit, tuple(f"g^{i}x^{j}" for i in range(n) for j in range(n)))
    # S(g) = g^-1, S(x) = -g^-1 x, anti-multiplicative
    s_entries = {}
    for i in range(n):
        for j in range(n):
            # S(g^i x^j) = S(x)^j S(g)^i = (-1)^j lam^(-j(j-1)/2 - ij) g^-(i+j) x^j
            exp = -((j * (j - 1)) // 2) - i * j
            c = f.mul(f.pow(f.neg(f.one()), j), f.pow(lam, exp))
            s_entries[(idx((-i - j) % n, j), idx(i, j))] = c
    s = Matrix.from_entries(f, dim, dim, s_entries)
    h = upgrade_to_hopf(b, antipode_hint=s)
    h.validate().require("taft algebra")
    return h


def sweedler_h4(field: ScalarField) -> HopfObject:
    """The 4-dimensional Taft algebra (n = 2, lam = -1)."""
    return taft(2, field.neg(field.one()), field)


def _gauss_binomials(f, q, n):
    """qbin[m][t] = Gaussian binomial (m choose t)_q for m < n."""
    # (a + b)^m with b a = q a b expands with these coefficients
    out = [[f.one()]]
    for m in range(1, n):
        prev = out[-1]
        row = [f.one()]
        for t in range(1, m):
            # (m t)_q = (m-1 t-1)_q + q^t (m-1 t)_q
            row.append(f.add(prev[t - 1], f.mul(f.pow(q, t), prev[t])))
        row.append(f.one())
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# the p^4-dimensional example


class _MonomialRewriter:
    """Normal-form arithmetic for the two-generator presentation."""

    def __init__(self, p: int, field: ScalarField, lam, a):
        self.p = p
        self.f = field
        self.lam = lam
        self.a = a
        self.psq = p * p

    def idx(self, i, j, r):
        return (i * self.p + j) * self.p + r

    def key(self, flat):
        p = self.p
        return (flat // (p * p), (flat // p) % p, flat % p)

    def _add(self, acc, mono, c):
        f = self.f
        s = f.add(acc.get(mono, f.zero()), c)
        if f.is_zero(s):
            acc.pop(mono, None)
        else:
            acc[mono] = s

    def times_c(self, elem, power=1):
        """Right-multiply by c^power."""
        f = self.f
        out: dict = {}
        for (i, j, r), c in elem.items():
            # x1^j x2^r c = lam^(r-j) c x1^j x2^r
            coeff = f.mul(c, f.pow(self.lam, (r - j) * power))
            self._add(out, ((i + power) % self.psq, j, r), coeff)
        return out

    def times_x1(self, elem):
        """Right-multiply by x1: needs x2^r x1 = lam^r x1 x2^r + lower."""
        f = self.f
        out: dict = {}
        for (i, j, r), c in elem.items():
            for (i2, j2, r2), c2 in self._x2r_x1(r).items():
                # c^i x1^j (x2^r x1) = c^i x1^j (c^i2 x1^j2 x2^r2) terms
                coeff = f.mul(c, f.mul(c2, f.pow(self.lam, -j * i2)))
                self._reduce_powers(out, (i + i2) % self.psq, j + j2, r2, coeff)
        return out

    def times_x2(self, elem):
        f = self.f
        out: dict = {}
        for (i, j, r), c in elem.items():
            self._reduce_powers(out, i, j, r + 1, c)
        return out

    def _x2r_x1(self, r):
        """x2^r x1 in normal form, by recursion on r."""
        f = self.f
        if r == 0:
            return {(0, 1, 0): f.one()}
        prev = self._x2r_x1(r - 1)
        out: dict = {}
        # x2^r x1 = x2^(r-1) (x2 x1) = x2^(r-1) (lam x1 x2 + a c^2 - a)
        #        = lam (x2^(r-1) x1) x2 + a x2^(r-1) c^2 - a x2^(r-1)
        for (i, j, rr), c in prev.items():
            self._reduce_powers(out, i, j, rr + 1, f.mul(self.lam, c))
        # a x2^(r-1) c^2 = a lam^(2(r-1)) c^2 x2^(r-1)
        self._add(out, (2, 0, r - 1), f.mul(self.a, f.pow(self.lam, 2 * (r - 1))))
        self._add(out, (0, 0, r - 1), f.neg(self.a))
        return out

    def _reduce_powers(self, acc, i, j, r, coeff):
        """Reduce x1^j, x2^r with x^p = c^p - 1 (c^p is central)."""
        f = self.f
        if j >= self.p:
            # x1^j = (c^p - 1) x1^(j-p)
            self._reduce_powers(acc, (i + self.p) % self.psq, j - self.p, r, coeff)
            self._reduce_powers(acc, i, j - self.p, r, f.neg(coeff))
            return
        if r >= self.p:
            self._reduce_powers(acc, (i + self.p) % self.psq, j, r - self.p, coeff)
            self._reduce_powers(acc, i, j, r - self.p, f.neg(coeff))
            return
        self._add(acc, (i, j, r), coeff)

    def product_monomials(self, m1, m2):
        """(c^i1 x1^j1 x2^r1)(c^i2 x1^j2 x2^r2) in normal form."""
        i1, j1, r1 = m1
        i2, j2, r2 = m2
        elem = {m1: self.f.one()}
        if i2:
            elem = self.times_c(elem, i2)
        for _ in range(j2):
            elem = self.times_x1(elem)
        for _ in range(r2):
            elem = self.times_x2(elem)
        return elem


def build_ha(p: int, field: ScalarField, lam, a) -> HopfObject:
    """Pointed Hopf algebra of dimension p^4 on generators c, x1, x2.

    Requires an odd prime p, a primitive p-th root of unity lam and a != 0.
    """
    f = field
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if f.pow(lam, p) != f.one() or lam == f.one():
        raise ValueError("lam must be a primitive p-th root of unity")
    if f.is_zero(a):
        raise ValueError("a must be nonzero")
    if f.kind == "Fp" and p * p % f.p == 0:
        raise ValueError("characteristic divides the group order")
    rw = _MonomialRewriter(p, f, lam, a)
    dim = p**4
    monos = [(i, j, r) for i in range(p * p) for j in range(p) for r in range(p)]
    mul: dict = {}
    for m1 in monos:
        for m2 in monos:
            prod = rw.product_monomials(m1, m2)
            col = {rw.idx(*m): c for m, c in prod.items()}
            if col:
                mul[(rw.idx(*m1), rw.idx(*m2))] = col
    unit = [f.zero()] * dim
    unit[rw.idx(0, 0, 0)] = f.one()
    alg_labels = tuple(f"c^{i}x1^{j}x2^{r}" for (i, j, r) in monos)

    # comultiplication: Delta is multiplicative on the generators
    # Delta(c) = c (x) c, Delta(xi) = c (x) xi + xi (x) 1
    from .algebra import AlgebraObject

    alg = AlgebraObject(f, dim, mul, unit, alg_labels)

    def tensor_mult(u: dict, v: dict) -> dict:
        out: dict = {}
        for (a1, b1), c1 in u.items():
            for (a2, b2), c2 in v.items():
                c12 = f.mul(c1, c2)
                for ka, ca in alg.mul.get((a1, a2), {}).items():
                    for kb, cb in alg.mul.get((b1, b2), {}).items():
                        key = (ka, kb)
                        s = f.add(out.get(key, f.zero()), f.mul(c12, f.mul(ca, cb)))
                        if f.is_zero(s):
                            out.pop(key, None)
                        else:
                            out[key] = s
        return out

    e = rw.idx
    dc = {(e(1, 0, 0), e(1, 0, 0)): f.one()}
    dx1 = {(e(1, 0, 0), e(0, 1, 0)): f.one(), (e(0, 1, 0), e(0, 0, 0)): f.one()}
    dx2 = {(e(1, 0, 0), e(0, 0, 1)): f.one(), (e(0, 0, 1), e(0, 0, 0)): f.one()}
    one_one = {(e(0, 0, 0), e(0, 0, 0)): f.one()}
    comul: dict = {}
    for i, j, r in monos:
        d = one_one
        for _ in range(i):
            d = tensor_mult(d, dc)
        for _ in range(j):
            d = tensor_mult(d, dx1)
        for _ in range(r):
            d = tensor_mult(d, dx2)
        comul[e(i, j, r)] = d
    counit = [f.one() if (j == 0 and r == 0) else f.zero() for (i, j, r) in monos]

    # antipode hint: S(c) = c^-1, S(xi) = -c^-1 xi, anti-multiplicative:
    # S(c^i x1^j x2^r) = S(x2)^r S(x1)^j S(c)^i
    sc = {(p * p - 1, 0, 0): f.one()}
    sx1 = _neg_cinv_x(rw, which=1)
    sx2 = _neg_cinv_x(rw, which=2)
    s_entries: dict = {}
    for i, j, r in monos:
        acc = {(0, 0, 0): f.one()}
        for _ in range(r):
            acc = _elem_mult(rw, acc, sx2)
        for _ in range(j):
            acc = _elem_mult(rw, acc, sx1)
        for _ in range(i):
            acc = _elem_mult(rw, acc, sc)
        for m, c in acc.items():
            s_entries[(rw.idx(*m), e(i, j, r))] = c
    s = Matrix.from_entries(f, dim, dim, s_entries)
    b = BialgebraObject(f, dim, mul, unit, comul, counit, alg_labels)
    h = upgrade_to_hopf(b, antipode_hint=s)
    h.validate().require("p^4 two-generator Hopf algebra")
    return h


def _neg_cinv_x(rw: _MonomialRewriter, which: int):
    f = rw.f
    base = {(rw.psq - 1, 0, 0): f.one()}
    elem = rw.times_x1(base) if which == 1 else rw.times_x2(base)
    return {m: f.neg(c) for m, c in elem.items()}


def _elem_mult(rw: _MonomialRewriter, u: dict, v: dict) -> dict:
    f = rw.f
    out: dict = {}
    for m1, c1 in u.items():
        for m2, c2 in v.items():
            for m, c in rw.product_monomials(m1, m2).items():
                s = f.add(out.get(m, f.zero()), f.mul(c, f.mul(c1, c2)))
                if f.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
    return out


def builtin(name: str, field: ScalarField, **params) -> HopfObject:
    """Name-based dispatch for the builtin example family."""
    if name == "group_algebra":
        return group_algebra(params["n"], field)
    if name == "dual_group_algebra":
        return dual_group_algebra(params["n"], field)
    if name == "sweedler_h4":
        return sweedler_h4(field)
    if name == "taft":
        lam = params.get("lam")
        if lam is None:
            lam = field.primitive_root_of_unity(params["n"])
            if lam is None:
                raise ValueError(f"field has no primitive {params['n']}-th root of unity")
        return taft(params["n"], lam, field)
    raise ValueError(f"unknown builtin {name!r}")
