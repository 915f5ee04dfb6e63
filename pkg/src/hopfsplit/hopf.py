"""Bialgebras and Hopf algebras: compatibility validation, antipodes by
convolution inversion, integrals and their ad-(co)invariance.

A BialgebraObject carries algebra and coalgebra structure constants on one
basis.  The multiplicativity of Delta is checked on (generator, basis)
pairs: the set {u : Delta(uv) = Delta(u)Delta(v) for all v} is a unital
subalgebra, so it suffices that it contains an algebra generating set.
"""
from __future__ import annotations

from .algebra import AlgebraObject, ValidationReport
from .coalgebra import CoalgebraObject
from .fields import ScalarField
from .linalg import InconsistentSystem, Matrix, Subspace
from .tensors import sparse_add, sparse_eq, v_basis, v_eq, v_zero


class BialgebraObject:
    """Algebra + coalgebra on one basis with Delta, eps algebra maps."""

    def __init__(self, field: ScalarField, dim: int, mul, unit, comul, counit, labels=None):
        self.field = field
        self.dim = dim
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(dim))
        self._alg = AlgebraObject(field, dim, mul, unit, self.labels)
        self._coalg = CoalgebraObject(field, dim, comul, counit, self.labels)

    # views sharing the same structure constants
    def as_algebra(self) -> AlgebraObject:
        return self._alg

    def as_coalgebra(self) -> CoalgebraObject:
        return self._coalg

    @property
    def mul(self):
        return self._alg.mul

    @property
    def unit(self):
        return self._alg.unit

    @property
    def comul(self):
        return self._coalg.comul

    @property
    def counit(self):
        return self._coalg.counit

    def product(self, u, v):
        return self._alg.product(u, v)

    def comul_vec(self, vec):
        return self._coalg.comul_vec(vec)

    def counit_of(self, vec):
        return self._coalg.counit_of(vec)

    def validate(self, generator_cap: int = 24, generator_vectors=None) -> ValidationReport:
        """generator_vectors, when given, must span a generating set of the
        algebra; Delta-multiplicativity is then checked on (generator,
        basis) pairs only (sound: {u : Delta(uv) = Delta(u)Delta(v) for
        all v} is a unital subalgebra)."""
        rep = ValidationReport()
        a = self._alg.validate()
        for name, ok, wit in a.checks:
            rep.record("algebra:" + name, ok, wit)
        c = self._coalg.validate()
        for name, ok, wit in c.checks:
            rep.record("coalgebra:" + name, ok, wit)
        if not rep.ok:
            return rep
        f = self.field
        # Delta(1) = 1 (x) 1 and eps(1) = 1
        one = self._alg.unit
        d1 = self.comul_vec(one)
        oneone = {}
        for i, x in enumerate(one):
            if f.is_zero(x):
                continue
            for j, y in enumerate(one):
                if not f.is_zero(y):
                    oneone[(i, j)] = f.mul(x, y)
        rep.record("delta_unital", sparse_eq(f, d1, oneone), "Delta(1) != 1(x)1")
        rep.record("eps_unital", f.is_one(self.counit_of(one)), "eps(1) != 1")
        # eps multiplicative (full check, cheap)
        ok, wit = self._check_eps_multiplicative()
        rep.record("eps_multiplicative", ok, wit)
        # Delta multiplicative on (generator, basis) pairs
        if generator_vectors is not None:
            span = Subspace.from_vectors(f, self.dim, [self._alg.unit] + list(generator_vectors))
            while True:
                from .algebra import pairwise_products

                grown = span + Subspace.from_matrix_rows(pairwise_products(self._alg, span.basis, span.basis))
                if grown.dim == span.dim:
                    break
                span = grown
            if span.dim != self.dim:
                rep.record("delta_multiplicative", False,
                           "supplied generator vectors do not generate the algebra")
                return rep
            ok, wit = self._check_delta_on_generators(generator_vectors)
        else:
            ok, wit = self._check_delta_multiplicative(generator_cap)
        rep.record("delta_multiplicative", ok, wit)
        return rep

    def _check_delta_on_generators(self, generator_vectors):
        """Delta(g v) = Delta(g) Delta(v) for each generator vector g and
        every basis v.

        The right-hand side only visits combos whose products are nonzero:
        the multiplication table is indexed by its first leg, so sparse
        tables (as produced by smash products) keep the loop close to the
        true work.
        """
        f = self.field
        n = self.dim
        comul = self._coalg.comul
        mul = self._alg.mul
        is_fp = f.kind == "Fp"
        p = f.p if is_fp else None
        # nz2[a] = rows of the multiplication table with first leg a
        nz2: dict = {}
        for (a, c_), col in mul.items():
            nz2.setdefault(a, []).append((c_, col))
        # Delta(e_j) grouped by the left tensor leg, computed once
        dv_left_all = []
        for j in range(n):
            byleft: dict = {}
            for (c_, d), cj in comul.get(j, {}).items():
                byleft.setdefault(c_, []).append((d, cj))
            dv_left_all.append(byleft)
        for g in generator_vectors:
            gs = {i: c for i, c in enumerate(g) if not f.is_zero(c)}
            dg: dict = {}
            for i, c in gs.items():
                for key, w in comul.get(i, {}).items():
                    prev = dg.get(key)
                    val = c * w if prev is None else prev + c * w
                    if is_fp:
                        val %= p
                    dg[key] = val
            dg = {k: v for k, v in dg.items() if not f.is_zero(v)}
            for j in range(n):
                lhs: dict = {}
                for i, c in gs.items():
                    for k, w in mul.get((i, j), {}).items():
                        cw = c * w
                        for key, z in comul.get(k, {}).items():
                            prev = lhs.get(key)
                            val = cw * z if prev is None else prev + cw * z
                            if is_fp:
                                val %= p
                            lhs[key] = val
                rhs: dict = {}
                dv_left = dv_left_all[j]
                for (a, b), cg in dg.items():
                    row_b = nz2.get(b)
                    if not row_b:
                        continue
                    for c_, row_ac in nz2.get(a, ()):
                        hits = dv_left.get(c_)
                        if not hits:
                            continue
                        for d, cj in hits:
                            row_bd = mul.get((b, d))
                            if not row_bd:
                                continue
                            w = cg * cj
                            if is_fp:
                                w %= p
                            for a2, u in row_ac.items():
                                wu = w * u
                                for b2, v in row_bd.items():
                                    key = (a2, b2)
                                    prev = rhs.get(key)
                                    val = wu * v if prev is None else prev + wu * v
                                    if is_fp:
                                        val %= p
                                    rhs[key] = val
                z = f.zero()
                for key in set(lhs) | set(rhs):
                    if f.sub(lhs.get(key, z), rhs.get(key, z)) != z:
                        return False, f"Delta(g v{j}) != Delta(g)Delta(v{j})"
        return True, None

    def _check_eps_multiplicative(self):
        f = self.field
        eps = self.counit
        for (i, j), col in self.mul.items():
            lhs = f.zero()
            for k, c in col.items():
                lhs = f.add(lhs, f.mul(c, eps[k]))
            if lhs != f.mul(eps[i], eps[j]):
                return False, f"eps(e{i} e{j})"
        # pairs missing from the table are zero products
        for i in range(self.dim):
            for j in range(self.dim):
                if (i, j) not in self.mul and not f.is_zero(f.mul(eps[i], eps[j])):
                    return False, f"eps(e{i} e{j}) = 0 but eps(e{i})eps(e{j}) != 0"
        return True, None

    def _check_delta_multiplicative(self, cap: int):
        f = self.field
        gens = self._alg.generating_basis_indices(cap)
        pairs = (
            ((g, j) for g in gens for j in range(self.dim))
            if gens is not None
            else ((i, j) for i in range(self.dim) for j in range(self.dim))
        )
        for i, j in pairs:
            prod = self._alg.pair_product(i, j)
            lhs: dict = {}
            for k, c in prod.items():
                lhs = sparse_add(f, lhs, self._coalg.comul_of(k), c)
            rhs: dict = {}
            for (a, b), x in self._coalg.comul_of(i).items():
                for (cc, d), y in self._coalg.comul_of(j).items():
                    w = f.mul(x, y)
                    for a2, u in self._alg.pair_product(a, cc).items():
                        for b2, v in self._alg.pair_product(b, d).items():
                            key = (a2, b2)
                            s = f.add(rhs.get(key, f.zero()), f.mul(w, f.mul(u, v)))
                            if f.is_zero(s):
                                rhs.pop(key, None)
                            else:
                                rhs[key] = s
            if not sparse_eq(f, lhs, rhs):
                return False, f"Delta(e{i} e{j}) != Delta(e{i})Delta(e{j})"
        return True, None


class HopfObject(BialgebraObject):
    """Bialgebra with a verified antipode matrix."""

    def __init__(self, field, dim, mul, unit, comul, counit, antipode: Matrix, labels=None):
        super().__init__(field, dim, mul, unit, comul, counit, labels)
        self.antipode = antipode

    def validate(self, generator_cap: int = 24, generator_vectors=None) -> ValidationReport:
        rep = super().validate(generator_cap, generator_vectors)
        ok, wit = check_antipode(self, self.antipode)
        rep.record("antipode", ok, wit)
        return rep

    def antipode_of(self, vec: list) -> list:
        return self.antipode.apply(vec)


class NoAntipode(Exception):
    pass


def check_antipode(b: BialgebraObject, s: Matrix):
    """m(S (x) id)Delta = u eps = m(id (x) S)Delta, basis by basis."""
    f = b.field
    for k in range(b.dim):
        target = [f.mul(b.counit[k], x) for x in b.unit]
        left = v_zero(f, b.dim)
        right = v_zero(f, b.dim)
        for (i, j), c in b.comul.get(k, {}).items():
            si = s.apply(v_basis(f, b.dim, i))
            left = [f.add(x, f.mul(c, y)) for x, y in zip(left, b.product(si, v_basis(f, b.dim, j)))]
            sj = s.apply(v_basis(f, b.dim, j))
            right = [f.add(x, f.mul(c, y)) for x, y in zip(right, b.product(v_basis(f, b.dim, i), sj))]
        if not v_eq(f, left, target):
            return False, f"m(S (x) id)Delta != u eps at basis {k}"
        if not v_eq(f, right, target):
            return False, f"m(id (x) S)Delta != u eps at basis {k}"
    return True, None


def upgrade_to_hopf(b: BialgebraObject, antipode_hint: Matrix | None = None, solve_limit: int = 30) -> HopfObject:
    """Attach an antipode: verify the hint, or solve the convolution system.

    The generic solve has dim^2 unknowns and is gated at solve_limit;
    larger objects must supply a hint (verification is cheap).
    """
    if antipode_hint is not None:
        ok, wit = check_antipode(b, antipode_hint)
        if not ok:
            raise NoAntipode(f"hint fails: {wit}")
        return HopfObject(b.field, b.dim, b.mul, b.unit, b.comul, b.counit, antipode_hint, b.labels)
    if b.dim > solve_limit:
        raise NoAntipode(f"dim {b.dim} > {solve_limit}: supply an antipode hint")
    f = b.field
    n = b.dim
    # solve m(S (x) id)Delta = u eps, linear in the n^2 unknowns S[x, y]
    rows: dict = {}
    rhs = []
    row_idx = 0
    for k in range(n):
        for out in range(n):
            row: dict = {}
            for (i, j), c in b.comul.get(k, {}).items():
                # contribution S[x, i] * [e_x e_j]_out
                for x in range(n):
                    v = b.mul.get((x, j), {}).get(out)
                    if v is not None:
                        key = x * n + i
                        row[key] = f.add(row.get(key, f.zero()), f.mul(c, v))
            rows[row_idx] = row
            rhs.append(f.mul(b.counit[k], b.unit[out]))
            row_idx += 1
    m = Matrix.from_entries(f, row_idx, n * n, {(r, c): v for r, row in rows.items() for c, v in row.items()})
    try:
        sol, _ = m.solve(Matrix.column(f, rhs))
    except InconsistentSystem:
        raise NoAntipode("convolution system for the antipode is inconsistent")
    s = Matrix.from_rows(f, [[sol[x * n + y] for y in range(n)] for x in range(n)])
    ok, wit = check_antipode(b, s)
    if not ok:
        raise NoAntipode(f"left convolution inverse is not two-sided: {wit}")
    return HopfObject(f, n, b.mul, b.unit, b.comul, b.counit, s, b.labels)


class IntegralWitness:
    """Integral element/functional with side and normalization report."""

    def __init__(self, where: str, side: str, vector: list, normalized: bool, norm_value):
        self.where = where  # "in_H" | "in_dual"
        self.side = side  # "left" | "right" | "two_sided"
        self.vector = vector
        self.normalized = normalized
        self.norm_value = norm_value

    def __repr__(self):
        return f"IntegralWitness({self.where}, {self.side}, normalized={self.normalized})"


def _integral_system(h: BialgebraObject, where: str, side: str) -> Matrix:
    f = h.field
    n = h.dim
    blocks = []
    sides = ("left", "right") if side == "two_sided" else (side,)
    for s in sides:
        entries: dict = {}
        if where == "in_H":
            # left: x t = eps(x) t for every basis x (right: t x)
            for x in range(n):
                for out in range(n):
                    row: dict = {}
                    for t in range(n):
                        pair = (x, t) if s == "left" else (t, x)
                        v = h.mul.get(pair, {}).get(out)
                        if v is not None:
                            row[t] = f.add(row.get(t, f.zero()), v)
                    row[out] = f.sub(row.get(out, f.zero()), h.counit[x])
                    for t, v in row.items():
                        if not f.is_zero(v):
                            entries[(x * n + out, t)] = v
        else:
            # left integral on H: sum h1 lam(h2) = lam(h) 1 (right: mirrored)
            for k in range(n):
                for out in range(n):
                    row: dict = {}
                    for (i, j), c in h.comul.get(k, {}).items():
                        leg, coef = (j, i) if s == "left" else (i, j)
                        if coef == out:
                            row[leg] = f.add(row.get(leg, f.zero()), c)
                    row[k] = f.sub(row.get(k, f.zero()), h.unit[out])
                    for t, v in row.items():
                        if not f.is_zero(v):
                            entries[(k * n + out, t)] = v
        blocks.append(Matrix.from_entries(f, n * n, n, entries))
    m = blocks[0]
    for b2 in blocks[1:]:
        m = m.vstack(b2)
    return m


def find_integral(h: BialgebraObject, where: str = "in_H", side: str = "two_sided") -> IntegralWitness:
    """Solve the integral system and normalize when possible.

    in_H left:    x t = eps(x) t for all x;  normalization eps(t) = 1.
    in_dual left: sum h1 lam(h2) = lam(h) 1; normalization lam(1) = 1.
    Normalization failure is the Maschke obstruction, reported as data.
    """
    f = h.field
    ker = _integral_system(h, where, side).kernel()
    if ker.rows == 0:
        return IntegralWitness(where, side, v_zero(f, h.dim), False, f.zero())
    t = ker.row_list(0)
    norm = h.counit_of(t) if where == "in_H" else _eval_at_unit(h, t)
    if not f.is_zero(norm):
        t = [f.div(x, norm) for x in t]
        return IntegralWitness(where, side, t, True, f.one())
    return IntegralWitness(where, side, t, False, norm)


def integral_space_dimension(h: BialgebraObject, where: str, side: str) -> int:
    """Dimension of the integral solution space (1 for Hopf objects)."""
    return _integral_system(h, where, side).kernel().rows


def _eval_at_unit(h: BialgebraObject, lam: list):
    f = h.field
    s = f.zero()
    for a, b in zip(lam, h.unit):
        s = f.add(s, f.mul(a, b))
    return s


def check_ad_invariance(h: HopfObject, lam: IntegralWitness) -> bool:
    """lam(sum x1 y S x2) = eps(x) lam(y) and the S-on-the-left variant."""
    f = h.field
    if not lam.normalized:
        raise ValueError("integral functional must be normalized to lam(1) = 1")
    lv = lam.vector
    n = h.dim
    for x in range(n):
        dx = h.comul.get(x, {})
        for y in range(n):
            lhs1 = f.zero()
            lhs2 = f.zero()
            for (i, j), c in dx.items():
                # x1 y S(x2): i * y * S(j)
                sj = h.antipode.apply(v_basis(f, n, j))
                mid = h.product(v_basis(f, n, i), v_basis(f, n, y))
                term = h.product(mid, sj)
                lhs1 = f.add(lhs1, f.mul(c, _pair(f, lv, term)))
                si = h.antipode.apply(v_basis(f, n, i))
                mid2 = h.product(si, v_basis(f, n, y))
                term2 = h.product(mid2, v_basis(f, n, j))
                lhs2 = f.add(lhs2, f.mul(c, _pair(f, lv, term2)))
            rhs = f.mul(h.counit[x], lv[y])
            if lhs1 != rhs or lhs2 != rhs:
                return False
    return True


def check_ad_coinvariance(h: HopfObject, t: IntegralWitness) -> bool:
    """eps(t) = 1 and sum t1 S(t3) (x) t2 = 1 (x) t."""
    f = h.field
    n = h.dim
    tv = t.vector
    if not f.is_one(h.counit_of(tv)):
        raise ValueError("integral element must be normalized to eps(t) = 1")
    # Delta^2(t) then contract
    lhs: dict = {}
    for k, c in enumerate(tv):
        if f.is_zero(c):
            continue
        for (i, j), w in h.comul.get(k, {}).items():
            for (a, b), w2 in h.comul.get(i, {}).items():
                # t1 = a, t2 = b, t3 = j
                sj = h.antipode.apply(v_basis(f, n, j))
                prod = h.product(v_basis(f, n, a), sj)
                for out, v in enumerate(prod):
                    if f.is_zero(v):
                        continue
                    key = (out, b)
                    s = f.add(lhs.get(key, f.zero()), f.mul(f.mul(c, f.mul(w, w2)), v))
                    if f.is_zero(s):
                        lhs.pop(key, None)
                    else:
                        lhs[key] = s
    rhs: dict = {}
    for i, u in enumerate(h.unit):
        if f.is_zero(u):
            continue
        for j, x in enumerate(tv):
            if not f.is_zero(x):
                rhs[(i, j)] = f.mul(u, x)
    return sparse_eq(f, lhs, rhs)


def _pair(f, functional: list, vec: list):
    s = f.zero()
    for a, b in zip(functional, vec):
        s = f.add(s, f.mul(a, b))
    return s


def is_algebra_map(src: AlgebraObject, tgt: AlgebraObject, f: Matrix) -> bool:
    """f(xy) = f(x)f(y) on all basis pairs and f(1) = 1."""
    fld = src.field
    if not v_eq(fld, f.apply(src.unit), tgt.unit):
        return False
    if fld.kind == "Fp" and fld.p < 2**15 and src.dim > 12 and f.is_np():
        import numpy as np

        p = fld.p
        n, m = src.dim, tgt.dim
        ts = src.np_tensor()
        tt = tgt.np_tensor()
        fm = f._d % p
        # lhs[k,i,j] = f(e_i e_j)_k = sum_m f[k,m] T_src[i,j,m]
        lhs = np.tensordot(fm, ts, axes=([1], [2])) % p  # (k, i, j)
        # g[i,b,k] = sum_a f[a,i] T_tgt[a,b,k]
        g = np.tensordot(fm.T, tt, axes=([1], [0])) % p
        rhs = np.tensordot(g, fm.T, axes=([1], [1]))  # (i, k, j): sum_b g[i,b,k] F[b,j]
        rhs = rhs % p
        rhs = np.transpose(rhs, (1, 0, 2))  # (k, i, j)
        return bool(np.array_equal(lhs % p, rhs))
    for i in range(src.dim):
        fi = f.col_list(i)
        for j in range(src.dim):
            lhs = f.apply(
                [src.pair_product(i, j).get(k, fld.zero()) for k in range(src.dim)]
            )
            rhs = tgt.product(fi, f.col_list(j))
            if not v_eq(fld, lhs, rhs):
                return False
    return True


def is_coalgebra_map(src, tgt, f: Matrix) -> bool:
    """(f (x) f) Delta_src = Delta_tgt f and eps_tgt f = eps_src."""
    fld = f.field
    for k in range(src.dim):
        e = fld.zero()
        fk = f.col_list(k)
        for a, b in zip(tgt.counit, fk):
            e = fld.add(e, fld.mul(a, b))
        if e != src.counit[k]:
            return False
    for k in range(src.dim):
        lhs: dict = {}
        for (x, y), c in src.comul.get(k, {}).items():
            fx = f.col_list(x)
            fy = f.col_list(y)
            for a, va in enumerate(fx):
                if fld.is_zero(va):
                    continue
                for b, vb in enumerate(fy):
                    if fld.is_zero(vb):
                        continue
                    key = (a, b)
                    s = fld.add(lhs.get(key, fld.zero()), fld.mul(c, fld.mul(va, vb)))
                    if fld.is_zero(s):
                        lhs.pop(key, None)
                    else:
                        lhs[key] = s
        rhs: dict = {}
        for m, c in enumerate(f.col_list(k)):
            if fld.is_zero(c):
                continue
            for (a, b), w in tgt.comul.get(m, {}).items():
                key = (a, b)
                s = fld.add(rhs.get(key, fld.zero()), fld.mul(c, w))
                if fld.is_zero(s):
                    rhs.pop(key, None)
                else:
                    rhs[key] = s
        if not sparse_eq(fld, lhs, rhs):
            return False
    return True
