"""Finite-dimensional associative algebras presented by structure constants.

An algebra is a basis e_0..e_{n-1}, a sparse multiplication tensor
mul[(i,j)] = {k: c}  (meaning e_i e_j = sum c e_k) and a unit vector.
Validation, two-sided ideals, nilpotency, the Jacobson radical (trace
form in large characteristic, certified otherwise), separability
idempotents and quotient algebras all reduce to exact linear algebra.
"""
from __future__ import annotations

import numpy as np

from .fields import ScalarField
from .linalg import InconsistentSystem, Matrix, Subspace
from .tensors import (
    SparseMap,
    dense_to_sparse,
    sparse_add,
    sparse_eq,
    sparse_to_dense,
    v_basis,
    v_eq,
    v_zero,
)


class ValidationReport:
    """Per-axiom pass/fail listing with a witness for each failure."""

    def __init__(self):
        self.checks: list[tuple[str, bool, str | None]] = []

    def record(self, name: str, ok: bool, witness: str | None = None):
        self.checks.append((name, bool(ok), None if ok else witness))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[tuple[str, str | None]]:
        return [(n, w) for n, ok, w in self.checks if not ok]

    def require(self, what: str = "validation"):
        if not self.ok:
            raise ValueError(f"{what} failed: {self.failures()}")
        return self

    def __repr__(self):
        bad = self.failures()
        return f"ValidationReport(ok)" if not bad else f"ValidationReport(failed: {bad})"


class AlgebraObject:
    """Associative unital algebra by structure constants over an exact field."""

    def __init__(self, field: ScalarField, dim: int, mul: dict, unit: list, labels=None):
        self.field = field
        self.dim = dim
        self.mul = {k: dict(v) for k, v in mul.items() if v}
        self.unit = list(unit)
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(dim))
        self._np_tensor = None
        self._mul_map = None

    # -- products ----------------------------------------------------------

    def pair_product(self, i: int, j: int) -> dict:
        """e_i * e_j as a sparse {k: c} dict."""
        return self.mul.get((i, j), {})

    def product_sparse(self, u: dict, v: dict) -> dict:
        f = self.field
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = f.mul(a, b)
                for k, c in self.mul.get((i, j), {}).items():
                    s = f.add(out.get(k, f.zero()), f.mul(ab, c))
                    if f.is_zero(s):
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def product(self, u: list, v: list) -> list:
        f = self.field
        us = {i: a for i, a in enumerate(u) if not f.is_zero(a)}
        vs = {j: b for j, b in enumerate(v) if not f.is_zero(b)}
        out = v_zero(f, self.dim)
        for k, c in self.product_sparse(us, vs).items():
            out[k] = c
        return out

    def unit_vector(self) -> list:
        return list(self.unit)

    def mul_map(self) -> SparseMap:
        if self._mul_map is None:
            cols = {(i, j): {(k,): c for k, c in col.items()} for (i, j), col in self.mul.items()}
            self._mul_map = SparseMap(self.field, (self.dim, self.dim), (self.dim,), cols)
        return self._mul_map

    def mul_matrix(self) -> Matrix:
        """Multiplication as a dim x dim^2 matrix (columns ordered (i,j))."""
        entries = {}
        for (i, j), col in self.mul.items():
            for k, c in col.items():
                entries[(k, i * self.dim + j)] = c
        return Matrix.from_entries(self.field, self.dim, self.dim * self.dim, entries)

    def left_mult_matrix(self, vec: list) -> Matrix:
        """Matrix of x -> vec * x."""
        f = self.field
        entries = {}
        for i, a in enumerate(vec):
            if f.is_zero(a):
                continue
            for j in range(self.dim):
                for k, c in self.mul.get((i, j), {}).items():
                    key = (k, j)
                    entries[key] = f.add(entries.get(key, f.zero()), f.mul(a, c))
        return Matrix.from_entries(self.field, self.dim, self.dim, entries)

    def right_mult_matrix(self, vec: list) -> Matrix:
        f = self.field
        entries = {}
        for j, a in enumerate(vec):
            if f.is_zero(a):
                continue
            for i in range(self.dim):
                for k, c in self.mul.get((i, j), {}).items():
                    key = (k, i)
                    entries[key] = f.add(entries.get(key, f.zero()), f.mul(a, c))
        return Matrix.from_entries(self.field, self.dim, self.dim, entries)

    def np_tensor(self):
        """Dense int64 tensor T[i,j,k] over F_p (fast validation path)."""
        if self._np_tensor is None:
            t = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
            for (i, j), col in self.mul.items():
                for k, c in col.items():
                    t[i, j, k] = int(c)
            self._np_tensor = t
        return self._np_tensor

    # -- validation ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        rep.record("shape", self._shape_ok(), "structure constants out of range")
        if not rep.ok:
            return rep
        ok, wit = self._check_associativity()
        rep.record("associativity", ok, wit)
        ok, wit = self._check_unit()
        rep.record("unit", ok, wit)
        return rep

    def _shape_ok(self) -> bool:
        n = self.dim
        if len(self.unit) != n:
            return False
        return all(
            0 <= i < n and 0 <= j < n and all(0 <= k < n for k in col)
            for (i, j), col in self.mul.items()
        )

    def _check_associativity(self):
        n = self.dim
        f = self.field
        if f.kind == "Fp" and f.p < 2**15 and n > 12:
            t = self.np_tensor()
            p = f.p
            t2 = t.reshape(n * n, n)
            for i in range(n):
                left = (np.tensordot(t[i], t, axes=([1], [0]))) % p  # (j,k,l)
                right = (t2 @ t[i]).reshape(n, n, n) % p  # (j,k,l)
                if not np.array_equal(left, right):
                    bad = np.argwhere(left != right)[0]
                    return False, f"(e{i}*e{bad[0]})*e{bad[1]} != e{i}*(e{bad[0]}*e{bad[1]})"
            return True, None
        table = {(i, j): self.pair_product(i, j) for i in range(n) for j in range(n)}
        for i in range(n):
            for j in range(n):
                uv = table[(i, j)]
                for k in range(n):
                    lhs: dict = {}
                    for m, c in uv.items():
                        lhs = sparse_add(f, lhs, table[(m, k)], c)
                    rhs: dict = {}
                    for m, c in table[(j, k)].items():
                        rhs = sparse_add(f, rhs, table[(i, m)], c)
                    if not sparse_eq(f, {(a,): b for a, b in lhs.items()}, {(a,): b for a, b in rhs.items()}):
                        return False, f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})"
        return True, None

    def _check_unit(self):
        f = self.field
        for j in range(self.dim):
            e = v_basis(f, self.dim, j)
            if not v_eq(f, self.product(self.unit, e), e):
                return False, f"1*e{j} != e{j}"
            if not v_eq(f, self.product(e, self.unit), e):
                return False, f"e{j}*1 != e{j}"
        return True, None

    # -- generation ---------------------------------------------------------

    def generating_basis_indices(self, cap: int = 24) -> list[int] | None:
        """Greedy algebra generating set from the basis, or None past cap.

        Used to verify multiplicative properties on |G| * dim pairs instead
        of dim^2 (sound: {u : property for all v} is a unital subalgebra).
        """
        f = self.field
        span = Subspace.from_vectors(f, self.dim, [self.unit])
        gens: list[int] = []
        for i in range(self.dim):
            e = v_basis(f, self.dim, i)
            if span.contains_vector(e):
                continue
            gens.append(i)
            if len(gens) > cap:
                return None
            # close the span under products until stable
            span = span + Subspace.from_vectors(f, self.dim, [e])
            while True:
                prods = pairwise_products(self, span.basis, span.basis)
                grown = span + Subspace.from_matrix_rows(prods)
                if grown.dim == span.dim:
                    break
                span = grown
        return gens


class BimoduleObject:
    """(A,A)-bimodule: left action A (x) M -> M and right action M (x) A -> M."""

    def __init__(self, algebra: AlgebraObject, dim: int, act_l: Matrix, act_r: Matrix):
        self.algebra = algebra
        self.dim = dim
        self.act_l = act_l  # (dim, algebra.dim * dim)
        self.act_r = act_r  # (dim, dim * algebra.dim)

    @classmethod
    def regular(cls, a: AlgebraObject) -> "BimoduleObject":
        n = a.dim
        f = a.field
        ent_l, ent_r = {}, {}
        for (i, j), col in a.mul.items():
            for k, c in col.items():
                ent_l[(k, i * n + j)] = f.add(ent_l.get((k, i * n + j), f.zero()), c)
                ent_r[(k, i * n + j)] = f.add(ent_r.get((k, i * n + j), f.zero()), c)
        return cls(a, n, Matrix.from_entries(f, n, n * n, ent_l), Matrix.from_entries(f, n, n * n, ent_r))

    def left(self, avec: list, m: list) -> list:
        from .tensors import v_tensor

        return self.act_l.apply(v_tensor(self.algebra.field, avec, m))

    def right(self, m: list, avec: list) -> list:
        from .tensors import v_tensor

        return self.act_r.apply(v_tensor(self.algebra.field, m, avec))

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        a = self.algebra
        f = a.field
        for i in range(a.dim):
            ei = v_basis(f, a.dim, i)
            for j in range(a.dim):
                ej = v_basis(f, a.dim, j)
                prod = a.product(ei, ej)
                for t in range(self.dim):
                    m = v_basis(f, self.dim, t)
                    if not v_eq(f, self.left(prod, m), self.left(ei, self.left(ej, m))):
                        rep.record("left_action", False, f"(e{i}e{j})m{t}")
                        return rep
                    if not v_eq(f, self.right(m, prod), self.right(self.right(m, ei), ej)):
                        rep.record("right_action", False, f"m{t}(e{i}e{j})")
                        return rep
                    if not v_eq(f, self.left(ei, self.right(m, ej)), self.right(self.left(ei, m), ej)):
                        rep.record("bimodule_compat", False, f"e{i}(m{t}e{j})")
                        return rep
        for t in range(self.dim):
            m = v_basis(f, self.dim, t)
            if not v_eq(f, self.left(a.unit, m), m) or not v_eq(f, self.right(m, a.unit), m):
                rep.record("unit_action", False, f"1*m{t}")
                return rep
        rep.record("left_action", True)
        rep.record("right_action", True)
        rep.record("bimodule_compat", True)
        rep.record("unit_action", True)
        return rep

    @classmethod
    def trivial(cls, a: AlgebraObject, eps: list, dim: int = 1) -> "BimoduleObject":
        """Both actions through a character eps (used with counits)."""
        f = a.field
        n = a.dim
        ent_l, ent_r = {}, {}
        for i in range(n):
            if f.is_zero(eps[i]):
                continue
            for t in range(dim):
                ent_l[(t, i * dim + t)] = eps[i]
                ent_r[(t, t * n + i)] = eps[i]
        return cls(a, dim, Matrix.from_entries(f, dim, n * dim, ent_l), Matrix.from_entries(f, dim, dim * n, ent_r))


class IdealData:
    """Two-sided ideal given as a subspace (with an optional generator map)."""

    def __init__(self, algebra: AlgebraObject, subspace: Subspace, witness: Matrix | None = None):
        self.algebra = algebra
        self.subspace = subspace
        self.witness = witness

    @property
    def dim(self) -> int:
        return self.subspace.dim


def pairwise_products(a: AlgebraObject, left: Matrix, right: Matrix) -> Matrix:
    """All products (row of left) * (row of right), stacked as rows."""
    f = a.field
    if f.kind == "Fp" and f.p < 2**15 and left.is_np() and right.is_np():
        t = a.np_tensor()
        p = f.p
        q = np.tensordot(left._d % p, t, axes=([1], [0])) % p  # (u, j, k)
        r = np.einsum("ujk,wj->uwk", q, right._d % p) % p
        return Matrix(f, left.rows * right.rows, a.dim, r.reshape(left.rows * right.rows, a.dim), _raw=True)
    rows = []
    for i in range(left.rows):
        u = left.row_list(i)
        for j in range(right.rows):
            rows.append(a.product(u, right.row_list(j)))
    if not rows:
        return Matrix.zeros(f, 0, a.dim)
    return Matrix.from_rows(f, rows)


def is_ideal(a: AlgebraObject, s: Subspace) -> bool:
    if s.dim == 0:
        return True
    basis = Matrix.identity(a.field, a.dim)
    lp = pairwise_products(a, basis, s.basis)
    rp = pairwise_products(a, s.basis, basis)
    return s.contains(Subspace.from_matrix_rows(lp)) and s.contains(Subspace.from_matrix_rows(rp))


def ideal_generated_by(a: AlgebraObject, f: Matrix) -> IdealData:
    """Two-sided ideal generated by the image of f : X -> A.

    Realised as the span of all products e_i * f(x_t) * e_j, which is the
    image of the three-fold multiplication against f placed in the middle.
    """
    field = a.field
    mid = [f.col_list(t) for t in range(f.cols)]
    if not mid:
        return IdealData(a, Subspace.zero(field, a.dim), f)
    mid_m = Matrix.from_rows(field, mid)
    basis = Matrix.identity(field, a.dim)
    left = pairwise_products(a, basis, mid_m)  # rows: e_i * f_t
    full = pairwise_products(a, left, basis)  # rows: (e_i f_t) * e_j
    span = Subspace.from_matrix_rows(full.vstack(left).vstack(mid_m))
    # span already contains f(X) since 1 is a combination of basis elements
    return IdealData(a, span, f)


class NotNilpotentWithin(Exception):
    def __init__(self, max_n):
        super().__init__(f"ideal power chain did not reach zero within {max_n} steps")
        self.max_n = max_n


def ideal_power_nilpotency(a: AlgebraObject, ideal: IdealData, max_n: int = 64):
    """Powers I^n (n-fold products, n >= 2; I^1 := I) and the nilpotency index.

    Returns (powers, index) where powers[0] = I^1; raises NotNilpotentWithin
    if I^max_n is still nonzero.
    """
    if not is_ideal(a, ideal.subspace):
        raise ValueError("not an ideal")
    powers = [ideal.subspace]
    n = 1
    while n < max_n:
        prev = powers[-1]
        if prev.dim == 0:
            return powers, n + 1 if n == 1 else n  # I = 0: I^2 = 0 at index 2
        nxt = Subspace.from_matrix_rows(pairwise_products(a, ideal.subspace.basis, prev.basis))
        powers.append(nxt)
        n += 1
        if nxt.dim == 0:
            return powers, n
        if nxt.dim == prev.dim:  # stabilised above zero: never nilpotent
            raise NotNilpotentWithin(max_n)
    raise NotNilpotentWithin(max_n)


class SmallCharUnsupported(Exception):
    pass


class CertificationFailed(Exception):
    def __init__(self, check: str):
        super().__init__(f"radical certification failed: {check}")
        self.check = check


def radical(a: AlgebraObject, certified_candidate: IdealData | None = None) -> IdealData:
    """Jacobson radical.

    Without a candidate (char 0 or char > dim): kernel of the trace form
    Tr(L_x L_y) of the left regular representation, then verified nilpotent.
    With a candidate: certify it is a nilpotent ideal with separable
    quotient, which pins it as the radical in any characteristic.
    """
    f = a.field
    if certified_candidate is None:
        if f.kind == "Fp" and f.p <= a.dim:
            raise SmallCharUnsupported(f"char {f.p} <= dim {a.dim}: supply a certified candidate")
        lmats = [a.left_mult_matrix(v_basis(f, a.dim, i)) for i in range(a.dim)]
        gram_rows = []
        for i in range(a.dim):
            row = []
            for j in range(a.dim):
                prod = lmats[i] @ lmats[j]
                tr = f.zero()
                for t in range(a.dim):
                    tr = f.add(tr, prod[t, t])
                row.append(tr)
            gram_rows.append(row)
        ker = Matrix.from_rows(f, gram_rows).kernel()
        rad = IdealData(a, Subspace.from_matrix_rows(ker))
        if rad.dim:
            if not is_ideal(a, rad.subspace):
                raise CertificationFailed("trace-form kernel is not an ideal")
            ideal_power_nilpotency(a, rad)  # raises if not nilpotent
        return rad
    cand = certified_candidate
    if not is_ideal(a, cand.subspace):
        raise CertificationFailed("candidate is not a two-sided ideal")
    try:
        ideal_power_nilpotency(a, cand)
    except NotNilpotentWithin:
        raise CertificationFailed("candidate is not nilpotent")
    q, _proj = quotient_algebra(a, cand)
    try:
        separability_idempotent(q)
    except NotSeparable:
        raise CertificationFailed("quotient by candidate is not separable")
    return cand


class NotSeparable(Exception):
    pass


def separability_idempotent(a: AlgebraObject, ctx=None) -> list:
    """Element e of A (x) A with m(e) = 1 and (x (x) 1)e = e(1 (x) x) for all x.

    ctx, when given, is a record with fields hopf / coact_l / coact_r (see
    category.AlgebraContext); e must then also be coinvariant for the
    diagonal coactions, making the induced bimodule section colinear.
    Returns e as a dense vector of length dim^2; raises NotSeparable.
    """
    f = a.field
    n = a.dim
    n2 = n * n
    rows: list[dict] = []
    rhs: list = []
    # m(e) = 1
    for k in range(n):
        row: dict = {}
        for (i, j), col in a.mul.items():
            c = col.get(k)
            if c is not None:
                row[i * n + j] = f.add(row.get(i * n + j, f.zero()), c)
        rows.append(row)
        rhs.append(a.unit[k])
    # (e_t (x) 1) e = e (1 (x) e_t): coefficient rows over components (x,y)
    for t in range(n):
        for x in range(n):
            for y in range(n):
                row = {}
                # left: sum_c e_{c,y} * [e_t e_c]_x
                for c in range(n):
                    v = a.mul.get((t, c), {}).get(x)
                    if v is not None:
                        row[c * n + y] = f.add(row.get(c * n + y, f.zero()), v)
                # right: sum_d e_{x,d} * [e_d e_t]_y
                for d in range(n):
                    v = a.mul.get((d, t), {}).get(y)
                    if v is not None:
                        row[x * n + d] = f.sub(row.get(x * n + d, f.zero()), v)
                if row:
                    rows.append(row)
                    rhs.append(f.zero())
    if ctx is not None:
        rows_c, rhs_c = _ctx_coinvariance_rows(a, ctx)
        rows.extend(rows_c)
        rhs.extend(rhs_c)
    m = Matrix.from_entries(f, len(rows), n2, {(r, j): v for r, row in enumerate(rows) for j, v in row.items()})
    try:
        e, _ = m.solve(Matrix.column(f, rhs))
    except InconsistentSystem:
        raise NotSeparable(f"no separability idempotent for {a.dim}-dim algebra")
    verify_separability_idempotent(a, e)
    return e


def _ctx_coinvariance_rows(a: AlgebraObject, ctx):
    """Coinvariance of e under the diagonal coactions on A (x) A.

    Right: rho(x (x) y) = x0 (x) y0 (x) x1 y1 must send e to e (x) 1_H;
    left symmetrically.  Constraint columns are evaluated with the stage
    engine and transposed into rows of the linear system.
    """
    from .tensors import permute_factors

    f = a.field
    n = a.dim
    dh = ctx.hopf.dim
    mul_h = ctx.hopf.as_algebra().mul_map()
    rows_by_key: dict = {}

    def add_entry(side, out_key, col_idx, val):
        cur = rows_by_key.setdefault((side, out_key), {})
        cur[col_idx] = f.add(cur.get(col_idx, f.zero()), val)

    for cm, side in ((ctx.coact_r, "r"), (ctx.coact_l, "l")):
        if cm is None:
            continue
        sm = SparseMap.from_matrix(cm, (n,), (n, dh) if side == "r" else (dh, n))
        for i in range(n):
            for j in range(n):
                vec = {(i, j): f.one()}
                dims = (n, n)
                if side == "r":
                    vec, dims = sm.apply_at(vec, dims, 0)  # (n, dh, n)
                    vec, dims = sm.apply_at(vec, dims, 2)  # (n, dh, n, dh)
                    vec, dims = permute_factors(vec, dims, (0, 2, 1, 3))
                    vec, dims = mul_h.apply_at(vec, dims, 2)  # (n, n, dh)
                    base = {(i, j, h): ctx.hopf.unit[h] for h in range(dh) if not f.is_zero(ctx.hopf.unit[h])}
                else:
                    vec, dims = sm.apply_at(vec, dims, 0)  # (dh, n, n)
                    vec, dims = sm.apply_at(vec, dims, 2)  # (dh, n, dh, n)
                    vec, dims = permute_factors(vec, dims, (0, 2, 1, 3))
                    vec, dims = mul_h.apply_at(vec, dims, 0)  # (dh, n, n)
                    base = {(h, i, j): ctx.hopf.unit[h] for h in range(dh) if not f.is_zero(ctx.hopf.unit[h])}
                diff = sparse_add(f, vec, {k: f.neg(v) for k, v in base.items()})
                for out_key, val in diff.items():
                    add_entry(side, out_key, i * n + j, val)
    rows = [row for _, row in sorted(rows_by_key.items())]
    return rows, [f.zero()] * len(rows)


def verify_separability_idempotent(a: AlgebraObject, e: list):
    """Re-check m(e)=1 and the Casimir property by direct contraction."""
    f = a.field
    n = a.dim
    es = dense_to_sparse(f, e, dims=(n, n))
    m_of_e = v_zero(f, n)
    for (i, j), c in es.items():
        for k, v in a.mul.get((i, j), {}).items():
            m_of_e[k] = f.add(m_of_e[k], f.mul(c, v))
    if not v_eq(f, m_of_e, a.unit):
        raise AssertionError("separability idempotent fails m(e) = 1")
    for t in range(n):
        lhs: dict = {}
        rhs: dict = {}
        for (i, j), c in es.items():
            for k, v in a.mul.get((t, i), {}).items():
                key = (k, j)
                s = f.add(lhs.get(key, f.zero()), f.mul(c, v))
                lhs[key] = s
            for k, v in a.mul.get((j, t), {}).items():
                key = (i, k)
                s = f.add(rhs.get(key, f.zero()), f.mul(c, v))
                rhs[key] = s
        if not sparse_eq(f, lhs, rhs):
            raise AssertionError(f"Casimir property fails at basis element {t}")


def quotient_algebra(a: AlgebraObject, ideal: IdealData | Subspace):
    """Quotient algebra on the canonical complement basis; returns (Q, proj).

    proj is the (qdim x dim) projection matrix; its algebra-map property is
    re-verified.  The complement basis consists of the non-pivot coordinates
    of the ideal's RREF basis, so the construction is deterministic.
    """
    s = ideal.subspace if isinstance(ideal, IdealData) else ideal
    if not is_ideal(a, s):
        raise ValueError("not an ideal")
    f = a.field
    n = a.dim
    pivots = [next(j for j in range(n) if not f.is_zero(s.basis[i, j])) for i in range(s.dim)]
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    qdim = len(free)
    # projection: reduce modulo the ideal, then read the free coordinates
    proj_entries = {}
    for j in range(n):
        v = s.reduce_vector(v_basis(f, n, j))
        for t, fr in enumerate(free):
            if not f.is_zero(v[fr]):
                proj_entries[(t, j)] = v[fr]
    proj = Matrix.from_entries(f, qdim, n, proj_entries)
    lift = {t: fr for t, fr in enumerate(free)}  # section: class t -> e_free[t]
    qmul: dict = {}
    for ti in range(qdim):
        for tj in range(qdim):
            prod = a.pair_product(lift[ti], lift[tj])
            img = proj.apply(sparse_to_dense(f, {(k,): c for k, c in prod.items()}, (n,)))
            col = {k: c for k, c in enumerate(img) if not f.is_zero(c)}
            if col:
                qmul[(ti, tj)] = col
    qunit = proj.apply(a.unit)
    labels = tuple(a.labels[fr] for fr in free)
    q = AlgebraObject(f, qdim, qmul, qunit, labels)
    q.validate().require("quotient algebra")
    _verify_projection_is_algebra_map(a, q, proj)
    return q, proj


def _verify_projection_is_algebra_map(a: AlgebraObject, q: AlgebraObject, proj: Matrix):
    f = a.field
    if f.kind == "Fp" and f.p < 2**15 and a.dim > 12:
        t = a.np_tensor()
        tq = q.np_tensor()
        p = f.p
        pm = proj._d % p
        lhs = np.tensordot(t, pm.T, axes=([2], [0])) % p  # (i,j,tq) = proj(e_i e_j)
        tmp = np.tensordot(pm, tq, axes=([0], [0]))  # wait: need proj(e_i) * proj(e_j)
        # rhs[i,j,:] = sum_{a,b} pm[a,i] pm[b,j] tq[a,b,:]
        rhs = np.einsum("ai,abk->ibk", pm, tq) % p
        rhs = np.einsum("bj,ibk->ijk", pm, rhs) % p
        if not np.array_equal(lhs, rhs):
            raise AssertionError("quotient projection is not an algebra map")
        return
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = proj.apply(a.product(v_basis(f, a.dim, i), v_basis(f, a.dim, j)))
            rhs = q.product(proj.apply(v_basis(f, a.dim, i)), proj.apply(v_basis(f, a.dim, j)))
            if not v_eq(f, lhs, rhs):
                raise AssertionError("quotient projection is not an algebra map")
