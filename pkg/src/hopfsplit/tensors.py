"""Sparse structure tensors and a staged evaluator for tensor-space maps.

Elements of a tensor space V_1 (x) ... (x) V_k are dicts mapping index
tuples (i_1, ..., i_k) to nonzero scalars.  A SparseMap consumes a fixed
number of adjacent factors and emits a fixed number of new ones; chains of
SparseMaps applied columnwise evaluate composite morphisms (coproducts,
braidings, actions, ...) without ever materialising huge Kronecker
matrices.
"""
from __future__ import annotations

from .fields import ScalarField
from .linalg import Matrix

# ---------------------------------------------------------------------------
# dense element vectors


def v_zero(field: ScalarField, n: int) -> list:
    return [field.zero()] * n


def v_basis(field: ScalarField, n: int, i: int) -> list:
    v = v_zero(field, n)
    v[i] = field.one()
    return v


def v_add(field, u, v):
    return [field.add(a, b) for a, b in zip(u, v)]

def v_sub(field, u, v):
    return [field.sub(a, b) for a, b in zip(u, v)]


def v_scale(field, c, u):
    return [field.mul(c, a) for a in u]


def v_is_zero(field, u) -> bool:
    return all(field.is_zero(a) for a in u)


def v_eq(field, u, v) -> bool:
    return all(a == b for a, b in zip(u, v))


def v_tensor(field, u, v) -> list:
    out = []
    for a in u:
        if field.is_zero(a):
            out.extend([field.zero()] * len(v))
        else:
            out.extend(field.mul(a, b) for b in v)
    return out


def dense_to_sparse(field, u, arity=1, dims=None) -> dict:
    """Dense list -> dict keyed by index tuples (splitting by dims if given)."""
    out = {}
    for i, a in enumerate(u):
        if field.is_zero(a):
            continue
        if dims is None:
            out[(i,)] = a
        else:
            key = []
            rest = i
            for d in reversed(dims):
                key.append(rest % d)
                rest //= d
            out[tuple(reversed(key))] = a
    return out


def sparse_to_dense(field, vec: dict, dims) -> list:
    n = 1
    for d in dims:
        n *= d
    out = v_zero(field, n)
    for key, c in vec.items():
        flat = 0
        for idx, d in zip(key, dims):
            flat = flat * d + idx
        out[flat] = field.add(out[flat], c)
    return out


def sparse_add(field, a: dict, b: dict, coeff=None) -> dict:
    out = dict(a)
    for k, c in b.items():
        if coeff is not None:
            c = field.mul(coeff, c)
        s = field.add(out.get(k, field.zero()), c)
        if field.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def sparse_eq(field, a: dict, b: dict) -> bool:
    if a == b:  # zero-free dicts compare directly
        return True
    keys = set(a) | set(b)
    z = field.zero()
    return all(a.get(k, z) == b.get(k, z) for k in keys)


# ---------------------------------------------------------------------------
# sparse maps between tensor spaces


class SparseMap:
    """Columnwise-sparse linear map between tensor spaces.

    cols maps an input index tuple to {output index tuple: scalar}.
    Missing columns are zero.
    """

    __slots__ = ("field", "in_dims", "out_dims", "cols")

    def __init__(self, field, in_dims, out_dims, cols):
        self.field = field
        self.in_dims = tuple(in_dims)
        self.out_dims = tuple(out_dims)
        self.cols = cols

    @classmethod
    def from_matrix(cls, m: Matrix, in_dims, out_dims) -> "SparseMap":
        cols: dict = {}
        for i, j, v in m.entries():
            cols.setdefault(_unflatten(j, in_dims), {})[_unflatten(i, out_dims)] = v
        return cls(m.field, in_dims, out_dims, cols)

    def to_matrix(self) -> Matrix:
        rows = _total(self.out_dims)
        coln = _total(self.in_dims)
        entries = {}
        for key, col in self.cols.items():
            j = _flatten(key, self.in_dims)
            for okey, v in col.items():
                entries[(_flatten(okey, self.out_dims), j)] = v
        return Matrix.from_entries(self.field, rows, coln, entries)

    def column(self, key: tuple) -> dict:
        return dict(self.cols.get(key, {}))

    def apply_at(self, vec: dict, dims: tuple, pos: int) -> tuple[dict, tuple]:
        """Apply to factors [pos, pos+arity) of a tuple-keyed vector."""
        arity = len(self.in_dims)
        if tuple(dims[pos : pos + arity]) != self.in_dims:
            raise ValueError(
                f"factor dims {dims[pos:pos+arity]} do not match map input {self.in_dims}"
            )
        f = self.field
        out: dict = {}
        for key, c in vec.items():
            col = self.cols.get(key[pos : pos + arity])
            if not col:
                continue
            pre, post = key[:pos], key[pos + arity :]
            for okey, w in col.items():
                nk = pre + okey + post
                s = f.add(out.get(nk, f.zero()), f.mul(c, w))
                if f.is_zero(s):
                    out.pop(nk, None)
                else:
                    out[nk] = s
        return out, dims[:pos] + self.out_dims + dims[pos + arity :]


def _total(dims) -> int:
    n = 1
    for d in dims:
        n *= d
    return n


def _flatten(key, dims) -> int:
    flat = 0
    for idx, d in zip(key, dims):
        flat = flat * d + idx
    return flat


def _unflatten(flat, dims) -> tuple:
    key = []
    for d in reversed(dims):
        key.append(flat % d)
        flat //= d
    return tuple(reversed(key))


def permute_factors(vec: dict, dims: tuple, perm) -> tuple[dict, tuple]:
    """Reorder tensor factors; perm[i] = source position of new factor i."""
    out = {tuple(k[p] for p in perm): c for k, c in vec.items()}
    return out, tuple(dims[p] for p in perm)


def drop_unit_factor(field, vec: dict, dims: tuple, pos: int, weights: list):
    """Contract factor `pos` against a functional given by `weights`."""
    out: dict = {}
    for key, c in vec.items():
        w = weights[key[pos]]
        if field.is_zero(w):
            continue
        nk = key[:pos] + key[pos + 1 :]
        s = field.add(out.get(nk, field.zero()), field.mul(c, w))
        if field.is_zero(s):
            out.pop(nk, None)
        else:
            out[nk] = s
    return out, dims[:pos] + dims[pos + 1 :]


def insert_factor(field, vec: dict, dims: tuple, pos: int, element: list, dim: int):
    """Tensor-insert a fixed element as a new factor at position `pos`."""
    out: dict = {}
    for key, c in vec.items():
        for i, w in enumerate(element):
            if field.is_zero(w):
                continue
            nk = key[:pos] + (i,) + key[pos:]
            s = field.add(out.get(nk, field.zero()), field.mul(c, w))
            if not field.is_zero(s):
                out[nk] = s
            else:
                out.pop(nk, None)
    return out, dims[:pos] + (dim,) + dims[pos:]


class StagePipeline:
    """A composable chain of factorwise operations on tuple-keyed vectors.

    Stages are (kind, args) records; run() threads a vector through them.
    Used to evaluate the compositional axioms of quadruples and
    bosonizations exactly, column by column.
    """

    def __init__(self, field, in_dims):
        self.field = field
        self.in_dims = tuple(in_dims)
        self.stages = []

    def map_at(self, smap: SparseMap, pos: int) -> "StagePipeline":
        self.stages.append(("map", smap, pos))
        return self

    def permute(self, perm) -> "StagePipeline":
        self.stages.append(("perm", tuple(perm)))
        return self

    def contract(self, pos: int, weights) -> "StagePipeline":
        self.stages.append(("contract", pos, list(weights)))
        return self

    def insert(self, pos: int, element, dim: int) -> "StagePipeline":
        self.stages.append(("insert", pos, list(element), dim))
        return self

    def run(self, vec: dict, dims=None) -> tuple[dict, tuple]:
        dims = self.in_dims if dims is None else tuple(dims)
        for st in self.stages:
            if st[0] == "map":
                vec, dims = st[1].apply_at(vec, dims, st[2])
            elif st[0] == "perm":
                vec, dims = permute_factors(vec, dims, st[1])
            elif st[0] == "contract":
                vec, dims = drop_unit_factor(self.field, vec, dims, st[1], st[2])
            else:
                vec, dims = insert_factor(self.field, vec, dims, st[1], st[2], st[3])
        return vec, dims

    def run_basis(self, key: tuple) -> tuple[dict, tuple]:
        return self.run({tuple(key): self.field.one()})


def pipelines_equal(p1: StagePipeline, p2: StagePipeline, in_dims=None) -> tuple[bool, tuple | None]:
    """Evaluate two pipelines on every basis tensor; return (equal, witness)."""
    dims = tuple(in_dims) if in_dims is not None else p1.in_dims
    field = p1.field
    total = _total(dims)
    for flat in range(total):
        key = _unflatten(flat, dims)
        v1, _ = p1.run({key: field.one()}, dims)
        v2, _ = p2.run({key: field.one()}, dims)
        if not sparse_eq(field, v1, v2):
            return False, key
    return True, None
