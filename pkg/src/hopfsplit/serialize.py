"""JSON structure-constant files and report serialization.

Coefficients travel as strings ("a/b" over Q, integer residues over F_p)
so exactness survives the wire.  Triple lists are sorted and json.dumps is
called with sorted keys, making write -> read -> write byte-identical.
"""
from __future__ import annotations

import json

from .algebra import AlgebraObject
from .coalgebra import CoalgebraObject
from .fields import GF, QQ, ScalarField
from .hopf import BialgebraObject, HopfObject
from .linalg import Matrix, Subspace


class FileFormatError(Exception):
    """Malformed input file (CLI exit code 2)."""


def field_to_json(f: ScalarField) -> dict:
    return {"kind": "Q"} if f.kind == "Q" else {"kind": "Fp", "p": f.p}


def field_from_json(d) -> ScalarField:
    try:
        if d["kind"] == "Q":
            return QQ
        if d["kind"] == "Fp":
            return GF(int(d["p"]))
    except (KeyError, TypeError, ValueError) as e:
        raise FileFormatError(f"bad field descriptor: {e}")
    raise FileFormatError(f"unknown field kind {d.get('kind')!r}")


def _triples_from_mul(f, mul: dict) -> list:
    out = []
    for (i, j), col in mul.items():
        for k, c in col.items():
            out.append([i, j, k, f.fmt(c)])
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def _triples_from_comul(f, comul: dict) -> list:
    out = []
    for k, col in comul.items():
        for (i, j), c in col.items():
            out.append([i, j, k, f.fmt(c)])
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def _vec_strs(f, vec) -> list:
    return [f.fmt(c) for c in vec]


def _matrix_rows(f, m: Matrix) -> list:
    return [[f.fmt(x) for x in m.row_list(i)] for i in range(m.rows)]


def _matrix_from_rows(f, rows, expect_shape=None) -> Matrix:
    data = [[f.parse(str(x)) for x in row] for row in rows]
    m = Matrix.from_rows(f, data)
    if expect_shape and (m.rows, m.cols) != expect_shape:
        raise FileFormatError(f"matrix shape {m.rows}x{m.cols}, expected {expect_shape}")
    return m


def object_to_json(x) -> dict:
    """Serialize an Algebra/Coalgebra/Bialgebra/Hopf object."""
    f = x.field
    doc = {"field": field_to_json(f), "dim": x.dim, "basis": list(x.labels)}
    if isinstance(x, (AlgebraObject, BialgebraObject)):
        doc["mul"] = _triples_from_mul(f, x.mul)
        doc["unit"] = _vec_strs(f, x.unit)
    if isinstance(x, (CoalgebraObject, BialgebraObject)):
        doc["comul"] = _triples_from_comul(f, x.comul)
        doc["counit"] = _vec_strs(f, x.counit)
    if isinstance(x, HopfObject):
        doc["antipode"] = _matrix_rows(f, x.antipode)
    return doc


def object_from_json(doc):
    """Parse back; the richest structure present wins."""
    try:
        f = field_from_json(doc["field"])
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError) as e:
        raise FileFormatError(f"missing field/dim: {e}")
    labels = doc.get("basis") or [f"e{i}" for i in range(dim)]
    if len(labels) != dim:
        raise FileFormatError("basis label count differs from dim")
    has_alg = "mul" in doc
    has_coalg = "comul" in doc
    mul: dict = {}
    unit = None
    comul: dict = {}
    counit = None
    if has_alg:
        for t in doc["mul"]:
            try:
                i, j, k, c = int(t[0]), int(t[1]), int(t[2]), f.parse(str(t[3]))
            except (IndexError, ValueError, TypeError) as e:
                raise FileFormatError(f"bad mul triple {t!r}: {e}")
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise FileFormatError(f"mul triple {t!r} out of range")
            mul.setdefault((i, j), {})[k] = f.add(mul.get((i, j), {}).get(k, f.zero()), c)
        unit = _parse_vec(f, doc.get("unit"), dim, "unit")
    if has_coalg:
        for t in doc["comul"]:
            try:
                i, j, k, c = int(t[0]), int(t[1]), int(t[2]), f.parse(str(t[3]))
            except (IndexError, ValueError, TypeError) as e:
                raise FileFormatError(f"bad comul triple {t!r}: {e}")
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise FileFormatError(f"comul triple {t!r} out of range")
            comul.setdefault(k, {})[(i, j)] = f.add(comul.get(k, {}).get((i, j), f.zero()), c)
        counit = _parse_vec(f, doc.get("counit"), dim, "counit")
    if has_alg and has_coalg:
        if "antipode" in doc:
            s = _matrix_from_rows(f, doc["antipode"], (dim, dim))
            return HopfObject(f, dim, mul, unit, comul, counit, s, labels)
        return BialgebraObject(f, dim, mul, unit, comul, counit, labels)
    if has_alg:
        return AlgebraObject(f, dim, mul, unit, labels)
    if has_coalg:
        return CoalgebraObject(f, dim, comul, counit, labels)
    raise FileFormatError("file carries neither mul nor comul")


def _parse_vec(f, raw, dim, what) -> list:
    if raw is None:
        raise FileFormatError(f"missing {what}")
    if len(raw) != dim:
        raise FileFormatError(f"{what} has length {len(raw)}, expected {dim}")
    return [f.parse(str(x)) for x in raw]


def subspace_to_json(s: Subspace) -> dict:
    f = s.field
    return {
        "field": field_to_json(f),
        "ambient_dim": s.ambient_dim,
        "vectors": [[f.fmt(x) for x in s.basis.row_list(i)] for i in range(s.dim)],
    }


def subspace_from_json(doc, field=None, ambient=None) -> Subspace:
    try:
        f = field_from_json(doc["field"]) if "field" in doc else field
        n = int(doc["ambient_dim"]) if "ambient_dim" in doc else ambient
        vecs = [[f.parse(str(x)) for x in row] for row in doc["vectors"]]
    except (KeyError, TypeError, ValueError) as e:
        raise FileFormatError(f"bad subspace file: {e}")
    if f is None or n is None:
        raise FileFormatError("subspace file lacks field/ambient_dim")
    for v in vecs:
        if len(v) != n:
            raise FileFormatError("subspace vector length differs from ambient_dim")
    return Subspace.from_vectors(f, n, vecs)


def _sparse_matrix_triples(f, m: Matrix) -> list:
    out = [[i, j, f.fmt(v)] for i, j, v in m.entries()]
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _matrix_from_triples(f, rows, cols, triples) -> Matrix:
    entries = {}
    for t in triples:
        try:
            i, j, c = int(t[0]), int(t[1]), f.parse(str(t[2]))
        except (IndexError, ValueError, TypeError) as e:
            raise FileFormatError(f"bad matrix triple {t!r}: {e}")
        if not (0 <= i < rows and 0 <= j < cols):
            raise FileFormatError(f"matrix triple {t!r} out of range")
        entries[(i, j)] = c
    return Matrix.from_entries(f, rows, cols, entries)


def quadruple_to_json(q) -> dict:
    """Quadruple envelope (both variants) with the four maps as triples."""
    from .smash import DualYDQuadruple, YDQuadruple

    f = q.field
    dr, dh = q.yd.dim, q.hopf.dim
    env = {
        "H": object_to_json(q.hopf),
        "R_dim": dr,
        "yd_act": _sparse_matrix_triples(f, q.yd.act),
        "yd_coact": _sparse_matrix_triples(f, q.yd.coact),
    }
    if isinstance(q, YDQuadruple):
        env["side"] = "primal"
        env["R_mul"] = _triples_from_mul(f, q.r_alg.mul)
        env["R_unit"] = _vec_strs(f, q.r_alg.unit)
        env["eps"] = _vec_strs(f, q.eps)
        env["delta"] = _sparse_matrix_triples(f, q.delta)
        env["omega"] = _sparse_matrix_triples(f, q.omega)
    elif isinstance(q, DualYDQuadruple):
        env["side"] = "dual"
        env["R_comul"] = _triples_from_comul(f, q.r_coalg.comul)
        env["R_counit"] = _vec_strs(f, q.r_coalg.counit)
        env["one"] = _vec_strs(f, q.one)
        env["m"] = _sparse_matrix_triples(f, q.mul)
        env["xi"] = _sparse_matrix_triples(f, q.xi)
    else:
        raise TypeError("not a quadruple")
    return {"quadruple": env}


def quadruple_from_json(doc):
    from .category import YDObject
    from .smash import DualYDQuadruple, YDQuadruple

    try:
        env = doc["quadruple"]
        h = object_from_json(env["H"])
        dr = int(env["R_dim"])
        side = env["side"]
    except (KeyError, TypeError, ValueError) as e:
        raise FileFormatError(f"bad quadruple envelope: {e}")
    if not isinstance(h, HopfObject):
        raise FileFormatError("quadruple H must be a Hopf object (with antipode)")
    f = h.field
    dh = h.dim
    act = _matrix_from_triples(f, dr, dh * dr, env.get("yd_act", []))
    coact = _matrix_from_triples(f, dh * dr, dr, env.get("yd_coact", []))
    yd = YDObject(h, dr, act, coact)
    if side == "primal":
        mul: dict = {}
        for t in env.get("R_mul", []):
            i, j, k, c = int(t[0]), int(t[1]), int(t[2]), f.parse(str(t[3]))
            mul.setdefault((i, j), {})[k] = c
        r_alg = AlgebraObject(f, dr, mul, _parse_vec(f, env.get("R_unit"), dr, "R_unit"))
        eps = _parse_vec(f, env.get("eps"), dr, "eps")
        delta = _matrix_from_triples(f, dr * dr, dr, env.get("delta", []))
        omega = _matrix_from_triples(f, dr * dr, dh, env.get("omega", []))
        return YDQuadruple(h, r_alg, yd, eps, delta, omega)
    if side == "dual":
        comul: dict = {}
        for t in env.get("R_comul", []):
            i, j, k, c = int(t[0]), int(t[1]), int(t[2]), f.parse(str(t[3]))
            comul.setdefault(int(k), {})[(i, j)] = c
        r_coalg = CoalgebraObject(f, dr, comul, _parse_vec(f, env.get("R_counit"), dr, "R_counit"))
        one = _parse_vec(f, env.get("one"), dr, "one")
        mulm = _matrix_from_triples(f, dr, dr * dr, env.get("m", []))
        xi = _matrix_from_triples(f, dh, dr * dr, env.get("xi", []))
        return DualYDQuadruple(h, r_coalg, yd, one, mulm, xi)
    raise FileFormatError(f"unknown quadruple side {side!r}")


def report_to_json(report) -> dict:
    """SplitReport -> deterministic JSON document."""
    f = report.bialgebra.field
    doc = {
        "side": report.side,
        "level": report.level,
        "field": field_to_json(f),
        "dim": report.bialgebra.dim,
        "hopf": object_to_json(report.hopf),
        "pi": _sparse_matrix_triples(f, report.pi),
        "sigma": _sparse_matrix_triples(f, report.sigma),
        "iso": _sparse_matrix_triples(f, report.iso),
        "quadruple": quadruple_to_json(report.quadruple)["quadruple"],
        "checks": {name: ok for name, ok, _ in report.checks.checks},
    }
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e}")


def read_file(path: str):
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e}")


def write_file(path: str, doc):
    with open(path, "w") as fh:
        fh.write(dumps(doc))
