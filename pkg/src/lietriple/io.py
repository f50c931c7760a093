"""JSON file formats with string scalars.

Every scalar is written as a string ("p/q", "p", or a residue for prime
fields) so that no value ever passes through a float.  ``dumps`` is the
canonical form: sorted keys, two-space indent, trailing newline, entries
in index order and zeros omitted.
"""

from __future__ import annotations

import json
from itertools import product
from pathlib import Path
from typing import Any

import numpy as np

from .cochains import Cochain, arity
from .errors import (BadScalarError, DimensionError, IndexOutOfRangeError, InputError, ParseError)
from .extension import AbelianExtension
from .fields import QQ, Field, field_from_json
from .linalg import Matrix, zeros
from .lts import LieTripleSystem
from .representation import Representation

OPERATOR_ROLES = ("operator", "witness", "section", "inclusion", "projection", "matrix")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}, line {exc.lineno} column {exc.colno}") from None


def load(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, str(path))


def save(path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# ---------------------------------------------------------------------------
# field helpers


def parse_scalar(field: Field, value, context: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise BadScalarError(f"scalars must be strings, got {json.dumps(value)}", context)
    try:
        return field.parse(str(value))
    except BadScalarError as exc:
        raise BadScalarError(str(exc), context) from None
    except (ZeroDivisionError, ValueError) as exc:
        raise BadScalarError(f"cannot parse scalar {value!r}: {exc}", context) from None


def format_scalar(field: Field, value) -> str:
    return field.format(value)


def _require(obj, key: str, context: str):
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", context)
    if key not in obj:
        raise ParseError(f"missing field {key!r}", context)
    return obj[key]


def _nat(value, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"expected a non-negative integer, got {json.dumps(value)}", context)
    return value


def _index(value, bound: int, context: str) -> int:
    i = _nat(value, context)
    if i >= bound:
        raise IndexOutOfRangeError(f"index {i} out of range for dimension {bound}", context)
    return i


def _list(value, context: str) -> list:
    if not isinstance(value, list):
        raise ParseError("expected a list", context)
    return value


def _field(obj, context: str) -> Field:
    spec = obj.get("field", "Q") if isinstance(obj, dict) else "Q"
    try:
        return field_from_json(spec)
    except InputError as exc:
        raise ParseError(str(exc), f"{context}.field") from None


def parse_matrix(value, rows: int, cols: int, field: Field, context: str) -> Matrix:
    data = _list(value, context)
    if len(data) != rows:
        raise DimensionError(f"{context}: expected {rows} rows, got {len(data)}")
    arr = zeros((rows, cols), field)
    for r, row in enumerate(data):
        row = _list(row, f"{context}[{r}]")
        if len(row) != cols:
            raise DimensionError(f"{context}[{r}]: expected {cols} entries, got {len(row)}")
        for c, v in enumerate(row):
            arr[r, c] = parse_scalar(field, v, f"{context}[{r}][{c}]")
    return Matrix.from_array(arr, field)


def matrix_to_json(M: Matrix | np.ndarray, field: Field) -> list[list[str]]:
    arr = M.array if isinstance(M, Matrix) else M
    return [[field.format(v) for v in row] for row in arr]


# ---------------------------------------------------------------------------
# Lie triple systems


def lts_from_json(obj, *, validate: bool = True, source: str = "lts") -> LieTripleSystem:
    f = _field(obj, source)
    n = _nat(_require(obj, "dim", source), f"{source}.dim")
    names = obj.get("basis")
    if names is not None:
        names = _list(names, f"{source}.basis")
        if len(names) != n or not all(isinstance(s, str) for s in names):
            raise ParseError(f"basis must list {n} names", f"{source}.basis")
    c = zeros((n,) * 4, f)
    for b, entry in enumerate(_list(_require(obj, "bracket", source), f"{source}.bracket")):
        ctx = f"{source}.bracket[{b}]"
        i, j, k = (_index(_require(entry, key, ctx), n, f"{ctx}.{key}") for key in "ijk")
        for t, term in enumerate(_list(_require(entry, "value", ctx), f"{ctx}.value")):
            tctx = f"{ctx}.value[{t}]"
            if not isinstance(term, list) or len(term) != 2:
                raise ParseError("expected a pair [l, scalar]", tctx)
            l = _index(term[0], n, tctx)
            c[i, j, k, l] = c[i, j, k, l] + parse_scalar(f, term[1], tctx)
    return LieTripleSystem(c, f, names=names, validate=validate)


def lts_to_json(T: LieTripleSystem) -> dict:
    f, n = T.field, T.dim
    bracket = []
    for i, j, k in product(range(n), repeat=3):
        terms = [[l, f.format(T.c[i, j, k, l])] for l in range(n) if T.c[i, j, k, l]]
        if terms:
            bracket.append({"i": i, "j": j, "k": k, "value": terms})
    return {"field": f.to_json(), "dim": n, "basis": list(T.names), "bracket": bracket}


# ---------------------------------------------------------------------------
# representations


def rep_from_json(obj, T: LieTripleSystem, source: str = "rep") -> Representation:
    f, n = T.field, T.dim
    m = _nat(_require(obj, "dimV", source), f"{source}.dimV")
    theta = zeros((n, n, m, m), f)
    seen = set()
    for b, entry in enumerate(_list(_require(obj, "theta", source), f"{source}.theta")):
        ctx = f"{source}.theta[{b}]"
        i, j = (_index(_require(entry, key, ctx), n, f"{ctx}.{key}") for key in "ij")
        if (i, j) in seen:
            raise ParseError(f"duplicate block ({i}, {j})", ctx)
        seen.add((i, j))
        theta[i, j] = parse_matrix(_require(entry, "matrix", ctx), m, m, f, f"{ctx}.matrix").array
    return Representation(theta, f, dim_g=n, dim_v=m)


def rep_to_json(rep: Representation) -> dict:
    f = rep.field
    blocks = []
    for i, j in product(range(rep.dim_g), repeat=2):
        block = rep.theta[i, j]
        if any(block.flat):
            blocks.append({"i": i, "j": j, "matrix": matrix_to_json(block, f)})
    return {"dimV": rep.dim_v, "theta": blocks}


# ---------------------------------------------------------------------------
# cochains


def cochain_from_json(obj, field: Field, dim_g: int | None = None, dim_v: int | None = None,
                      source: str = "cochain") -> Cochain:
    level = _nat(_require(obj, "level", source), f"{source}.level")
    n = _nat(_require(obj, "dim", source), f"{source}.dim")
    m = _nat(_require(obj, "dimV", source), f"{source}.dimV")
    if dim_g is not None and n != dim_g:
        raise DimensionError(f"{source}: cochain on dimension {n}, system has dimension {dim_g}")
    if dim_v is not None and m != dim_v:
        raise DimensionError(f"{source}: cochain with values in dimension {m}, module has dimension {dim_v}")
    r = arity(level)
    out = Cochain.zero(level, n, m, field)
    tensor = out.tensor.copy()
    for e, entry in enumerate(_list(_require(obj, "entries", source), f"{source}.entries")):
        ctx = f"{source}.entries[{e}]"
        index = _list(_require(entry, "index", ctx), f"{ctx}.index")
        if len(index) != r:
            raise ParseError(f"a level-{level} cochain takes {r} arguments, got {len(index)}", f"{ctx}.index")
        idx = tuple(_index(x, n, f"{ctx}.index") for x in index)
        a = _index(_require(entry, "component", ctx), m, f"{ctx}.component")
        tensor[idx + (a,)] = tensor[idx + (a,)] + parse_scalar(field, _require(entry, "value", ctx), f"{ctx}.value")
    return Cochain(level, tensor, field, dim_g=n, dim_v=m)


def cochain_to_json(omega: Cochain) -> dict:
    f = omega.field
    shape = omega.tensor.shape
    entries = []
    for flat, value in sorted(omega.sparse().items()):
        pos = tuple(int(p) for p in np.unravel_index(flat, shape))
        entries.append({"index": list(pos[:-1]), "component": pos[-1], "value": f.format(value)})
    return {"level": omega.level, "dim": omega.dim_g, "dimV": omega.dim_v, "entries": entries}


# ---------------------------------------------------------------------------
# operators and other matrices


def operator_from_json(obj, field: Field, shape: tuple[int, int] | None = None,
                       source: str = "operator") -> tuple[str, Matrix]:
    role = obj.get("role", "operator") if isinstance(obj, dict) else None
    if role not in OPERATOR_ROLES:
        raise ParseError(f"unknown role {role!r}", f"{source}.role")
    rows = _nat(_require(obj, "rows", source), f"{source}.rows")
    cols = _nat(_require(obj, "cols", source), f"{source}.cols")
    if shape is not None and (rows, cols) != tuple(shape):
        raise DimensionError(f"{source}: expected a {shape[0]}x{shape[1]} matrix, got {rows}x{cols}")
    return role, parse_matrix(_require(obj, "matrix", source), rows, cols, field, f"{source}.matrix")


def operator_to_json(M: Matrix, role: str = "operator") -> dict:
    return {"role": role, "rows": M.rows, "cols": M.cols, "matrix": matrix_to_json(M, M.field)}


# ---------------------------------------------------------------------------
# extensions


def extension_from_json(obj, source: str = "extension") -> AbelianExtension:
    total = lts_from_json(_require(obj, "lts", source), source=f"{source}.lts")
    f, N = total.field, total.dim
    _, inj = operator_from_json(_require(obj, "inj", source), f, source=f"{source}.inj")
    _, proj = operator_from_json(_require(obj, "proj", source), f, source=f"{source}.proj")
    if inj.rows != N or proj.cols != N:
        raise DimensionError(f"{source}: maps do not match the total dimension {N}")
    return AbelianExtension(total, inj, proj)


def extension_to_json(E: AbelianExtension) -> dict:
    return {"lts": lts_to_json(E.total), "inj": operator_to_json(E.inj, "inclusion"),
            "proj": operator_to_json(E.proj, "projection")}


def field_name(field: Field) -> str:
    return "Q" if field is QQ else f"F{field.characteristic}"
