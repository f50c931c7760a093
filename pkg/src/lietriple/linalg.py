"""Exact dense and sparse linear algebra over QQ and GF(p).

Every routine funnels through :class:`IncrementalEchelon`, which keeps its
rows in fully reduced echelon form.  Reduced row-echelon form is unique, so
pivot columns and the free-variable kernel basis are reproducible no matter
in which order rows arrive.  Internally rationals are converted to
``gmpy2.mpq`` and prime-field residues to plain ints; the public surface
only ever hands out field elements.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, FieldMismatchError, NotASubspaceError
from .fields import QQ, Field, GF, GFElement


def infer_field(values: Iterable, field: Field | None = None) -> Field:
    """Field shared by ``values``; ints are literals valid in every field."""
    moduli = set()
    rational = False
    for v in values:
        if isinstance(v, GFElement):
            moduli.add(v.p)
        elif isinstance(v, Fraction):
            if v.denominator != 1:
                rational = True
        elif isinstance(v, Integral):
            continue
        elif isinstance(v, str):
            continue
        else:
            raise FieldMismatchError(f"{v!r} is not an exact scalar")
    if len(moduli) > 1 or (moduli and rational):
        raise FieldMismatchError("entries from different fields")
    found = GF(moduli.pop()) if moduli else None
    if field is None:
        return found or QQ
    if found is not None and found is not field:
        raise FieldMismatchError(f"entries live in {found!r}, expected {field!r}")
    if rational and field is not QQ and found is None:
        # rationals are only coerced into GF(p) when the caller asks for it
        return field
    return field


def as_array(entries, field: Field, shape=None) -> np.ndarray:
    """Object array of field elements (read-only copy)."""
    arr = np.array(entries, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = field(v)
    out.flags.writeable = False
    return out


def zeros(shape, field: Field) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(field.zero)
    return out


def identity_array(n: int, field: Field) -> np.ndarray:
    out = zeros((n, n), field)
    for i in range(n):
        out[i, i] = field.one
    return out


class Matrix:
    """Immutable dense matrix of exact scalars."""

    __slots__ = ("field", "array")

    def __init__(self, entries, field: Field | None = None, shape=None):
        arr = np.array(entries, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            if arr.size == 0 and shape is None:
                arr = arr.reshape(0, 0)
            else:
                raise DimensionError(f"matrix entries must be two-dimensional, got shape {arr.shape}")
        self.field = infer_field(arr.flat, field)
        self.array = as_array(arr, self.field)

    @classmethod
    def from_array(cls, arr: np.ndarray, field: Field) -> "Matrix":
        m = cls.__new__(cls)
        m.field = field
        a = np.array(arr, dtype=object)
        a.flags.writeable = False
        m.array = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        return cls.from_array(zeros((rows, cols), field), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls.from_array(identity_array(n, field), field)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    @property
    def T(self) -> "Matrix":
        return Matrix.from_array(self.array.T, self.field)

    def __getitem__(self, idx):
        return self.array[idx]

    def tolist(self) -> list[list]:
        return self.array.tolist()

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            _check_same_field(self.field, other.field)
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix.from_array(_matmul(self.array, other.array, self.field), self.field)
        vec = as_array(list(other), self.field)
        if vec.shape != (self.cols,):
            raise DimensionError(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(_matmul(self.array, vec.reshape(-1, 1), self.field)[:, 0])

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix.from_array(self.array + other.array, self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix.from_array(self.array - other.array, self.field)

    def __neg__(self) -> "Matrix":
        return Matrix.from_array(-self.array, self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field is other.field and self.shape == other.shape
                and all(a == b for a, b in zip(self.array.flat, other.array.flat)))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.array.flat)

    def __repr__(self):
        body = [[self.field.format(v) for v in row] for row in self.array]
        return f"Matrix({body}, field={self.field!r})"


def _check_same_field(a: Field, b: Field):
    if a is not b:
        raise FieldMismatchError(f"{a!r} vs {b!r}")


def _matmul(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    if a.shape[1] == 0:
        return zeros((a.shape[0], b.shape[1]), field)
    return a.dot(b)


def _as_matrix(M) -> Matrix:
    return M if isinstance(M, Matrix) else Matrix(M)


# ---------------------------------------------------------------------------
# elimination engine


class IncrementalEchelon:
    """Row space of a growing set of vectors, kept in reduced echelon form.

    Rows are sparse ``{column: value}`` dicts in the field's fast
    representation.  ``add`` returns whether the row enlarged the span.
    """

    def __init__(self, ncols: int, field: Field):
        self.ncols = ncols
        self.field = field
        self.p = field.characteristic
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        p = self.p
        r = dict(row)
        # pivot rows vanish on every other pivot column, so a single pass suffices
        for c in [c for c in r if c in self.pivots]:
            f = r.pop(c)
            for j, v in self.pivots[c].items():
                if j == c:
                    continue
                nv = r.get(j, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
        return r

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        p = self.p
        lead = min(r)
        if p:
            inv = pow(r[lead], -1, p)
            r = {j: (v * inv) % p for j, v in r.items()}
        else:
            inv = 1 / r[lead]
            r = {j: v * inv for j, v in r.items()}
        for prow in self.pivots.values():
            f = prow.get(lead)
            if not f:
                continue
            del prow[lead]
            for j, v in r.items():
                if j == lead:
                    continue
                nv = prow.get(j, 0) - f * v
                if p:
                    nv %= p
                if nv:
                    prow[j] = nv
                else:
                    prow.pop(j, None)
        self.pivots[lead] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def is_full(self) -> bool:
        return len(self.pivots) == self.ncols

    def pivot_columns(self) -> list[int]:
        return sorted(self.pivots)

    def kernel(self) -> list[dict]:
        """Free-variable basis of the right null space of the accumulated rows."""
        one = 1 if self.p else QQ.to_fast(QQ.one)
        out = []
        for free in range(self.ncols):
            if free in self.pivots:
                continue
            v = {free: one}
            for piv, row in self.pivots.items():
                f = row.get(free)
                if f:
                    v[piv] = (-f) % self.p if self.p else -f
            out.append(v)
        return out


def sparse_from_vector(vec: Sequence, field: Field) -> dict:
    return {j: field.to_fast(field(v)) for j, v in enumerate(vec) if v}


def dense_from_sparse(row: dict, n: int, field: Field) -> tuple:
    out = [field.zero] * n
    for j, v in row.items():
        out[j] = field.from_fast(v)
    return tuple(out)


def _dense_rows(M: Matrix) -> list[dict]:
    return [sparse_from_vector(row, M.field) for row in M.array]


def rref(M) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form of ``M`` and its pivot columns."""
    M = _as_matrix(M)
    ech = IncrementalEchelon(M.cols, M.field)
    for row in _dense_rows(M):
        ech.add(row)
    pivots = ech.pivot_columns()
    out = zeros(M.shape, M.field)
    for i, piv in enumerate(pivots):
        out[i, :] = dense_from_sparse(ech.pivots[piv], M.cols, M.field)
    return Matrix.from_array(out, M.field), pivots


def rank(M) -> int:
    M = _as_matrix(M)
    ech = IncrementalEchelon(M.cols, M.field)
    for row in _dense_rows(M):
        ech.add(row)
        if ech.is_full():
            break
    return ech.rank


def kernel_basis(M) -> list[tuple]:
    M = _as_matrix(M)
    return [dense_from_sparse(v, M.cols, M.field) for v in sparse_kernel(_dense_rows(M), M.cols, M.field)]


def sparse_kernel(rows: Iterable[dict], ncols: int, field: Field) -> list[dict]:
    """Kernel of a matrix given as sparse fast-representation rows."""
    ech = IncrementalEchelon(ncols, field)
    for row in rows:
        ech.add(row)
        if ech.is_full():
            return []
    return ech.kernel()


def solve(M, b: Sequence):
    """A particular solution of ``M x = b`` with free variables zero, or None."""
    M = _as_matrix(M)
    if len(b) != M.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {M.rows} rows")
    bvec = as_array(list(b), M.field) if len(b) else np.empty(0, dtype=object)
    rows = []
    for row, rhs in zip(_dense_rows(M), bvec):
        if rhs:
            row[M.cols] = M.field.to_fast(rhs)
        rows.append(row)
    return sparse_solve(rows, M.cols, M.field)


def sparse_solve(rows: Iterable[dict], ncols: int, field: Field):
    """Solve with the right-hand side stored in column ``ncols`` of each row."""
    ech = IncrementalEchelon(ncols + 1, field)
    for row in rows:
        ech.add(row)
    if ncols in ech.pivots:
        return None
    x = [field.zero] * ncols
    for piv, row in ech.pivots.items():
        x[piv] = field.from_fast(row.get(ncols, 0))
    return tuple(x)


def _vectors_field(vectors) -> Field:
    return infer_field(v for vec in vectors for v in vec)


def quotient_dim(Z: Sequence[Sequence], B: Sequence[Sequence], field: Field | None = None) -> int:
    """dim span(Z) - dim span(B), after checking span(B) is inside span(Z)."""
    field = field or _vectors_field(list(Z) + list(B))
    lengths = {len(v) for v in list(Z) + list(B)}
    if len(lengths) > 1:
        raise DimensionError(f"vectors of different lengths {sorted(lengths)}")
    ncols = lengths.pop() if lengths else 0
    ez = IncrementalEchelon(ncols, field)
    for z in Z:
        ez.add(sparse_from_vector(z, field))
    eb = IncrementalEchelon(ncols, field)
    for b in B:
        row = sparse_from_vector(b, field)
        if not ez.contains(row):
            raise NotASubspaceError("span(B) is not contained in span(Z)")
        eb.add(row)
    return ez.rank - eb.rank


# ---------------------------------------------------------------------------
# sparse matrices for coboundary operators


class SparseMatrix:
    """Row-sparse matrix; rows are dicts in the field's fast representation."""

    __slots__ = ("field", "shape", "_rows")

    def __init__(self, rows: list[dict], shape: tuple[int, int], field: Field):
        self.field = field
        self.shape = (int(shape[0]), int(shape[1]))
        self._rows = rows
        if len(rows) != self.shape[0]:
            raise DimensionError(f"{len(rows)} rows given for shape {self.shape}")

    @classmethod
    def from_dense(cls, M) -> "SparseMatrix":
        M = _as_matrix(M)
        return cls(_dense_rows(M), M.shape, M.field)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def row(self, i: int) -> dict:
        """Row ``i`` as ``{column: field element}``."""
        return {j: self.field.from_fast(v) for j, v in self._rows[i].items()}

    def fast_rows(self) -> list[dict]:
        return self._rows

    def to_dense(self) -> Matrix:
        out = zeros(self.shape, self.field)
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                out[i, j] = self.field.from_fast(v)
        return Matrix.from_array(out, self.field)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def __neg__(self) -> "SparseMatrix":
        return self.scaled(-1)

    def scaled(self, s) -> "SparseMatrix":
        f = self.field
        s = f.to_fast(f(s))
        p = f.characteristic
        rows = []
        for row in self._rows:
            new = {}
            for j, v in row.items():
                nv = v * s
                if p:
                    nv %= p
                if nv:
                    new[j] = nv
            rows.append(new)
        return SparseMatrix(rows, self.shape, f)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.field is other.field and self.shape == other.shape
                and all(a == b for a, b in zip(self._rows, other._rows)))

    __hash__ = None

    def transpose(self) -> "SparseMatrix":
        cols: list[dict] = [{} for _ in range(self.shape[1])]
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                cols[j][i] = v
        return SparseMatrix(cols, (self.shape[1], self.shape[0]), self.field)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            _check_same_field(self.field, other.field)
            if self.shape[1] != other.shape[0]:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            p = self.field.characteristic
            rows = []
            for row in self._rows:
                acc: dict = {}
                for k, a in row.items():
                    for j, b in other._rows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                if p:
                    acc = {j: v % p for j, v in acc.items() if v % p}
                else:
                    acc = {j: v for j, v in acc.items() if v}
                rows.append(acc)
            return SparseMatrix(rows, (self.shape[0], other.shape[1]), self.field)
        vec = list(other)
        if len(vec) != self.shape[1]:
            raise DimensionError(f"vector of length {len(vec)} for shape {self.shape}")
        return dense_from_sparse(self.apply_sparse(sparse_from_vector(vec, self.field)),
                                 self.shape[0], self.field)

    def apply_sparse(self, vec: dict) -> dict:
        """Image of a sparse fast-representation vector, as a sparse vector."""
        p = self.field.characteristic
        out = {}
        for i, row in enumerate(self._rows):
            s = 0
            for j, v in row.items():
                x = vec.get(j)
                if x:
                    s += v * x
            if p:
                s %= p
            if s:
                out[i] = s
        return out

    def __repr__(self):
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz}, field={self.field!r})"
