"""Cochains C^(2k+1)(g, V), coboundary operators, and cohomology.

A level-k cochain is stored as a full tensor of shape ``(n,) * (2k+1) + (m,)``
holding ``omega(e_i1, ..., e_i(2k+1))``; its flat (row-major) index is the
coordinate used by every operator matrix.  The constrained subspace, where
``omega(..., x, x, y) = 0`` and the last three slots satisfy the cyclic
identity, is computed rather than baked into the storage.

Three independent evaluations of the coboundary exist on purpose:

* :func:`yamaguti_delta_matrix` assembles the triple-system formula row by row;
* :func:`loday_delta_matrix` runs the Leibniz-algebra formula through the actual
  Hom(g, V) bracket and circle-product code on symbolic linear forms;
* :func:`is_3_cocycle` / :func:`is_5_cocycle` evaluate the cocycle identities
  directly with tensor contractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DimensionError, FieldMismatchError, NotASubspaceError, UnsupportedLevelError
from .fields import Field
from .fundamental import circle_array
from .linalg import (IncrementalEchelon, Matrix, SparseMatrix, as_array, dense_from_sparse,
                     sparse_from_vector, sparse_kernel, sparse_solve, zeros)
from .lts import LieTripleSystem, nonzero_indices, nonzero_mask
from .parallel import chunked, get_threads, ordered_map
from .representation import Representation, hom_bracket_L_array, hom_bracket_R_array

MAX_LEVEL = 2


def arity(level: int) -> int:
    return 2 * level + 1


def _check_level(level: int, top: int = MAX_LEVEL) -> None:
    if not isinstance(level, int) or level < 0 or level > top:
        raise UnsupportedLevelError(f"level {level} is not supported (0..{top})")


def tensor_shape(n: int, m: int, level: int) -> tuple[int, ...]:
    return (n,) * arity(level) + (m,)


def space_dim(n: int, m: int, level: int) -> int:
    return n ** arity(level) * m


class Cochain:
    """A full-tensor cochain of a given level (degree 2*level + 1)."""

    __slots__ = ("level", "dim_g", "dim_v", "field", "tensor")

    def __init__(self, level: int, tensor, field: Field, *, dim_g: int | None = None, dim_v: int | None = None):
        arr = np.array(tensor, dtype=object)
        r = arity(level)
        if dim_g is None:
            dim_g = arr.shape[0] if arr.ndim else 0
        if dim_v is None:
            dim_v = arr.shape[-1] if arr.ndim else 0
        shape = tensor_shape(dim_g, dim_v, level)
        if arr.size == 0 and int(np.prod(shape)) == 0:
            arr = np.empty(shape, dtype=object)
        if arr.shape != shape:
            raise DimensionError(f"level-{level} cochain needs shape {shape}, got {arr.shape}")
        self.level = level
        self.dim_g = dim_g
        self.dim_v = dim_v
        self.field = field
        self.tensor = as_array(arr, field)
        assert len(shape) == r + 1

    @classmethod
    def zero(cls, level: int, n: int, m: int, field: Field) -> "Cochain":
        return cls(level, zeros(tensor_shape(n, m, level), field), field, dim_g=n, dim_v=m)

    @classmethod
    def from_flat(cls, level: int, vec, n: int, m: int, field: Field) -> "Cochain":
        arr = np.array(list(vec), dtype=object)
        if arr.shape != (space_dim(n, m, level),):
            raise DimensionError(f"flat level-{level} cochain needs {space_dim(n, m, level)} entries, got {arr.shape}")
        return cls(level, arr.reshape(tensor_shape(n, m, level)), field, dim_g=n, dim_v=m)

    @classmethod
    def from_sparse(cls, level: int, vec: dict, n: int, m: int, field: Field) -> "Cochain":
        return cls.from_flat(level, dense_from_sparse(vec, space_dim(n, m, level), field), n, m, field)

    @classmethod
    def from_hom(cls, phi, field: Field | None = None) -> "Cochain":
        """Level-0 cochain of a map g -> V given as an m x n matrix."""
        mat = phi if isinstance(phi, Matrix) else Matrix(phi, field)
        return cls(0, mat.array.T, mat.field, dim_g=mat.cols, dim_v=mat.rows)

    @classmethod
    def from_constants(cls, T: LieTripleSystem) -> "Cochain":
        """The bracket of T itself, as an adjoint-valued level-1 cochain."""
        return cls(1, T.c, T.field, dim_g=T.dim, dim_v=T.dim)

    def to_hom(self) -> Matrix:
        if self.level != 0:
            raise UnsupportedLevelError("only level-0 cochains are maps g -> V")
        return Matrix.from_array(self.tensor.T, self.field)

    def flat(self) -> tuple:
        return tuple(self.tensor.reshape(-1))

    def sparse(self) -> dict:
        return sparse_from_vector(self.tensor.reshape(-1), self.field)

    def _same(self, other: "Cochain"):
        if not isinstance(other, Cochain):
            raise TypeError(f"expected a Cochain, got {type(other).__name__}")
        if self.field is not other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
        if (self.level, self.dim_g, self.dim_v) != (other.level, other.dim_g, other.dim_v):
            raise DimensionError("cochains of different level or dimensions")

    def _new(self, arr) -> "Cochain":
        return Cochain(self.level, arr, self.field, dim_g=self.dim_g, dim_v=self.dim_v)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return self._new(self.tensor + other.tensor)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return self._new(self.tensor - other.tensor)

    def __neg__(self) -> "Cochain":
        return self._new(-self.tensor)

    def scaled(self, s) -> "Cochain":
        return self._new(self.tensor * self.field(s))

    def is_zero(self) -> bool:
        return not any(self.tensor.flat)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.field is other.field and self.level == other.level
                and self.tensor.shape == other.tensor.shape
                and all(a == b for a, b in zip(self.tensor.flat, other.tensor.flat)))

    __hash__ = None

    def __repr__(self):
        nnz = sum(1 for v in self.tensor.flat if v)
        return f"Cochain(level={self.level}, dim_g={self.dim_g}, dim_v={self.dim_v}, nnz={nnz})"


# ---------------------------------------------------------------------------
# constrained subspace


def constraint_violations(omega: Cochain) -> list[tuple[str, tuple[int, ...]]]:
    """Basis tuples (including the component) breaking the two cochain constraints."""
    if omega.level == 0:
        return []
    W = omega.tensor
    r = arity(omega.level)
    perm = list(range(r + 1))
    perm[r - 3], perm[r - 2] = perm[r - 2], perm[r - 3]
    anti = W + W.transpose(perm)
    out = [("antisymmetry", t) for t in nonzero_indices(anti, r + 1) if t[r - 3] <= t[r - 2]]
    rot1 = list(range(r - 3)) + [r - 2, r - 1, r - 3, r]   # (b, c, a)
    rot2 = list(range(r - 3)) + [r - 1, r - 3, r - 2, r]   # (c, a, b)
    cyc = W + _gather(W, rot1) + _gather(W, rot2)
    out += [("cyclic", t) for t in nonzero_indices(cyc, r + 1)
            if t[r - 3:r] == min(t[r - 3:r], t[r - 2:r] + t[r - 3:r - 2], t[r - 1:r] + t[r - 3:r - 1])]
    return out


def _gather(W: np.ndarray, source_axes: list[int]) -> np.ndarray:
    """Array V with V[t] = W[t permuted]: axis k of V reads index t[source_axes[k]]."""
    inv = np.argsort(source_axes)
    return W.transpose(inv)


def is_constrained(omega: Cochain) -> bool:
    return not constraint_violations(omega)


def _local_constraint_rows(n: int, field: Field) -> list[dict]:
    """Constraints on the last three slots, as rows over n^3 coordinates."""
    one = field.to_fast(field.one)
    p = field.characteristic

    def idx(a, b, c):
        return (a * n + b) * n + c

    def add(row, k, v):
        nv = row.get(k, 0) + v
        if p:
            nv %= p
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)

    rows = []
    for a, b, c in product(range(n), repeat=3):
        if a <= b:
            row: dict = {}
            add(row, idx(a, b, c), one)
            add(row, idx(b, a, c), one)
            rows.append(row)
    for a, b, c in product(range(n), repeat=3):
        row = {}
        for t in ((a, b, c), (b, c, a), (c, a, b)):
            add(row, idx(*t), one)
        rows.append(row)
    return [r for r in rows if r]


def constraint_matrix(n: int, m: int, level: int, field: Field) -> SparseMatrix:
    """All constraint equations stacked, as a matrix on the full tensor space."""
    _check_level(level, MAX_LEVEL + 1)
    total = space_dim(n, m, level)
    if level == 0:
        return SparseMatrix([], (0, total), field)
    r = arity(level)
    local = _local_constraint_rows(n, field)
    rows = []
    for prefix in product(range(n), repeat=r - 3):
        base = 0
        for t in prefix:
            base = base * n + t
        for a in range(m):
            for lrow in local:
                rows.append({(base * n ** 3 + k) * m + a: v for k, v in lrow.items()})
    return SparseMatrix(rows, (len(rows), total), field)


def constrained_basis_sparse(n: int, m: int, level: int, field: Field) -> list[dict]:
    """Free-variable kernel basis of :func:`constraint_matrix`, in fast sparse form.

    The constraints split into independent blocks (one per prefix and
    component), so the global reduced-echelon kernel is assembled from the
    kernel of one 3-slot block; vectors are ordered by their free column.
    """
    _check_level(level, MAX_LEVEL + 1)
    total = space_dim(n, m, level)
    one = field.to_fast(field.one)
    if level == 0:
        return [{k: one} for k in range(total)]
    r = arity(level)
    ech = IncrementalEchelon(n ** 3, field)
    for row in _local_constraint_rows(n, field):
        ech.add(row)
    local = ech.kernel()
    free = [k for k in range(n ** 3) if k not in ech.pivots]
    out = []
    for prefix in product(range(n), repeat=r - 3):
        base = 0
        for t in prefix:
            base = base * n + t
        for f, vec in zip(free, local):
            for a in range(m):
                out.append(((base * n ** 3 + f) * m + a,
                            {(base * n ** 3 + k) * m + a: v for k, v in vec.items()}))
    out.sort(key=lambda item: item[0])
    return [v for _, v in out]


def cochain_space_basis(T: LieTripleSystem, rep: Representation, level: int) -> list[Cochain]:
    _check_level(level)
    rep.check_compatible(T)
    n, m, f = T.dim, rep.dim_v, T.field
    return [Cochain.from_sparse(level, v, n, m, f) for v in constrained_basis_sparse(n, m, level, f)]


def cochain_space_dim(n: int, m: int, level: int, field: Field) -> int:
    return len(constrained_basis_sparse(n, m, level, field))


# ---------------------------------------------------------------------------
# operator caches

_CACHE: dict = {}
_CACHE_LIMIT = 64


def _cached(kind: str, T: LieTripleSystem, rep: Representation, level: int, build):
    key = (kind, id(T), id(rep), level)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is T and hit[1] is rep:
        return hit[2]
    value = build()
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.pop(next(iter(_CACHE)))
    _CACHE[key] = (T, rep, value)
    return value


def clear_cache() -> None:
    _CACHE.clear()


# ---------------------------------------------------------------------------
# Yamaguti coboundary, assembled row by row


def _fast_tables(T: LieTripleSystem, rep: Representation):
    f = T.field
    n, m = T.dim, rep.dim_v
    fast = f.to_fast

    br = [[[[(l, fast(T.c[i, j, k, l])) for l in range(n) if T.c[i, j, k, l]]
            for k in range(n)] for j in range(n)] for i in range(n)]

    def mats(arr):
        return [[[[(b, fast(arr[i, j, a, b])) for b in range(m) if arr[i, j, a, b]]
                  for a in range(m)] for j in range(n)] for i in range(n)]

    return br, mats(rep.theta), mats(rep.D)


def yamaguti_delta_matrix(T: LieTripleSystem, rep: Representation, level: int) -> SparseMatrix:
    """Matrix of delta: full level-k tensors -> full level-(k+1) tensors.

    Level 3 (degree 7) is accepted as a codomain only, i.e. ``level <= 2``.
    """
    _check_level(level)
    rep.check_compatible(T)
    return _cached("yamaguti", T, rep, level, lambda: _assemble_yamaguti(T, rep, level))


def _assemble_yamaguti(T: LieTripleSystem, rep: Representation, level: int) -> SparseMatrix:
    f = T.field
    n, m = T.dim, rep.dim_v
    p = f.characteristic
    N = level + 1                      # the formula's n: domain degree 2N-1
    R = 2 * N + 1                      # codomain arity
    br, th, D = _fast_tables(T, rep)

    def flat(t, a):
        k = 0
        for x in t:
            k = k * n + x
        return k * m + a

    def add(row, k, v):
        nv = row.get(k, 0) + v
        if p:
            nv %= p
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)

    def rows_for(tuples):
        out = []
        for x in tuples:
            for a in range(m):
                row: dict = {}
                # theta(x_2N, x_2N+1) omega(x_1..x_2N-1)
                head = x[:R - 2]
                for b, v in th[x[R - 2]][x[R - 1]][a]:
                    add(row, flat(head, b), v)
                # -theta(x_2N-1, x_2N+1) omega(x_1..x_2N-2, x_2N)
                head = x[:R - 3] + (x[R - 2],)
                for b, v in th[x[R - 3]][x[R - 1]][a]:
                    add(row, flat(head, b), -v)
                for k in range(1, N + 1):
                    i, j = 2 * k - 2, 2 * k - 1
                    rest = x[:i] + x[j + 1:]
                    sign = 1 if (N + k) % 2 == 0 else -1
                    for b, v in D[x[i]][x[j]][a]:
                        add(row, flat(rest, b), sign * v)
                    # replace x_j' (j' > 2k) by [x_2k-1, x_2k, x_j'] after the omission
                    for jj in range(j + 1, R):
                        pos = jj - 2
                        for l, v in br[x[i]][x[j]][x[jj]]:
                            t = rest[:pos] + (l,) + rest[pos + 1:]
                            add(row, flat(t, a), -sign * v)
                out.append(row)
        return out

    tuples = list(product(range(n), repeat=R))
    parts = ordered_map(rows_for, chunked(tuples, max(1, get_threads() * 4)))
    rows = [r for part in parts for r in part]
    shape = (space_dim(n, m, level + 1), space_dim(n, m, level))
    return SparseMatrix(rows, shape, f)


def yamaguti_delta(T: LieTripleSystem, rep: Representation, omega: Cochain) -> Cochain:
    _check_level(omega.level)
    _check_cochain(T, rep, omega)
    M = yamaguti_delta_matrix(T, rep, omega.level)
    return Cochain.from_sparse(omega.level + 1, M.apply_sparse(omega.sparse()), T.dim, rep.dim_v, T.field)


def _check_cochain(T, rep, omega: Cochain) -> None:
    rep.check_compatible(T)
    if omega.field is not T.field:
        raise FieldMismatchError(f"cochain over {omega.field!r}, system over {T.field!r}")
    if omega.dim_g != T.dim or omega.dim_v != rep.dim_v:
        raise DimensionError(
            f"cochain for dimensions ({omega.dim_g}, {omega.dim_v}), expected ({T.dim}, {rep.dim_v})")


# ---------------------------------------------------------------------------
# Loday-Pirashvili coboundary through the Hom(g, V) module structure


class LinearForm:
    """Formal linear combination of coordinates ``{index: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @staticmethod
    def _coerce(other):
        if isinstance(other, LinearForm):
            return other.terms
        if other == 0:
            return {}
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return LinearForm(out)

    __radd__ = __add__

    def __neg__(self):
        return LinearForm({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-LinearForm(o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, s):
        if isinstance(s, LinearForm):
            return NotImplemented
        if not s:
            return LinearForm()
        return LinearForm({k: v * s for k, v in self.terms.items() if v * s})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)


def loday_delta_matrix(T: LieTripleSystem, rep: Representation, level: int) -> SparseMatrix:
    """Matrix of the Leibniz-algebra coboundary d_k on full tensors.

    A level-k cochain is read as a map from k elements of L to Hom(g, V) via
    ``omega(x^1, ..., x^k)(w) = omega(x^1_1, x^1_2, ..., x^k_2, w)``.
    """
    _check_level(level)
    rep.check_compatible(T)
    return _cached("loday", T, rep, level, lambda: _assemble_loday(T, rep, level))


def _assemble_loday(T: LieTripleSystem, rep: Representation, level: int) -> SparseMatrix:
    f = T.field
    n, m = T.dim, rep.dim_v
    k_in = level
    k_out = level + 1
    size = space_dim(n, m, level)
    generic = np.empty(size, dtype=object)
    for idx in range(size):
        generic[idx] = LinearForm({idx: f.one})
    generic = generic.reshape(tensor_shape(n, m, level))
    NL = n * n

    def unit(a):
        e = zeros(NL, f)
        e[a] = f.one
        return e.reshape(n, n)

    units = [unit(a) for a in range(NL)]

    def omega_at(args):
        """omega(args) as an m x n matrix of linear forms; args are n x n arrays."""
        total = None
        supports = [[(p, q, arr[p, q]) for p in range(n) for q in range(n) if arr[p, q]] for arr in args]
        for combo in product(*supports):
            coeff = f.one
            idx = []
            for p, q, v in combo:
                coeff = coeff * v
                idx += [p, q]
            block = generic[tuple(idx)].T          # (m, n): [a, w]
            term = block * coeff if coeff != f.one else block
            total = term if total is None else total + term
        if total is None:
            out = np.empty((m, n), dtype=object)
            out.fill(LinearForm())
            return out
        return total

    def image(xs: tuple[int, ...]) -> np.ndarray:
        X = [units[a] for a in xs]
        acc = np.empty((m, n), dtype=object)
        acc.fill(LinearForm())
        for k in range(1, k_out):
            rest = X[:k - 1] + X[k:]
            term = hom_bracket_L_array(T, rep, X[k - 1], omega_at(rest))
            acc = acc + term if (k + 1) % 2 == 0 else acc - term
        term = hom_bracket_R_array(T, rep, omega_at(X[:k_out - 1]), X[k_out - 1])
        acc = acc + term if k_out % 2 == 0 else acc - term
        for k in range(1, k_out + 1):
            for l in range(k + 1, k_out + 1):
                new = circle_array(T, X[k - 1], X[l - 1])
                args = X[:k - 1] + X[k:l - 1] + [new] + X[l:]
                term = omega_at(args)
                acc = acc + term if k % 2 == 0 else acc - term
        return acc

    def rows_for(items):
        out = []
        for xs in items:
            acc = image(xs)
            base = 0
            for a in xs:
                base = base * NL + a
            for w in range(n):
                for a in range(m):
                    form = acc[a, w]
                    out.append((base, w, a, {j: f.to_fast(v) for j, v in form.terms.items() if v}))
        return out

    combos = list(product(range(NL), repeat=k_out))
    parts = ordered_map(rows_for, chunked(combos, max(1, get_threads() * 4)))
    rows: list = [None] * space_dim(n, m, level + 1)
    for part in parts:
        for base, w, a, row in part:
            # flat index: L-indices (p*n+q) pairs expand to consecutive g-slots
            rows[(base * n + w) * m + a] = row
    rows = [r if r is not None else {} for r in rows]
    return SparseMatrix(rows, (space_dim(n, m, level + 1), size), f)


def loday_delta(T: LieTripleSystem, rep: Representation, omega: Cochain) -> Cochain:
    _check_level(omega.level)
    _check_cochain(T, rep, omega)
    M = loday_delta_matrix(T, rep, omega.level)
    return Cochain.from_sparse(omega.level + 1, M.apply_sparse(omega.sparse()), T.dim, rep.dim_v, T.field)


def comparison_sign(level: int) -> int:
    """delta = sign * d on level-k cochains (the formula's n is k + 1)."""
    return 1 if level % 2 == 0 else -1


# ---------------------------------------------------------------------------
# direct cocycle identities


def cocycle3_residue(T: LieTripleSystem, rep: Representation, W: np.ndarray) -> np.ndarray:
    """Left minus right side of the 3-cocycle identity, indexed (x1,x2,y1,y2,y3,component)."""
    c, th, D = T.c, rep.theta, rep.D
    lhs = np.einsum("cdel,ablu->abcdeu", c, W) + np.einsum("abuv,cdev->abcdeu", D, W)
    rhs = (np.einsum("abcl,ldeu->abcdeu", c, W)
           + np.einsum("abdl,cleu->abcdeu", c, W)
           + np.einsum("abel,cdlu->abcdeu", c, W)
           + np.einsum("deuv,abcv->abcdeu", th, W)
           - np.einsum("ceuv,abdv->abcdeu", th, W)
           + np.einsum("cduv,abev->abcdeu", D, W))
    return lhs - rhs


def cocycle5_residue(T: LieTripleSystem, rep: Representation, W: np.ndarray) -> np.ndarray:
    """The long 5-cocycle expression, indexed (x1,x2,y1,y2,z1,z2,z3,component)."""
    c, th, D = T.c, rep.theta, rep.D
    o = "->abcdefgu"
    terms = [
        (+1, "abuv,cdefgv", D), (-1, "cduv,abefgv", D), (+1, "efuv,abcdgv", D),
        (-1, "eguv,abcdfv", th), (+1, "fguv,abcdev", th),
        (-1, "abcl,ldefgu", c), (-1, "abdl,clefgu", c), (-1, "abel,cdlfgu", c),
        (-1, "abfl,cdelgu", c), (-1, "abgl,cdeflu", c),
        (+1, "cdel,ablfgu", c), (+1, "cdfl,abelgu", c), (+1, "cdgl,abeflu", c),
        (-1, "efgl,abcdlu", c),
    ]
    out = None
    for sign, spec, A in terms:
        t = np.einsum(spec + o, A, W)
        t = t if sign > 0 else -t
        out = t if out is None else out + t
    return out


def cocycle3_violations(T: LieTripleSystem, rep: Representation, omega: Cochain) -> list[tuple[str, tuple[int, ...]]]:
    """Constraint violations, then tuples (x1,x2,y1,y2,y3) where the 3-cocycle identity fails."""
    _check_cochain(T, rep, omega)
    if omega.level != 1:
        raise UnsupportedLevelError(f"expected a level-1 cochain, got level {omega.level}")
    out = constraint_violations(omega)
    if T.dim and rep.dim_v:
        out += [("identity", t) for t in nonzero_indices(cocycle3_residue(T, rep, omega.tensor), 5)]
    return out


def _is_cocycle(T, rep, omega: Cochain, level: int, residue) -> bool:
    _check_cochain(T, rep, omega)
    if omega.level != level:
        raise UnsupportedLevelError(f"expected a level-{level} cochain, got level {omega.level}")
    if constraint_violations(omega):
        return False
    if not T.dim or not rep.dim_v:
        return True
    return not nonzero_mask(residue(T, rep, omega.tensor), 0).any()


def is_3_cocycle(T: LieTripleSystem, rep: Representation, omega: Cochain) -> bool:
    """Both cochain constraints plus the 3-cocycle identity, on all basis tuples."""
    return _is_cocycle(T, rep, omega, 1, cocycle3_residue)


def is_5_cocycle(T: LieTripleSystem, rep: Representation, omega: Cochain) -> bool:
    return _is_cocycle(T, rep, omega, 2, cocycle5_residue)


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologyResult:
    degree: int
    dim: int
    representatives: list[Cochain]
    cochain_dim: int
    cocycle_dim: int
    coboundary_dim: int


def cocycle_basis_sparse(T: LieTripleSystem, rep: Representation, level: int) -> list[dict]:
    """Basis (full coordinates, fast form) of the kernel of delta on the constrained subspace."""
    f = T.field
    basis = constrained_basis_sparse(T.dim, rep.dim_v, level, f)
    M = yamaguti_delta_matrix(T, rep, level)
    images = [M.apply_sparse(b) for b in basis]
    # rows of the matrix whose columns are the images
    rows: dict[int, dict] = {}
    for j, img in enumerate(images):
        for i, v in img.items():
            rows.setdefault(i, {})[j] = v
    kernel = sparse_kernel((rows[i] for i in sorted(rows)), len(basis), f)
    return [_combine(basis, coeffs, f) for coeffs in kernel]


def coboundary_span_sparse(T: LieTripleSystem, rep: Representation, level: int) -> list[dict]:
    """delta of the constrained basis one level down (empty at level 0)."""
    if level == 0:
        return []
    f = T.field
    M = yamaguti_delta_matrix(T, rep, level - 1)
    return [M.apply_sparse(b) for b in constrained_basis_sparse(T.dim, rep.dim_v, level - 1, f)]


def _combine(basis: list[dict], coeffs: dict, field: Field) -> dict:
    p = field.characteristic
    out: dict = {}
    for j, s in coeffs.items():
        for k, v in basis[j].items():
            nv = out.get(k, 0) + s * v
            if p:
                nv %= p
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def cohomology_dim(T: LieTripleSystem, rep: Representation, degree: int) -> CohomologyResult:
    """dim H^degree for degree in {1, 3, 5}, with deterministic representatives."""
    if degree not in (1, 3, 5):
        raise UnsupportedLevelError(f"cohomology is available in degrees 1, 3, 5, not {degree}")
    rep.check_compatible(T)
    level = (degree - 1) // 2
    f = T.field
    n, m = T.dim, rep.dim_v
    total = space_dim(n, m, level)
    Z = cocycle_basis_sparse(T, rep, level)
    B = coboundary_span_sparse(T, rep, level)
    ez = IncrementalEchelon(total, f)
    for z in Z:
        ez.add(z)
    eb = IncrementalEchelon(total, f)
    for b in B:
        if not ez.contains(b):
            raise NotASubspaceError("a coboundary is not a cocycle: delta does not square to zero here")
        eb.add(b)
    reps = []
    for z in Z:
        if eb.add(z):
            reps.append(Cochain.from_sparse(level, z, n, m, f))
    dim = ez.rank - (eb.rank - len(reps))
    assert dim == len(reps)
    return CohomologyResult(degree=degree, dim=dim, representatives=reps,
                            cochain_dim=len(constrained_basis_sparse(n, m, level, f)),
                            cocycle_dim=ez.rank, coboundary_dim=eb.rank - len(reps))


def is_coboundary(T: LieTripleSystem, rep: Representation, omega: Cochain) -> Matrix | None:
    """A map nu: g -> V with delta(nu) = omega, or None when none exists."""
    _check_cochain(T, rep, omega)
    if omega.level != 1:
        raise UnsupportedLevelError("coboundary witnesses are computed for level-1 cochains")
    f = T.field
    M = yamaguti_delta_matrix(T, rep, 0)
    target = omega.sparse()
    cols = M.shape[1]
    rows = []
    for i, row in enumerate(M.fast_rows()):
        r = dict(row)
        if i in target:
            r[cols] = target[i]
        rows.append(r)
    sol = sparse_solve(rows, cols, f)
    if sol is None:
        return None
    return Cochain.from_flat(0, sol, T.dim, rep.dim_v, f).to_hom()
