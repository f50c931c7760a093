"""Lie triple systems given by structure constants.

``c[i, j, k, l]`` is the coefficient of ``e_l`` in ``[e_i, e_j, e_k]``.
Tensors are numpy object arrays holding exact field elements, and all
identities are checked exhaustively on basis tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .errors import DimensionError, NotALieAlgebraError, NotALieTripleSystemError
from .fields import QQ, Field
from .linalg import Matrix, as_array, infer_field, zeros

AXIOMS = ("Lts01", "Lts02", "Lts03")


def nonzero_mask(arr: np.ndarray, keep: int) -> np.ndarray:
    """Boolean mask over the first ``keep`` axes: True where any trailing entry is nonzero."""
    flags = np.frompyfunc(bool, 1, 1)(arr).astype(bool) if arr.size else np.zeros(arr.shape, bool)
    axes = tuple(range(keep, arr.ndim))
    return flags.any(axis=axes) if axes else flags


def nonzero_indices(arr: np.ndarray, keep: int) -> list[tuple[int, ...]]:
    return [tuple(int(i) for i in idx) for idx in np.argwhere(nonzero_mask(arr, keep))]


@dataclass
class LtsReport:
    ok: bool
    violations: list[tuple[str, tuple[int, ...]]] = dc_field(default_factory=list)

    @property
    def axioms(self) -> dict[str, bool]:
        failed = {axiom for axiom, _ in self.violations}
        return {a: a not in failed for a in AXIOMS}


def _constants(dim: int, c, field: Field | None) -> tuple[np.ndarray, Field]:
    arr = np.array(c, dtype=object)
    if arr.shape != (dim,) * 4:
        raise DimensionError(f"structure constants must have shape {(dim,) * 4}, got {arr.shape}")
    field = infer_field(arr.flat, field)
    return as_array(arr, field), field


def lts_violations(c: np.ndarray) -> list[tuple[str, tuple[int, ...]]]:
    """All basis tuples on which the three defining identities fail."""
    n = c.shape[0]
    out = []
    antisym = c + np.einsum("jikl->ijkl", c)
    out += [("Lts01", t) for t in nonzero_indices(antisym, 3) if t[0] <= t[1]]
    cyclic = c + np.einsum("jkil->ijkl", c) + np.einsum("kijl->ijkl", c)
    out += [("Lts02", t) for t in nonzero_indices(cyclic, 3)
            if t == min(t, t[1:] + t[:1], t[2:] + t[:2])]
    if n:
        # only zero/nonzero is read off, so the quadratic identity runs in the fast representation
        field = infer_field(c.flat)
        f = np.frompyfunc(field.to_fast, 1, 1)(c)
        lhs = np.einsum("pqrl,abls->abpqrs", f, f)
        rhs = (np.einsum("abpl,lqrs->abpqrs", f, f)
               + np.einsum("abql,plrs->abpqrs", f, f)
               + np.einsum("abrl,pqls->abpqrs", f, f))
        res = lhs - rhs
        if field.characteristic:
            res = res % field.characteristic
        out += [("Lts03", t) for t in nonzero_indices(res, 5)]
    return out


def verify_lts(dim: int, c, field: Field | None = None) -> LtsReport:
    arr, _ = _constants(dim, c, field)
    violations = lts_violations(arr)
    return LtsReport(ok=not violations, violations=violations)


class LieTripleSystem:
    """A finite-dimensional Lie triple system over an exact field.

    Construction validates the axioms unless ``validate=False``; the
    unvalidated form exists so that broken candidates can still be
    inspected by :func:`verify_lts`.
    """

    def __init__(self, constants, field: Field | None = None, *, names=None, validate=True):
        arr = np.array(constants, dtype=object)
        dim = arr.shape[0] if arr.ndim else 0
        self.c, self.field = _constants(dim, arr, field)
        self.dim = dim
        self.names = list(names) if names is not None else [f"e{i + 1}" for i in range(dim)]
        if len(self.names) != dim:
            raise DimensionError(f"{len(self.names)} basis names for dimension {dim}")
        if validate:
            violations = lts_violations(self.c)
            if violations:
                raise NotALieTripleSystemError(
                    f"not a Lie triple system: {len(violations)} violated identities, first {violations[0]}",
                    violations)

    @classmethod
    def from_sparse(cls, dim: int, entries: dict, field: Field = QQ, **kwargs) -> "LieTripleSystem":
        """Build from ``{(i, j, k): {l: value}}``; missing brackets are zero."""
        c = zeros((dim,) * 4, field)
        for (i, j, k), terms in entries.items():
            for l, v in terms.items():
                c[i, j, k, l] = field(v)
        return cls(c, field, **kwargs)

    def vector(self, coords) -> np.ndarray:
        v = as_array(list(coords), self.field)
        if v.shape != (self.dim,):
            raise DimensionError(f"expected a vector of length {self.dim}, got {v.shape}")
        return v

    def basis_vector(self, i: int) -> np.ndarray:
        v = zeros(self.dim, self.field)
        v[i] = self.field.one
        return v

    def bracket(self, x, y, z) -> np.ndarray:
        return bracket(self, x, y, z)

    def __eq__(self, other):
        if not isinstance(other, LieTripleSystem):
            return NotImplemented
        return (self.field is other.field and self.dim == other.dim
                and all(a == b for a, b in zip(self.c.flat, other.c.flat)))

    __hash__ = None

    def __repr__(self):
        return f"LieTripleSystem(dim={self.dim}, field={self.field!r})"


@dataclass(frozen=True)
class LtsMorphism:
    source_dim: int
    target_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target_dim, self.source_dim):
            raise DimensionError(
                f"morphism matrix must be {self.target_dim}x{self.source_dim}, got {self.matrix.shape}")


def bracket(T: LieTripleSystem, x, y, z) -> np.ndarray:
    x, y, z = T.vector(x), T.vector(y), T.vector(z)
    return np.einsum("i,j,k,ijkl->l", x, y, z, T.c) if T.dim else zeros(0, T.field)


def ad_left_array(T: LieTripleSystem, a: np.ndarray) -> np.ndarray:
    """Matrix of ``w -> [a, w]`` for a fundamental element ``a`` (n x n coefficients)."""
    if not T.dim:
        return zeros((0, 0), T.field)
    return np.einsum("ij,ijkp->pk", a, T.c)


def ad_left(T: LieTripleSystem, x1, x2) -> Matrix:
    x1, x2 = T.vector(x1), T.vector(x2)
    return Matrix.from_array(ad_left_array(T, np.multiply.outer(x1, x2)), T.field)


def lie_algebra_violations(lie_c: np.ndarray) -> list[tuple[str, tuple[int, ...]]]:
    antisym = lie_c + np.einsum("jik->ijk", lie_c)
    out = [("antisymmetry", t) for t in nonzero_indices(antisym, 2) if t[0] <= t[1]]
    if lie_c.shape[0]:
        # [[x, y], z] + [[y, z], x] + [[z, x], y]
        double = np.einsum("ijp,pkl->ijkl", lie_c, lie_c)
        jac = double + np.einsum("jkil->ijkl", double) + np.einsum("kijl->ijkl", double)
        out += [("jacobi", t) for t in nonzero_indices(jac, 3) if t[0] < t[1] < t[2]]
    return out


def from_lie_algebra(dim: int, lie_c, field: Field | None = None, **kwargs) -> LieTripleSystem:
    """The Lie triple system ``[x, y, z] = [[x, y], z]`` of a Lie algebra.

    ``lie_c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
    """
    arr = np.array(lie_c, dtype=object)
    if arr.shape != (dim,) * 3:
        raise DimensionError(f"Lie structure constants must have shape {(dim,) * 3}, got {arr.shape}")
    field = infer_field(arr.flat, field)
    arr = as_array(arr, field)
    violations = lie_algebra_violations(arr)
    if violations:
        raise NotALieAlgebraError(f"not a Lie algebra: {violations}", violations)
    c = np.einsum("ijp,pkl->ijkl", arr, arr) if dim else zeros((0,) * 4, field)
    return LieTripleSystem(c, field, **kwargs)


def is_homomorphism(T: LieTripleSystem, S: LieTripleSystem, phi) -> bool:
    """Whether ``phi`` (an :class:`LtsMorphism` or matrix) preserves the bracket."""
    mat = phi.matrix if isinstance(phi, LtsMorphism) else phi
    mat = mat if isinstance(mat, Matrix) else Matrix(mat, T.field)
    if mat.shape != (S.dim, T.dim):
        raise DimensionError(f"homomorphism {T.dim}->{S.dim} needs shape {(S.dim, T.dim)}, got {mat.shape}")
    if T.field is not S.field or mat.field is not T.field:
        from .errors import FieldMismatchError
        raise FieldMismatchError("source, target and map must share a field")
    if not T.dim:
        return True
    a = mat.array
    lhs = np.einsum("ijkl,ml->ijkm", T.c, a)
    if S.dim:
        rhs = np.einsum("ai,bj,ck,abcm->ijkm", a, a, a, S.c)
    else:
        rhs = zeros(lhs.shape, T.field)
    return not nonzero_mask(lhs - rhs, 3).any()


def basis_triples(n: int):
    return product(range(n), repeat=3)
