"""Representations (V, theta) of a Lie triple system and the Hom(g, V) brackets.

``theta`` is stored as an array of shape (n, n, m, m): ``theta[i, j]`` is
the matrix of theta(e_i, e_j) on V.  No symmetry in (i, j) is assumed.
A map phi: g -> V is an m x n matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DimensionError, FieldMismatchError, NotARepresentationError
from .fields import Field
from .fundamental import fundamental_array
from .linalg import Matrix, as_array, infer_field, zeros
from .lts import LieTripleSystem, ad_left_array, nonzero_indices

REP_AXIOMS = ("R1", "R2", "R3")


class Representation:
    """Raw representation data; see :func:`verify_representation` for the axioms."""

    def __init__(self, theta, field: Field | None = None, *, dim_g: int | None = None,
                 dim_v: int | None = None):
        arr = np.array(theta, dtype=object)
        if arr.size == 0:
            if dim_g is None or dim_v is None:
                raise DimensionError("empty theta needs explicit dim_g and dim_v")
            arr = np.empty((dim_g, dim_g, dim_v, dim_v), dtype=object)
        if arr.ndim != 4 or arr.shape[0] != arr.shape[1] or arr.shape[2] != arr.shape[3]:
            raise DimensionError(f"theta must have shape (n, n, m, m), got {arr.shape}")
        if dim_g is not None and arr.shape[0] != dim_g:
            raise DimensionError(f"theta is for dimension {arr.shape[0]}, expected {dim_g}")
        if dim_v is not None and arr.shape[2] != dim_v:
            raise DimensionError(f"theta acts on dimension {arr.shape[2]}, expected {dim_v}")
        self.field = infer_field(arr.flat, field)
        self.theta = as_array(arr, self.field)
        self.dim_g = arr.shape[0]
        self.dim_v = arr.shape[2]
        self.D = self.theta.transpose(1, 0, 2, 3) - self.theta

    @classmethod
    def zero(cls, dim_g: int, dim_v: int, field) -> "Representation":
        return cls(zeros((dim_g, dim_g, dim_v, dim_v), field), field, dim_g=dim_g, dim_v=dim_v)

    def theta_matrix(self, i: int, j: int) -> Matrix:
        return Matrix.from_array(self.theta[i, j], self.field)

    def theta_of(self, x1, x2) -> np.ndarray:
        return _contract_pair(self.theta, as_array(list(x1), self.field), as_array(list(x2), self.field))

    def check_compatible(self, T: LieTripleSystem) -> None:
        if self.dim_g != T.dim:
            raise DimensionError(f"representation of a {self.dim_g}-dimensional system used with dimension {T.dim}")
        if self.field is not T.field:
            raise FieldMismatchError(f"representation over {self.field!r}, system over {T.field!r}")

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.field is other.field and self.theta.shape == other.theta.shape
                and all(a == b for a, b in zip(self.theta.flat, other.theta.flat)))

    __hash__ = None

    def __repr__(self):
        return f"Representation(dim_g={self.dim_g}, dim_v={self.dim_v}, field={self.field!r})"


def _contract_pair(arr: np.ndarray, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    n = arr.shape[0]
    if x1.shape != (n,) or x2.shape != (n,):
        raise DimensionError(f"expected vectors of length {n}")
    if not n:
        return zeros(arr.shape[2:], infer_field(arr.flat))
    return np.einsum("i,j,ijuv->uv", x1, x2, arr)


def dee(rep: Representation, x1, x2) -> Matrix:
    """``D(x1, x2) = theta(x2, x1) - theta(x1, x2)``."""
    f = rep.field
    arr = _contract_pair(rep.D, as_array(list(x1), f), as_array(list(x2), f))
    return Matrix.from_array(arr, f)


@dataclass
class RepresentationReport:
    axioms: dict[str, bool]
    violations: list[tuple[str, tuple[int, ...]]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        """R1 and R2 define a representation; R3 is reported alongside."""
        return self.axioms["R1"] and self.axioms["R2"]

    @property
    def r1_implies_r3(self) -> bool:
        return self.axioms["R3"] or not self.axioms["R1"]


def _circle_action(T: LieTripleSystem, X: np.ndarray) -> np.ndarray:
    """X((e_i,e_j) o (e_k,e_l)) for a bilinear X stored as (n, n, m, m)."""
    c = T.c
    return np.einsum("ijkp,pluv->ijkluv", c, X) + np.einsum("ijlp,kpuv->ijkluv", c, X)


def _commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.einsum("ijuw,klwv->ijkluv", A, B) - np.einsum("kluw,ijwv->ijkluv", B, A)


def verify_representation(T: LieTripleSystem, rep: Representation) -> RepresentationReport:
    """Check R1, R2 and R3 independently on all basis tuples."""
    rep.check_compatible(T)
    if not T.dim or not rep.dim_v:
        return RepresentationReport(axioms={a: True for a in REP_AXIOMS})
    c, th, D = T.c, rep.theta, rep.D
    residues = {
        # [D(x), theta(y)] = theta(x o y)
        "R1": _commutator(D, th) - _circle_action(T, th),
        # theta(x1,[y1,y2,y3]) = theta(y2,y3)theta(x1,y1) - theta(y1,y3)theta(x1,y2) + D(y1,y2)theta(x1,y3)
        "R2": (np.einsum("abcp,xpuv->xabcuv", c, th)
               - np.einsum("bcuw,xawv->xabcuv", th, th)
               + np.einsum("acuw,xbwv->xabcuv", th, th)
               - np.einsum("abuw,xcwv->xabcuv", D, th)),
        # [D(x), D(y)] = D(x o y)
        "R3": _commutator(D, D) - _circle_action(T, D),
    }
    axioms, violations = {}, []
    for name in REP_AXIOMS:
        bad = nonzero_indices(residues[name], 4)
        axioms[name] = not bad
        violations += [(name, t) for t in bad]
    return RepresentationReport(axioms=axioms, violations=violations)


def validated(T: LieTripleSystem, rep: Representation) -> Representation:
    report = verify_representation(T, rep)
    if not report.ok:
        raise NotARepresentationError(
            f"not a representation: {len(report.violations)} violated identities, first {report.violations[0]}")
    return rep


def adjoint_rep(T: LieTripleSystem) -> Representation:
    """V = g with theta(x1, x2) w = [w, x1, x2]."""
    theta = np.einsum("wijl->ijlw", T.c) if T.dim else zeros((0, 0, 0, 0), T.field)
    return Representation(theta, T.field, dim_g=T.dim, dim_v=T.dim)


def zero_rep(T: LieTripleSystem, dim_v: int) -> Representation:
    return Representation.zero(T.dim, dim_v, T.field)


# ---------------------------------------------------------------------------
# Hom(g, V) as a module over the Leibniz algebra L


def _hom_array(T: LieTripleSystem, rep: Representation, phi) -> np.ndarray:
    arr = phi.array if isinstance(phi, Matrix) else as_array(phi, T.field)
    if arr.shape != (rep.dim_v, T.dim):
        raise DimensionError(f"map g->V must be {rep.dim_v}x{T.dim}, got {arr.shape}")
    return arr


def _dot(a: np.ndarray, b: np.ndarray, field) -> np.ndarray:
    if a.shape[1] == 0:
        return zeros((a.shape[0], b.shape[1]), field)
    return a.dot(b)


def hom_bracket_L_array(T, rep, x: np.ndarray, phi: np.ndarray) -> np.ndarray:
    f = T.field
    Dx = np.einsum("ij,ijuv->uv", x, rep.D) if T.dim else zeros((rep.dim_v, rep.dim_v), f)
    return _dot(Dx, phi, f) - _dot(phi, ad_left_array(T, x), f)


def hom_bracket_R_array(T, rep, phi: np.ndarray, x: np.ndarray) -> np.ndarray:
    f = T.field
    if not T.dim:
        return zeros(phi.shape, f)
    Dx = np.einsum("ij,ijuv->uv", x, rep.D)
    out = _dot(phi, ad_left_array(T, x), f) - _dot(Dx, phi, f)
    if rep.dim_v:
        out = out + np.einsum("ij,iwab,bj->aw", x, rep.theta, phi) - np.einsum("ij,jwab,bi->aw", x, rep.theta, phi)
    return out


def hom_bracket_L(T: LieTripleSystem, rep: Representation, x, phi) -> Matrix:
    """``[x, phi]_L(w) = D(x1, x2) phi(w) - phi([x1, x2, w])``."""
    rep.check_compatible(T)
    arr = hom_bracket_L_array(T, rep, fundamental_array(T, x), _hom_array(T, rep, phi))
    return Matrix.from_array(arr, T.field)


def hom_bracket_R(T: LieTripleSystem, rep: Representation, phi, x) -> Matrix:
    """``[phi, x]_R(w) = phi([x1,x2,w]) - D(x1,x2)phi(w) + theta(x1,w)phi(x2) - theta(x2,w)phi(x1)``."""
    rep.check_compatible(T)
    arr = hom_bracket_R_array(T, rep, _hom_array(T, rep, phi), fundamental_array(T, x))
    return Matrix.from_array(arr, T.field)


def hom_index(n: int, m: int, w: int, a: int) -> int:
    """Flat coordinate of ``phi(e_w)_a``; matches the level-0 cochain layout."""
    return w * m + a


def hom_vector(phi: np.ndarray) -> np.ndarray:
    return phi.T.reshape(-1)


def hom_from_vector(vec, n: int, m: int) -> np.ndarray:
    return np.array(vec, dtype=object).reshape(n, m).T


def hom_module_actions(T: LieTripleSystem, rep: Representation) -> tuple[list[Matrix], list[Matrix]]:
    """Matrices of ``[E_a, .]_L`` and ``[., E_a]_R`` on Hom(g, V), one per basis element of L.

    Coordinates on Hom(g, V) follow :func:`hom_index`.
    """
    rep.check_compatible(T)
    n, m, f = T.dim, rep.dim_v, T.field
    size = n * m
    basis = []
    for k in range(size):
        phi = zeros(size, f)
        phi[k] = f.one
        basis.append(hom_from_vector(phi, n, m))
    left, right = [], []
    for a in range(n * n):
        x = zeros(n * n, f)
        x[a] = f.one
        x = x.reshape(n, n)
        lcols = [hom_vector(hom_bracket_L_array(T, rep, x, phi)) for phi in basis]
        rcols = [hom_vector(hom_bracket_R_array(T, rep, phi, x)) for phi in basis]
        left.append(_columns(lcols, size, f))
        right.append(_columns(rcols, size, f))
    return left, right


def _columns(cols, size, f) -> Matrix:
    out = zeros((size, size), f)
    for k, col in enumerate(cols):
        out[:, k] = col
    return Matrix.from_array(out, f)
