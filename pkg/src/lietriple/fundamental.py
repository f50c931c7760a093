"""The Leibniz algebra L = g (x) g of fundamental objects.

An element of L is an n x n coefficient array ``a`` standing for
``sum a[i, j] (e_i, e_j)``; flattened, basis element ``(e_i, e_j)`` has
index ``i * n + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError
from .linalg import Matrix, as_array, zeros
from .lts import LieTripleSystem, ad_left_array, nonzero_indices, nonzero_mask

LEIBNIZ_REP_AXIOMS = ("LLM", "MLL", "LML", "MMM")


@dataclass(frozen=True, eq=False)
class FundamentalElement:
    coeffs: Matrix

    @classmethod
    def pair(cls, T: LieTripleSystem, x1, x2) -> "FundamentalElement":
        return cls(Matrix.from_array(np.multiply.outer(T.vector(x1), T.vector(x2)), T.field))

    @classmethod
    def basis(cls, T: LieTripleSystem, index: int) -> "FundamentalElement":
        arr = zeros(T.dim * T.dim, T.field)
        arr[index] = T.field.one
        return cls(Matrix.from_array(arr.reshape(T.dim, T.dim), T.field))

    def flat(self) -> tuple:
        return tuple(self.coeffs.array.flat)

    def __eq__(self, other):
        if not isinstance(other, FundamentalElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None


def fundamental_array(T: LieTripleSystem, a) -> np.ndarray:
    """Coefficient array of ``a`` (FundamentalElement, Matrix, pair, or n x n entries)."""
    if isinstance(a, FundamentalElement):
        arr = a.coeffs.array
    elif isinstance(a, Matrix):
        arr = a.array
    else:
        arr = as_array(a, T.field)
    if arr.shape == (T.dim * T.dim,):
        arr = arr.reshape(T.dim, T.dim)
    if arr.shape != (T.dim, T.dim):
        raise DimensionError(f"fundamental element must be {T.dim}x{T.dim}, got {arr.shape}")
    return arr


def circle_array(T: LieTripleSystem, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if not T.dim:
        return zeros((0, 0), T.field)
    m = ad_left_array(T, a)
    return m.dot(b) + b.dot(m.T)


def circle(T: LieTripleSystem, a, b) -> FundamentalElement:
    """``x o y = ([x1, x2, y1], y2) + (y1, [x1, x2, y2])``, extended bilinearly."""
    arr = circle_array(T, fundamental_array(T, a), fundamental_array(T, b))
    return FundamentalElement(Matrix.from_array(arr, T.field))


def circle_constants(T: LieTripleSystem) -> np.ndarray:
    """``C[a, b, d]``: coefficient of basis element d in ``E_a o E_b`` (flat indices)."""
    n, c = T.dim, T.c
    if not n:
        return zeros((0, 0, 0), T.field)
    eye = np.eye(n, dtype=int)
    # ([e_i, e_j, e_k], e_l) + (e_k, [e_i, e_j, e_l])
    full = np.einsum("ijkp,lq->ijklpq", c, eye) + np.einsum("kp,ijlq->ijklpq", eye, c)
    N = n * n
    return full.reshape(N, N, N)


def ad_left_basis(T: LieTripleSystem) -> np.ndarray:
    """``Ad[a]``: matrix of ad^L on flat basis element a of L."""
    n = T.dim
    return np.einsum("ijkp->ijpk", T.c).reshape(n * n, n, n)


def verify_leibniz(T: LieTripleSystem) -> bool:
    """Left Leibniz identity ``x o (y o z) = (x o y) o z + y o (x o z)`` on all basis triples."""
    return not leibniz_violations(T)


def leibniz_violations(T: LieTripleSystem) -> list[tuple[int, int, int]]:
    if not T.dim:
        return []
    C = circle_constants(T)
    lhs = np.einsum("bcd,ade->abce", C, C)
    rhs = np.einsum("abd,dce->abce", C, C) + np.einsum("acd,bde->abce", C, C)
    return nonzero_indices(lhs - rhs, 3)


def ad_homomorphism_check(T: LieTripleSystem) -> bool:
    """Whether ``ad^L(x) ad^L(y) - ad^L(y) ad^L(x) = ad^L(x o y)`` for all basis x, y of L."""
    if not T.dim:
        return True
    C = circle_constants(T)
    Ad = ad_left_basis(T)
    comm = np.einsum("apq,bqr->abpr", Ad, Ad) - np.einsum("bpq,aqr->abpr", Ad, Ad)
    image = np.einsum("abd,dpr->abpr", C, Ad)
    return not nonzero_mask(comm - image, 2).any()


@dataclass
class LeibnizRepReport:
    axioms: dict[str, bool]
    violations: list[tuple[str, tuple[int, ...]]] = dc_field(default_factory=list)
    # for each of LML, MLL, MMM: True when the other two hold, so LLM + those two
    # force this one; recorded so the derivation remark can be checked per instance
    implied: dict[str, bool] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.axioms.values())

    @property
    def remark_consistent(self) -> bool:
        """No instance where LLM and two of the other axioms hold but the third fails."""
        if not self.axioms["LLM"]:
            return True
        return all(self.axioms[a] for a, forced in self.implied.items() if forced)


def _action_array(T: LieTripleSystem, act, dim_m: int, name: str) -> np.ndarray:
    N = T.dim * T.dim
    if callable(act):
        mats = [act(a) for a in range(N)]
    else:
        mats = list(act)
    if len(mats) != N:
        raise DimensionError(f"{name} needs {N} matrices, got {len(mats)}")
    out = zeros((N, dim_m, dim_m), T.field)
    for a, m in enumerate(mats):
        arr = m.array if isinstance(m, Matrix) else as_array(m, T.field)
        if arr.shape != (dim_m, dim_m):
            raise DimensionError(f"{name}[{a}] must be {dim_m}x{dim_m}, got {arr.shape}")
        out[a] = arr
    return out


def verify_leibniz_rep(T: LieTripleSystem, act_left, act_right, dim_m: int) -> LeibnizRepReport:
    """Check the four Leibniz-module axioms for ``[x, m]_L`` and ``[m, x]_R``.

    ``act_left[a]`` / ``act_right[a]`` are the matrices of ``m -> [E_a, m]_L``
    and ``m -> [m, E_a]_R`` on M; either a sequence or a callable of the flat
    L-index.  In operator form, with L(x), R(x) these matrices::

        LLM  L(x o y) = L(x) L(y) - L(y) L(x)
        MLL  R(x o y) = R(y) R(x) + L(x) R(y)
        LML  L(x) R(y) = R(y) L(x) + R(x o y)
        MMM  R(y) R(x) + R(y) L(x) = 0
    """
    Lx = _action_array(T, act_left, dim_m, "act_left")
    Rx = _action_array(T, act_right, dim_m, "act_right")
    C = circle_constants(T) if T.dim else zeros((0, 0, 0), T.field)
    L_circ = np.einsum("abd,duv->abuv", C, Lx)
    R_circ = np.einsum("abd,duv->abuv", C, Rx)

    def prod(A, B):  # A[a] B[b]
        return np.einsum("auw,bwv->abuv", A, B)

    def prod_rev(A, B):  # A[b] B[a]
        return np.einsum("buw,awv->abuv", A, B)

    residues = {
        "LLM": L_circ - prod(Lx, Lx) + prod_rev(Lx, Lx),
        "MLL": R_circ - prod_rev(Rx, Rx) - prod(Lx, Rx),
        "LML": prod(Lx, Rx) - prod_rev(Rx, Lx) - R_circ,
        "MMM": prod_rev(Rx, Rx) + prod_rev(Rx, Lx),
    }
    violations = []
    axioms = {}
    for name in LEIBNIZ_REP_AXIOMS:
        bad = nonzero_indices(residues[name], 2) if residues[name].size else []
        axioms[name] = not bad
        violations += [(name, t) for t in bad]
    triple = ("LML", "MLL", "MMM")
    implied = {a: all(axioms[b] for b in triple if b != a) for a in triple}
    return LeibnizRepReport(axioms=axioms, violations=violations, implied=implied)
