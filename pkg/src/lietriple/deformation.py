"""Infinitesimal deformations and Nijenhuis operators.

Trilinear maps g x g x g -> g are handled as (n, n, n, n) tensors in the
same layout as structure constants.  For an operator N the map
``[x, y, z]_N = [Nx, y, z] + [x, Ny, z] + [x, y, Nz] - N[x, y, z]`` is
:func:`n_deform` applied to the bracket; applying it to any other
trilinear map gives the iterated brackets ``([.]_{N^k})_{N^r}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cochains import Cochain, cocycle3_violations
from .errors import ConstantTermError, DimensionError, NotNijenhuisError
from .linalg import Matrix, identity_array, infer_field, zeros
from .lts import LieTripleSystem, lts_violations, nonzero_indices, nonzero_mask
from .representation import adjoint_rep


def _op(T: LieTripleSystem, N) -> np.ndarray:
    mat = N if isinstance(N, Matrix) else Matrix(N, T.field)
    if mat.shape != (T.dim, T.dim):
        raise DimensionError(f"operator must be {T.dim}x{T.dim}, got {mat.shape}")
    if mat.field is not T.field:
        from .errors import FieldMismatchError
        raise FieldMismatchError(f"operator over {mat.field!r}, system over {T.field!r}")
    return mat.array


def apply_slots(mu: np.ndarray, A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Tensor of ``mu(A e_i, B e_j, C e_k)``."""
    if not mu.shape[0]:
        return mu
    return np.einsum("ai,bj,ck,abcl->ijkl", A, B, C, mu)


def apply_output(mu: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Tensor of ``A mu(e_i, e_j, e_k)``."""
    if not mu.shape[0]:
        return mu
    return np.einsum("ijkl,pl->ijkp", mu, A)


def n_deform(mu: np.ndarray, N: np.ndarray) -> np.ndarray:
    """``mu(Nx, y, z) + mu(x, Ny, z) + mu(x, y, Nz) - N mu(x, y, z)``."""
    n = mu.shape[0]
    if not n:
        return mu
    eye = identity_array(n, infer_field(list(N.flat) + list(mu.flat)))
    return (apply_slots(mu, N, eye, eye) + apply_slots(mu, eye, N, eye)
            + apply_slots(mu, eye, eye, N) - apply_output(mu, N))


def matrix_power(N, k: int) -> Matrix:
    mat = N if isinstance(N, Matrix) else Matrix(N)
    if k < 0:
        raise ValueError("negative powers are not supported")
    out = Matrix.identity(mat.rows, mat.field)
    for _ in range(k):
        out = out @ mat
    return out


def bracket_N_tensor(T: LieTripleSystem, N) -> np.ndarray:
    return n_deform(T.c, _op(T, N))


def bracket_N(T: LieTripleSystem, N, x, y, z) -> np.ndarray:
    """``[x, y, z]_N`` for any operator N."""
    x, y, z = T.vector(x), T.vector(y), T.vector(z)
    mu = bracket_N_tensor(T, N)
    if not T.dim:
        return zeros(0, T.field)
    return np.einsum("i,j,k,ijkl->l", x, y, z, mu)


def deformed_bracket(mu: np.ndarray, N) -> np.ndarray:
    """``(mu)_N`` for an arbitrary trilinear map given as an (n, n, n, n) tensor."""
    arr = N.array if isinstance(N, Matrix) else np.array(N, dtype=object)
    return n_deform(np.asarray(mu, dtype=object), arr)


def nijenhuis_violations(T: LieTripleSystem, N) -> list[tuple[str, tuple[int, int, int]]]:
    A = _op(T, N)
    if not T.dim:
        return []
    c = T.c
    eye = identity_array(T.dim, T.field)
    triple = apply_slots(c, A, A, A)
    once = apply_slots(c, A, eye, eye) + apply_slots(c, eye, A, eye) + apply_slots(c, eye, eye, A)
    twice = apply_slots(c, A, A, eye) + apply_slots(c, A, eye, A) + apply_slots(c, eye, A, A)
    A2 = A.dot(A)
    # N^2 [x] = N([Nx,y,z] + [x,Ny,z] + [x,y,Nz]) - ([Nx,Ny,z] + [Nx,y,Nz] + [x,Ny,Nz])
    four = apply_output(c, A2) - apply_output(once, A) + twice
    return ([("Nijenhuis3", t) for t in nonzero_indices(triple, 3)]
            + [("Nijenhuis4", t) for t in nonzero_indices(four, 3)])


def is_nijenhuis(T: LieTripleSystem, N) -> bool:
    return not nijenhuis_violations(T, N)


def nijenhuis_prime_holds(T: LieTripleSystem, N) -> bool:
    """``N [x, y, z]_N = [Nx, Ny, z] + [Nx, y, Nz] + [x, Ny, Nz]`` on all basis triples."""
    A = _op(T, N)
    if not T.dim:
        return True
    c = T.c
    eye = identity_array(T.dim, T.field)
    twice = apply_slots(c, A, A, eye) + apply_slots(c, A, eye, A) + apply_slots(c, eye, A, A)
    return not nonzero_mask(apply_output(n_deform(c, A), A) - twice, 3).any()


@dataclass
class DeformationReport:
    lts_ok: bool
    cocycle_ok: bool
    violations: list[tuple[str, tuple[int, ...]]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lts_ok and self.cocycle_ok


_LTS_TO_DEFORMATION = {"Lts01": "dm01", "Lts02": "dm02", "Lts03": "dm03"}


def check_infinitesimal_deformation(T: LieTripleSystem, omega: Cochain) -> DeformationReport:
    """Whether ``[.] + lambda * omega`` is a Lie triple system for formal lambda.

    This holds exactly when omega is itself a Lie triple system bracket and
    a 3-cocycle with values in the adjoint representation.
    """
    if omega.level != 1 or omega.dim_g != T.dim or omega.dim_v != T.dim:
        raise DimensionError("a deformation direction is a level-1 cochain with values in g")
    rep = adjoint_rep(T)
    lts_bad = [(_LTS_TO_DEFORMATION[a], t) for a, t in lts_violations(omega.tensor)]
    coc_bad = [("cocycle:" + a, t) for a, t in cocycle3_violations(T, rep, omega)]
    return DeformationReport(lts_ok=not lts_bad, cocycle_ok=not coc_bad, violations=lts_bad + coc_bad)


def trivial_deformation(T: LieTripleSystem, N) -> Cochain:
    """The deformation direction ``[x, y, z]_N`` generated by a Nijenhuis operator."""
    bad = nijenhuis_violations(T, N)
    if bad:
        raise NotNijenhuisError(f"operator is not Nijenhuis: first violation {bad[0]}")
    return Cochain(1, bracket_N_tensor(T, N), T.field, dim_g=T.dim, dim_v=T.dim)


@dataclass
class CompatibilityReport:
    n12_1: bool
    # the four-term identity as displayed alongside the compatibility criterion
    n12_2_stated: bool
    # all six mixed terms of [(N1+N2)x, (N1+N2)y, (N1+N2)z]
    n12_2_expanded: bool
    sum_is_nijenhuis: bool

    @property
    def compatible(self) -> bool:
        return self.sum_is_nijenhuis

    @property
    def criterion_agrees(self) -> bool:
        """The two-identity criterion (expanded form) matches the definition."""
        return (self.n12_1 and self.n12_2_expanded) == self.sum_is_nijenhuis


def compatibility_report(T: LieTripleSystem, N1, N2) -> CompatibilityReport:
    A, B = _op(T, N1), _op(T, N2)
    for name, M in (("N1", N1), ("N2", N2)):
        bad = nijenhuis_violations(T, M)
        if bad:
            raise NotNijenhuisError(f"{name} is not Nijenhuis: first violation {bad[0]}")
    if not T.dim:
        return CompatibilityReport(True, True, True, True)
    c = T.c
    eye = identity_array(T.dim, T.field)
    lhs = apply_output(n_deform(c, B), A) + apply_output(n_deform(c, A), B)
    rhs = (apply_slots(c, B, A, eye) + apply_slots(c, B, eye, A) + apply_slots(c, eye, B, A)
           + apply_slots(c, A, B, eye) + apply_slots(c, A, eye, B) + apply_slots(c, eye, A, B))
    stated = (apply_slots(c, A, A, B) + apply_slots(c, A, B, B)
              + apply_slots(c, B, A, A) + apply_slots(c, B, B, A))
    expanded = stated + apply_slots(c, A, B, A) + apply_slots(c, B, A, B)
    S = Matrix.from_array(A + B, T.field)
    return CompatibilityReport(
        n12_1=not nonzero_mask(lhs - rhs, 3).any(),
        n12_2_stated=not nonzero_mask(stated, 3).any(),
        n12_2_expanded=not nonzero_mask(expanded, 3).any(),
        sum_is_nijenhuis=is_nijenhuis(T, S),
    )


def are_compatible(T: LieTripleSystem, N1, N2) -> bool:
    """Whether N1 + N2 is Nijenhuis, for Nijenhuis N1 and N2."""
    return compatibility_report(T, N1, N2).compatible


def operator_polynomial(N, coeffs: Sequence | Mapping) -> Matrix:
    """``sum c_i N^i`` with no constant term.

    ``coeffs`` is either ``[c1, c2, ...]`` or a mapping ``{i: c_i}``; a
    nonzero coefficient for i = 0 is rejected.
    """
    mat = N if isinstance(N, Matrix) else Matrix(N)
    f = mat.field
    if isinstance(coeffs, Mapping):
        terms = {int(i): f(c) for i, c in coeffs.items()}
    else:
        terms = {i + 1: f(c) for i, c in enumerate(coeffs)}
    if any(i < 0 for i in terms):
        raise ConstantTermError("negative powers are not polynomials")
    if terms.get(0):
        raise ConstantTermError("polynomials of a Nijenhuis operator must have no constant term")
    out = zeros(mat.shape, f)
    power = Matrix.identity(mat.rows, f)
    for i in range(1, max(terms, default=0) + 1):
        power = power @ mat
        if terms.get(i):
            out = out + power.array * terms[i]
    return Matrix.from_array(out, f)


def search_nijenhuis(T: LieTripleSystem, entries: Iterable[int] = (-1, 0, 1),
                     limit: int | None = None) -> list[Matrix]:
    """Nijenhuis operators with all matrix entries drawn from ``entries``, in lexicographic order."""
    vals = [T.field(v) for v in entries]
    n = T.dim
    out = []
    for flat in product(vals, repeat=n * n):
        M = Matrix.from_array(np.array(flat, dtype=object).reshape(n, n), T.field)
        if is_nijenhuis(T, M):
            out.append(M)
            if limit is not None and len(out) >= limit:
                break
    return out
