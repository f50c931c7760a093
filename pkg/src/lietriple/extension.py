"""Abelian extensions 0 -> V -> E -> g -> 0 and their classification by H^3.

Extensions built here use the basis (e_1..e_n, v_1..v_m) of g + V, with
inclusion ``i = [0; I]``, projection ``p = [I 0]`` and canonical section
``sigma = [I; 0]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cochains import Cochain, cohomology_dim, is_3_cocycle, is_coboundary
from .errors import (BracketEscapesIdealError, DimensionError, ExtensionError, FieldMismatchError,
                     InvalidWitnessError, NotACocycleError, NotASectionError)
from .linalg import Matrix, identity_array, rank, solve, zeros
from .lts import LieTripleSystem, LtsMorphism, is_homomorphism, nonzero_mask
from .representation import Representation


def _mat(M, field) -> Matrix:
    return M if isinstance(M, Matrix) else Matrix(M, field)


def _bracket_tensor(C: np.ndarray, A: np.ndarray, B: np.ndarray, D: np.ndarray) -> np.ndarray:
    """``[A e_i, B e_j, D e_k]`` for matrices whose columns are vectors of the total space."""
    return np.einsum("pi,qj,rk,pqrl->ijkl", A, B, D, C)


class AbelianExtension:
    """A total system with an injection of V and a projection onto g.

    Construction checks exactness (``p i = 0``, full ranks) and that the
    image of i is an abelian ideal.
    """

    def __init__(self, total: LieTripleSystem, inj, proj):
        f = total.field
        self.total = total
        self.inj = _mat(inj, f)
        self.proj = _mat(proj, f)
        N = total.dim
        m = self.inj.cols
        n = self.proj.rows
        if self.inj.rows != N or self.proj.cols != N or n + m != N:
            raise DimensionError(f"inclusion {self.inj.shape} and projection {self.proj.shape} "
                                 f"do not fit a total space of dimension {N}")
        if self.inj.field is not f or self.proj.field is not f:
            raise FieldMismatchError("extension maps live in a different field")
        if not (self.proj @ self.inj).is_zero():
            raise ExtensionError("p o i is not zero")
        if rank(self.inj) != m or rank(self.proj) != n:
            raise ExtensionError("i must be injective and p surjective")
        self.dim_g, self.dim_v = n, m
        if N:
            I, P, eye = self.inj.array, self.proj.array, identity_array(N, f)
            C = total.c
            if m:
                # [u, v, .], [u, ., v], [., u, v] vanish
                for A, B, D in ((I, I, eye), (I, eye, I), (eye, I, I)):
                    if nonzero_mask(_bracket_tensor(C, A, B, D), 0).any():
                        raise ExtensionError("the image of i is not an abelian ideal")
                # brackets with one argument in im(i) stay in ker(p)
                for A, B, D in ((I, eye, eye), (eye, I, eye), (eye, eye, I)):
                    img = np.einsum("ijkl,ql->ijkq", _bracket_tensor(C, A, B, D), P) if n else None
                    if img is not None and nonzero_mask(img, 0).any():
                        raise BracketEscapesIdealError("a bracket with an argument in im(i) leaves ker(p)")

    @property
    def field(self):
        return self.total.field

    def canonical_section(self) -> Matrix:
        """``[I; 0]`` when p is the standard projection, else the free-variable right inverse of p."""
        n, N, f = self.dim_g, self.total.dim, self.field
        cols = []
        for k in range(n):
            e = [f.zero] * n
            e[k] = f.one
            cols.append(solve(self.proj, e))
        arr = zeros((N, n), f)
        for k, col in enumerate(cols):
            arr[:, k] = col
        return Matrix.from_array(arr, f)

    def __repr__(self):
        return f"AbelianExtension(dim_g={self.dim_g}, dim_v={self.dim_v}, field={self.field!r})"


def extension_constants(T: LieTripleSystem, rep: Representation, omega: Cochain) -> np.ndarray:
    """Structure constants of g + V with
    ``[x1+u1, x2+u2, x3+u3] = [x1,x2,x3] + omega(x1,x2,x3) + D(x1,x2)u3 - theta(x1,x3)u2 + theta(x2,x3)u1``.
    """
    n, m, f = T.dim, rep.dim_v, T.field
    N = n + m
    C = zeros((N,) * 4, f)
    if n:
        C[:n, :n, :n, :n] = T.c
        if m:
            C[:n, :n, :n, n:] = omega.tensor
            # D(x1, x2) u3 : C[i, j, n+b, n+a] = D[i, j][a, b]
            C[:n, :n, n:, n:] = np.einsum("ijab->ijba", rep.D)
            # -theta(x1, x3) u2 : C[i, n+b, k, n+a] = -theta[i, k][a, b]
            C[:n, n:, :n, n:] = -np.einsum("ikab->ibka", rep.theta)
            # theta(x2, x3) u1 : C[n+b, j, k, n+a] = theta[j, k][a, b]
            C[n:, :n, :n, n:] = np.einsum("jkab->bjka", rep.theta)
    return C


def standard_maps(n: int, m: int, field) -> tuple[Matrix, Matrix]:
    N = n + m
    inj = zeros((N, m), field)
    proj = zeros((n, N), field)
    for a in range(m):
        inj[n + a, a] = field.one
    for i in range(n):
        proj[i, i] = field.one
    return Matrix.from_array(inj, field), Matrix.from_array(proj, field)


def build_extension(T: LieTripleSystem, rep: Representation, omega: Cochain) -> AbelianExtension:
    rep.check_compatible(T)
    if not is_3_cocycle(T, rep, omega):
        raise NotACocycleError("the extension cochain is not a 3-cocycle")
    C = extension_constants(T, rep, omega)
    total = LieTripleSystem(C, T.field, names=list(T.names) + [f"v{a + 1}" for a in range(rep.dim_v)])
    inj, proj = standard_maps(T.dim, rep.dim_v, T.field)
    return AbelianExtension(total, inj, proj)


def _split(E: AbelianExtension, sigma: Matrix) -> np.ndarray:
    """Rows of the inverse of [sigma | i] that read off the V-coordinate."""
    f = E.field
    N, n = E.total.dim, E.dim_g
    Q = zeros((N, N), f)
    Q[:, :n] = sigma.array
    Q[:, n:] = E.inj.array
    Q = Matrix.from_array(Q, f)
    rows = zeros((E.dim_v, N), f)
    for l in range(N):
        e = [f.zero] * N
        e[l] = f.one
        col = solve(Q, e)
        if col is None:
            raise NotASectionError("sigma and i do not span the total space")
        rows[:, l] = col[n:]
    return rows


def check_section(E: AbelianExtension, sigma) -> Matrix:
    sigma = _mat(sigma, E.field)
    if sigma.shape != (E.total.dim, E.dim_g):
        raise DimensionError(f"section must be {E.total.dim}x{E.dim_g}, got {sigma.shape}")
    if not (E.proj @ sigma == Matrix.identity(E.dim_g, E.field)):
        raise NotASectionError("p o sigma is not the identity")
    return sigma


def base_system(E: AbelianExtension) -> LieTripleSystem:
    """The quotient g with bracket ``p [sigma x1, sigma x2, sigma x3]`` (independent of sigma)."""
    sigma = E.canonical_section()
    n = E.dim_g
    if not n:
        return LieTripleSystem(zeros((0,) * 4, E.field), E.field)
    S, P = sigma.array, E.proj.array
    c = np.einsum("ijkl,ql->ijkq", _bracket_tensor(E.total.c, S, S, S), P)
    return LieTripleSystem(c, E.field)


def induced_data(E: AbelianExtension, sigma=None) -> tuple[Representation, Cochain]:
    """The representation and 3-cocycle an extension induces through a section.

    ``theta(x1, x2) u = i^-1 [i u, sigma x1, sigma x2]`` and
    ``omega(x1, x2, x3) = i^-1([sigma x1, sigma x2, sigma x3] - sigma [x1, x2, x3])``.
    """
    sigma = E.canonical_section() if sigma is None else check_section(E, sigma)
    f = E.field
    n, m = E.dim_g, E.dim_v
    if not n or not m:
        return Representation.zero(n, m, f), Cochain.zero(1, n, m, f)
    C, S, I, P = E.total.c, sigma.array, E.inj.array, E.proj.array
    Li = _split(E, sigma)
    acted = np.einsum("pb,qi,rj,pqrl->bijl", I, S, S, C)
    if nonzero_mask(np.einsum("bijl,ql->bijq", acted, P), 0).any():
        raise BracketEscapesIdealError("[i u, sigma x, sigma y] is not in the image of i")
    theta = np.einsum("al,bijl->ijab", Li, acted)
    br = _bracket_tensor(C, S, S, S)
    base = np.einsum("ijkl,ql->ijkq", br, P)
    diff = br - np.einsum("ijkq,lq->ijkl", base, S)
    omega = np.einsum("al,ijkl->ijka", Li, diff)
    return (Representation(theta, f, dim_g=n, dim_v=m), Cochain(1, omega, f, dim_g=n, dim_v=m))


def _require_cocycle(T, rep, omega, name):
    if not is_3_cocycle(T, rep, omega):
        raise NotACocycleError(f"{name} is not a 3-cocycle")


def are_equivalent(T: LieTripleSystem, rep: Representation, omega: Cochain, omega2: Cochain) -> Matrix | None:
    """A witness nu: g -> V with ``omega - omega2 = delta(nu)``, or None."""
    _require_cocycle(T, rep, omega, "first cochain")
    _require_cocycle(T, rep, omega2, "second cochain")
    return is_coboundary(T, rep, omega - omega2)


def equivalence_map(T: LieTripleSystem, rep: Representation, omega: Cochain, omega2: Cochain, nu) -> LtsMorphism:
    """``F(x + u) = x + nu(x) + u`` from the omega-extension to the omega2-extension."""
    f = T.field
    n, m = T.dim, rep.dim_v
    nu = _mat(nu, f)
    if nu.shape != (m, n):
        raise DimensionError(f"witness must be {m}x{n}, got {nu.shape}")
    F = identity_array(n + m, f)
    F[n:, :n] = nu.array
    F = Matrix.from_array(F, f)
    E1 = build_extension(T, rep, omega)
    E2 = build_extension(T, rep, omega2)
    if not is_homomorphism(E1.total, E2.total, F):
        raise InvalidWitnessError("the block map is not a homomorphism of the extensions")
    if not (F @ E1.inj == E2.inj and E2.proj @ F == E1.proj):
        raise InvalidWitnessError("the block map does not commute with i and p")
    return LtsMorphism(n + m, n + m, F)


def extensions_equivalent(E1: AbelianExtension, E2: AbelianExtension) -> Matrix | None:
    """Witness for equivalence of two arbitrary extensions of the same g by the same V.

    Both are read through their canonical sections; equivalent extensions
    induce the same representation, and then the cocycles must be cohomologous.
    """
    if (E1.dim_g, E1.dim_v) != (E2.dim_g, E2.dim_v) or E1.field is not E2.field:
        raise DimensionError("extensions of different shapes cannot be compared")
    T1, T2 = base_system(E1), base_system(E2)
    if not T1 == T2:
        raise ExtensionError("the extensions have different quotient systems")
    rep1, w1 = induced_data(E1)
    rep2, w2 = induced_data(E2)
    if not rep1 == rep2:
        return None
    return are_equivalent(T1, rep1, w1, w2)


@dataclass
class Classification:
    h3_dim: int
    representatives: list[Cochain]
    pairwise_inequivalent: bool
    cochain_dim: int
    cocycle_dim: int
    coboundary_dim: int


def classify_extensions(T: LieTripleSystem, rep: Representation) -> Classification:
    """H^3 dimension and one cocycle per basis class, cross-checked to be inequivalent."""
    result = cohomology_dim(T, rep, 3)
    reps = result.representatives
    # representatives are cocycles by construction, so only coboundary membership is tested
    ok = all(is_coboundary(T, rep, r) is None for r in reps)
    ok = ok and all(is_coboundary(T, rep, a - b) is None for a, b in combinations(reps, 2))
    return Classification(h3_dim=result.dim, representatives=reps, pairwise_inequivalent=ok,
                          cochain_dim=result.cochain_dim, cocycle_dim=result.cocycle_dim,
                          coboundary_dim=result.coboundary_dim)
