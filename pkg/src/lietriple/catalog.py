"""Small named Lie triple systems, representations, and random valid instances.

Random instances are never random tensors: they come from Lie algebras
(whose double bracket is automatically a Lie triple system), from basis
changes of known systems, or from a filtered search at dimension 2.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import numpy as np

from .fields import QQ, Field
from .linalg import Matrix, as_array, rank, zeros
from .lts import LieTripleSystem, from_lie_algebra, lts_violations
from .representation import Representation, adjoint_rep, zero_rep


def t2(field: Field = QQ) -> LieTripleSystem:
    """dim 2 with [e1, e2, e1] = e2 and [e2, e1, e1] = -e2."""
    return LieTripleSystem.from_sparse(2, {(0, 1, 0): {1: 1}, (1, 0, 0): {1: -1}}, field)


def zero_lts(n: int, field: Field = QQ) -> LieTripleSystem:
    return LieTripleSystem(zeros((n,) * 4, field), field)


def lie_constants(n: int, brackets: dict, field: Field = QQ) -> np.ndarray:
    """Antisymmetric Lie structure constants from ``{(i, j): {k: value}}`` with i < j."""
    c = zeros((n, n, n), field)
    for (i, j), terms in brackets.items():
        for k, v in terms.items():
            c[i, j, k] = field(v)
            c[j, i, k] = -field(v)
    return c


SL2_BRACKETS = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}  # basis h, e, f
SO3_BRACKETS = {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}
HEISENBERG_BRACKETS = {(0, 1): {2: 1}}


def sl2_lie(field: Field = QQ) -> np.ndarray:
    return lie_constants(3, SL2_BRACKETS, field)


def sl2(field: Field = QQ) -> LieTripleSystem:
    return from_lie_algebra(3, sl2_lie(field), field, names=["h", "e", "f"])


def so3(field: Field = QQ) -> LieTripleSystem:
    return from_lie_algebra(3, lie_constants(3, SO3_BRACKETS, field), field)


def heisenberg(field: Field = QQ) -> LieTripleSystem:
    return from_lie_algebra(3, lie_constants(3, HEISENBERG_BRACKETS, field), field)


def sl2_standard_rho(field: Field = QQ) -> list[np.ndarray]:
    h = as_array([[1, 0], [0, -1]], field)
    e = as_array([[0, 1], [0, 0]], field)
    f = as_array([[0, 0], [1, 0]], field)
    return [h, e, f]


def lie_module_rep(rho: list[np.ndarray], field: Field = QQ) -> Representation:
    """Representation induced by a Lie-algebra module: theta(x1, x2) = rho(x2) rho(x1).

    This is the bracket ``[u, x1, x2] = [[u, x1], x2]`` inside the
    semidirect product Lie algebra, read as an action on u.
    """
    n = len(rho)
    m = rho[0].shape[0] if n else 0
    theta = zeros((n, n, m, m), field)
    for i, j in product(range(n), repeat=2):
        theta[i, j] = rho[j].dot(rho[i])
    return Representation(theta, field, dim_g=n, dim_v=m)


def change_basis(T: LieTripleSystem, P) -> LieTripleSystem:
    """Constants in the basis given by the columns of the invertible matrix P."""
    from .linalg import solve
    P = P if isinstance(P, Matrix) else Matrix(P, T.field)
    n = T.dim
    cols = []
    for k in range(n):
        e = [T.field.zero] * n
        e[k] = T.field.one
        cols.append(solve(P, e))
    Pinv = np.array(cols, dtype=object).T
    p = P.array
    c = np.einsum("abdq,ai,bj,dk,lq->ijkl", T.c, p, p, p, Pinv)
    return LieTripleSystem(c, T.field)


def random_unimodular(rng: random.Random, n: int, field: Field = QQ, steps: int = 4) -> Matrix:
    """Product of a few elementary integer shears: invertible with small entries."""
    m = np.array(np.eye(n, dtype=int), dtype=object)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            m[i] = m[i] + rng.choice([-1, 1]) * m[j]
    return Matrix(m, field)


def dim2_systems(bound: int = 2, field: Field = QQ) -> list[LieTripleSystem]:
    """All dimension-2 systems with [e1, e2, e_k] entries in [-bound, bound].

    In dimension 2 every bracket is determined by the four coefficients of
    [e1, e2, e_k]; the search keeps those that pass the axioms.
    """
    out = []
    vals = range(-bound, bound + 1)
    for a in product(vals, repeat=4):
        c = zeros((2,) * 4, field)
        for k, l in product(range(2), repeat=2):
            c[0, 1, k, l] = field(a[2 * k + l])
            c[1, 0, k, l] = -field(a[2 * k + l])
        if not lts_violations(c):
            out.append(LieTripleSystem(c, field, validate=False))
    return out


def semidirect_lie(A, field: Field = QQ) -> np.ndarray:
    """Lie algebra F e0 + F^2 with [e0, v] = A v and the F^2 part abelian."""
    c = zeros((3, 3, 3), field)
    for k in range(2):
        for l in range(2):
            c[0, 1 + k, 1 + l] = field(A[l][k])
            c[1 + k, 0, 1 + l] = -field(A[l][k])
    return c


def random_lts(rng: random.Random, field: Field = QQ) -> LieTripleSystem:
    """A random valid system of dimension 2 or 3."""
    kind = rng.randrange(4)
    if kind == 0:
        return rng.choice(_dim2_cache(field))
    if kind == 1:
        A = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        return from_lie_algebra(3, semidirect_lie(A, field), field)
    base = rng.choice([sl2, so3, heisenberg])(field)
    return change_basis(base, random_unimodular(rng, 3, field))


_DIM2: dict = {}


def _dim2_cache(field: Field) -> list[LieTripleSystem]:
    if field not in _DIM2:
        _DIM2[field] = [T for T in dim2_systems(2, field) if T.c.any()]
    return _DIM2[field]


def random_semidirect_pair(rng: random.Random, field: Field = QQ) -> tuple[LieTripleSystem, Representation]:
    """A system from a semidirect Lie algebra with a module where e1, e2 act by zero.

    The e0 action on V is an arbitrary small integer matrix, which is a Lie
    module because e0 spans the abelianization.
    """
    A = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
    lie = semidirect_lie(A, field)
    T = from_lie_algebra(3, lie, field)
    m = rng.choice([1, 2])
    B = as_array([[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)], field)
    rho = [B, zeros((m, m), field), zeros((m, m), field)]
    return T, lie_module_rep(rho, field)


def random_pair(rng: random.Random, field: Field = QQ) -> tuple[LieTripleSystem, Representation]:
    """A random valid (system, representation) with n <= 3 and small module."""
    kind = rng.randrange(3)
    if kind == 0:
        return random_semidirect_pair(rng, field)
    T = random_lts(rng, field)
    if kind == 1 or T.dim > 2:
        return T, adjoint_rep(T)
    return T, zero_rep(T, rng.choice([1, 2]))


def fixture_pairs(field: Field = QQ) -> dict[str, tuple[LieTripleSystem, Representation]]:
    """The named (system, representation) pairs used throughout the test-suite."""
    T2, S, Z2 = t2(field), sl2(field), zero_lts(2, field)
    return {
        "T2-adjoint": (T2, adjoint_rep(T2)),
        "T2-zero1": (T2, zero_rep(T2, 1)),
        "T2-zero2": (T2, zero_rep(T2, 2)),
        "SL2-adjoint": (S, adjoint_rep(S)),
        "SL2-standard": (S, lie_module_rep(sl2_standard_rho(field), field)),
        "SL2-zero1": (S, zero_rep(S, 1)),
        "ZERO2-zero1": (Z2, zero_rep(Z2, 1)),
        "ZERO2-adjoint": (Z2, adjoint_rep(Z2)),
        "ZERO3-zero2": (zero_lts(3, field), zero_rep(zero_lts(3, field), 2)),
    }


def is_invertible(M: Matrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def rational_matrix(rng: random.Random, rows: int, cols: int, bound: int = 3, field: Field = QQ) -> np.ndarray:
    vals = [[field(Fraction(rng.randint(-bound, bound), rng.choice([1, 1, 2]))) for _ in range(cols)]
            for _ in range(rows)]
    return as_array(vals, field) if rows and cols else zeros((rows, cols), field)
