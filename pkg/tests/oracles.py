"""Reference implementations used to cross-check the package.

Everything here is deliberately naive: nested Python loops over basis
tuples with Fractions, or sympy for rank/nullspace.  None of it imports
the package's elimination or assembly code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy


def tolist4(c) -> list:
    return [[[[Fraction(int(v.numerator), int(v.denominator)) if hasattr(v, "denominator") else v
               for v in c[i][j][k]] for k in range(len(c))] for j in range(len(c))] for i in range(len(c))]


def br(c, x, y, z):
    """Trilinear bracket of coordinate vectors from raw constants."""
    n = len(c)
    out = [0] * n
    for i, j, k in product(range(n), repeat=3):
        s = x[i] * y[j] * z[k]
        if s:
            for l in range(n):
                out[l] += s * c[i][j][k][l]
    return out


def unit(n, i):
    v = [0] * n
    v[i] = 1
    return v


def add(*vs):
    return [sum(t) for t in zip(*vs)]


def neg(v):
    return [-a for a in v]


def lts_failed_axioms(c) -> set[str]:
    """Names of the axioms that fail, by direct evaluation on basis tuples."""
    n = len(c)
    e = [unit(n, i) for i in range(n)]
    failed = set()
    for i, j, k in product(range(n), repeat=3):
        if any(add(br(c, e[i], e[j], e[k]), br(c, e[j], e[i], e[k]))):
            failed.add("Lts01")
        if any(add(br(c, e[i], e[j], e[k]), br(c, e[j], e[k], e[i]), br(c, e[k], e[i], e[j]))):
            failed.add("Lts02")
    for u, v, x, y, z in product(range(n), repeat=5):
        lhs = br(c, e[u], e[v], br(c, e[x], e[y], e[z]))
        rhs = add(br(c, br(c, e[u], e[v], e[x]), e[y], e[z]),
                  br(c, e[x], br(c, e[u], e[v], e[y]), e[z]),
                  br(c, e[x], e[y], br(c, e[u], e[v], e[z])))
        if lhs != rhs:
            failed.add("Lts03")
            break
    return failed


def matvec(M, v):
    return [sum(M[r][k] * v[k] for k in range(len(v))) for r in range(len(M))]


def theta_of(theta, x, y):
    """Matrix theta(x, y) from raw blocks theta[i][j] (m x m lists)."""
    n = len(theta)
    m = len(theta[0][0]) if n else 0
    out = [[0] * m for _ in range(m)]
    for i, j in product(range(n), repeat=2):
        s = x[i] * y[j]
        if s:
            for a, b in product(range(m), repeat=2):
                out[a][b] += s * theta[i][j][a][b]
    return out


def dee_of(theta, x, y):
    A, B = theta_of(theta, y, x), theta_of(theta, x, y)
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def yamaguti_delta(c, theta, m, omega, arity_in):
    """The coboundary formula for the general degree, evaluated literally.

    ``omega`` maps a tuple of basis-coordinate vectors (length ``arity_in``)
    to a vector in V; it must be multilinear.  Returns a function of
    ``arity_in + 2`` vectors.
    """
    N = (arity_in + 1) // 2  # output arity 2N + 1

    def out(*xs):
        assert len(xs) == 2 * N + 1
        x = (None,) + xs  # 1-based positions
        total = matvec(theta_of(theta, x[2 * N], x[2 * N + 1]), omega(*x[1:2 * N]))
        total = add(total, neg(matvec(theta_of(theta, x[2 * N - 1], x[2 * N + 1]),
                                      omega(*(x[1:2 * N - 1] + (x[2 * N],))))))
        for k in range(1, N + 1):
            rest = tuple(x[p] for p in range(1, 2 * N + 2) if p not in (2 * k - 1, 2 * k))
            term = matvec(dee_of(theta, x[2 * k - 1], x[2 * k]), omega(*rest))
            total = add(total, term if (N + k) % 2 == 0 else neg(term))
            for j in range(2 * k + 1, 2 * N + 2):
                args = tuple(br(c, x[2 * k - 1], x[2 * k], x[p]) if p == j else x[p]
                             for p in range(1, 2 * N + 2) if p not in (2 * k - 1, 2 * k))
                term = omega(*args)
                total = add(total, term if (N + k + 1) % 2 == 0 else neg(term))
        return total

    return out


def multilinear(tensor, n, m):
    """Turn a full tensor (nested lists, last axis V) into a multilinear function."""

    def f(*xs):
        out = [0] * m
        for idx in product(range(n), repeat=len(xs)):
            s = 1
            for x, i in zip(xs, idx):
                s *= x[i]
                if not s:
                    break
            if s:
                t = tensor
                for i in idx:
                    t = t[i]
                for a in range(m):
                    out[a] += s * t[a]
        return out

    return f


def tensor_of(func, n, r):
    """Evaluate a multilinear function on all basis tuples: dict idx -> vector."""
    return {idx: func(*(unit(n, i) for i in idx)) for idx in product(range(n), repeat=r)}


def constraint_rows(n, m, level):
    """Both defining families of the cochain space, one row per basis instance, by enumeration."""
    r = 2 * level + 1
    pos = {idx: p for p, idx in enumerate(product(range(n), repeat=r))}
    rows = []
    if r < 3:
        return rows, len(pos) * m
    for head in product(range(n), repeat=r - 3):
        for x, y, z in product(range(n), repeat=3):
            for a in range(m):
                # polarized form of omega(..., x, x, y) = 0
                row = {}
                for idx, s in ((head + (x, y, z), 1), (head + (y, x, z), 1)):
                    key = pos[idx] * m + a
                    row[key] = row.get(key, 0) + s
                rows.append(row)
                row = {}
                for idx in (head + (x, y, z), head + (y, z, x), head + (z, x, y)):
                    key = pos[idx] * m + a
                    row[key] = row.get(key, 0) + 1
                rows.append(row)
    return rows, len(pos) * m


def sympy_rank(rows, ncols) -> int:
    if not rows:
        return 0
    M = sympy.zeros(len(rows), ncols)
    for r, row in enumerate(rows):
        for k, v in row.items():
            M[r, k] = v
    return M.rank()


def constrained_dim(n, m, level) -> int:
    rows, ncols = constraint_rows(n, m, level)
    return ncols - sympy_rank(rows, ncols)


def sympy_matrix(M) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(int(v.numerator), int(v.denominator)) for v in row] for row in M])


def delta_columns(c, theta, m, level):
    """Literal coboundary applied to every full basis tensor of the given level.

    Returns a sympy matrix whose column (idx, a) is the image of the basis
    tensor with a single 1 at position idx, component a.
    """
    n = len(c)
    r_in, r_out = 2 * level + 1, 2 * level + 3
    outs = list(product(range(n), repeat=r_out))
    cols = []
    for idx in product(range(n), repeat=r_in):
        for a in range(m):
            def omega(*xs, idx=idx, a=a):
                s = 1
                for x, i in zip(xs, idx):
                    s *= x[i]
                v = [0] * m
                v[a] = s
                return v
            f = yamaguti_delta(c, theta, m, omega, r_in)
            col = []
            for t in outs:
                col += f(*(unit(n, i) for i in t))
            cols.append(col)
    M = sympy.zeros(len(outs) * m, len(cols))
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            if v:
                M[i, j] = sympy.Rational(int(Fraction(v).numerator), int(Fraction(v).denominator))
    return M


def cohomology_dim_oracle(c, theta, m, level) -> int:
    """dim of (constrained cocycles) / (delta of the constrained space one level down), by sympy ranks."""
    n = len(c)
    rows, ncols = constraint_rows(n, m, level)
    C = sympy.zeros(len(rows), ncols)
    for r, row in enumerate(rows):
        for k, v in row.items():
            C[r, k] = v
    Z = C.col_join(delta_columns(c, theta, m, level)) if rows else delta_columns(c, theta, m, level)
    z_dim = ncols - Z.rank()
    if level == 0:
        return z_dim
    low_rows, low_cols = constraint_rows(n, m, level - 1)
    d = delta_columns(c, theta, m, level - 1)
    if low_rows:
        K = sympy.zeros(len(low_rows), low_cols)
        for r, row in enumerate(low_rows):
            for k, v in row.items():
                K[r, k] = v
        d = d * sympy.Matrix.hstack(*K.nullspace())
    return z_dim - d.rank()


def adjoint_theta(c):
    """theta(x1, x2) w = [w, x1, x2] as raw blocks."""
    n = len(c)
    return [[[[c[w][i][j][l] for w in range(n)] for l in range(n)] for j in range(n)] for i in range(n)]


def is_deformation(c, omega) -> bool:
    """omega is an LTS bracket and a constrained adjoint 3-cocycle, all checked literally."""
    n = len(c)
    if lts_failed_axioms(omega):
        return False
    f = yamaguti_delta(c, adjoint_theta(c), n, multilinear(omega, n, n), 3)
    return not any(any(v) for v in tensor_of(f, n, 5).values())
