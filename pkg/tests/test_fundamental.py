import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from lietriple.catalog import random_lts, sl2, t2, zero_lts
from lietriple.fundamental import (FundamentalElement, ad_homomorphism_check, circle, verify_leibniz,
                                   verify_leibniz_rep)
from lietriple.linalg import Matrix, zeros
from lietriple.representation import hom_bracket_L, hom_bracket_R, hom_module_actions

from conftest import PAIRS


def test_circle_on_t2():
    T = t2()
    x = FundamentalElement.pair(T, [1, 0], [0, 1])
    assert circle(T, x, x) == FundamentalElement.pair(T, [0, 1], [0, 1])


def test_circle_diagonal_pair_vanishes():
    S = sl2()
    x = FundamentalElement.pair(S, [1, 2, -1], [1, 2, -1])
    y = FundamentalElement.pair(S, [0, 1, 3], [2, 0, 1])
    assert circle(S, x, y).coeffs.is_zero()


def test_circle_on_zero_system():
    Z = zero_lts(3)
    a = FundamentalElement(Matrix([[1, 2, 0], [0, 1, 1], [3, 0, 1]]))
    assert circle(Z, a, a).coeffs.is_zero()


def test_fundamental_basis_order():
    T = sl2()
    b = FundamentalElement.basis(T, 1 * 3 + 2)
    assert b == FundamentalElement.pair(T, [0, 1, 0], [0, 0, 1])


@pytest.mark.parametrize("T", [t2(), sl2(), zero_lts(2), zero_lts(3)], ids=["T2", "SL2", "Z2", "Z3"])
def test_leibniz_and_ad_homomorphism(T):
    assert verify_leibniz(T)
    assert ad_homomorphism_check(T)


def _naive_leibniz(T):
    n = T.dim
    basis = [FundamentalElement.basis(T, a) for a in range(n * n)]
    for x, y, z in product(basis, repeat=3):
        lhs = circle(T, x, circle(T, y, z)).coeffs
        rhs = circle(T, circle(T, x, y), z).coeffs + circle(T, y, circle(T, x, z)).coeffs
        if not lhs == rhs:
            return False
    return True


def test_leibniz_matches_naive_loop():
    assert _naive_leibniz(t2())


def test_leibniz_fails_on_broken_bracket():
    c = zeros((2,) * 4, t2().field)
    c[0, 1, 0, 1] = 1  # missing the antisymmetric partner
    from lietriple.lts import LieTripleSystem
    T = LieTripleSystem(c, validate=False)
    assert verify_leibniz(T) == _naive_leibniz(T)


@given(st.integers(0, 10 ** 6))
def test_random_systems_are_leibniz(seed):
    T = random_lts(random.Random(seed))
    assert verify_leibniz(T) and ad_homomorphism_check(T)


# Leibniz representations

def _literal_axioms(T, rep):
    """Evaluate LLM/MLL/LML/MMM literally with the Hom(g, V) brackets on basis elements."""
    n, m = T.dim, rep.dim_v
    L = [FundamentalElement.basis(T, a) for a in range(n * n)]
    M = []
    for k in range(n * m):
        arr = zeros(n * m, T.field)
        arr[k] = 1
        M.append(Matrix.from_array(arr.reshape(m, n), T.field))
    bl = lambda x, p: hom_bracket_L(T, rep, x, p)  # noqa: E731
    brr = lambda p, x: hom_bracket_R(T, rep, p, x)  # noqa: E731
    failed = set()
    for x, y in product(L, repeat=2):
        xy = circle(T, x, y)
        for p in M:
            if not bl(xy, p) == bl(x, bl(y, p)) - bl(y, bl(x, p)):
                failed.add("LLM")
            if not brr(p, xy) == brr(brr(p, x), y) + bl(x, brr(p, y)):
                failed.add("MLL")
            if not bl(x, brr(p, y)) == brr(bl(x, p), y) + brr(p, xy):
                failed.add("LML")
            if not (brr(brr(p, x), y) + brr(bl(x, p), y)).is_zero():
                failed.add("MMM")
    return failed


@pytest.mark.parametrize("name", ["T2-adjoint", "T2-zero1", "ZERO2-adjoint"])
def test_hom_module_matches_literal_axioms(name):
    T, rep = PAIRS[name]
    left, right = hom_module_actions(T, rep)
    report = verify_leibniz_rep(T, left, right, T.dim * rep.dim_v)
    assert report.ok
    assert _literal_axioms(T, rep) == set()


def test_zero_actions_pass():
    T = sl2()
    zero = [Matrix.zeros(2, 2) for _ in range(9)]
    assert verify_leibniz_rep(T, zero, zero, 2).ok


def test_left_action_removed_breaks_mll_and_mmm():
    T, rep = PAIRS["T2-adjoint"]
    left, right = hom_module_actions(T, rep)
    zero = [Matrix.zeros(4, 4) for _ in left]
    report = verify_leibniz_rep(T, zero, right, 4)
    assert not report.axioms["MLL"] and not report.axioms["MMM"]
    assert report.axioms["LLM"]
    assert report.remark_consistent


def test_right_action_removed_keeps_all_axioms():
    # with [., .]_R = 0 every right-hand term vanishes and LLM is untouched
    T, rep = PAIRS["T2-adjoint"]
    left, _ = hom_module_actions(T, rep)
    zero = [Matrix.zeros(4, 4) for _ in left]
    assert verify_leibniz_rep(T, left, zero, 4).ok


def test_callable_actions():
    T, rep = PAIRS["T2-adjoint"]
    left, right = hom_module_actions(T, rep)
    report = verify_leibniz_rep(T, lambda a: left[a], lambda a: right[a], 4)
    assert report.ok


@given(st.integers(0, 10 ** 6), st.booleans())
def test_any_two_of_the_trio_force_the_third(seed, perturb_left):
    """The relation between LML, MLL and MMM is pure algebra, so it survives perturbation."""
    rng = random.Random(seed)
    T, rep = PAIRS["T2-adjoint"]
    left, right = hom_module_actions(T, rep)
    acts = [list(left), list(right)]
    side = acts[0 if perturb_left else 1]
    a, k, l = rng.randrange(4), rng.randrange(4), rng.randrange(4)
    arr = side[a].array.copy()
    arr[k, l] = arr[k, l] + rng.choice([-1, 1])
    side[a] = Matrix.from_array(arr, T.field)
    report = verify_leibniz_rep(T, acts[0], acts[1], 4)
    trio = [report.axioms[x] for x in ("LML", "MLL", "MMM")]
    assert sum(trio) != 2
