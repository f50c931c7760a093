import random
from itertools import product

import pytest

from lietriple.catalog import t2, zero_lts
from lietriple.cochains import Cochain, cocycle_basis_sparse, is_3_cocycle, yamaguti_delta
from lietriple.errors import (BracketEscapesIdealError, DimensionError, ExtensionError, InvalidWitnessError,
                              NotACocycleError, NotASectionError)
from lietriple.extension import (AbelianExtension, are_equivalent, base_system, build_extension,
                                 classify_extensions, equivalence_map, extension_constants,
                                 extensions_equivalent, induced_data, standard_maps)
from lietriple.fields import QQ
from lietriple.linalg import Matrix, zeros
from lietriple.lts import LieTripleSystem, is_homomorphism, verify_lts
from lietriple.representation import adjoint_rep, zero_rep

import oracles as O
from conftest import PAIRS, plain


def _cocycles(T, rep):
    return [Cochain.from_sparse(1, z, T.dim, rep.dim_v, QQ) for z in cocycle_basis_sparse(T, rep, 1)]


def _random_nu(rng, n, m):
    return Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)])


_CLASSES = {}


def _classes(name):
    if name not in _CLASSES:
        _CLASSES[name] = classify_extensions(*PAIRS[name]).representatives
    return _CLASSES[name]


def _delta0(T, rep, nu):
    return yamaguti_delta(T, rep, Cochain.from_hom(nu))


ROUNDTRIP = ["T2-adjoint", "T2-zero1", "T2-zero2", "ZERO2-zero1", "ZERO2-adjoint", "SL2-standard", "SL2-zero1"]


def test_extension_constants_match_formula():
    T, rep = PAIRS["T2-adjoint"]
    (omega,) = classify_extensions(T, rep).representatives
    C = plain(extension_constants(T, rep, omega))
    c, theta, W = plain(T.c), plain(rep.theta), plain(omega.tensor)
    n, m = 2, 2
    for a, b, d in product(range(n + m), repeat=3):
        xs = [O.unit(n + m, k) for k in (a, b, d)]
        g = [x[:n] for x in xs]
        u = [x[n:] for x in xs]
        top = O.br(c, *g)
        low = O.add(O.multilinear(W, n, m)(*g),
                    O.matvec(O.dee_of(theta, g[0], g[1]), u[2]),
                    O.neg(O.matvec(O.theta_of(theta, g[0], g[2]), u[1])),
                    O.matvec(O.theta_of(theta, g[1], g[2]), u[0]))
        assert C[a][b][d] == top + low


@pytest.mark.parametrize("name", ROUNDTRIP)
def test_roundtrip_on_cocycle_basis(name):
    T, rep = PAIRS[name]
    for omega in _cocycles(T, rep):
        E = build_extension(T, rep, omega)
        assert verify_lts(E.total.dim, E.total.c).ok
        if E.total.dim <= 4:
            assert O.lts_failed_axioms(plain(E.total.c)) == set()
        rep2, omega2 = induced_data(E)
        assert rep2 == rep and omega2 == omega
        assert base_system(E) == T


@pytest.mark.parametrize("name", ["T2-adjoint", "ZERO2-zero1", "T2-zero2"])
def test_section_change_shifts_by_coboundary(name):
    T, rep = PAIRS[name]
    rng = random.Random(name)
    n, m = T.dim, rep.dim_v
    for omega in _cocycles(T, rep):
        E = build_extension(T, rep, omega)
        for _ in range(10):
            nu = _random_nu(rng, n, m)
            sigma = Matrix.identity(n).array.tolist() + nu.array.tolist()
            rep2, omega2 = induced_data(E, Matrix(sigma))
            assert rep2 == rep
            assert omega2 - omega == _delta0(T, rep, nu)


def test_bad_sections_rejected():
    T, rep = PAIRS["T2-adjoint"]
    E = build_extension(T, rep, Cochain.zero(1, 2, 2, QQ))
    with pytest.raises(NotASectionError):
        induced_data(E, Matrix([[1, 0], [0, 0], [0, 0], [0, 1]]))
    with pytest.raises(DimensionError):
        induced_data(E, Matrix.identity(4))


def test_non_cocycle_rejected():
    T, rep = PAIRS["T2-adjoint"]
    arr = zeros((2, 2, 2, 2), QQ)
    arr[0, 0, 1, 0] = QQ(1)
    with pytest.raises(NotACocycleError):
        build_extension(T, rep, Cochain(1, arr, QQ))


def test_trivial_extension_is_semidirect():
    T, rep = PAIRS["T2-zero1"]
    E = build_extension(T, rep, Cochain.zero(1, 2, 1, QQ))
    assert E.total.names[-1] == "v1"
    # zero module and zero cocycle: the total space is T2 plus a central line
    assert E.total.c[:2, :2, :2, :2].tolist() == T.c.tolist()
    assert not E.total.c[..., 2].any()


# equivalence

@pytest.mark.parametrize("seed", range(20))
def test_coboundary_shift_gives_witness(seed):
    rng = random.Random(seed)
    name = rng.choice(["T2-adjoint", "T2-zero2", "ZERO2-zero1", "SL2-standard"])
    T, rep = PAIRS[name]
    reps = _classes(name)
    omega = reps[0] if reps else Cochain.zero(1, T.dim, rep.dim_v, QQ)
    nu = _random_nu(rng, T.dim, rep.dim_v)
    shifted = omega + _delta0(T, rep, nu)
    witness = are_equivalent(T, rep, shifted, omega)
    assert witness is not None
    assert _delta0(T, rep, witness) == shifted - omega
    F = equivalence_map(T, rep, shifted, omega, witness)
    assert is_homomorphism(build_extension(T, rep, shifted).total, build_extension(T, rep, omega).total, F)


def test_equivalence_is_an_equivalence_relation():
    T, rep = PAIRS["T2-adjoint"]
    rng = random.Random(1)
    (w,) = classify_extensions(T, rep).representatives
    nu1, nu2 = _random_nu(rng, 2, 2), _random_nu(rng, 2, 2)
    w1 = w + _delta0(T, rep, nu1)
    w2 = w1 + _delta0(T, rep, nu2)
    # reflexive: the zero map
    assert are_equivalent(T, rep, w, w).is_zero()
    equivalence_map(T, rep, w, w, Matrix.zeros(2, 2))
    # symmetric: the negated witness
    equivalence_map(T, rep, w1, w, nu1)
    equivalence_map(T, rep, w, w1, -nu1)
    # transitive: the sum
    equivalence_map(T, rep, w2, w, nu1 + nu2)


def test_perturbed_witness_rejected():
    T, rep = PAIRS["T2-adjoint"]
    (w,) = classify_extensions(T, rep).representatives
    nu = Matrix([[1, 2], [0, -1]])
    shifted = w + _delta0(T, rep, nu)
    equivalence_map(T, rep, shifted, w, nu)
    # [[0, 0], [0, 1]] has zero coboundary and would still be a witness; this direction does not
    step = Matrix([[1, 0], [0, 0]])
    assert not _delta0(T, rep, step).is_zero()
    bad = nu + step
    with pytest.raises(InvalidWitnessError):
        equivalence_map(T, rep, shifted, w, bad)


def test_inequivalent_classes():
    T, rep = PAIRS["T2-adjoint"]
    (w,) = classify_extensions(T, rep).representatives
    zero = Cochain.zero(1, 2, 2, QQ)
    assert are_equivalent(T, rep, w, zero) is None
    assert are_equivalent(T, rep, w.scaled(2), w) is None
    with pytest.raises(NotACocycleError):
        arr = zeros((2, 2, 2, 2), QQ)
        arr[0, 0, 1, 0] = QQ(1)
        are_equivalent(T, rep, Cochain(1, arr, QQ), zero)


def test_extensions_equivalent_through_basis_change():
    T, rep = PAIRS["T2-adjoint"]
    (w,) = classify_extensions(T, rep).representatives
    nu = Matrix([[2, 0], [1, 1]])
    E1 = build_extension(T, rep, w)
    E2 = build_extension(T, rep, w + _delta0(T, rep, nu))
    assert extensions_equivalent(E1, E2) is not None
    assert extensions_equivalent(E1, build_extension(T, rep, Cochain.zero(1, 2, 2, QQ))) is None


def test_extensions_with_different_modules_are_inequivalent():
    T = t2()
    E1 = build_extension(T, adjoint_rep(T), Cochain.zero(1, 2, 2, QQ))
    E2 = build_extension(T, zero_rep(T, 2), Cochain.zero(1, 2, 2, QQ))
    assert extensions_equivalent(E1, E2) is None


# classification

def test_zero_system_classification():
    T, rep = PAIRS["ZERO2-zero1"]
    cl = classify_extensions(T, rep)
    assert cl.h3_dim == 2 and cl.pairwise_inequivalent
    assert (cl.cochain_dim, cl.cocycle_dim, cl.coboundary_dim) == (2, 2, 0)


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_classification_counts(name):
    T, rep = PAIRS[name]
    cl = classify_extensions(T, rep)
    assert cl.pairwise_inequivalent
    assert cl.h3_dim == len(cl.representatives) == cl.cocycle_dim - cl.coboundary_dim
    if T.dim <= 2 or rep.dim_v == 1:
        assert cl.h3_dim == O.cohomology_dim_oracle(plain(T.c), plain(rep.theta), rep.dim_v, 1)


# extensions given directly

def test_extension_validation():
    T, rep = PAIRS["T2-adjoint"]
    E = build_extension(T, rep, Cochain.zero(1, 2, 2, QQ))
    inj, proj = standard_maps(2, 2, QQ)
    with pytest.raises(DimensionError):
        AbelianExtension(E.total, inj, Matrix.identity(4))
    with pytest.raises(ExtensionError):
        AbelianExtension(E.total, Matrix([[1, 0], [0, 0], [0, 0], [0, 1]]), proj)
    # a full LTS with the wrong "ideal": v-directions taken to be the g-part
    swap = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    with pytest.raises(ExtensionError):
        AbelianExtension(E.total, swap @ inj, proj @ swap)


def test_bracket_escaping_ideal_detected():
    # on T2 + span(v) with [v, e2, e1] = e2: v spans an abelian subspace but not an ideal
    c = zeros((3,) * 4, QQ)
    c[0, 1, 0, 1], c[1, 0, 0, 1] = QQ(1), QQ(-1)
    total = LieTripleSystem(c, QQ, validate=False)
    inj, proj = standard_maps(2, 1, QQ)
    E = AbelianExtension(total, inj, proj)  # the plain T2 + central line is fine
    c2 = c.copy()
    c2[2, 1, 0, 1], c2[1, 2, 0, 1] = QQ(1), QQ(-1)
    with pytest.raises((BracketEscapesIdealError, ExtensionError)):
        AbelianExtension(LieTripleSystem(c2, QQ, validate=False), inj, proj)
    assert E.dim_v == 1


def test_zero_dimensional_module():
    T = zero_lts(2)
    E = build_extension(T, zero_rep(T, 0), Cochain.zero(1, 2, 0, QQ))
    rep2, omega2 = induced_data(E)
    assert rep2.dim_v == 0 and omega2.is_zero()
    assert is_3_cocycle(T, zero_rep(T, 0), omega2)
