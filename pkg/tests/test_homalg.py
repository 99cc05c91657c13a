import itertools
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from hopfdual.errors import UnsupportedRing
from hopfdual.homalg import (
    FiniteModule, IntMatrix, cokernel_invariants, complex_homology, double_dual_check,
    dual_morphism, kernel_mod, normalize_invariants, pontryagin_dual, scalar_nullspace, smith_form,
)
from hopfdual.kernels import enumerate_kernel
from hopfdual.rings import Extension, Integers, Modular, PAdicTrunc, Product, Rationals, TruncSeries


def int_matrices(max_rows=4, max_cols=4, bound=12):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def sympy_diagonal(rows):
    D = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape))]


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_form_over_Z_matches_sympy(rows):
    S = smith_form(IntMatrix(rows))
    U, D, V = S
    assert U @ IntMatrix(rows) @ V == D
    assert S.U @ S.Uinv == IntMatrix.identity(len(rows))
    assert S.V @ S.Vinv == IntMatrix.identity(len(rows[0]))
    diag = [abs(d) for d in S.diagonal] + [0] * (min(len(rows), len(rows[0])) - len(S.diagonal))
    assert diag == sympy_diagonal(rows)
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)


@settings(max_examples=40, deadline=None)
@given(int_matrices(3, 3, 30), st.sampled_from([9, 8, 25, 27]))
def test_smith_form_mod_prime_power(rows, m):
    S = smith_form(IntMatrix(rows), m)
    U, D, V = S
    assert (U @ IntMatrix(rows) @ V).reduce(m) == D
    p = next(t for t in (2, 3, 5) if m % t == 0)
    want = [np.gcd(d, m) for d in sympy_diagonal(rows)]
    assert [d if d else m for d in S.diagonal] + [m] * (len(want) - len(S.diagonal)) == \
        [int(w) if w % m else m for w in want]
    assert all(d == 0 or d == p ** int(round(np.log(d) / np.log(p))) for d in S.diagonal)


def test_smith_form_needs_prime_power():
    with pytest.raises(UnsupportedRing):
        smith_form(IntMatrix([[2]]), 6)


def image_size(rows, m):
    M = np.asarray(rows, dtype=np.int64)
    imgs = {tuple(M @ np.array(x) % m) for x in itertools.product(range(m), repeat=M.shape[1])}
    return len(imgs)


@settings(max_examples=40, deadline=None)
@given(int_matrices(3, 3, 10), st.sampled_from([4, 6, 9]))
def test_kernel_and_cokernel_orders_by_enumeration(rows, m):
    gens, inv = kernel_mod(IntMatrix(rows), m)
    brute = enumerate_kernel(np.asarray(rows), m)
    assert int(np.prod(inv, dtype=np.int64)) == len(brute)
    for g in gens:
        assert not (np.asarray(rows) @ np.asarray(g) % m).any()
    coker = cokernel_invariants(IntMatrix(rows), m)
    assert int(np.prod(coker, dtype=np.int64)) * image_size(rows, m) == m ** len(rows)


def test_normalize_invariants():
    assert normalize_invariants([2, 3]) == [6]
    assert normalize_invariants([4, 6, 1]) == [2, 12]
    assert normalize_invariants([0, 2]) == [2, 0]


def test_complex_homology_over_Z():
    # real projective plane: C2 -2-> C1 -0-> C0
    assert complex_homology([[2]], [[0]]) == [2]
    # torus: one face with zero boundary into three edges, all edges cycles
    assert complex_homology(IntMatrix.zeros(3, 1), [[0, 0, 0]]) == [0, 0, 0]
    # an acyclic complex Z -1-> Z -0-> 0
    assert complex_homology([[1]], IntMatrix.zeros(0, 1)) == []
    with pytest.raises(ValueError):
        complex_homology([[1]], [[1]])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([3, 4, 9]))
def test_complex_homology_mod_m_by_enumeration(seed, m):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    d0 = [[rng.randrange(m) for _ in range(n)] for _ in range(rng.randint(1, 2))]
    ker = enumerate_kernel(np.asarray(d0), m)
    picks = [ker[rng.randrange(len(ker))] for _ in range(rng.randint(0, 2))]
    d1 = IntMatrix([list(col) for col in zip(*picks)], n, len(picks)) if picks else IntMatrix.zeros(n, 0)
    H = complex_homology(d1, d0, m)
    img = {tuple(np.asarray(d1.entries, dtype=np.int64).reshape(n, -1) @ np.array(x) % m)
           for x in itertools.product(range(m), repeat=d1.cols)} if d1.cols else {(0,) * n}
    assert int(np.prod(H, dtype=np.int64)) * len(img) == len(ker)


def random_module(rng):
    inv = []
    d = 1
    for _ in range(rng.randint(1, 3)):
        d *= rng.choice([2, 3, 2, 1])
        if d > 1:
            inv.append(d)
    return FiniteModule(inv or [rng.choice([2, 3, 5])])


def test_from_orders_normalizes():
    M = FiniteModule.from_orders([2, 3])
    assert M.invariants == [6]
    with pytest.raises(ValueError):
        FiniteModule([3, 2])
    # the order-2 generator cannot go to the order-4 one
    with pytest.raises(ValueError):
        FiniteModule([2, 4], {"a": [[0, 0], [1, 0]]})
    assert FiniteModule([2, 4], {"a": [[1, 1], [0, 1]]}).apply("a", (0, 1)) == (1, 1)


@pytest.mark.parametrize("seed", range(10))
def test_double_dual(seed):
    M = random_module(random.Random(seed))
    assert double_dual_check(M) == (True, True)
    assert pontryagin_dual(pontryagin_dual(M)) == M


def test_double_dual_with_an_action():
    # F_3[x]/x^2 acting on itself: x shifts the coordinates
    M = FiniteModule([3, 3], {"x": [[0, 0], [1, 0]]})
    assert double_dual_check(M) == (True, True)
    D = pontryagin_dual(M)
    assert D.side == "right" and D.action["x"].entries == [[0, 1], [0, 0]]


def test_dual_morphism_is_contravariant():
    M, N, L = FiniteModule([4]), FiniteModule([2, 4]), FiniteModule([8])
    F = IntMatrix([[0], [1]])          # Z/4 -> Z/2 + Z/4
    G = IntMatrix([[4, 2]])            # Z/2 + Z/4 -> Z/8
    lhs = dual_morphism(G @ F, M, L).reduce(4)
    rhs = (dual_morphism(F, M, N) @ dual_morphism(G, N, L)).reduce(4)
    assert lhs == rhs


NULL_RINGS = [Integers(), Rationals(), Modular(9), PAdicTrunc(3, 2), Extension(Modular(3), "w", (1, 0, 1)),
              Product((Integers(), Modular(4))), TruncSeries(Modular(5), "u", 3)]


@pytest.mark.parametrize("A", NULL_RINGS, ids=str)
def test_scalar_nullspace(A):
    rng = random.Random(5)
    for _ in range(5):
        rows = [[A.random(rng) for _ in range(3)] for _ in range(2)]
        x = scalar_nullspace(A, rows)
        assert x is not None and any(not c.is_zero() for c in x)
        for row in rows:
            acc = A.zero()
            for c, xi in zip(row, x):
                acc = acc + c * xi
            assert acc.is_zero()
    assert scalar_nullspace(A, [[A.one(), A.zero()], [A.zero(), A.one()]]) is None


def test_smith_form_worked_examples():
    assert cokernel_invariants(IntMatrix([[2, 0], [0, 3]])) == [6]
    assert cokernel_invariants(IntMatrix.zeros(2, 2)) == [0, 0]
    assert cokernel_invariants(IntMatrix.identity(2)) == []


@settings(max_examples=40, deadline=None)
@given(int_matrices(), st.sampled_from([None, 9, 8, 25]))
def test_smith_transforms_are_unimodular(rows, m):
    S = smith_form(IntMatrix(rows), m)
    for T in (S.U, S.V):
        det = int(sympy.Matrix(T.entries).det())
        if m is None:
            assert det in (1, -1)
        else:
            assert np.gcd(det, m) == 1


def test_homology_worked_examples():
    from hopfdual.ore import nabla_matrix, two_term_cohomology
    assert complex_homology(IntMatrix.zeros(1, 0), [[2]], 4) == [2]
    assert len(enumerate_kernel(np.array([[2]]), 4)) == 2
    assert complex_homology(IntMatrix.zeros(1, 0), [[0]], 4) == [4]
    H = complex_homology(IntMatrix.zeros(5, 0), nabla_matrix(3, 1, 5), 3)
    assert H == two_term_cohomology(3, 1, 5).H0 == [3, 3, 3]


def test_pontryagin_worked_examples():
    assert pontryagin_dual(FiniteModule([4])).invariants == [4]
    assert pontryagin_dual(FiniteModule.from_orders([2, 3])).invariants == [6]
