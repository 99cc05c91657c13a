import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfdual.catalog import F3, divided_powers, pair_groupoid, tensor_divided_powers
from hopfdual.dual import (
    NoWitness, Witness, act_on_A, continuity_check, dual_basis, dual_from_values,
    dual_law_report, dual_mul, dual_unit, eps_dual, etaL_dual, random_dual, restrictive_witness,
    right_A_action,
)
from hopfdual.errors import FiltrationViolation, WindowExceeded
from hopfdual.freemod import TensorVector, Vector
from oracles import delta_pairing_oracle

D9 = divided_powers()
G = pair_groupoid()


def test_divided_power_duality_table():
    oracle = delta_pairing_oracle(D9)
    eye = np.eye(9, dtype=np.int64)
    for a in range(9):
        for b in range(9 - a):
            got = dual_mul(dual_basis(D9, a), dual_basis(D9, b))
            assert [int(c.payload) for c in got.table()] == list(oracle(eye[a], eye[b]))
            assert got == dual_basis(D9, a + b)


def test_divided_power_products_past_the_window_vanish():
    # a + b >= 9 lands outside the window, so nothing inside it survives
    assert dual_mul(dual_basis(D9, 4), dual_basis(D9, 5)) == dual_from_values(D9, [0] * 9)


def morita_matrix(D):
    """Columns are D(etaR(e_j)) in Z^2."""
    cols = [act_on_A(D, e).payload for e in G.base.gens()]
    return np.array([[cols[j][i] for j in range(2)] for i in range(2)], dtype=np.int64)


def matrix_units():
    A = G.base
    e = A.gens()
    out = []
    for i in range(2):
        for j in range(2):
            # f_j -> e_i, f_other -> 0
            out.append(dual_from_values(G, [e[i] if t == j else A.zero() for t in range(2)]))
    return out


def test_morita_table_is_matrix_composition():
    units = matrix_units()
    mats = [morita_matrix(D) for D in units]
    assert sorted(m.tobytes() for m in mats) == sorted(
        np.eye(4, dtype=np.int64)[r].reshape(2, 2).tobytes() for r in range(4))
    for D2, M2 in zip(units, mats):
        for D1, M1 in zip(units, mats):
            assert (morita_matrix(dual_mul(D2, D1)) == M2 @ M1).all()
    assert (morita_matrix(dual_unit(G)) == np.eye(2, dtype=np.int64)).all()


@pytest.mark.parametrize("P, W", [(D9, None), (G, None), (tensor_divided_powers(), 10)],
                         ids=["divpow", "pair", "tensor"])
def test_dual_laws(P, W):
    rep = dual_law_report(P, random.Random(1), 30, P.window(W))
    assert rep.all_pass, rep.lines()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dual_mul_bilinear(seed):
    rng = random.Random(seed)
    A, B, C = (random_dual(D9, rng) for _ in range(3))
    s = F3(rng.randrange(3))
    assert dual_mul(A + B, C) == dual_mul(A, C) + dual_mul(B, C)
    assert dual_mul(A, B + C) == dual_mul(A, B) + dual_mul(A, C)
    assert dual_mul(A.scale(s), B) == dual_mul(A, B).scale(s)


def test_continuity_surrogate():
    rng = random.Random(3)
    for _ in range(10):
        assert continuity_check(random_dual(D9, rng), random_dual(D9, rng), rng)


def test_dual_mul_reports_reads():
    trace = {}
    dual_mul(dual_basis(D9, 1), dual_basis(D9, 2), D9.window(4), trace=trace)
    # D1 is read on every right factor, D2 only where D1 is nonzero
    assert trace["D1"] == {0, 1, 2, 3}
    assert trace["D2"] == {0, 1}


def test_dual_mul_needs_the_factor_windows():
    short = dual_basis(D9, 1, 3)
    with pytest.raises(WindowExceeded):
        dual_mul(dual_basis(D9, 1), short, 9)


def test_dual_mul_filtration_violation():
    bad = D9.replace(delta={**D9.delta, 1: D9.delta[1] + TensorVector(F3, {0: Vector.basis(F3, 3)})})
    with pytest.raises(FiltrationViolation):
        dual_mul(dual_unit(bad), dual_unit(bad))


def test_unit_and_scalars():
    D = random_dual(D9, random.Random(0))
    one = dual_unit(D9)
    assert dual_mul(one, D) == D == dual_mul(D, one)
    assert eps_dual(D9, F3(2)) == one.scale(F3(2))
    assert etaL_dual(dual_basis(D9, 0)) == F3(1)


def test_right_A_action_pair_groupoid():
    for k in G.basis:
        for a in G.base.gens():
            D = dual_basis(G, k, coeff=G.base.one())
            R = right_A_action(D, a)
            # f_k etaR(e_a) = f_k f_a
            assert R(k) == (G.base.one() if G.base.gens()[k] == a else G.base.zero())


def test_restrictive_witness():
    # over F_3 the divided powers act on A only through gamma_0^dual
    w = restrictive_witness(D9, 3, [F3(1), F3(2)])
    assert isinstance(w, Witness)
    assert all(act_on_A(w.D, a).is_zero() for a in (F3(1), F3(2)))
    assert not all(c.is_zero() for c in w.D.table())
    assert restrictive_witness(G, None, G.base.gens()) == NoWitness()


def test_counit_is_the_dual_unit():
    assert [int(c.payload) for c in dual_unit(D9).table()] == [1] + [0] * 8
    assert eps_dual(D9, F3(1)) == dual_unit(D9)
    assert eps_dual(G, G.base.one()) == dual_unit(G)
    assert etaL_dual(dual_unit(D9)) == F3(1)
    assert etaL_dual(dual_unit(G)) == G.base.one()


def test_etaL_dual_is_not_right_linear_on_the_pair_groupoid():
    found = []
    for D in matrix_units():
        for a in G.base.gens():
            if etaL_dual(dual_mul(D, eps_dual(G, a))) != a * etaL_dual(D):
                found.append((D, a))
    assert found
    # it is left linear
    for D in matrix_units():
        for a in G.base.gens():
            assert etaL_dual(D.scale(a)) == a * etaL_dual(D)


def test_right_action_worked_examples():
    rng = random.Random(3)
    for P in (D9, G):
        D = random_dual(P, rng)
        assert right_A_action(D, P.base.one()) == D
    # for the divided powers right and left scalars agree
    D = random_dual(D9, rng)
    assert right_A_action(D, F3(2)) == D.scale(F3(2))
    # on the pair groupoid (1,0) turns the dual unit into the projector onto the first factor
    e0 = G.base.gens()[0]
    R = right_A_action(dual_unit(G), e0)
    assert R(0) == e0 and R(1).is_zero()
    P = morita_matrix(R)
    assert (P == np.array([[1, 0], [0, 0]])).all() and (P @ P == P).all()
    assert R == dual_mul(dual_unit(G), eps_dual(G, e0))


def test_action_on_the_base_worked_examples():
    e = G.base.gens()
    for a in list(e) + [G.base.one()]:
        assert act_on_A(dual_unit(G), a) == a
    # the unit sending f_1 to e_0 is the matrix [[0,1],[0,0]]
    N = dual_from_values(G, [G.base.zero(), e[0]])
    assert (morita_matrix(N) == np.array([[0, 1], [0, 0]])).all()
    assert act_on_A(N, e[1]) == e[0]
    rng = random.Random(4)
    for P in (D9, G):
        for _ in range(20):
            D2, D1 = random_dual(P, rng), random_dual(P, rng)
            a = P.base.random(rng)
            assert act_on_A(dual_mul(D2, D1), a) == act_on_A(D2, act_on_A(D1, a))


def test_restrictive_witness_edge_cases():
    assert restrictive_witness(D9, 0, [F3(1)]) == NoWitness()
    assert restrictive_witness(G, 0, G.base.gens()) == NoWitness()
