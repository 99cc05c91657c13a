import random

import pytest

from hopfdual.catalog import (
    F3, comodule_mutations, divided_powers, nilpotent_comodule, rank2_comodule, valid_comodules,
)
from hopfdual.comod import (
    check_comodule, dual_action_on_tensor, from_module, iff_test, morphism_check, swap_matrix,
    tensor_comodule, to_module, trivial_comodule,
)
from hopfdual.dual import dual_basis, random_dual
from hopfdual.errors import SupportExceeded
from hopfdual.report import FAIL, PASS

P = divided_powers()
VALID = valid_comodules(20)
BROKEN = comodule_mutations(20)


@pytest.mark.parametrize("M", VALID, ids=lambda M: M.name)
def test_valid_comodules_pass_both_sides(M):
    rep = iff_test(M)
    assert rep.verdict() == PASS, rep.lines()


@pytest.mark.parametrize("M", BROKEN, ids=lambda M: M.name)
def test_mutated_comodules_fail_both_sides(M):
    rep = iff_test(M)
    assert rep["agreement"].status == PASS, rep.lines()
    assert check_comodule(M).verdict() == FAIL
    assert any(c.name.startswith("module.") for c in rep.failed)


@pytest.mark.parametrize("M", VALID, ids=lambda M: M.name)
def test_round_trip(M):
    assert from_module(to_module(M), 9) == M


def test_from_module_bound_too_small():
    # a 3x3 Jordan block uses gamma_0, gamma_1 and gamma_2
    M = nilpotent_comodule(P, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert from_module(to_module(M), 3) == M
    with pytest.raises(SupportExceeded):
        from_module(to_module(M), 2)


def test_rank2_action_matrix():
    act = to_module(rank2_comodule())
    one, zero = F3(1), F3(0)
    assert act.matrix(dual_basis(P, 0)) == [[one, zero], [zero, one]]
    assert act.matrix(dual_basis(P, 1)) == [[zero, one], [zero, zero]]
    assert act.matrix(dual_basis(P, 2)) == [[zero, zero], [zero, zero]]


def test_tensor_comodule_is_a_comodule():
    for M in VALID[:6]:
        for N in VALID[:6]:
            assert check_comodule(tensor_comodule(M, N)).all_pass


def test_tensor_action_two_routes():
    rng = random.Random(7)
    M, N = VALID[1], VALID[4]
    for _ in range(10):
        D = random_dual(P, rng)
        m = [F3.random(rng) for _ in range(M.rank)]
        n = [F3.random(rng) for _ in range(N.rank)]
        dual_action_on_tensor(D, M, N, m, n)  # raises on disagreement


def test_gamma1_dual_acts_as_a_derivation():
    M = N = rank2_comodule()
    g1 = dual_basis(P, 1)
    act = to_module(M)
    rng = random.Random(2)
    for _ in range(10):
        m = [F3.random(rng) for _ in range(2)]
        n = [F3.random(rng) for _ in range(2)]
        got = dual_action_on_tensor(g1, M, N, m, n)
        dm, dn = act.act(g1, m), act.act(g1, n)
        want = [dm[s] * n[t] + m[s] * dn[t] for s in range(2) for t in range(2)]
        assert got == want


def test_swap_is_a_morphism():
    M, N = VALID[1], VALID[5]
    F = swap_matrix(M.rank, N.rank)
    rep = morphism_check(F, tensor_comodule(M, N), tensor_comodule(N, M))
    assert rep.all_pass, rep.lines()


def test_morphism_check_both_sides():
    M, A = rank2_comodule(), trivial_comodule(P)
    # m_0 spans a subcomodule and m_1 -> 1 is the quotient
    assert morphism_check([[1], [0]], A, M).all_pass
    assert morphism_check([[0, 1]], M, A).all_pass
    rep = morphism_check([[1, 0]], M, A)
    assert rep["comodule_side"].status == FAIL
    assert rep["module_side"].status == FAIL


def test_rank2_without_the_diagonal_term_fails_counit_at_the_second_generator():
    M = rank2_comodule()
    bad = M.replace(1, 1, M.gamma(1, 1) - P.vec(0))
    rep = check_comodule(bad)
    assert rep["counit"].status == FAIL and rep["counit"].witness == 1
    assert check_comodule(M).all_pass and check_comodule(trivial_comodule(P)).all_pass


@pytest.mark.parametrize("M", BROKEN, ids=lambda M: M.name)
def test_mutation_witnesses_agree_across_sides(M):
    rep = iff_test(M)
    pairs = [("comodule.coassociativity", "module.multiplicative"), ("comodule.counit", "module.unital")]
    for comod_side, module_side in pairs:
        assert rep[comod_side].status == rep[module_side].status
        assert rep[comod_side].witness == rep[module_side].witness


def test_base_ring_comodule_acts_through_the_dual_action_on_A():
    from hopfdual.catalog import pair_groupoid
    from hopfdual.dual import act_on_A, dual_unit
    rng = random.Random(8)
    for Q in (P, pair_groupoid()):
        act = to_module(trivial_comodule(Q))
        for _ in range(10):
            D, a = random_dual(Q, rng), Q.base.random(rng)
            assert act.act(D, [a]) == [act_on_A(D, a)]
    for M in VALID[:5]:
        act = to_module(M)
        one = dual_unit(P)
        assert act.matrix(one) == [[F3(int(t == s)) for s in range(M.rank)] for t in range(M.rank)]


def test_trivial_action_rebuilds_the_trivial_coaction():
    from hopfdual.comod import ModuleAction
    act = ModuleAction(P, 2, lambda D, m: [D(0) * x for x in m])
    M = from_module(act, 1)
    assert all(M.gamma(t, s) == (P.vec(0) if t == s else P.zero()) for t in range(2) for s in range(2))
    assert check_comodule(M).all_pass


def test_tensor_worked_examples():
    A = trivial_comodule(P)
    AA = tensor_comodule(A, A)
    assert AA.rank == 1 and AA.gamma(0, 0) == A.gamma(0, 0)
    R = rank2_comodule()
    assert check_comodule(tensor_comodule(R, R)).all_pass


def test_dual_unit_and_gamma2_dual_on_tensors():
    from hopfdual.dual import dual_unit
    M, N = VALID[2], VALID[3]
    actM, actN = to_module(M), to_module(N)
    g1, g2 = dual_basis(P, 1), dual_basis(P, 2)
    rng = random.Random(9)
    for _ in range(10):
        m = [F3.random(rng) for _ in range(M.rank)]
        n = [F3.random(rng) for _ in range(N.rank)]
        flat = lambda x, y: [a * b for a in x for b in y]
        assert dual_action_on_tensor(dual_unit(P), M, N, m, n) == flat(m, n)
        got = dual_action_on_tensor(g2, M, N, m, n)
        parts = [flat(actM.act(g2, m), n), flat(actM.act(g1, m), actN.act(g1, n)),
                 flat(m, actN.act(g2, n))]
        want = [a + F3(2) * b + c for a, b, c in zip(*parts)]
        assert got == want
