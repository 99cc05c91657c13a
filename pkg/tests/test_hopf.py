import pytest

from hopfdual.catalog import (
    F3, axiom_mutations, divided_powers, pair_groupoid, tensor_divided_powers,
)
from hopfdual.errors import WindowExceeded
from hopfdual.freemod import TensorVector, Vector
from hopfdual.hopf import check_axioms, derive_antipode, tensor_algebroid
from hopfdual.report import FAIL, INDETERMINATE, PASS
from oracles import FROZEN, oracle_failures


@pytest.mark.parametrize("P, W", [
    (divided_powers(), 9),
    (pair_groupoid(), None),
    (tensor_divided_powers(), 10),
], ids=["divpow", "pair", "tensor"])
def test_shipped_presentations_pass(P, W):
    rep = check_axioms(P, W)
    assert rep.all_pass, rep.lines()


def test_oracle_agrees_on_valid_divided_powers():
    assert oracle_failures(divided_powers()) == {"coassociativity": [], "counit": [], "inverse_laws": []}


MUTATIONS = axiom_mutations()


def test_at_least_ten_mutations():
    assert len(MUTATIONS) >= 10


@pytest.mark.parametrize("name, P, W", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_every_mutation_fails(name, P, W):
    rep = check_axioms(P, W)
    assert rep.failed, name


DIVPOW = [m for m in MUTATIONS if m[0].startswith("divpow") and "unit =" not in m[0]]


@pytest.mark.parametrize("name, P, W", DIVPOW, ids=[m[0] for m in DIVPOW])
def test_divpow_witnesses_match_dense_oracle(name, P, W):
    rep = check_axioms(P, W)
    expected = oracle_failures(P)
    for axiom, labels in expected.items():
        check = rep[axiom]
        if labels:
            assert check.status == FAIL and check.witness == labels[0], (axiom, check, labels)
        else:
            assert check.status == PASS, (axiom, check)


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_witnesses(name):
    _, P, W = next(m for m in MUTATIONS if m[0] == name)
    rep = check_axioms(P, W)
    for axiom, witness in FROZEN[name].items():
        assert rep[axiom].status == FAIL and rep[axiom].witness == witness, (axiom, rep[axiom])


def test_missing_delta_entry_is_indeterminate():
    D = divided_powers()
    cut = D.replace(delta={k: v for k, v in D.delta.items() if k != 8})
    rep = check_axioms(cut, 9, extra=False)
    assert rep["coassociativity"].status == INDETERMINATE
    assert check_axioms(cut, 8, extra=False).all_pass


def test_window_beyond_materialized_labels():
    with pytest.raises(WindowExceeded):
        check_axioms(divided_powers(), 10)


def test_derive_antipode_divided_powers():
    D = divided_powers()
    conj = derive_antipode(D.base, D.basis, D.unit, D.mult, D.delta, D.epsilon)
    assert conj == {n: Vector.basis(F3, n, (-1) ** n) for n in D.basis}


def test_derive_antipode_needs_unit_term():
    D = divided_powers()
    bad = dict(D.delta)
    bad[1] = TensorVector(F3, {0: Vector.basis(F3, 1)})
    with pytest.raises(ValueError):
        derive_antipode(D.base, D.basis, D.unit, D.mult, bad, D.epsilon)


def test_tensor_algebroid_structure():
    T = tensor_divided_powers()
    assert T.basis[:6] == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    # Delta(g1 (x) g0) = (g0 (x) g0) (x) (g1 (x) g0) + (g1 (x) g0) (x) (g0 (x) g0)
    d = T.delta[(1, 0)]
    assert d.right_support() == {(0, 0), (1, 0)}
    assert T.conj[(1, 1)] == Vector.basis(F3, (1, 1))


def test_tensor_algebroid_rejects_non_hopf():
    G = pair_groupoid()
    with pytest.raises(NotImplementedError):
        tensor_algebroid(G)


def test_filtration_violation_reported():
    D = divided_powers()
    bad = D.replace(delta={**D.delta, 1: D.delta[1] + TensorVector(F3, {0: Vector.basis(F3, 3)})})
    assert check_axioms(bad, 9)["filtration"].witness == 1


def test_right_unit_worked_examples():
    D, G = divided_powers(), pair_groupoid()
    assert D.eval_etaR(F3(1)) == D.unit
    assert D.eval_etaR(F3(2)) == D.vec(0, 2)
    e = G.base.gens()
    assert G.eval_etaR(G.base.one()) == G.unit
    # etaR(e_0) is the basis element f_0 = 1 (x) e_0, and similarly for e_1
    assert G.eval_etaR(e[0]) == G.vec(0) and G.eval_etaR(e[1]) == G.vec(1)


def test_divided_power_products_and_coproduct():
    D = divided_powers()
    g = D.vec
    assert D.gamma_mul(g(1), D.unit) == g(1)
    assert D.gamma_mul(g(1), g(1)) == g(2, 2)
    assert D.gamma_mul(g(1), g(2)).is_zero()
    assert D.apply_delta(D.unit) == D.tensor(D.unit, D.unit)
    want = D.tensor(g(0), g(2)) + D.tensor(g(1), g(1)) + D.tensor(g(2), g(0))
    assert D.apply_delta(g(2)) == want
    assert D.apply_epsilon(g(0)) == F3(1)
    assert all(D.apply_epsilon(g(n)).is_zero() for n in range(1, 9))


def test_dropped_coproduct_term_witnesses():
    # Delta(g2) without g1 (x) g1 is still coassociative at g2 and g3; the first
    # failure is at g4, where Delta(g2) (x) g2 and g2 (x) Delta(g2) disagree.
    _, P, W = next(m for m in MUTATIONS if m[0] == "divpow: Delta(g2) drops g1(x)g1")
    rep = check_axioms(P, W)
    assert rep["coassociativity"].witness == 4
    assert rep["counit"].status == PASS
    assert rep["inverse_laws"].witness == 2


def test_tensor_square_on_the_four_by_four_box():
    T = tensor_divided_powers()
    labels = T.window(28)
    assert {(i, j) for i in range(4) for j in range(4)} <= set(labels)
    assert check_axioms(T, 28).all_pass
    assert T.apply_epsilon(T.vec((1, 0))).is_zero()


def test_multiplication_of_the_tensor_square_is_a_morphism():
    from hopfdual.functor import HopfMorphism, check_morphism
    T, P = tensor_divided_powers(), divided_powers()
    f_m = {(i, j): P.gamma_mul(P.vec(i), P.vec(j)) for (i, j) in T.basis if i + j <= 8}
    rep = check_morphism(HopfMorphism(T, P, lambda a: a, f_m), 28)
    assert not rep.failed
    for axiom in ("unit", "delta", "epsilon", "conj"):
        assert rep[axiom].status == PASS
