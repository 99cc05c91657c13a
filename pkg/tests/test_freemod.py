import pytest

from hopfdual.errors import DescriptorMismatch, WindowExceeded
from hopfdual.freemod import (
    DualVector, TensorVector, Vector, double_dual_check, dual_basis_vector, dual_pair,
)
from hopfdual.rings import Integers, Modular

F3 = Modular(3)
Z = Integers()


def test_vector_drops_zeros_and_compares():
    v = Vector(F3, {0: 1, 1: 3, 2: 2})
    assert v.support() == {0, 2}
    assert v == Vector(F3, {2: 2, 0: 1})
    assert v + v + v == Vector(F3)
    assert (v - v).is_zero() and not v - v


def test_vector_scale_and_coeff():
    v = Vector(Z, {"a": 2, "b": -1})
    w = v.scale(Z(3))
    assert w.coeff("a") == Z(6) and w.coeff("c") == Z(0)
    assert Z(3) * v == w
    assert -v == Vector(Z, {"a": -2, "b": 1})


def test_vector_mixed_rings():
    with pytest.raises(DescriptorMismatch):
        Vector(F3, {0: 1}) + Vector(Z, {0: 1})


def test_tensor_vector():
    t = TensorVector(F3, {1: Vector.basis(F3, 0), 0: Vector.basis(F3, 1)})
    s = TensorVector(F3).add_term(1, Vector.basis(F3, 0)).add_term(0, Vector.basis(F3, 1))
    assert s == t
    assert s.add_term(1, Vector.basis(F3, 0)) != t
    assert t.right_support() == {0, 1} and t.left_support() == {0, 1}
    assert (t - t).is_zero()
    assert t.scale(F3(2)) == t + t


def test_dual_vector_window():
    D = DualVector(F3, (0, 1, 2), {0: F3(1), 1: F3(2), 2: F3(0)})
    assert D(1) == F3(2)
    with pytest.raises(WindowExceeded):
        D(3)
    assert dual_pair(D, Vector(F3, {0: 1, 1: 1})) == F3(0)
    with pytest.raises(WindowExceeded):
        dual_pair(D, Vector.basis(F3, 5))


def test_dual_pair_descriptor_mismatch():
    D = dual_basis_vector(F3, (0, 1), 0)
    with pytest.raises(DescriptorMismatch):
        dual_pair(D, Vector.basis(Z, 0))


def test_double_dual_check():
    window = tuple(range(5))
    assert double_dual_check(F3, window)
    swapped = [dual_basis_vector(F3, window, k) for k in (1, 0, 2, 3, 4)]
    assert not double_dual_check(F3, window, swapped)


def test_pairing_worked_examples_over_Z():
    D = DualVector(Z, (0, 1, 2), {0: Z(2), 1: Z(5), 2: Z(7)})
    assert dual_pair(D, Vector(Z, {0: 3, 1: 1})) == Z(11)
    assert dual_pair(D, Vector(Z)) == Z(0)
    with pytest.raises(WindowExceeded):
        dual_pair(D, Vector.basis(Z, 3))


def test_double_dual_worked_examples():
    Z4 = Modular(4)
    window = tuple(range(4))
    assert double_dual_check(Z4, window)
    assert double_dual_check(Z4, (0,))
    e0, e1 = dual_basis_vector(Z4, window, 0), dual_basis_vector(Z4, window, 1)
    corrupted = [DualVector(Z4, window, {k: e0(k) + e1(k) for k in window})]
    corrupted += [dual_basis_vector(Z4, window, k) for k in (1, 2, 3)]
    assert not double_dual_check(Z4, window, corrupted)
