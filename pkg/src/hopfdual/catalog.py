"""Shipped presentations, comodules and curated single-entry mutations."""
from __future__ import annotations

import random
from math import comb

from .comod import Comodule, trivial_comodule
from .freemod import TensorVector, Vector
from .functor import FreeRingExtension, HopfMorphism
from .hopf import HopfAlgebroid, tensor_algebroid
from .rings import Extension, Integers, Modular, Product

__all__ = [
    "F3", "F9", "divided_powers", "pair_groupoid", "tensor_divided_powers",
    "axiom_mutations", "rank2_comodule", "nilpotent_comodule", "random_nilpotent",
    "valid_comodules", "comodule_mutations", "f9_instance", "f_m_mutations",
]

F3 = Modular(3)
F9 = Extension(F3, "w", (1, 0, 1))


def divided_powers(base=F3, window=9):
    """Divided power Hopf algebra A<t> on gamma_0..gamma_{W-1}.

    gamma_i gamma_j = C(i+j, i) gamma_{i+j}; a product that lands outside
    the window is tabulated only when its coefficient vanishes in A (over
    F_3 with W = 9 every such coefficient does, by Lucas).
    """
    A = base
    basis = list(range(window))
    mult = {}
    for i in basis:
        for j in basis[i:]:
            c = A(comb(i + j, i))
            if i + j < window:
                mult[(i, j)] = Vector(A, {i + j: c})
            elif c.is_zero():
                mult[(i, j)] = Vector(A)
    delta = {
        n: TensorVector(A, {n - i: Vector.basis(A, i) for i in range(n + 1)})
        for n in basis
    }
    epsilon = {n: A(1 if n == 0 else 0) for n in basis}
    conj = {n: Vector.basis(A, n, (-1) ** n) for n in basis}
    unit = Vector.basis(A, 0)
    etaR = [unit.scale(g) for g in A.gens()]
    return HopfAlgebroid(A, basis, unit, mult, etaR, delta, epsilon, conj,
                         name=f"divpow[{A}]")


def pair_groupoid(n=2):
    """(Z^n, Z^n (x) Z^n) on the basis f_j = 1 (x) eps_j; all levels 0."""
    A = Product(tuple(Integers() for _ in range(n)))
    idem = A.gens()
    basis = list(range(n))
    unit = Vector(A, {j: 1 for j in basis})
    mult = {(i, j): (Vector.basis(A, i) if i == j else Vector(A)) for i in basis for j in basis if i <= j}
    etaR = [Vector.basis(A, j) for j in basis]
    delta = {j: TensorVector(A, {j: unit}) for j in basis}
    epsilon = {j: idem[j] for j in basis}
    conj = {j: unit.scale(idem[j]) for j in basis}
    return HopfAlgebroid(A, basis, unit, mult, etaR, delta, epsilon, conj,
                         levels={j: 0 for j in basis}, name=f"pair[Z^{n}]")


def tensor_divided_powers(base=F3, window=9):
    return tensor_algebroid(divided_powers(base, window))


def _set_delta_term(P, k, right, left):
    entries = dict(P.delta[k].entries)
    if left.is_zero():
        entries.pop(right, None)
    else:
        entries[right] = left
    return P.replace(delta={**P.delta, k: TensorVector(P.base, entries)})


def axiom_mutations():
    """(name, presentation, check window) for single-entry table mutations."""
    D = divided_powers()
    A = D.base
    G = pair_groupoid(2)
    B = G.base
    T = tensor_divided_powers()
    out = [
        ("divpow: Delta(g2) drops g1(x)g1", _set_delta_term(D, 2, 1, Vector(A)), 9),
        ("divpow: Delta(g3) doubles g1(x)g2", _set_delta_term(D, 3, 2, Vector.basis(A, 1, 2)), 9),
        ("divpow: epsilon(g1) = 1", D.replace(epsilon={**D.epsilon, 1: A(1)}), 9),
        ("divpow: epsilon(g0) = 2", D.replace(epsilon={**D.epsilon, 0: A(2)}), 9),
        ("divpow: c(g1) = g1", D.replace(conj={**D.conj, 1: Vector.basis(A, 1)}), 9),
        ("divpow: c(g2) = -g2", D.replace(conj={**D.conj, 2: Vector.basis(A, 2, -1)}), 9),
        ("divpow: g1 g1 = g2", D.replace(mult={**D.mult, (1, 1): Vector.basis(A, 2)}), 9),
        ("divpow: Delta(g1) gains g3(x)g0", _set_delta_term(D, 1, 0, Vector(A, {1: 1, 3: 1})), 9),
        ("divpow: unit = 2 g0", D.replace(unit=Vector.basis(A, 0, 2)), 9),
        ("pair: c(f0) = f0", G.replace(conj={**G.conj, 0: Vector.basis(B, 0)}), None),
        ("pair: etaR(e0) = f1", G.replace(etaR=[Vector.basis(B, 1), G.etaR[1]]), None),
        ("pair: epsilon(f0) = e1", G.replace(epsilon={**G.epsilon, 0: B.gens()[1]}), None),
        ("pair: f0 f1 = f0", G.replace(mult={**G.mult, (0, 1): Vector.basis(B, 0)}), None),
        ("pair: Delta(f1) = f1(x)f1", G.replace(delta={**G.delta, 1: TensorVector(B, {1: Vector.basis(B, 1)})}), None),
        ("tensor: epsilon(g1(x)g0) = 1", T.replace(epsilon={**T.epsilon, (1, 0): A(1)}), T.basis[:10]),
    ]
    return out


# -- comodules over the divided powers ---------------------------------------------

def rank2_comodule(P=None):
    """psi(m_0) = m_0 (x) 1, psi(m_1) = m_1 (x) 1 + m_0 (x) gamma_1."""
    P = P or divided_powers()
    A = P.base
    psi = {(0, 0): P.unit, (1, 1): P.unit, (0, 1): Vector.basis(A, 1)}
    return Comodule(P, 2, psi, name="rank2")


def _matmul(X, Y, m):
    n = len(X)
    return [[sum(X[i][t] * Y[t][j] for t in range(n)) % m for j in range(n)] for i in range(n)]


def nilpotent_comodule(P, N, name="nilpotent"):
    """gamma_ts = sum_n (N^n)_ts gamma_n for a nilpotent matrix N over F_3.

    Coassociativity is N^{a+b} = N^a N^b and the counit is N^0 = 1.
    """
    A = P.base
    m = 3
    r = len(N)
    power = [[int(i == j) for j in range(r)] for i in range(r)]
    psi = {}
    for n in P.basis:
        if not any(any(row) for row in power):
            break
        for t in range(r):
            for s in range(r):
                if power[t][s]:
                    psi[(t, s)] = psi.get((t, s), Vector(A)) + Vector.basis(A, n, power[t][s])
        power = _matmul(power, N, m)
    if any(any(row) for row in power):
        raise ValueError("matrix is not nilpotent within the window")
    return Comodule(P, r, psi, name=name)


def _random_invertible(r, rng, m=3):
    while True:
        X = [[rng.randrange(m) for _ in range(r)] for _ in range(r)]
        if _det_mod(X, m):
            return X


def _det_mod(X, m):
    X = [row[:] for row in X]
    n, det = len(X), 1
    for c in range(n):
        piv = next((r for r in range(c, n) if X[r][c] % m), None)
        if piv is None:
            return 0
        if piv != c:
            X[c], X[piv] = X[piv], X[c]
            det = -det
        det = det * X[c][c] % m
        inv = pow(X[c][c], -1, m)
        for r in range(c + 1, n):
            f = X[r][c] * inv % m
            X[r] = [(a - f * b) % m for a, b in zip(X[r], X[c])]
    return det % m


def _inverse_mod(X, m=3):
    n = len(X)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(X)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] % m)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, m)
        aug[c] = [a * inv % m for a in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(a - f * b) % m for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def random_nilpotent(r, rng):
    """A random Jordan-type nilpotent r x r matrix over F_3, randomly conjugated."""
    J = [[0] * r for _ in range(r)]
    i = 0
    while i < r:
        size = rng.randint(1, r - i)
        for t in range(i, i + size - 1):
            J[t][t + 1] = 1
        i += size
    X = _random_invertible(r, rng)
    return _matmul(_matmul(X, J, 3), _inverse_mod(X), 3)


def valid_comodules(count=20, seed=0, P=None):
    P = P or divided_powers()
    rng = random.Random(seed)
    out = [trivial_comodule(P), rank2_comodule(P)]
    while len(out) < count:
        r = rng.randint(1, 4)
        out.append(nilpotent_comodule(P, random_nilpotent(r, rng), name=f"nil{len(out)}"))
    return out


def comodule_mutations(count=20, seed=1, P=None):
    """Single-entry changes of psi on valid comodules (each one breaks an axiom)."""
    P = P or divided_powers()
    A = P.base
    rng = random.Random(seed)
    out = []
    pool = valid_comodules(count, seed, P)
    while len(out) < count:
        M = pool[len(out) % len(pool)]
        t, s = rng.randrange(M.rank), rng.randrange(M.rank)
        n = rng.randrange(3)
        c = rng.randrange(1, 3)
        v = M.gamma(t, s) + Vector.basis(A, n, c)
        bad = M.replace(t, s, v)
        bad.name = f"{M.name}: psi({t},{s}) += {c} g{n}"
        out.append(bad)
    return out


# -- base change F_3 -> F_9 -----------------------------------------------------

def f9_instance(window=9):
    """(P, S, ext, f): divided powers over F_3 and over F_9, f_m(gamma_i) = gamma_i."""
    P = divided_powers(F3, window)
    S = divided_powers(F9, window)
    ext = FreeRingExtension.simple(F9)
    mor = HopfMorphism(P, S, ext.f_o, {i: S.vec(i) for i in P.basis}, name="F3->F9")
    return P, S, ext, mor


def f_m_mutations(instance=None):
    P, S, ext, mor = instance or f9_instance()
    w = F9.gens()[0]
    z = Vector(F9)
    return [
        ("f_m(g1) = 0", mor.replace_f_m(1, z)),
        ("f_m(g1) = w g1", mor.replace_f_m(1, S.vec(1).scale(w))),
        ("f_m(g2) = g1", mor.replace_f_m(2, S.vec(1))),
        ("f_m(g0) = 2 g0", mor.replace_f_m(0, S.vec(0).scale(F9(2)))),
        ("f_m(g3) = g3 + g4", mor.replace_f_m(3, S.vec(3) + S.vec(4))),
        ("f_m(g2) = 2 g2", mor.replace_f_m(2, S.vec(2).scale(F9(2)))),
    ]
