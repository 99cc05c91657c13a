"""Independent dense-array oracles for Hopf algebras over F_3 labelled 0..W-1."""
import numpy as np


def dense(P):
    """Structure constants of a Hopf algebra over F_3 labelled 0..W-1 as arrays mod 3."""
    W = len(P.basis)
    Dl = np.zeros((W, W, W), dtype=np.int64)  # Delta(e_k) = sum Dl[k,a,b] e_a (x) e_b
    for k, t in P.delta.items():
        for b, left in t.items():
            for a, c in left.items():
                Dl[k, a, b] = int(c.payload)
    M = np.zeros((W, W, W), dtype=np.int64)
    for (i, j), v in P.mult.items():
        for k, c in v.items():
            M[i, j, k] = M[j, i, k] = int(c.payload)
    E = np.array([int(P.epsilon[k].payload) for k in range(W)])
    C = np.zeros((W, W), dtype=np.int64)
    for i, v in P.conj.items():
        for k, c in v.items():
            C[i, k] = int(c.payload)
    return Dl, M, E, C


def oracle_failures(P):
    """Labels where coassociativity, counit and the inverse laws fail, by dense einsum."""
    Dl, M, E, C = dense(P)
    W = len(E)
    I = np.eye(W, dtype=np.int64)
    e0 = I[0]
    t1 = np.einsum("kaz,axy->kxyz", Dl, Dl) % 3
    t2 = np.einsum("kxb,byz->kxyz", Dl, Dl) % 3
    left = np.einsum("kaj,a->kj", Dl, E) % 3
    right = np.einsum("kaj,j->ka", Dl, E) % 3
    inv1 = np.einsum("kaj,ai,ijz->kz", Dl, C, M) % 3
    inv2 = np.einsum("kaj,ji,aiz->kz", Dl, C, M) % 3
    target = np.outer(E, e0) % 3
    return {
        "coassociativity": [k for k in range(W) if (t1[k] != t2[k]).any()],
        "counit": [k for k in range(W) if (left[k] != I[k]).any() or (right[k] != I[k]).any()],
        "inverse_laws": [k for k in range(W) if (inv1[k] != target[k]).any() or (inv2[k] != target[k]).any()],
    }


def delta_pairing_oracle(P):
    """(D2 o D1)(e_k) = sum_{a,b} Delta[k,a,b] D2(e_a) D1(e_b) for a Hopf algebra over F_3."""
    Dl = dense(P)[0]
    return lambda d2, d1: np.einsum("kab,a,b->k", Dl, d2, d1) % 3


# hand-derived witnesses for the pair groupoid and the tensor square
FROZEN = {
    # (2 g0)(2 g0) = g0 differs from the claimed unit 2 g0, and epsilon(2 g0) = 2
    "divpow: unit = 2 g0": {"ring_homomorphisms": "unit", "counit_on_units": "unit"},
    # c(1) = c(f0) + c(f1) is no longer 1
    "pair: c(f0) = f0": {"conjugation_on_units": "unit", "inverse_laws": 0},
    # the relation e0 e1 = 0 (relation1) maps to f1 f1 = f1
    "pair: etaR(e0) = f1": {"ring_homomorphisms": "relation1", "counit": 0},
    "pair: epsilon(f0) = e1": {"counit": 0, "counit_on_units": "unit"},
    # 1 * f1 = f0 f1 + f1 f1 = f0 + f1, so 1 stops acting as a unit
    "pair: f0 f1 = f0": {"ring_homomorphisms": "unit"},
    # Delta(1) = Delta(f0) + Delta(f1) makes f0 (x) f1 (x) f0 appear on one side only
    "pair: Delta(f1) = f1(x)f1": {"coassociativity": 0, "counit": 1},
    "tensor: epsilon(g1(x)g0) = 1": {"counit": (1, 0), "inverse_laws": (1, 0)},
}
