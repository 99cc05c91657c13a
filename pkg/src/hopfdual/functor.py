"""Morphisms of Hopf algebroids, base change along a free extension, beta and beta^dual.

For f_o: A -> B with B free over A on b_0 = 1, b_1, ..., the algebroid
Gamma_f = B (x)_A Gamma (x)_A B is free over B (via etaL) on e_i (x) b_j,
labelled (i, j). Elements are brought to normal form by moving the right
B-coordinates into the middle through etaR and the middle A-coefficients to
the left through f_o.
"""
from __future__ import annotations

import random

from .comod import Comodule, check_comodule, to_module
from .dual import DualElement, dual_basis, dual_mul, dual_unit, random_dual
from .errors import WindowExceeded
from .freemod import DualVector, TensorVector, Vector
from .hopf import HopfAlgebroid
from .report import FAIL, INDETERMINATE, PASS, Report
from .rings import Extension, RingElement

__all__ = [
    "FreeRingExtension", "HopfMorphism", "BaseChange", "base_change_algebroid",
    "extend_scalars", "beta_map", "beta_dual", "pullback_comodule",
    "identification_check", "check_morphism", "scalar_extension",
]


class FreeRingExtension:
    """f_o: A -> B together with an A-basis b_0 = 1, b_1, ... of B."""

    def __init__(self, source, target, f_o, basis, coords):
        self.source = source
        self.target = target
        self._f_o = f_o
        self.basis = [target(b) for b in basis]
        self._coords = coords
        if self.basis[0] != target.one():
            raise ValueError("b_0 must be 1")
        for j, b in enumerate(self.basis):
            expect = [source(1 if t == j else 0) for t in range(len(self.basis))]
            if self.coords(b) != expect:
                raise ValueError(f"coordinates of b_{j} are not the unit vector")

    @classmethod
    def identity(cls, A):
        return cls(A, A, lambda a: a, [A.one()], lambda b: [b])

    @classmethod
    def simple(cls, B):
        """B = A[w]/(monic) with basis 1, w, ..., w^{d-1}."""
        if not isinstance(B, Extension):
            raise TypeError("simple extensions need an Extension descriptor")
        A = B.base
        d = B.degree

        def f_o(a):
            return RingElement(B, B.canonical([a.payload]))

        basis = [RingElement(B, tuple(A.one_payload() if t == j else A.zero_payload() for t in range(d)))
                 for j in range(d)]
        return cls(A, B, f_o, basis, lambda b: [RingElement(A, c) for c in b.payload])

    @property
    def rank(self):
        return len(self.basis)

    def f_o(self, a):
        return self._f_o(self.source(a))

    def coords(self, b):
        return [self.source(c) for c in self._coords(self.target(b))]

    def table(self):
        """b_i b_j in the basis, as lists of A-coefficients."""
        return {(i, j): self.coords(bi * bj) for i, bi in enumerate(self.basis)
                for j, bj in enumerate(self.basis)}


class HopfMorphism:
    """f = (f_o, f_m) from (A, Gamma) to (B, Sigma); f_m given on basis labels."""

    def __init__(self, source, target, f_o, f_m, name=""):
        self.source = source
        self.target = target
        self._f_o = f_o
        self.f_m_table = dict(f_m)
        self.name = name

    def f_o(self, a):
        return self._f_o(self.source.base(a))

    def f_m(self, v):
        """f_m(sum a_i e_i) = sum f_o(a_i) f_m(e_i)."""
        S = self.target
        acc = Vector(S.base)
        for i, a in v.items():
            try:
                img = self.f_m_table[i]
            except KeyError:
                raise WindowExceeded(f"f_m(e_{i}) is not tabulated") from None
            acc = acc + img.scale(self.f_o(a))
        return acc

    def f_m_tensor(self, t):
        S = self.target
        out = TensorVector(S.base)
        for j, left in t.items():
            out = out + S.tensor(self.f_m(left), self.f_m(self.source.vec(j)))
        return out

    def replace_f_m(self, label, v, name=""):
        table = dict(self.f_m_table)
        table[label] = v
        return HopfMorphism(self.source, self.target, self._f_o, table, name or self.name)


def check_morphism(mor, window=None):
    """f_m respects unit, products, etaR, Delta, epsilon and c on the window."""
    P, S = mor.source, mor.target
    labels = P.window(window)
    rep = Report(title=f"morphism {mor.name}".strip())

    def run(name, items, fn):
        witness, exhausted = None, None
        for key in items:
            try:
                if not fn(key):
                    witness = key
                    break
            except WindowExceeded as exc:
                exhausted = exhausted or (key, str(exc))
        if witness is not None:
            rep.add(name, FAIL, witness)
        elif exhausted is not None:
            rep.add(name, INDETERMINATE, exhausted[0], exhausted[1])
        else:
            rep.add(name, PASS)

    run("unit", ["unit"], lambda _: mor.f_m(P.unit) == S.unit)
    run("etaR", range(len(P.base.gens())),
        lambda g: mor.f_m(P.eval_etaR(P.base.gens()[g])) == S.eval_etaR(mor.f_o(P.base.gens()[g])))
    pairs = [(i, j) for a, i in enumerate(labels) for j in labels[a:]
             if (i, j) in P.mult or (j, i) in P.mult]
    run("multiplicative", pairs,
        lambda ij: mor.f_m(P.mult_entry(*ij)) == S.gamma_mul(mor.f_m(P.vec(ij[0])), mor.f_m(P.vec(ij[1]))))
    run("delta", labels, lambda k: S.apply_delta(mor.f_m(P.vec(k))) == mor.f_m_tensor(P.delta[k]))
    run("epsilon", labels, lambda k: S.apply_epsilon(mor.f_m(P.vec(k))) == mor.f_o(P.epsilon[k]))
    run("conj", labels, lambda k: S.apply_conj(mor.f_m(P.vec(k))) == mor.f_m(P.conj[k]))
    return rep


class BaseChange:
    """Gamma_f for (P, ext), plus beta and the inclusion iota for a morphism."""

    def __init__(self, P, ext):
        if ext.source != P.base:
            raise ValueError(f"extension starts at {ext.source}, algebroid base is {P.base}")
        self.P = P
        self.ext = ext
        self.algebroid = self._build()

    def normalize(self, b, gamma, b2):
        """Normal form of b (x) gamma (x) b2 in the basis e_i (x) b_j."""
        P, ext = self.P, self.ext
        B = ext.target
        b = B(b)
        out = {}
        one = P.base.one()
        for j, a in enumerate(ext.coords(b2)):
            if a.is_zero():
                continue
            x = gamma if a == one else P.gamma_mul(gamma, P.eval_etaR(a))
            for i, c in x.items():
                val = b * ext.f_o(c)
                key = (i, j)
                out[key] = out[key] + val if key in out else val
        return Vector(B, out)

    def _build(self):
        P, ext = self.P, self.ext
        B = ext.target
        one = B.one()
        labels = [(i, j) for i in P.basis for j in range(ext.rank)]
        levels = {(i, j): P.level(i) for i, j in labels}
        unit = self.normalize(one, P.unit, one)
        mult = {}
        for x, (i, j) in enumerate(labels):
            for (k, l) in labels[x:]:
                try:
                    prod = P.mult_entry(i, k)
                except WindowExceeded:
                    continue
                mult[((i, j), (k, l))] = self.normalize(one, prod, ext.basis[j] * ext.basis[l])
        delta, epsilon, conj = {}, {}, {}
        for i, j in labels:
            entries = {}
            for r, g in P.delta[i].items():
                left = self.normalize(one, g, one)
                if not left.is_zero():
                    entries[(r, j)] = left
            delta[(i, j)] = TensorVector(B, entries)
            epsilon[(i, j)] = ext.f_o(P.epsilon[i]) * ext.basis[j]
            conj[(i, j)] = self.normalize(ext.basis[j], P.conj[i], one)
        etaR = [self.normalize(one, P.unit, g) for g in B.gens()]
        return HopfAlgebroid(B, labels, unit, mult, etaR, delta, epsilon, conj, levels=levels,
                             name=f"{P.name}_f")

    def iota(self):
        """The morphism (f_o, gamma -> 1 (x) gamma (x) 1) into Gamma_f."""
        one = self.ext.target.one()
        f_m = {i: self.normalize(one, self.P.vec(i), one) for i in self.P.basis}
        return HopfMorphism(self.P, self.algebroid, self.ext.f_o, f_m, name="iota")

    def beta(self, mor, label):
        """beta(e_i (x) b_j) = f_m(e_i) etaR_Sigma(b_j)."""
        i, j = label
        S = mor.target
        return S.gamma_mul(mor.f_m(self.P.vec(i)), S.eval_etaR(self.ext.basis[j]))

    def beta_vector(self, mor, v):
        S = mor.target
        acc = Vector(S.base)
        for label, b in v.items():
            acc = acc + self.beta(mor, label).scale(b)
        return acc

    def beta_dual(self, mor, D, window=None):
        Pf = self.algebroid
        labels = Pf.window(window)
        return DualElement(Pf, DualVector(Pf.base, labels, {x: D.pair(self.beta(mor, x)) for x in labels}))


def scalar_extension(P, ext):
    """For a Hopf algebra P over A: B (x)_A P over B and the morphism e_i -> e_i.

    Every structure constant is pushed through f_o; this is only an
    algebroid when etaR = etaL, which is checked.
    """
    A, B = P.base, ext.target
    for g in A.gens():
        if P.eval_etaR(g) != P.unit.scale(g):
            raise ValueError("scalar extension needs a Hopf algebra (etaR = etaL)")

    def push(v):
        return Vector(B, {i: ext.f_o(c) for i, c in v.items()})

    S = HopfAlgebroid(
        B, P.basis, push(P.unit), {k: push(v) for k, v in P.mult.items()},
        [push(P.unit).scale(g) for g in B.gens()],
        {k: TensorVector(B, {j: push(v) for j, v in t.items()}) for k, t in P.delta.items()},
        {k: ext.f_o(c) for k, c in P.epsilon.items()},
        {k: push(v) for k, v in P.conj.items()},
        levels={k: P.level(k) for k in P.basis}, name=f"{P.name}@{B}")
    mor = HopfMorphism(P, S, ext.f_o, {i: S.vec(i) for i in P.basis}, name=f"{A}->{B}")
    return S, mor


def base_change_algebroid(P, ext):
    return BaseChange(P, ext).algebroid


def extend_scalars(P, ext):
    """Alias of ``base_change_algebroid`` returning the BaseChange helper."""
    return BaseChange(P, ext)


def beta_map(mor, ext, bc=None):
    bc = bc or BaseChange(mor.source, ext)
    return lambda label: bc.beta(mor, label)


def beta_dual(D, mor, ext, window=None, bc=None):
    bc = bc or BaseChange(mor.source, ext)
    return bc.beta_dual(mor, D, window)


def pullback_comodule(mor, M):
    """f^* M: same generators, psi pushed through id (x) f_m."""
    if M.algebroid is not mor.source:
        raise ValueError("comodule is not over the morphism's source")
    psi = {key: mor.f_m(v) for key, v in M.psi.items()}
    return Comodule(mor.target, M.rank, psi, name=f"f*{M.name}")


def identification_check(mor, ext, M, *, n_random=4, seed=0, bc=None):
    """Compare the Sigma^dual-action on f^*M with the restriction along beta^dual.

    Also checks the ingredients the comparison silently relies on: f is a
    morphism, f^*M is a comodule, and beta^dual is unital and multiplicative
    on sampled pairs.
    """
    rng = random.Random(seed)
    bc = bc or BaseChange(mor.source, ext)
    S, Pf = mor.target, bc.algebroid
    rep = Report(title=f"identification {mor.name}".strip())
    mrep = check_morphism(mor)
    rep.add("morphism", mrep.verdict(), (mrep.failed[0].name, mrep.failed[0].witness) if mrep.failed else None)
    fM = pullback_comodule(mor, M)
    crep = check_comodule(fM)
    rep.add("pullback_comodule", crep.verdict(), crep.failed[0].witness if crep.failed else None)
    iM = pullback_comodule(bc.iota(), M)

    samples = [dual_basis(S, k) for k in S.basis] + [random_dual(S, rng) for _ in range(n_random)]
    bd = [bc.beta_dual(mor, D) for D in samples]

    unit_ok = bc.beta_dual(mor, dual_unit(S)) == dual_unit(Pf)
    rep.add("beta_dual_unit", PASS if unit_ok else FAIL, None if unit_ok else "unit")

    witness = None
    try:
        for a in range(len(samples)):
            for b in range(len(samples)):
                lhs = bc.beta_dual(mor, dual_mul(samples[a], samples[b]))
                if lhs != dual_mul(bd[a], bd[b]):
                    witness = (a, b)
                    break
            if witness is not None:
                break
        status = PASS if witness is None else FAIL
    except WindowExceeded as exc:
        status, witness = INDETERMINATE, str(exc)
    rep.add("beta_dual_multiplicative", status, witness)

    actS, actF = to_module(fM), to_module(iM)
    B = S.base
    vectors = [actS.generator(s) for s in range(M.rank)]
    vectors += [[B.random(rng) for _ in range(M.rank)] for _ in range(n_random)]
    witness = None
    for d_idx, D in enumerate(samples):
        for m in vectors:
            if actS.act(D, m) != actF.act(bd[d_idx], m):
                witness = d_idx
                break
        if witness is not None:
            break
    rep.add("action_agreement", PASS if witness is None else FAIL, witness)
    return rep
