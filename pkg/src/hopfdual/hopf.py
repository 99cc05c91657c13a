"""Hopf algebroids (A, Gamma) given by structure constants on a windowed basis.

Gamma is a free left A-module (via etaL) on ``basis``. Scalars always act
through etaL, so a ``Vector`` sum a_i e_i means sum etaL(a_i) e_i. The tables:

* ``unit``     1_Gamma as a Vector
* ``mult``     (i, j) -> e_i e_j   (either key order is accepted)
* ``etaR``     images of the ring generators of A, aligned with ``A.gens()``
* ``delta``    i -> TensorVector, the normal form sum_j g_j (x) e_j
* ``epsilon``  i -> epsilon(e_i) in A
* ``conj``     i -> c(e_i)

Everything is extended linearly: Delta(a e_i) = a Delta(e_i), epsilon(a e_i)
= a epsilon(e_i), c(a e_i) = etaR(a) c(e_i). Inside Gamma (x)_A Gamma an
A-coefficient on the right factor moves left through etaR.
"""
from __future__ import annotations

import random

from .errors import FiltrationViolation, WindowExceeded
from .freemod import TensorVector, Vector
from .report import FAIL, INDETERMINATE, PASS, Report
from .rings import evaluate_expansion

__all__ = ["HopfAlgebroid", "check_axioms", "tensor_algebroid", "derive_antipode"]


class HopfAlgebroid:
    def __init__(self, base, basis, unit, mult, etaR, delta, epsilon, conj,
                 levels=None, name=""):
        self.base = base
        self.basis = tuple(basis)
        self.unit = unit
        self.mult = dict(mult)
        self.etaR = list(etaR)
        self.delta = dict(delta)
        self.epsilon = {k: base(v) for k, v in epsilon.items()}
        self.conj = dict(conj)
        self.levels = dict(levels) if levels is not None else {b: i for i, b in enumerate(self.basis)}
        self.name = name
        self._pos = {b: i for i, b in enumerate(self.basis)}
        self._etaR_cache = {}
        if len(self.etaR) != len(base.gen_payloads()):
            raise ValueError(f"need {len(base.gen_payloads())} etaR generator images, got {len(self.etaR)}")

    # -- bookkeeping --------------------------------------------------------

    def replace(self, **changes):
        """A copy with some tables swapped out (used to build mutations)."""
        kw = dict(base=self.base, basis=self.basis, unit=self.unit, mult=self.mult,
                  etaR=self.etaR, delta=self.delta, epsilon=self.epsilon, conj=self.conj,
                  levels=self.levels, name=self.name)
        kw.update(changes)
        return HopfAlgebroid(**kw)

    def window(self, W=None):
        """Labels of a window: the first W labels, or an explicit label list."""
        if W is None:
            return self.basis
        if isinstance(W, int):
            if W > len(self.basis):
                raise WindowExceeded(f"window {W} exceeds the {len(self.basis)} materialized labels")
            return self.basis[:W]
        labels = tuple(W)
        for lab in labels:
            if lab not in self._pos:
                raise WindowExceeded(f"label {lab!r} is not materialized")
        return labels

    def position(self, label):
        return self._pos[label]

    def level(self, label):
        return self.levels[label]

    def vec(self, label, coeff=1):
        return Vector.basis(self.base, label, coeff)

    def zero(self):
        return Vector(self.base)

    def zero_tensor(self):
        return TensorVector(self.base)

    # -- structure maps -----------------------------------------------------

    def etaL(self, a):
        return self.unit.scale(a)

    def mult_entry(self, i, j):
        v = self.mult.get((i, j))
        if v is None:
            v = self.mult.get((j, i))
        if v is None:
            raise WindowExceeded(f"product e_{i} e_{j} is not in the table")
        return v

    def gamma_mul(self, v, w):
        A = self.base
        acc = {}
        for i, a in v.items():
            for j, b in w.items():
                ab = a * b
                if ab.is_zero():
                    continue
                for k, c in self.mult_entry(i, j).items():
                    t = ab * c
                    acc[k] = acc[k] + t if k in acc else t
        return Vector(A, acc)

    def eval_etaR(self, a):
        a = self.base(a)
        key = a.payload
        hit = self._etaR_cache.get(key)
        if hit is not None:
            return hit
        A = self.base
        out = evaluate_expansion(
            A.expand(a.payload), self.etaR,
            one=self.unit, add=lambda x, y: x + y, mul=self.gamma_mul,
            scale=lambda s, v: v.scale(A(s)), zero=Vector(A),
        )
        self._etaR_cache[key] = out
        return out

    def _delta_entry(self, i):
        try:
            return self.delta[i]
        except KeyError:
            raise WindowExceeded(f"Delta(e_{i}) is not in the table") from None

    def apply_delta(self, v):
        out = TensorVector(self.base)
        for i, a in v.items():
            out = out + self._delta_entry(i).scale(a)
        return out

    def apply_epsilon(self, v):
        acc = self.base.zero()
        for i, a in v.items():
            try:
                acc = acc + a * self.epsilon[i]
            except KeyError:
                raise WindowExceeded(f"epsilon(e_{i}) is not in the table") from None
        return acc

    def apply_conj(self, v):
        acc = Vector(self.base)
        for i, a in v.items():
            try:
                ci = self.conj[i]
            except KeyError:
                raise WindowExceeded(f"c(e_{i}) is not in the table") from None
            acc = acc + self.gamma_mul(self.eval_etaR(a), ci)
        return acc

    def tensor(self, x, y):
        """Normal form of x (x) y: coefficients of y cross over through etaR."""
        entries = {}
        for j, a in y.items():
            left = x if a == self.base.one() else self.gamma_mul(x, self.eval_etaR(a))
            if left.is_zero():
                continue
            entries[j] = entries[j] + left if j in entries else left
        return TensorVector(self.base, entries)

    def tensor_mul(self, s, t):
        """Product in Gamma (x)_A Gamma, factorwise."""
        out = TensorVector(self.base)
        for j, x in s.items():
            for l, y in t.items():
                out = out + self.tensor(self.gamma_mul(x, y), self.mult_entry(j, l))
        return out

    def check_filtration(self, label):
        lev = self.levels[label]
        d = self._delta_entry(label)
        for lab in d.right_support() | d.left_support():
            if self.levels.get(lab, float("inf")) > lev:
                raise FiltrationViolation(f"Delta(e_{label}) reaches e_{lab} of higher level")

    def __repr__(self):
        return f"HopfAlgebroid({self.name or '?'}, A={self.base}, rank {len(self.basis)})"


# -- axiom checker -------------------------------------------------------------

def _triple_left(P, k):
    """(Delta (x) id) Delta(e_k) as {(mid, right): left Vector}."""
    out = {}
    for j, g in P._delta_entry(k).items():
        for l, h in P.apply_delta(g).items():
            out[(l, j)] = out[(l, j)] + h if (l, j) in out else h
    return {key: v for key, v in out.items() if not v.is_zero()}


def _triple_right(P, k):
    """(id (x) Delta) Delta(e_k) as {(mid, right): left Vector}."""
    out = {}
    for j, g in P._delta_entry(k).items():
        for i, c in P._delta_entry(j).items():
            for l, x in P.tensor(g, c).items():
                out[(l, i)] = out[(l, i)] + x if (l, i) in out else x
    return {key: v for key, v in out.items() if not v.is_zero()}


class _Axiom:
    """Accumulate a per-label verdict: first failure wins, exhaustion is remembered."""

    def __init__(self, report, name):
        self.report, self.name = report, name
        self.witness = None
        self.exhausted = None
        self.skipped = 0

    def run(self, label, fn):
        if self.witness is not None:
            return
        try:
            ok = fn()
        except WindowExceeded as exc:
            if self.exhausted is None:
                self.exhausted = (label, str(exc))
            return
        if not ok:
            self.witness = label

    def close(self, detail=""):
        if self.witness is not None:
            return self.report.add(self.name, FAIL, self.witness)
        if self.exhausted is not None:
            return self.report.add(self.name, INDETERMINATE, self.exhausted[0], self.exhausted[1])
        return self.report.add(self.name, PASS, detail=detail)


def check_axioms(P, window=None, *, samples=8, seed=0, extra=True):
    """Check the Hopf algebroid axioms on the basis elements of ``window``.

    Returns a ``Report`` with one entry per axiom:
    coassociativity, counit, ring_homomorphisms, counit_on_units,
    conjugation_on_units, inverse_laws, filtration, and with ``extra`` the
    multiplicativity of Delta, epsilon, c and commutativity/associativity of
    Gamma on basis pairs whose products are tabulated.
    """
    rng = random.Random(seed)
    labels = P.window(window)
    A = P.base
    one, zero = A.one(), A.zero()
    rep = Report(title=f"axioms {P.name}".strip())

    ax = _Axiom(rep, "coassociativity")
    for k in labels:
        ax.run(k, lambda: _triple_left(P, k) == _triple_right(P, k))
    ax.close()

    ax = _Axiom(rep, "counit")
    for k in labels:
        def counit(k=k):
            d = P._delta_entry(k)
            left = Vector(A, {j: P.apply_epsilon(g) for j, g in d.items()})
            right = Vector(A)
            for j, g in d.items():
                right = right + P.gamma_mul(g, P.eval_etaR(P.epsilon[j] if j in P.epsilon else _missing(j)))
            ek = P.vec(k)
            return left == ek and right == ek
        ax.run(k, counit)
    ax.close()

    ax = _Axiom(rep, "ring_homomorphisms")
    ax.run("unit", lambda: all(P.gamma_mul(P.unit, P.vec(k)) == P.vec(k) for k in labels))
    for r, rel in enumerate(A.relations()):
        def relation(rel=rel):
            img = evaluate_expansion(rel, P.etaR, one=P.unit, add=lambda x, y: x + y,
                                     mul=P.gamma_mul, scale=lambda s, v: v.scale(A(s)),
                                     zero=Vector(A))
            return img.is_zero()
        ax.run(f"relation{r}", relation)
    for s in range(samples):
        a, b = A.random(rng), A.random(rng)
        ax.run(f"sample{s}", lambda a=a, b=b: P.eval_etaR(a * b) == P.gamma_mul(P.eval_etaR(a), P.eval_etaR(b)))
    ax.close()

    ax = _Axiom(rep, "counit_on_units")
    ax.run("unit", lambda: P.apply_epsilon(P.unit) == one)
    for g_i, g in enumerate(A.gens()):
        ax.run(f"gen{g_i}", lambda g=g: P.apply_epsilon(P.eval_etaR(g)) == g)
    ax.close()

    ax = _Axiom(rep, "conjugation_on_units")
    ax.run("unit", lambda: P.apply_conj(P.unit) == P.unit)
    for g_i, g in enumerate(A.gens()):
        ax.run(f"gen{g_i}", lambda g=g: P.apply_conj(P.eval_etaR(g)) == P.etaL(g))
    for k in labels:
        ax.run(k, lambda k=k: P.apply_conj(P.apply_conj(P.vec(k))) == P.vec(k))
    ax.close()

    ax = _Axiom(rep, "inverse_laws")
    for k in labels:
        def inverse(k=k):
            d = P._delta_entry(k)
            eps = P.epsilon[k] if k in P.epsilon else _missing(k)
            lhs1 = Vector(A)
            lhs2 = Vector(A)
            for j, g in d.items():
                lhs1 = lhs1 + P.gamma_mul(P.apply_conj(g), P.vec(j))
                cj = P.conj[j] if j in P.conj else _missing(j)
                lhs2 = lhs2 + P.gamma_mul(g, cj)
            return lhs1 == P.eval_etaR(eps) and lhs2 == P.etaL(eps)
        ax.run(k, inverse)
    ax.close()

    ax = _Axiom(rep, "filtration")
    for k in labels:
        def filt(k=k):
            try:
                P.check_filtration(k)
            except FiltrationViolation:
                return False
            return True
        ax.run(k, filt)
    ax.close()

    if extra:
        _check_multiplicative(P, labels, rep, zero)
    return rep


def _missing(label):
    raise WindowExceeded(f"table entry for e_{label} missing")


def _tabulated_pairs(P, labels):
    for a, i in enumerate(labels):
        for j in labels[a:]:
            if (i, j) in P.mult or (j, i) in P.mult:
                yield i, j


def _check_multiplicative(P, labels, rep, zero):
    pairs = list(_tabulated_pairs(P, labels))
    checks = {
        "delta_multiplicative": lambda i, j: P.apply_delta(P.mult_entry(i, j))
        == P.tensor_mul(P._delta_entry(i), P._delta_entry(j)),
        "epsilon_multiplicative": lambda i, j: P.apply_epsilon(P.mult_entry(i, j))
        == P.epsilon[i] * P.epsilon[j],
        "conj_multiplicative": lambda i, j: P.apply_conj(P.mult_entry(i, j))
        == P.gamma_mul(P.conj[i], P.conj[j]),
        "commutative": lambda i, j: P.mult_entry(i, j) == P.mult_entry(j, i),
    }
    for name, fn in checks.items():
        ax = _Axiom(rep, name)
        for i, j in pairs:
            ax.run((i, j), lambda i=i, j=j: fn(i, j))
        ax.close(detail=f"{len(pairs)} tabulated pairs")
    ax = _Axiom(rep, "associative")
    small = labels[: min(len(labels), 6)]
    for i in small:
        for j in small:
            for k in small:
                def assoc(i=i, j=j, k=k):
                    ei, ej, ek = P.vec(i), P.vec(j), P.vec(k)
                    return P.gamma_mul(P.gamma_mul(ei, ej), ek) == P.gamma_mul(ei, P.gamma_mul(ej, ek))
                ax.run((i, j, k), assoc)
    if ax.exhausted is not None and ax.witness is None:
        # products leaving the table are truncation, not a refutation of associativity
        ax.exhausted = None
    ax.close()


# -- constructions ------------------------------------------------------------

def derive_antipode(base, basis, unit, mult, delta, epsilon):
    """Solve sum_j g_j c(e_j) = epsilon(e_k) 1 recursively for a Hopf algebra.

    Needs Delta(e_k) = 1 (x) e_k + (terms whose right labels were handled
    earlier in the basis order); raises ValueError otherwise.
    """
    P = HopfAlgebroid(base, basis, unit, mult, [Vector(base, {}) for _ in base.gen_payloads()],
                      delta, epsilon, {})
    conj = {}
    for k in basis:
        d = P._delta_entry(k)
        if d.entries.get(k) != unit:
            raise ValueError(f"Delta(e_{k}) has no 1 (x) e_{k} term; cannot derive the antipode")
        acc = P.etaL(P.epsilon[k])
        for j, g in d.items():
            if j == k:
                continue
            if j not in conj:
                raise ValueError(f"antipode recursion for e_{k} needs c(e_{j}) first")
            acc = acc - P.gamma_mul(g, conj[j])
        conj[k] = acc
    return conj


def _is_hopf_algebra(P):
    return all(P.eval_etaR(g) == P.etaL(g) for g in P.base.gens())


def tensor_algebroid(P, window=None):
    """(A, Gamma (x)_A Gamma) on pair labels (i, j), for Hopf algebras (etaL = etaR).

    Multiplication is factorwise, Delta pairs first with third,
    epsilon = epsilon * epsilon and c = c (x) c. Pair labels have level
    level(i) + level(j).
    """
    if not _is_hopf_algebra(P):
        raise NotImplementedError("tensor_algebroid is implemented for Hopf algebras (etaL = etaR)")
    A = P.base
    labels = P.window(window)
    lab_set = set(labels)
    pairs = sorted(((i, j) for i in labels for j in labels),
                   key=lambda ij: (P.level(ij[0]) + P.level(ij[1]), P.position(ij[0]), P.position(ij[1])))
    levels = {(i, j): P.level(i) + P.level(j) for i, j in pairs}

    def outer(v, w):
        acc = {}
        for i, a in v.items():
            for j, b in w.items():
                ab = a * b
                if not ab.is_zero():
                    acc[(i, j)] = ab
        return Vector(A, acc)

    def inside(v):
        return all(lab in lab_set for lab in v.support())

    unit = outer(P.unit, P.unit)
    mult = {}
    for x, (i, j) in enumerate(pairs):
        for (k, l) in pairs[x:]:
            try:
                a, b = P.mult_entry(i, k), P.mult_entry(j, l)
            except WindowExceeded:
                continue
            if inside(a) and inside(b):
                mult[((i, j), (k, l))] = outer(a, b)
    delta, epsilon, conj = {}, {}, {}
    for i, j in pairs:
        di, dj = P._delta_entry(i), P._delta_entry(j)
        entries = {}
        for r1, g1 in di.items():
            for r2, g2 in dj.items():
                left = outer(g1, g2)
                if not left.is_zero():
                    key = (r1, r2)
                    entries[key] = entries[key] + left if key in entries else left
        delta[(i, j)] = TensorVector(A, entries)
        epsilon[(i, j)] = P.epsilon[i] * P.epsilon[j]
        conj[(i, j)] = outer(P.conj[i], P.conj[j])
    # A-generators act through the first factor; etaR = etaL here
    etaR = [outer(P.eval_etaR(g), P.unit) for g in A.gens()]
    name = f"{P.name}(x){P.name}" if P.name else "tensor"
    return HopfAlgebroid(A, pairs, unit, mult, etaR, delta, epsilon, conj, levels=levels, name=name)
