"""The dual algebra Gamma^dual = Hom_{A, etaL}(Gamma, A).

Multiplication follows the composite Delta, then id (x) D1, then D2:

    (D2 o D1)(e_k) = D2( sum_j g_j etaR(D1(e_j)) )   where Delta(e_k) = sum_j g_j (x) e_j

so D1 is applied to the RIGHT tensor factor. The opposite convention gives
the opposite algebra. The unit is epsilon, eps_dual(a) = a * epsilon and
etaL_dual(D) = D(1).
"""
from __future__ import annotations

import random

from .errors import ConsistencyError, WindowExceeded
from .freemod import DualVector, Vector, dual_pair
from .report import FAIL, PASS, Report

__all__ = [
    "DualElement", "dual_unit", "dual_basis", "dual_from_values", "random_dual",
    "eps_dual", "etaL_dual", "dual_mul", "right_A_action", "act_on_A",
    "continuity_check", "restrictive_witness", "NoWitness", "Witness",
]


class DualElement:
    __slots__ = ("algebroid", "vector")

    def __init__(self, algebroid, vector):
        self.algebroid = algebroid
        self.vector = vector

    @property
    def window(self):
        return self.vector.window

    def __call__(self, label):
        return self.vector(label)

    def pair(self, v):
        return dual_pair(self.vector, v)

    def table(self):
        return [self.vector(k) for k in self.window]

    def __add__(self, other):
        return DualElement(self.algebroid, self.vector + other.vector)

    def __sub__(self, other):
        return DualElement(self.algebroid, self.vector - other.vector)

    def __neg__(self):
        return DualElement(self.algebroid, -self.vector)

    def scale(self, a):
        """Left A-multiple (a D)(x) = a D(x)."""
        return DualElement(self.algebroid, self.vector.scale(a))

    def __eq__(self, other):
        if not isinstance(other, DualElement):
            return NotImplemented
        return self.vector == other.vector

    def __repr__(self):
        return f"DualElement({', '.join(str(c) for c in self.table())})"


def dual_from_values(P, values, window=None):
    labels = P.window(window)
    return DualElement(P, DualVector(P.base, labels, dict(zip(labels, values))))


def dual_unit(P, window=None):
    labels = P.window(window)
    return DualElement(P, DualVector(P.base, labels, {k: P.epsilon[k] for k in labels}))


def dual_basis(P, label, window=None, coeff=1):
    """coeff * e_label^dual on the window."""
    labels = P.window(window)
    zero = P.base.zero()
    table = {k: (P.base(coeff) if k == label else zero) for k in labels}
    return DualElement(P, DualVector(P.base, labels, table, finite_support=True))


def random_dual(P, rng, window=None):
    labels = P.window(window)
    return DualElement(P, DualVector(P.base, labels, {k: P.base.random(rng) for k in labels}))


def eps_dual(P, a, window=None):
    return dual_unit(P, window).scale(a)


def etaL_dual(D):
    return D.pair(D.algebroid.unit)


class _Traced:
    """Wrap a dual element and record every label it is evaluated at."""

    def __init__(self, D):
        self.D = D
        self.seen = set()

    def __call__(self, label):
        self.seen.add(label)
        return self.D(label)

    def pair(self, v):
        acc = self.D.algebroid.base.zero()
        for label, c in v.items():
            acc = acc + c * self(label)
        return acc


def _mul_values(P, D2, D1, labels):
    out = {}
    for k in labels:
        P.check_filtration(k)
        x = Vector(P.base)
        for j, g in P._delta_entry(k).items():
            v = D1(j)
            if v.is_zero():
                continue
            x = x + P.gamma_mul(g, P.eval_etaR(v))
        out[k] = D2.pair(x)
    return out


def dual_mul(D2, D1, window=None, *, trace=None):
    """D2 o D1 on ``window`` (defaults to the smaller of the two windows).

    Raises FiltrationViolation when Delta of a window label reaches a higher
    filtration level, and WindowExceeded when a needed value lies outside the
    windows of D1 or D2. ``trace`` (a dict) receives the labels read from
    each factor under keys "D1" and "D2".
    """
    P = D2.algebroid
    if window is None:
        window = D1.window if len(D1.window) <= len(D2.window) else D2.window
    labels = P.window(window)
    t2, t1 = _Traced(D2), _Traced(D1)
    values = _mul_values(P, t2, t1, labels)
    if trace is not None:
        trace["D2"], trace["D1"] = t2.seen, t1.seen
    return DualElement(P, DualVector(P.base, labels, values))


def continuity_check(D2, D1, rng, window=None):
    """True iff D2 o D1 only depends on the Delta-closure of the window.

    Every table value that the product did not read is replaced by a random
    one; the recomputed product must be identical, and every label read must
    sit at a filtration level no higher than the window's top level.
    """
    P = D2.algebroid
    trace = {}
    prod = dual_mul(D2, D1, window, trace=trace)
    top = max((P.level(k) for k in prod.window), default=-1)
    for seen in trace.values():
        if any(P.level(k) > top for k in seen):
            return False

    def scramble(D, seen):
        table = {k: (D(k) if k in seen else P.base.random(rng)) for k in D.window}
        return DualElement(P, DualVector(P.base, D.window, table))

    again = dual_mul(scramble(D2, trace["D2"]), scramble(D1, trace["D1"]), prod.window)
    return again == prod


def right_A_action(D, a, window=None):
    """The right A-module structure: i -> D(etaR(a) e_i).

    Computed directly and as D o eps_dual(a); the two must agree.
    """
    P = D.algebroid
    labels = P.window(window if window is not None else D.window)
    ea = P.eval_etaR(a)
    direct = {k: D.pair(P.gamma_mul(ea, P.vec(k))) for k in labels}
    direct = DualElement(P, DualVector(P.base, labels, direct))
    via_mul = dual_mul(D, eps_dual(P, a, D.window), labels)
    if direct != via_mul:
        raise ConsistencyError(f"right action of {a} disagrees with D o (a epsilon)")
    return direct


def act_on_A(D, a):
    """D(etaR(a)): the action of Gamma^dual on A."""
    P = D.algebroid
    return D.pair(P.eval_etaR(a))


def dual_law_report(P, rng, n_samples=100, window=None):
    """Associativity, unit laws and the continuity surrogate on random triples."""
    rep = Report(title=f"dual algebra laws {P.name}".strip())
    unit = dual_unit(P, window)
    bad = {"associative": None, "unit_laws": None, "continuity": None}
    for s in range(n_samples):
        D1, D2, D3 = (random_dual(P, rng, window) for _ in range(3))
        if bad["associative"] is None:
            if dual_mul(D3, dual_mul(D2, D1)) != dual_mul(dual_mul(D3, D2), D1):
                bad["associative"] = s
        if bad["unit_laws"] is None:
            if dual_mul(unit, D1) != D1 or dual_mul(D1, unit) != D1:
                bad["unit_laws"] = s
        if bad["continuity"] is None and not continuity_check(D2, D1, rng):
            bad["continuity"] = s
    for name, w in bad.items():
        rep.add(name, PASS if w is None else FAIL, w, detail=f"{n_samples} samples")
    return rep


# -- restrictive witness -------------------------------------------------------

class NoWitness:
    def __repr__(self):
        return "NoWitness"

    def __eq__(self, other):
        return isinstance(other, NoWitness)


class Witness:
    def __init__(self, D):
        self.D = D

    def __repr__(self):
        return f"Witness({self.D!r})"


def restrictive_witness(P, window, samples):
    """Search for a nonzero D on the window with D(etaR(a)) = 0 for all samples.

    A witness shows that Gamma^dual -> End(A) is not injective on the window.
    NoWitness only says the search failed; it proves nothing.
    """
    from .homalg import scalar_nullspace

    labels = P.window(window)
    if not labels:
        return NoWitness()
    A = P.base
    images = []
    for a in samples:
        img = P.eval_etaR(a)
        if any(lab not in labels and not c.is_zero() for lab, c in img.items()):
            raise WindowExceeded(f"etaR({a}) leaves the window")
        images.append([img.coeff(k) for k in labels])
    if not images:
        images = [[A.zero() for _ in labels]]
    vec = scalar_nullspace(A, images)
    if vec is None:
        return NoWitness()
    D = DualElement(P, DualVector(A, labels, dict(zip(labels, vec))))
    for a in samples:
        if not act_on_A(D, a).is_zero():
            raise ConsistencyError("nullspace vector does not annihilate the samples")
    return Witness(D)


def dual_sample_set(P, rng, n_random, window=None):
    """Window dual basis plus random combinations (the default sampling policy)."""
    labels = P.window(window)
    out = [dual_basis(P, k, labels) for k in labels]
    out += [random_dual(P, rng, labels) for _ in range(n_random)]
    return out


def seeded(seed):
    return random.Random(seed)


__all__ += ["dual_law_report", "dual_sample_set", "seeded"]
