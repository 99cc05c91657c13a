"""Right comodules of finite free rank and their discrete dual-algebra modules.

A comodule on generators m_0..m_{r-1} is stored as psi(m_s) = sum_t m_t (x) gamma[t, s].
psi is A-linear for the etaR-structure on Gamma, so psi(a m_s) = sum_t
m_t (x) gamma[t, s] etaR(a). The translated action is

    act(D)(sum_s a_s m_s) = sum_{s,t} m_t D(gamma[t, s] etaR(a_s)),

which is additive but only semilinear in the coordinates.
"""
from __future__ import annotations

from .dual import dual_basis, dual_mul, dual_unit
from .errors import SupportExceeded, WindowExceeded
from .freemod import Vector
from .report import FAIL, INDETERMINATE, PASS, Report

__all__ = [
    "Comodule", "ModuleAction", "check_comodule", "to_module", "from_module",
    "iff_test", "tensor_comodule", "dual_action_on_tensor", "trivial_comodule",
    "morphism_check", "swap_matrix",
]


class Comodule:
    def __init__(self, algebroid, rank, psi, name=""):
        self.algebroid = algebroid
        self.rank = rank
        A = algebroid.base
        self.psi = {}
        for (t, s), v in psi.items():
            if not (0 <= t < rank and 0 <= s < rank):
                raise ValueError(f"psi entry ({t},{s}) outside rank {rank}")
            if not v.is_zero():
                self.psi[(t, s)] = v
        self.name = name
        self._zero = Vector(A)

    def gamma(self, t, s):
        return self.psi.get((t, s), self._zero)

    def replace(self, t, s, v):
        psi = dict(self.psi)
        psi[(t, s)] = v
        return Comodule(self.algebroid, self.rank, psi, self.name)

    def coords(self, values):
        A = self.algebroid.base
        return [A(v) for v in values]

    def __eq__(self, other):
        if not isinstance(other, Comodule):
            return NotImplemented
        return self.rank == other.rank and self.psi == other.psi

    def __repr__(self):
        return f"Comodule({self.name or '?'}, rank {self.rank})"


def trivial_comodule(P):
    """A itself with psi = etaR, i.e. psi(1) = 1 (x) 1."""
    return Comodule(P, 1, {(0, 0): P.unit}, name="A")


def _coassoc_sides(M, u, s):
    P = M.algebroid
    left = P.apply_delta(M.gamma(u, s))
    right = P.zero_tensor()
    for t in range(M.rank):
        right = right + P.tensor(M.gamma(u, t), M.gamma(t, s))
    return left, right


def check_comodule(M):
    """Counit (id (x) eps) psi = id and coassociativity, witness = generator index."""
    P = M.algebroid
    A = P.base
    rep = Report(title=f"comodule {M.name}".strip())
    witness, exhausted = None, None
    for s in range(M.rank):
        try:
            ok = all(P.apply_epsilon(M.gamma(t, s)) == A(1 if t == s else 0) for t in range(M.rank))
        except WindowExceeded as exc:
            exhausted = exhausted or (s, str(exc))
            continue
        if not ok:
            witness = s
            break
    _close(rep, "counit", witness, exhausted)
    witness, exhausted = None, None
    for s in range(M.rank):
        try:
            ok = all(lhs == rhs for lhs, rhs in (_coassoc_sides(M, u, s) for u in range(M.rank)))
        except WindowExceeded as exc:
            exhausted = exhausted or (s, str(exc))
            continue
        if not ok:
            witness = s
            break
    _close(rep, "coassociativity", witness, exhausted)
    return rep


def _close(rep, name, witness, exhausted):
    if witness is not None:
        rep.add(name, FAIL, witness)
    elif exhausted is not None:
        rep.add(name, INDETERMINATE, exhausted[0], exhausted[1])
    else:
        rep.add(name, PASS)


class ModuleAction:
    """A Gamma^dual-action on A^rank given by a procedure (D, coords) -> coords."""

    def __init__(self, algebroid, rank, fn, name=""):
        self.algebroid = algebroid
        self.rank = rank
        self._fn = fn
        self.name = name

    def act(self, D, coords):
        return list(self._fn(D, list(coords)))

    def generator(self, s):
        A = self.algebroid.base
        return [A(1 if t == s else 0) for t in range(self.rank)]

    def matrix(self, D):
        """Columns are act(D)(m_s)."""
        cols = [self.act(D, self.generator(s)) for s in range(self.rank)]
        return [[cols[s][t] for s in range(self.rank)] for t in range(self.rank)]


def to_module(M):
    P = M.algebroid
    A = P.base

    def fn(D, coords):
        out = [A.zero() for _ in range(M.rank)]
        for s, a in enumerate(coords):
            a = A(a)
            if a.is_zero():
                continue
            ea = P.eval_etaR(a)
            for t in range(M.rank):
                g = M.gamma(t, s)
                if g.is_zero():
                    continue
                v = g if a == A.one() else P.gamma_mul(g, ea)
                out[t] = out[t] + D.pair(v)
        return out

    return ModuleAction(P, M.rank, fn, name=M.name)


def from_module(action, bound):
    """Rebuild psi from the dual-basis actions, psi(m) = sum_{i<B} act(e_i^dual)(m) (x) e_i.

    Raises SupportExceeded when some materialized e_i^dual with i >= B still
    acts nontrivially on a generator (the action is not discrete at B).
    """
    P = action.algebroid
    labels = P.window(bound)
    psi = {}
    for s in range(action.rank):
        m_s = action.generator(s)
        for k in P.basis[len(labels):]:
            img = action.act(dual_basis(P, k), m_s)
            if any(not c.is_zero() for c in img):
                raise SupportExceeded(f"e_{k}^dual acts nontrivially on m_{s}; bound {bound} too small")
        cols = {}
        for k in labels:
            img = action.act(dual_basis(P, k), m_s)
            for t, c in enumerate(img):
                if not c.is_zero():
                    cols.setdefault(t, {})[k] = c
        for t, entries in cols.items():
            psi[(t, s)] = Vector(P.base, entries)
    return Comodule(P, action.rank, psi, name=action.name)


def _module_report(action, samples):
    """Unitality and multiplicativity of the action on generators and dual samples."""
    P = action.algebroid
    rep = Report(title=f"module {action.name}".strip())
    unit = dual_unit(P)
    witness = None
    for s in range(action.rank):
        if action.act(unit, action.generator(s)) != action.generator(s):
            witness = s
            break
    rep.add("unital", PASS if witness is None else FAIL, witness)
    witness, exhausted = None, None
    products = {}

    def prod(a, b):
        if (a, b) not in products:
            products[(a, b)] = dual_mul(samples[a], samples[b])
        return products[(a, b)]

    for s in range(action.rank):
        m_s = action.generator(s)
        try:
            for a, D2 in enumerate(samples):
                for b, D1 in enumerate(samples):
                    lhs = action.act(prod(a, b), m_s)
                    rhs = action.act(D2, action.act(D1, m_s))
                    if lhs != rhs:
                        witness = s
                        break
                if witness is not None:
                    break
        except WindowExceeded as exc:
            exhausted = exhausted or (s, str(exc))
        if witness is not None:
            break
    _close(rep, "multiplicative", witness, exhausted)
    return rep


def iff_test(M, samples=None):
    """Evaluate both sides of 'psi coassociative and counital iff the action is'.

    ``samples`` defaults to the dual basis of the presentation's window.
    Returns a report with the comodule verdict, the module verdict and an
    ``agreement`` line; a disagreement would refute the translation.
    """
    P = M.algebroid
    if samples is None:
        samples = [dual_basis(P, k) for k in P.basis]
    comod = check_comodule(M)
    module = _module_report(to_module(M), samples)
    rep = Report(title=f"iff {M.name}".strip())
    rep.extend(comod, "comodule.")
    rep.extend(module, "module.")
    cv, mv = comod.verdict(), module.verdict()
    if INDETERMINATE in (cv, mv):
        rep.add("agreement", INDETERMINATE, detail="window exhausted")
    else:
        same = cv == mv
        if same and cv == FAIL:
            cw = {c.witness for c in comod.failed}
            mw = {c.witness for c in module.failed}
            same = bool(cw & mw)
        rep.add("agreement", PASS if same else FAIL, None if same else (cv, mv))
    return rep


def tensor_comodule(M, N):
    """psi on m_s (x) n_s' is (psi_M (x) psi_N) followed by multiplication in Gamma.

    Generator (s, s') has index s * rank(N) + s'.
    """
    P = M.algebroid
    r, q = M.rank, N.rank
    psi = {}
    for t in range(r):
        for s in range(r):
            g = M.gamma(t, s)
            if g.is_zero():
                continue
            for t2 in range(q):
                for s2 in range(q):
                    h = N.gamma(t2, s2)
                    if h.is_zero():
                        continue
                    psi[(t * q + t2, s * q + s2)] = P.gamma_mul(g, h)
    return Comodule(P, r * q, psi, name=f"{M.name}(x){N.name}")


def swap_matrix(r, q):
    """Coordinate matrix of M (x) N -> N (x) M, m_s (x) n_t -> n_t (x) m_s."""
    n = r * q
    out = [[0] * n for _ in range(n)]
    for s in range(r):
        for t in range(q):
            out[t * r + s][s * q + t] = 1
    return out


def dual_action_on_tensor(D, M, N, m, n, window=None):
    """D(m (x) n) = sum_{i,j} D(e_i e_j) (e_i^dual m) (x) (e_j^dual n).

    Returns coordinates on M (x) N and asserts agreement with the action of
    the translated tensor comodule.
    """
    from .errors import ConsistencyError

    P = M.algebroid
    A = P.base
    labels = P.window(window if window is not None else D.window)
    actM, actN = to_module(M), to_module(N)
    dm = {i: actM.act(dual_basis(P, i, D.window), m) for i in labels}
    dn = {j: actN.act(dual_basis(P, j, D.window), n) for j in labels}
    out = [A.zero() for _ in range(M.rank * N.rank)]
    for i in labels:
        if all(c.is_zero() for c in dm[i]):
            continue
        for j in labels:
            if all(c.is_zero() for c in dn[j]):
                continue
            dij = D.pair(P.gamma_mul(P.vec(i), P.vec(j)))
            if dij.is_zero():
                continue
            for s, a in enumerate(dm[i]):
                for t, b in enumerate(dn[j]):
                    out[s * N.rank + t] = out[s * N.rank + t] + dij * a * b
    coords = [A.zero() for _ in range(M.rank * N.rank)]
    for s, a in enumerate(m):
        for t, b in enumerate(n):
            coords[s * N.rank + t] = A(a) * A(b)
    via = to_module(tensor_comodule(M, N)).act(D, coords)
    if via != out:
        raise ConsistencyError("tensor action disagrees with the translated tensor comodule")
    return out


def morphism_check(F, M, N, samples=None):
    """Is the A-linear map f(m_s) = sum_t F[t][s] n_t a comodule morphism?

    Both routes are evaluated: psi_N f = (f (x) id) psi_M on generators, and
    f act_M(D) = act_N(D) f on the dual samples.
    """
    P = M.algebroid
    A = P.base
    F = [[A(x) for x in row] for row in F]
    rep = Report(title="morphism")
    witness = None
    for s in range(M.rank):
        for u in range(N.rank):
            lhs = Vector(A)
            rhs = Vector(A)
            for t in range(N.rank):
                if not F[t][s].is_zero():
                    lhs = lhs + P.gamma_mul(N.gamma(u, t), P.eval_etaR(F[t][s]))
            for t in range(M.rank):
                rhs = rhs + M.gamma(t, s).scale(F[u][t])
            if lhs != rhs:
                witness = s
                break
        if witness is not None:
            break
    rep.add("comodule_side", PASS if witness is None else FAIL, witness)
    if samples is None:
        samples = [dual_basis(P, k) for k in P.basis]
    actM, actN = to_module(M), to_module(N)

    def apply_f(x):
        return [sum((F[t][s] * x[s] for s in range(M.rank)), A.zero()) for t in range(N.rank)]

    witness = None
    for s in range(M.rank):
        m_s = actM.generator(s)
        for D in samples:
            if apply_f(actM.act(D, m_s)) != actN.act(D, apply_f(m_s)):
                witness = s
                break
        if witness is not None:
            break
    rep.add("module_side", PASS if witness is None else FAIL, witness)
    return rep

