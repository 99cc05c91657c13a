"""Finite-scale homological algebra: Smith forms, homology, Pontryagin duals.

Matrices are plain lists of Python ints wrapped in ``IntMatrix`` (exact, no
overflow). Over Z/p^k the Smith form is computed over Z and reduced at the
end, so p-divisible pivots never stall the elimination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np

from . import kernels
from .errors import HopfDualError, UnsupportedRing
from .rings import (
    Extension, Integers, Modular, PAdicTrunc, Product, Rationals, RingElement,
    TruncSeries, p_valuation,
)

__all__ = [
    "IntMatrix", "SmithForm", "smith_form", "kernel_mod", "cokernel_invariants",
    "kernel_invariants", "complex_homology", "FiniteModule", "pontryagin_dual",
    "double_dual_check", "dual_morphism", "normalize_invariants", "scalar_nullspace",
]


class IntMatrix:
    __slots__ = ("rows", "cols", "entries", "modulus")

    def __init__(self, entries, rows=None, cols=None, modulus=None):
        entries = [list(map(int, r)) for r in entries]
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if modulus is not None:
            entries = [[x % modulus for x in r] for r in entries]
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError("ragged or mis-shaped matrix")
        self.entries = entries
        self.modulus = modulus

    @classmethod
    def identity(cls, n, modulus=None):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n, modulus)

    @classmethod
    def zeros(cls, rows, cols, modulus=None):
        return cls([[0] * cols for _ in range(rows)], rows, cols, modulus)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = [[sum(self.entries[i][t] * other.entries[t][j] for t in range(self.cols))
                for j in range(other.cols)] for i in range(self.rows)]
        m = self.modulus if self.modulus is not None else other.modulus
        return IntMatrix(out, self.rows, other.cols, m)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self):
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                         self.cols, self.rows, self.modulus)

    def reduce(self, m):
        return IntMatrix(self.entries, self.rows, self.cols, m)

    def lift(self):
        return IntMatrix(self.entries, self.rows, self.cols, None)

    def is_zero(self):
        return all(x == 0 for r in self.entries for x in r)

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"IntMatrix({self.entries}, mod={self.modulus})"

    def determinant(self):
        """Exact determinant by fraction-free elimination (Bareiss)."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [r[:] for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass
class SmithForm:
    """U M V = D with U, V invertible; ``Uinv``, ``Vinv`` are their inverses."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix
    modulus: int = None
    diagonal: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def _smith_Z(M):
    r, c = M.rows, M.cols
    A = [row[:] for row in M.entries]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    Ui = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]
    Vi = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q row_src
        if q == 0:
            return
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q col_src
        if q == 0:
            return
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for row in Ui:
            row[i] = -row[i]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row/column t into the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, r) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, c) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    diag = [A[i][i] for i in range(min(r, c))]
    return (IntMatrix(U, r, r), IntMatrix(A, r, c), IntMatrix(V, c, c),
            IntMatrix(Ui, r, r), IntMatrix(Vi, c, c), diag)


def _prime_power(m):
    for p in range(2, m + 1):
        if m % p == 0:
            k = p_valuation(m, p)
            return (p, k) if p ** k == m else None
    return None


def smith_form(M, modulus=None):
    """Smith normal form over Z (``modulus=None``) or over Z/p^k.

    Over Z/p^k the diagonal is normalized to powers of p (0 for p^k).
    """
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    if modulus is None:
        modulus = M.modulus
    U, D, V, Ui, Vi, diag = _smith_Z(M.lift())
    if modulus is None:
        return SmithForm(U, D, V, Ui, Vi, None, diag)
    pk = _prime_power(modulus)
    if pk is None:
        raise UnsupportedRing(f"Smith form over Z/{modulus} needs a prime power modulus")
    p, _ = pk
    U, D, V, Ui, Vi = (X.reduce(modulus) for X in (U, D, V, Ui, Vi))
    rows = [r[:] for r in U.entries]
    rows_inv = [r[:] for r in Ui.entries]
    dm = [r[:] for r in D.entries]
    out_diag = []
    for i, d in enumerate(diag):
        d %= modulus
        if d == 0:
            out_diag.append(0)
            continue
        v = p_valuation(d, p)
        u = d // p ** v
        uinv = pow(u, -1, modulus)
        rows[i] = [x * uinv % modulus for x in rows[i]]
        for row in rows_inv:
            row[i] = row[i] * u % modulus
        dm[i][i] = p ** v % modulus
        out_diag.append(p ** v)
    return SmithForm(IntMatrix(rows, U.rows, U.cols, modulus), IntMatrix(dm, D.rows, D.cols, modulus),
                     V, IntMatrix(rows_inv, U.rows, U.cols, modulus), Vi, modulus, out_diag)


def normalize_invariants(orders):
    """Invariant factors (d_1 | d_2 | ...), all >= 2, of sum Z/n_i (0 means Z)."""
    orders = [abs(int(n)) for n in orders if abs(int(n)) != 1]
    if not orders:
        return []
    S = smith_form(IntMatrix([[n if i == j else 0 for j in range(len(orders))]
                              for i, n in enumerate(orders)]))
    diag = [d for d in S.diagonal if d != 1]
    diag += [0] * (len(orders) - len(S.diagonal))
    return diag


def kernel_mod(M, m):
    """Generators (as columns) and invariant factors of ker(M) in (Z/m)^n."""
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    n = M.cols
    S = _smith_Z(M.lift())
    _, _, V, _, _, diag = S
    d = list(diag) + [0] * (n - len(diag))
    gens, orders = [], []
    for i in range(n):
        g = gcd(d[i], m)
        if g == 1:
            continue
        lam = m // g
        gens.append([V.entries[t][i] * lam % m for t in range(n)])
        orders.append(g)
    return gens, normalize_invariants(orders)


def kernel_invariants(M, m):
    return kernel_mod(M, m)[1]


def cokernel_invariants(M, m=None):
    """Invariant factors of the cokernel of M (0 for a free Z summand)."""
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    diag = _smith_Z(M.lift())[5]
    d = list(diag) + [0] * (M.rows - len(diag))
    if m is None:
        return normalize_invariants(d)
    return normalize_invariants([gcd(x, m) for x in d])


def complex_homology(d1, d0, modulus=None):
    """Invariant factors of ker(d0)/im(d1) for C2 -d1-> C1 -d0-> C0.

    Over Z a 0 entry stands for a free summand Z. ``d1`` may be given as an
    ``IntMatrix`` with zero columns.
    """
    d1 = d1 if isinstance(d1, IntMatrix) else IntMatrix(d1)
    d0 = d0 if isinstance(d0, IntMatrix) else IntMatrix(d0)
    n = d0.cols
    if d1.rows != n:
        raise ValueError(f"non-composable shapes {d0.shape} and {d1.shape}")
    comp = d0.lift() @ d1.lift()
    if modulus is not None:
        comp = comp.reduce(modulus)
    if not comp.is_zero():
        raise ValueError("d0 d1 is not zero")
    _, _, V, _, Vi, diag = _smith_Z(d0.lift())
    if modulus is None:
        rank = sum(1 for x in diag if x)
        coords = Vi @ d1.lift()
        if any(coords.entries[i][j] for i in range(rank) for j in range(coords.cols)):
            raise HopfDualError("image of d1 is not inside ker d0")
        rel = IntMatrix([coords.entries[i] for i in range(rank, n)], n - rank, coords.cols)
        return cokernel_invariants(rel)
    m = modulus
    d = list(diag) + [0] * (n - len(diag))
    lam = [m // gcd(x, m) for x in d]
    # ker d0 = V diag(lam) Z^n (it contains m Z^n); relations im d1 + m Z^n
    gens = [list(col) for col in zip(*d1.lift().entries)] if d1.cols else []
    gens += [[m if i == j else 0 for i in range(n)] for j in range(n)]
    rel = []
    for g in gens:
        y = [sum(Vi.entries[i][t] * g[t] for t in range(n)) for i in range(n)]
        row = []
        for i in range(n):
            if y[i] % lam[i]:
                raise HopfDualError("image of d1 is not inside ker d0 (mod m)")
            row.append(y[i] // lam[i])
        rel.append(row)
    relm = IntMatrix([list(r) for r in zip(*rel)], n, len(rel)) if rel else IntMatrix.zeros(n, 0)
    return cokernel_invariants(relm)


# -- finite modules and Pontryagin duality ---------------------------------------

class FiniteModule:
    """sum Z/d_i with d_1 | d_2 | ..., optionally with a finite ring acting.

    ``action`` maps a generator name to an integer matrix acting on
    coordinate columns from the left (x -> A x). Dual modules carry
    ``side = "right"``: their matrices encode the transposed action.
    """

    def __init__(self, invariants, action=None, side="left"):
        inv = [int(d) for d in invariants]
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariants {inv} do not form a divisibility chain")
        if any(d < 2 for d in inv):
            raise ValueError("invariant factors must be at least 2 (finite, no trivial summands)")
        self.invariants = inv
        self.action = {k: _as_matrix(v) for k, v in (action or {}).items()}
        self.side = side
        for name, A in self.action.items():
            if not self._well_defined(A):
                raise ValueError(f"action {name} is not well defined on the module")

    @classmethod
    def from_orders(cls, orders, action=None):
        """Normalize sum Z/n_i (and a left action on it) to invariant-factor form."""
        n = len(orders)
        S = smith_form(IntMatrix([[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]))
        keep = [i for i, d in enumerate(S.diagonal) if abs(d) != 1]
        if any(S.diagonal[i] == 0 for i in keep):
            raise ValueError("infinite module: a zero order")
        inv = [abs(S.diagonal[i]) for i in keep]
        act = {}
        for name, A in (action or {}).items():
            B = S.U @ _as_matrix(A) @ S.Uinv
            act[name] = IntMatrix([[B.entries[i][j] % inv[a] for j in keep] for a, i in enumerate(keep)])
        return cls(inv, act)

    def _well_defined(self, A):
        inv = self.invariants
        if A.shape != (len(inv), len(inv)):
            return False
        # the image of a generator of order d_j must have order dividing d_j
        return all((A.entries[i][j] * inv[j]) % inv[i] == 0 for i in range(len(inv)) for j in range(len(inv)))

    @property
    def order(self):
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def elements(self):
        return product(*(range(d) for d in self.invariants))

    def apply(self, name, x):
        A = self.action[name]
        return tuple(sum(A.entries[i][j] * x[j] for j in range(len(x))) % d
                     for i, d in enumerate(self.invariants))

    def __eq__(self, other):
        if not isinstance(other, FiniteModule):
            return NotImplemented
        return (self.invariants == other.invariants and self.side == other.side
                and {k: v.entries for k, v in self.action.items()}
                == {k: v.entries for k, v in other.action.items()})

    def __repr__(self):
        acts = f", action={sorted(self.action)}" if self.action else ""
        return f"FiniteModule({self.invariants}{acts})"


def _as_matrix(A):
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def _dual_matrix(A, src, dst):
    """Matrix of chi -> chi o A for A: sum Z/src_j -> sum Z/dst_i."""
    rows, cols = len(src), len(dst)
    out = [[A.entries[i][j] * src[j] // dst[i] % src[j] for i in range(cols)] for j in range(rows)]
    return IntMatrix(out, rows, cols)


def pontryagin_dual(M):
    """Hom_Z(M, Q/Z), with characters c <-> (x -> sum c_i x_i / d_i)."""
    if not isinstance(M, FiniteModule):
        raise TypeError("pontryagin_dual needs a FiniteModule")
    inv = M.invariants
    act = {name: _dual_matrix(A, inv, inv) for name, A in M.action.items()}
    return FiniteModule(inv, act, side="right" if M.side == "left" else "left")


def dual_morphism(F, M, N):
    """The dual N^dual -> M^dual of f: M -> N given by the matrix F."""
    return _dual_matrix(_as_matrix(F), M.invariants, N.invariants)


def double_dual_check(M):
    """Evaluate the natural map M -> M^dual^dual via the pairing table.

    Returns (bijective, equivariant): the map x -> <-, x> is computed by
    enumerating all characters; it is bijective iff the rows of the table are
    distinct, and equivariant iff <c, a x> = <a^dual c, x> for every action
    generator a, which also pins down the transposed dual action.
    """
    inv = M.invariants
    table = kernels.pairing_table(inv)
    size = table.shape[0]
    rows = {table[x].tobytes() for x in range(size)}
    bijective = len(rows) == size == M.order
    D = pontryagin_dual(M)
    equivariant = True
    grid = [kernels.index_element(i, inv) for i in range(size)]
    for name in M.action:
        img = np.array([kernels.element_index(M.apply(name, x), inv) for x in grid])
        dimg = np.array([kernels.element_index(D.apply(name, c), inv) for c in grid])
        # table[x, c]: compare <c, a x> with <a^dual c, x>
        if not np.array_equal(table[img, :], table[:, dimg]):
            equivariant = False
        DD = pontryagin_dual(D)
        if DD.action[name] != M.action[name]:
            equivariant = False
    return bijective, equivariant


# -- nullspaces over coefficient rings ----------------------------------------------

def _scalar_kernel_vector(rows, ncols, modulus):
    """A nonzero x with rows x = 0, over Z (modulus None) or Z/m; None if trivial."""
    if ncols == 0:
        return None
    M = IntMatrix(rows, len(rows), ncols) if rows else IntMatrix.zeros(0, ncols)
    if modulus is None:
        _, _, V, _, _, diag = _smith_Z(M)
        rank = sum(1 for d in diag if d)
        if rank == ncols:
            return None
        return [V.entries[t][rank] for t in range(ncols)]
    gens, _ = kernel_mod(M, modulus)
    for g in gens:
        if any(x % modulus for x in g):
            return g
    return None


def _ring_kind(R):
    if isinstance(R, Integers):
        return None
    if isinstance(R, (Modular, PAdicTrunc)):
        return R.modulus
    raise UnsupportedRing(f"no linear algebra over {R}")


def scalar_nullspace(A, rows):
    """Nonzero x in A^n with sum_i rows[r][i] x_i = 0 for every r, or None.

    Supports Z, Q, Z/m, products of these, and truncated series or
    extensions over them (through the regular representation).
    """
    n = len(rows[0]) if rows else 0
    if isinstance(A, Product):
        for f_idx, F in enumerate(A.factors):
            sub = [[RingElement(F, c.payload[f_idx]) for c in row] for row in rows]
            x = scalar_nullspace(F, sub)
            if x is not None:
                out = []
                for xi in x:
                    payload = tuple(xi.payload if t == f_idx else G.zero_payload()
                                    for t, G in enumerate(A.factors))
                    out.append(RingElement(A, payload))
                return out
        return None
    if isinstance(A, Rationals):
        ints = []
        for row in rows:
            den = 1
            for c in row:
                den = den * Fraction(c.payload).denominator // gcd(den, Fraction(c.payload).denominator)
            ints.append([int(Fraction(c.payload) * den) for c in row])
        x = _scalar_kernel_vector(ints, n, None)
        return None if x is None else [A(v) for v in x]
    if isinstance(A, (TruncSeries, Extension)):
        B = A.base
        L = len(A.zero_payload())
        big = []
        for row in rows:
            # multiplication by c on coefficient vectors: column l is c * var^l
            mats = []
            for c in row:
                cols = []
                for lpos in range(L):
                    basis_el = tuple(B.one_payload() if t == lpos else B.zero_payload() for t in range(L))
                    cols.append(A.mul(c.payload, basis_el))
                mats.append(cols)
            for out_pos in range(L):
                big.append([int(mats[i][lpos][out_pos]) for i in range(n) for lpos in range(L)])
        x = _scalar_kernel_vector(big, n * L, _ring_kind(B))
        if x is None:
            return None
        return [RingElement(A, A.canonical([B.canonical(v) for v in x[i * L:(i + 1) * L]])) for i in range(n)]
    m = _ring_kind(A)
    ints = [[int(c.payload) for c in row] for row in rows]
    x = _scalar_kernel_vector(ints, n, m)
    return None if x is None else [A(v) for v in x]
