"""Free modules on a windowed basis: vectors, tensor normal forms, duals.

Basis labels are arbitrary hashable values (ints, or tuples for pair bases);
the ordered tuple of labels materialized by a presentation is its *window*.
"""
from __future__ import annotations

from .errors import DescriptorMismatch, WindowExceeded

__all__ = ["Vector", "TensorVector", "DualVector", "dual_pair", "double_dual_check",
           "dual_basis_vector"]


class Vector:
    """Finite-support vector sum_i a_i e_i with coefficients in one ring."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring, entries=None):
        self.ring = ring
        clean = {}
        if entries:
            for label, c in entries.items():
                c = ring(c)
                if not c.is_zero():
                    clean[label] = c
        self.entries = clean

    @classmethod
    def basis(cls, ring, label, coeff=1):
        return cls(ring, {label: coeff})

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    def _same(self, other):
        if self.ring != other.ring:
            raise DescriptorMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._same(other)
        out = dict(self.entries)
        for label, c in other.entries.items():
            out[label] = out[label] + c if label in out else c
        return Vector(self.ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Vector(self.ring, {k: -c for k, c in self.entries.items()})

    def scale(self, a):
        """Left scalar multiplication (the A-module structure)."""
        a = self.ring(a)
        if a.is_zero():
            return Vector(self.ring)
        return Vector(self.ring, {k: a * c for k, c in self.entries.items()})

    def __rmul__(self, a):
        return self.scale(a)

    def coeff(self, label):
        return self.entries.get(label, self.ring.zero())

    def support(self):
        return set(self.entries)

    def items(self):
        return self.entries.items()

    def is_zero(self):
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, frozenset(self.entries.items())))

    def __repr__(self):
        if not self.entries:
            return "Vector(0)"
        body = " + ".join(f"({c})e{k}" for k, c in self.entries.items())
        return f"Vector({body})"


class TensorVector:
    """Normal form sum_j g_j (x) e_j: right factor a basis label, scalars on the left."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring, entries=None):
        self.ring = ring
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    def add_term(self, label, left):
        """Return a copy with ``left (x) e_label`` added."""
        out = dict(self.entries)
        out[label] = out[label] + left if label in out else left
        return TensorVector(self.ring, out)

    def __add__(self, other):
        out = dict(self.entries)
        for label, v in other.entries.items():
            out[label] = out[label] + v if label in out else v
        return TensorVector(self.ring, out)

    def __neg__(self):
        return TensorVector(self.ring, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        return TensorVector(self.ring, {k: v.scale(a) for k, v in self.entries.items()})

    def items(self):
        return self.entries.items()

    def right_support(self):
        return set(self.entries)

    def left_support(self):
        out = set()
        for v in self.entries.values():
            out |= v.support()
        return out

    def renormalize(self):
        # scalars already live on the left factor; this drops zero terms only
        return TensorVector(self.ring, self.entries)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __repr__(self):
        return "TensorVector(" + " + ".join(f"{v!r}(x)e{k}" for k, v in self.entries.items()) + ")"


class DualVector:
    """Windowed value table {D(e_i)} of an element of prod_i A e_i^dual."""

    __slots__ = ("ring", "window", "table", "finite_support")

    def __init__(self, ring, window, table, finite_support=False):
        self.ring = ring
        self.window = tuple(window)
        missing = [k for k in self.window if k not in table]
        if missing:
            raise ValueError(f"table is not total on the window, missing {missing[:3]}")
        self.table = {k: ring(table[k]) for k in self.window}
        self.finite_support = finite_support

    def __call__(self, label):
        try:
            return self.table[label]
        except KeyError:
            raise WindowExceeded(f"dual vector evaluated at {label!r} outside its window") from None

    def __add__(self, other):
        window = self.window if len(self.window) <= len(other.window) else other.window
        return DualVector(self.ring, window, {k: self.table[k] + other.table[k] for k in window})

    def __neg__(self):
        return DualVector(self.ring, self.window, {k: -c for k, c in self.table.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = self.ring(a)
        return DualVector(self.ring, self.window, {k: a * c for k, c in self.table.items()},
                          self.finite_support)

    def restrict(self, labels):
        window = tuple(k for k in self.window if k in set(labels))
        return DualVector(self.ring, window, {k: self.table[k] for k in window})

    def __eq__(self, other):
        if not isinstance(other, DualVector):
            return NotImplemented
        return self.window == other.window and self.table == other.table

    def __repr__(self):
        return "DualVector(" + ", ".join(str(self.table[k]) for k in self.window) + ")"


def dual_basis_vector(ring, window, label, coeff=1):
    zero = ring.zero()
    return DualVector(ring, window, {k: (ring(coeff) if k == label else zero) for k in window},
                      finite_support=True)


def dual_pair(D, v):
    """sum_i v_i D(e_i); fails loudly if v reaches past the window of D."""
    if D.ring != v.ring:
        raise DescriptorMismatch(f"{D.ring} vs {v.ring}")
    acc = D.ring.zero()
    for label, c in v.items():
        acc = acc + c * D(label)
    return acc


def double_dual_check(ring, window, duals=None):
    """True iff the pairing matrix <duals[i], e_j> is the identity on the window.

    With ``duals`` omitted the canonical dual basis is used, so the result
    certifies that every window vector is recovered from its dual pairings.
    """
    window = tuple(window)
    if duals is None:
        duals = [dual_basis_vector(ring, window, k) for k in window]
    if len(duals) != len(window):
        return False
    one, zero = ring.one(), ring.zero()
    for i, D in enumerate(duals):
        for j, label in enumerate(window):
            expected = one if i == j else zero
            if dual_pair(D, Vector.basis(ring, label)) != expected:
                return False
    return True
