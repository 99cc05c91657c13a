"""Twisted (Ore) polynomial algebras: the q-de Rham operator calculus and the Weyl algebra.

Coefficients sit on the LEFT: an OrePolynomial [f_0, ..., f_d] is sum f_i D^i,
and products are normalised with the rewrite D f = sigma(f) D + delta(f).

For the q-de Rham algebra the base is Z/p^k[[u]]/u^N with u = q - 1,
sigma(q) = q^{1+p} and delta(f) = (sigma(f) - f) / (q (q - 1)). One delta
costs one u-digit (the division is by u times the unit 1 + u), so every
result records its own precision in its descriptor.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DegreeOverflow, PrecisionExhausted, UnsupportedRing
from .homalg import IntMatrix, cokernel_invariants, kernel_invariants
from .kernels import enumerate_kernel
from .report import FAIL, PASS, Report
from .rings import (
    PAdicTrunc, Rationals, RingElement, TruncSeries, binomial_power, exact_divide,
    p_valuation, series, series_substitute, truncate,
)

__all__ = [
    "TwistConfig", "PhiTwistConfig", "WeylConfig", "OrePolynomial", "ore_mul",
    "nabla_act", "q_integer", "two_term_cohomology", "CohomologyResult",
    "artifact_band_start", "brute_force_kernel_below_band", "nabla_matrix",
    "frobenius_transport", "reduce_right_module", "q_relation_check",
    "weyl_relation_check",
]


def _is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


class TwistConfig:
    """sigma: q -> q^{1+p}, delta = (sigma - 1) / (q (q - 1)) on Z/p^k[[u]]/u^N."""

    def __init__(self, p, k, N, var="u"):
        if p == 2:
            raise UnsupportedRing("p = 2 is not supported: the q-de Rham twist needs an odd prime")
        if not _is_prime(p):
            raise ValueError(f"{p} is not a prime")
        if k < 1 or N < 2:
            raise ValueError("need k >= 1 and N >= 2")
        self.p, self.k, self.N, self.var = p, k, N, var
        self.scalars = PAdicTrunc(p, k)
        self.base = TruncSeries(self.scalars, var, N)
        self._subs = {}

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p}, k={self.k}, N={self.N})"

    def ring(self, n):
        if n < 1:
            raise PrecisionExhausted("precision exhausted")
        return TruncSeries(self.scalars, self.var, n)

    def precision(self, f):
        return f.ring.N

    def elem(self, coeffs, n=None):
        n = self.N if n is None else n
        return series(self.ring(n), list(coeffs)[:n])

    def q(self, n=None):
        return self.elem([1, 1], n)

    def u(self, n=None):
        return self.elem([0, 1], n)

    def align(self, f, n):
        return f if f.ring.N == n else truncate(f, n)

    def mul(self, a, b):
        n = min(a.ring.N, b.ring.N)
        return self.align(a, n) * self.align(b, n)

    def add(self, a, b):
        n = min(a.ring.N, b.ring.N)
        return self.align(a, n) + self.align(b, n)

    def _substitution(self, kind, n):
        key = (kind, n)
        if key not in self._subs:
            p, k = self.p, self.k
            expo = 1 + p if kind == "sigma" else Fraction(1, 1 + p)
            g = binomial_power(expo, n, p=p, k=k, var=self.var)
            self._subs[key] = g - RingElement(g.ring, g.ring.one_payload())
        return self._subs[key]

    def sigma(self, f):
        return series_substitute(f, self._substitution("sigma", f.ring.N))

    def sigma_inv(self, f):
        return series_substitute(f, self._substitution("sigma_inv", f.ring.N))

    def delta(self, f):
        n = f.ring.N
        if n < 2:
            raise PrecisionExhausted("precision exhausted")
        return exact_divide(self.sigma(f) - f, self.elem([0, 1, 1], n))

    def random(self, rng, n=None):
        return self.elem([rng.randrange(self.p ** self.k) for _ in range(self.N if n is None else n)], n)


class PhiTwistConfig(TwistConfig):
    """Same sigma, delta^phi(f) = (sigma(f) - f) / (q (q^p - 1)).

    q^p - 1 is not u^v times a unit mod p, so delta^phi is computed on an
    integral q-polynomial lift: delta^phi(q^m) = q^{m-1} sum_{i<m} q^{ip}.
    The result is independent of the lift modulo u^{n-1}.
    """

    def delta(self, f):
        n = f.ring.N
        if n < 2:
            raise PrecisionExhausted("precision exhausted")
        mod = self.p ** self.k
        a = [int(c) for c in f.payload]
        # u-coefficients -> q-coefficients: (q-1)^j = sum_m C(j,m) (-1)^{j-m} q^m
        qc = [sum(a[j] * comb(j, m) * (-1) ** (j - m) for j in range(m, n)) % mod for m in range(n)]
        out = {}
        for m in range(1, n):
            if qc[m]:
                for i in range(m):
                    e = m - 1 + i * self.p
                    out[e] = (out.get(e, 0) + qc[m]) % mod
        res = [0] * (n - 1)
        for e, c in out.items():
            for t in range(min(e, n - 2) + 1):
                res[t] = (res[t] + c * comb(e, t)) % mod
        return self.elem(res, n - 1)


class WeylConfig:
    """Polynomials in x over Q of degree <= D; sigma = id, delta = d/dx."""

    def __init__(self, D=8, var="x"):
        self.D = D
        self.var = var
        self.base = TruncSeries(Rationals(), var, D + 1)

    def __repr__(self):
        return f"WeylConfig(D={self.D})"

    def elem(self, coeffs, n=None):
        if len(coeffs) > self.D + 1 and any(coeffs[self.D + 1:]):
            raise DegreeOverflow(f"degree exceeds {self.D}")
        return series(self.base, list(coeffs))

    def x(self):
        return self.elem([0, 1])

    def precision(self, f):
        return self.D + 1

    def align(self, f, n):
        return f

    def degree(self, f):
        nz = [i for i, c in enumerate(f.payload) if c != 0]
        return nz[-1] if nz else -1

    def mul(self, a, b):
        if self.degree(a) + self.degree(b) > self.D:
            raise DegreeOverflow(f"product degree exceeds {self.D}")
        return a * b

    def add(self, a, b):
        return a + b

    def sigma(self, f):
        return f

    def sigma_inv(self, f):
        return f

    def delta(self, f):
        c = f.payload
        return self.elem([c[i] * i for i in range(1, len(c))])

    def random(self, rng, deg=3):
        return self.elem([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(deg + 1)])


class OrePolynomial:
    """sum f_i D^i with left coefficients, all at one common precision."""

    def __init__(self, config, coeffs, precision=None):
        self.config = config
        coeffs = list(coeffs)
        if precision is None:
            precision = min((config.precision(c) for c in coeffs), default=config.precision(config.base.zero()))
        self.precision = precision
        coeffs = [config.align(c, precision) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def nabla(cls, config):
        one = config.base.one()
        return cls(config, [config.base.zero(), one])

    @classmethod
    def scalar(cls, config, f):
        return cls(config, [f])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def truncate(self, n):
        if n > self.precision:
            raise PrecisionExhausted(f"cannot raise precision from {self.precision} to {n}")
        return OrePolynomial(self.config, self.coeffs, n)

    def _pair(self, other):
        n = min(self.precision, other.precision)
        return self.truncate(n), other.truncate(n)

    def __add__(self, other):
        a, b = self._pair(other)
        zero = a.config.align(a.config.base.zero(), a.precision)
        m = max(len(a.coeffs), len(b.coeffs))
        ca = list(a.coeffs) + [zero] * (m - len(a.coeffs))
        cb = list(b.coeffs) + [zero] * (m - len(b.coeffs))
        return OrePolynomial(a.config, [x + y for x, y in zip(ca, cb)], a.precision)

    def __neg__(self):
        return OrePolynomial(self.config, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return ore_mul(self, other)

    def left_scale(self, f):
        cfg = self.config
        return OrePolynomial(cfg, [cfg.mul(f, c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, OrePolynomial):
            return NotImplemented
        return self.precision == other.precision and self.coeffs == other.coeffs

    def agrees(self, other):
        """Equality after truncating both sides to the smaller precision."""
        a, b = self._pair(other)
        return a == b

    def __repr__(self):
        terms = [f"({c})D^{i}" for i, c in enumerate(self.coeffs)]
        return f"OrePolynomial[{self.precision}](" + " + ".join(terms or ["0"]) + ")"


def _nabla_times(Q):
    """D * sum h_j D^j = sum sigma(h_j) D^{j+1} + delta(h_j) D^j."""
    cfg = Q.config
    if Q.is_zero():
        return OrePolynomial(cfg, [], max(Q.precision - 1, 1) if isinstance(cfg, TwistConfig) else Q.precision)
    sig = [cfg.sigma(h) for h in Q.coeffs]
    dlt = [cfg.delta(h) for h in Q.coeffs]
    n = min(cfg.precision(x) for x in sig + dlt)
    out = [cfg.align(dlt[0], n)]
    for j in range(1, len(Q.coeffs) + 1):
        term = cfg.align(sig[j - 1], n)
        if j < len(Q.coeffs):
            term = term + cfg.align(dlt[j], n)
        out.append(term)
    return OrePolynomial(cfg, out, n)


def ore_mul(P, Q):
    """Normal form of P * Q."""
    if P.config is not Q.config:
        raise ValueError("Ore polynomials from different configurations")
    cfg = P.config
    power = Q
    acc = None
    for i, f in enumerate(P.coeffs):
        if i:
            power = _nabla_times(power)
        term = power.left_scale(f) if not power.is_zero() else power
        acc = term if acc is None else acc + term
    if acc is None:
        return OrePolynomial(cfg, [], min(P.precision, Q.precision))
    return acc


def nabla_act(f, config):
    """The action of D on the base: delta(f), one precision digit lower."""
    return config.delta(f)


def q_integer(config, n=None):
    """[p]_q = (q^p - 1) / (q - 1) = sum_j C(p, j+1) u^j."""
    n = config.N if n is None else n
    return config.elem([comb(config.p, j + 1) for j in range(n)], n)


# -- Frobenius transport --------------------------------------------------------

def frobenius_transport(P, phi_config=None):
    """The homomorphism D -> [p]_q D^phi, identity on coefficients."""
    cfg = P.config
    phi = phi_config or PhiTwistConfig(cfg.p, cfg.k, cfg.N, cfg.var)
    image = OrePolynomial(phi, [phi.base.zero(), q_integer(phi)])
    power = OrePolynomial(phi, [phi.base.one()])
    acc = OrePolynomial(phi, [], P.precision)
    for i, f in enumerate(P.coeffs):
        if i:
            power = ore_mul(power, image)
        acc = acc + OrePolynomial(phi, [f]) * power
    return acc


# -- right module --------------------------------------------------------------

def reduce_right_module(P):
    """Class of P in the quotient by the right ideal D * (algebra).

    From D h = sigma(h) D + delta(h) one gets f D == -delta(sigma^{-1}(f)),
    so f_i D^i reduces to (-delta sigma^{-1})^i (f_i).
    """
    cfg = P.config
    acc = None
    for i, f in enumerate(P.coeffs):
        for _ in range(i):
            f = -cfg.delta(cfg.sigma_inv(f))
        acc = f if acc is None else cfg.add(acc, f)
    if acc is None:
        return cfg.align(cfg.base.zero(), P.precision) if isinstance(cfg, TwistConfig) else cfg.base.zero()
    return acc


# -- two-term cohomology -----------------------------------------------------------

def nabla_matrix(p, k, N):
    """(N-1) x N matrix of delta on the u-monomials, entries mod p^k."""
    cfg = TwistConfig(p, k, N)
    cols = []
    for j in range(N):
        e = cfg.elem([int(t == j) for t in range(N)])
        cols.append([int(c) for c in cfg.delta(e).payload])
    return [[cols[j][i] for j in range(N)] for i in range(N - 1)]


def artifact_band_start(p, N):
    """Smallest j >= 1 whose monomial u^j is killed mod p by truncation.

    sigma(u^j) - u^j = m u^{j + (p-1) p^v} + ... mod p for j = p^v m, so delta
    of u^j vanishes mod (p, u^{N-1}) exactly when j + (p-1) p^v >= N.
    """
    for j in range(1, N):
        if j + (p - 1) * p ** p_valuation(j, p) >= N:
            return j
    return N


class CohomologyResult:
    def __init__(self, p, k, N, H0, H1, band, matrix):
        self.p, self.k, self.N = p, k, N
        self.H0 = H0
        self.H1 = H1
        self.band = band
        self.matrix = matrix

    def __repr__(self):
        return f"CohomologyResult(H0={self.H0}, H1={self.H1}, band={self.band})"


def two_term_cohomology(p, k, N):
    """Kernel and cokernel invariants of D: A/u^N -> A/u^{N-1} over Z/p^k.

    ``band`` is the range of u-degrees whose kernel contributions are
    truncation artifacts; below it the kernel is exactly the constants.
    """
    M = nabla_matrix(p, k, N)
    m = p ** k
    mat = IntMatrix(M, modulus=m)
    H0 = kernel_invariants(mat, m)
    H1 = cokernel_invariants(mat, m)
    return CohomologyResult(p, k, N, H0, H1, (artifact_band_start(p, N), N - 1), M)


def brute_force_kernel_below_band(p, k, N, band_start=None):
    """Every vector supported on degrees < band_start killed by D, as tuples."""
    start = artifact_band_start(p, N) if band_start is None else band_start
    M = np.asarray(nabla_matrix(p, k, N), dtype=np.int64)[:, :start]
    return [tuple(int(x) for x in row) for row in enumerate_kernel(M, p ** k)]


# -- checks -----------------------------------------------------------------------

def q_relation_check(p, k, N, *, samples=6, seed=0):
    """The defining relation, D(q) = [p]_q, the Frobenius transport and delta laws."""
    rng = random.Random(seed)
    cfg = TwistConfig(p, k, N)
    phi = PhiTwistConfig(p, k, N)
    rep = Report(title=f"q-de Rham p={p} k={k} N={N}")
    D = OrePolynomial.nabla(cfg)
    q = cfg.q()
    Q = OrePolynomial.scalar(cfg, q)
    lhs = ore_mul(D, Q)
    rhs = OrePolynomial(cfg, [q_integer(cfg), cfg.sigma(q)])
    rep.add("relation", PASS if lhs.agrees(rhs) else FAIL)

    pq = q_integer(cfg, N - 1)
    via_poly = cfg.elem([sum(comb(j, t) for j in range(p)) for t in range(N - 1)], N - 1)
    ok = nabla_act(q, cfg) == pq and pq == via_poly
    rep.add("nabla_q", PASS if ok else FAIL)

    rel = ore_mul(D, Q) - OrePolynomial(cfg, [q_integer(cfg), cfg.sigma(q)])
    rep.add("frobenius_relation", PASS if frobenius_transport(rel, phi).is_zero() else FAIL)

    witness = None
    for s in range(samples):
        f, g = cfg.random(rng), cfg.random(rng)
        lhs = cfg.delta(f * g)
        rhs = cfg.add(cfg.mul(cfg.sigma(f), cfg.delta(g)), cfg.mul(cfg.delta(f), g))
        lphi = phi.delta(f * g)
        rphi = phi.add(phi.mul(phi.sigma(f), phi.delta(g)), phi.mul(phi.delta(f), g))
        factor = cfg.mul(q_integer(cfg), phi.delta(f)) == cfg.delta(f)
        if lhs != rhs or lphi != rphi or not factor:
            witness = s
            break
    rep.add("delta_laws", PASS if witness is None else FAIL, witness, detail=f"{samples} samples")

    witness = None
    for s in range(samples):
        P = OrePolynomial(cfg, [cfg.random(rng) for _ in range(2)])
        R = OrePolynomial(cfg, [cfg.random(rng) for _ in range(2)])
        if not frobenius_transport(P * R, phi).agrees(frobenius_transport(P, phi) * frobenius_transport(R, phi)):
            witness = s
            break
    rep.add("frobenius_homomorphism", PASS if witness is None else FAIL, witness, detail=f"{samples} samples")
    return rep


def weyl_relation_check(f, config=None):
    """d/dx f = f d/dx + f' and f d/dx == -f' in the right module."""
    cfg = config or WeylConfig()
    rep = Report(title="Weyl algebra")
    d = OrePolynomial.nabla(cfg)
    F = OrePolynomial.scalar(cfg, f)
    lhs = ore_mul(d, F)
    rhs = OrePolynomial(cfg, [cfg.delta(f), f])
    rep.add("commutation", PASS if lhs == rhs else FAIL)
    red = reduce_right_module(OrePolynomial(cfg, [cfg.base.zero(), f]))
    rep.add("right_module", PASS if red == -cfg.delta(f) else FAIL)
    return rep
