"""Exact coefficient rings.

Every ring is described by an immutable, structurally comparable descriptor
and every element is a ``RingElement`` carrying a canonical payload, so
equality of elements is plain payload equality.

Supported descriptors: ``Integers``, ``Rationals``, ``Modular(m)``,
``PAdicTrunc(p, k)`` (i.e. Z/p^k, remembered as p-adic), ``TruncSeries``
(R[[u]]/u^N), ``Product`` of scalar rings, and ``Extension`` (R[w]/(monic)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import (
    DescriptorMismatch,
    NotDivisible,
    ParseError,
    PrecisionExhausted,
    UnsupportedRing,
    ZeroDivisorError,
)

__all__ = [
    "RingDescriptor", "Integers", "Rationals", "Modular", "PAdicTrunc",
    "TruncSeries", "Product", "Extension", "RingElement",
    "ring_arith", "series_substitute", "binomial_power", "exact_divide",
    "truncate", "series", "series_var", "p_valuation", "parse_descriptor",
    "evaluate_expansion",
]


def p_valuation(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class RingDescriptor:
    """Payload-level arithmetic; wrap payloads in ``RingElement`` to use them."""

    # scalar rings have no ring generators beyond 1
    scalar = False

    def __call__(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise DescriptorMismatch(f"{value.ring} vs {self}")
            return value
        if isinstance(value, (int, Fraction)):
            return RingElement(self, self.from_scalar(value))
        if isinstance(value, str):
            return RingElement(self, self.parse_payload(value))
        return RingElement(self, self.canonical(value))

    def zero(self):
        return RingElement(self, self.zero_payload())

    def one(self):
        return RingElement(self, self.one_payload())

    def gens(self):
        return [RingElement(self, g) for g in self.gen_payloads()]

    def gen_payloads(self):
        return []

    def relations(self):
        return []

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x):
        return x == self.zero_payload()

    def __str__(self):
        return self.spec()


@dataclass(frozen=True)
class Integers(RingDescriptor):
    scalar = True

    def spec(self):
        return "Z"

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1

    def from_scalar(self, s):
        if isinstance(s, Fraction):
            if s.denominator != 1:
                raise ValueError(f"{s} is not an integer")
            return int(s)
        return int(s)

    def canonical(self, x):
        return int(x)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if x not in (1, -1):
            raise ZeroDivisorError(f"{x} is not a unit in Z")
        return x

    def expand(self, x):
        return {(): x}

    def format(self, x):
        return str(x)

    def parse_payload(self, text):
        return self.from_scalar(_parse_scalar(text))

    def random(self, rng):
        return RingElement(self, rng.randint(-5, 5))


@dataclass(frozen=True)
class Rationals(RingDescriptor):
    scalar = True

    def spec(self):
        return "Q"

    def zero_payload(self):
        return Fraction(0)

    def one_payload(self):
        return Fraction(1)

    def from_scalar(self, s):
        return Fraction(s)

    def canonical(self, x):
        return Fraction(x)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise ZeroDivisorError("division by zero in Q")
        return 1 / x

    def expand(self, x):
        return {(): x}

    def format(self, x):
        return str(x)

    def parse_payload(self, text):
        return Fraction(_parse_scalar(text))

    def random(self, rng):
        return RingElement(self, Fraction(rng.randint(-6, 6), rng.randint(1, 4)))


class _ResidueRing(RingDescriptor):
    scalar = True

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1 % self.modulus

    def from_scalar(self, s):
        if isinstance(s, Fraction):
            den = s.denominator
            if gcd(den, self.modulus) != 1:
                raise ZeroDivisorError(f"{s} has no image in {self}")
            return s.numerator * pow(den, -1, self.modulus) % self.modulus
        return int(s) % self.modulus

    def canonical(self, x):
        return int(x) % self.modulus

    def add(self, x, y):
        return (x + y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def mul(self, x, y):
        return x * y % self.modulus

    def is_unit(self, x):
        return gcd(x, self.modulus) == 1

    def inverse(self, x):
        if gcd(x, self.modulus) != 1:
            raise ZeroDivisorError(f"{x} is not a unit mod {self.modulus}")
        return pow(x, -1, self.modulus)

    def expand(self, x):
        return {(): x}

    def format(self, x):
        return str(x)

    def parse_payload(self, text):
        return self.from_scalar(_parse_scalar(text))

    def random(self, rng):
        return RingElement(self, rng.randrange(self.modulus))


@dataclass(frozen=True)
class Modular(_ResidueRing):
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be at least 2")

    @property
    def modulus(self):
        return self.m

    def spec(self):
        return f"Z/{self.m}"


@dataclass(frozen=True)
class PAdicTrunc(_ResidueRing):
    """Z_p / p^k."""

    p: int
    k: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("precision k must be positive")

    @property
    def modulus(self):
        return self.p ** self.k

    def is_unit(self, x):
        return x % self.p != 0

    def spec(self):
        return f"Zp({self.p},{self.k})"


class _PolyQuotient(RingDescriptor):
    """Shared machinery for coefficient-tuple rings over a base ring."""

    def _coerce_coeffs(self, coeffs, length):
        b = self.base
        out = [b.canonical(c) if not isinstance(c, RingElement) else c.payload for c in coeffs]
        if len(out) > length:
            raise ValueError(f"too many coefficients for {self}")
        out += [b.zero_payload()] * (length - len(out))
        return tuple(out)

    def add(self, x, y):
        b = self.base
        return tuple(b.add(a, c) for a, c in zip(x, y))

    def neg(self, x):
        b = self.base
        return tuple(b.neg(a) for a in x)

    def expand(self, x):
        # lifted base generators first, own variable last
        b = self.base
        out = {}
        for i, c in enumerate(x):
            for exp, s in b.expand(c).items():
                key = exp + (i,)
                out[key] = out.get(key, 0) + s
        return {k: v for k, v in out.items() if v != 0}

    def gen_payloads(self):
        b = self.base
        n = self._length()
        lifted = [(g,) + (b.zero_payload(),) * (n - 1) for g in b.gen_payloads()]
        var = [b.zero_payload()] * n
        var[1 % n] = b.one_payload() if n > 1 else b.zero_payload()
        return lifted + [tuple(var)]

    def format(self, x):
        return _format_poly(self.base, x, self.var)

    def parse_payload(self, text):
        coeffs = _parse_poly(text, self.var, self.base)
        n = self._length()
        if len(coeffs) > n:
            coeffs = self.reduce_long(coeffs)
        return self._coerce_coeffs(coeffs, n)

    def random(self, rng):
        b = self.base
        return RingElement(self, tuple(b.random(rng).payload for _ in range(self._length())))


@dataclass(frozen=True)
class TruncSeries(_PolyQuotient):
    """base[[var]] / var^N; payload is the tuple of the N low coefficients."""

    base: RingDescriptor
    var: str
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("truncation order N must be positive")

    def _length(self):
        return self.N

    def spec(self):
        return f"Series({self.base.spec()},{self.var},{self.N})"

    def zero_payload(self):
        return (self.base.zero_payload(),) * self.N

    def one_payload(self):
        b = self.base
        return (b.one_payload(),) + (b.zero_payload(),) * (self.N - 1)

    def from_scalar(self, s):
        b = self.base
        return (b.from_scalar(s),) + (b.zero_payload(),) * (self.N - 1)

    def canonical(self, x):
        return self._coerce_coeffs(x, self.N)

    def reduce_long(self, coeffs):
        return list(coeffs[: self.N])

    def mul(self, x, y):
        b = self.base
        N = self.N
        out = [b.zero_payload()] * N
        for i, a in enumerate(x):
            if b.is_zero(a):
                continue
            for j in range(N - i):
                c = y[j]
                if not b.is_zero(c):
                    out[i + j] = b.add(out[i + j], b.mul(a, c))
        return tuple(out)

    def is_unit(self, x):
        return self.base.is_unit(x[0])

    def inverse(self, x):
        b = self.base
        inv0 = b.inverse(x[0])
        out = [inv0]
        for n in range(1, self.N):
            acc = b.zero_payload()
            for i in range(1, n + 1):
                acc = b.add(acc, b.mul(x[i], out[n - i]))
            out.append(b.neg(b.mul(inv0, acc)))
        return tuple(out)

    def relations(self):
        # var^N = 0, plus lifted base relations
        nb = len(self.base.gen_payloads())
        rel = [{tuple(0 for _ in range(nb)) + (self.N,): 1}]
        for r in self.base.relations():
            rel.append({exp + (0,): s for exp, s in r.items()})
        return rel


@dataclass(frozen=True)
class Extension(_PolyQuotient):
    """base[var]/(modulus), modulus monic, given low-to-high."""

    base: RingDescriptor
    var: str
    modulus: tuple

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if len(self.modulus) < 2 or self.modulus[-1] != 1:
            raise ValueError("extension modulus must be monic of degree >= 1")
        if not self.base.scalar:
            raise UnsupportedRing("extensions are only supported over scalar rings")

    @property
    def degree(self):
        return len(self.modulus) - 1

    def _length(self):
        return self.degree

    def spec(self):
        return f"Ext({self.base.spec()},{self.var},[{','.join(map(str, self.modulus))}])"

    def zero_payload(self):
        return (self.base.zero_payload(),) * self.degree

    def one_payload(self):
        b = self.base
        return (b.one_payload(),) + (b.zero_payload(),) * (self.degree - 1)

    def from_scalar(self, s):
        b = self.base
        return (b.from_scalar(s),) + (b.zero_payload(),) * (self.degree - 1)

    def gen_payloads(self):
        b = self.base
        if self.degree == 1:
            return [(b.neg(b.from_scalar(self.modulus[0])),)]
        return [(b.zero_payload(), b.one_payload()) + (b.zero_payload(),) * (self.degree - 2)]

    def canonical(self, x):
        x = [c.payload if isinstance(c, RingElement) else c for c in x]
        if len(x) > self.degree:
            x = self.reduce_long([self.base.canonical(c) for c in x])
        return self._coerce_coeffs(x, self.degree)

    def reduce_long(self, coeffs):
        b = self.base
        coeffs = [b.canonical(c) for c in coeffs]
        d = self.degree
        mod = [b.from_scalar(c) for c in self.modulus]
        for top in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[top]
            if b.is_zero(c):
                continue
            for i in range(d + 1):
                coeffs[top - d + i] = b.sub(coeffs[top - d + i], b.mul(c, mod[i]))
        return coeffs[:d]

    def mul(self, x, y):
        b = self.base
        prod = [b.zero_payload()] * (2 * self.degree - 1)
        for i, a in enumerate(x):
            for j, c in enumerate(y):
                prod[i + j] = b.add(prod[i + j], b.mul(a, c))
        return tuple(self.reduce_long(prod))

    def is_unit(self, x):
        try:
            self.inverse(x)
        except ZeroDivisorError:
            return False
        return True

    def inverse(self, x):
        # solve x*y = 1 by brute force on small residue fields, linear algebra otherwise
        b = self.base
        if not isinstance(b, (Modular, PAdicTrunc)):
            raise UnsupportedRing("inverse in extensions needs a finite base")
        from itertools import product

        one = self.one_payload()
        for cand in product(range(b.modulus), repeat=self.degree):
            if self.mul(x, cand) == one:
                return tuple(cand)
        raise ZeroDivisorError(f"{self.format(x)} is not a unit in {self}")

    def relations(self):
        return [{(i,): c for i, c in enumerate(self.modulus) if c}]


@dataclass(frozen=True)
class Product(RingDescriptor):
    """Finite product of scalar rings; generators are the idempotents."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 1:
            raise ValueError("empty product")
        for f in self.factors:
            if not f.scalar:
                raise UnsupportedRing("product factors must be scalar rings")

    def spec(self):
        return f"Product({','.join(f.spec() for f in self.factors)})"

    def zero_payload(self):
        return tuple(f.zero_payload() for f in self.factors)

    def one_payload(self):
        return tuple(f.one_payload() for f in self.factors)

    def from_scalar(self, s):
        return tuple(f.from_scalar(s) for f in self.factors)

    def canonical(self, x):
        x = tuple(x)
        if len(x) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} components")
        return tuple(f.canonical(c) for f, c in zip(self.factors, x))

    def add(self, x, y):
        return tuple(f.add(a, c) for f, a, c in zip(self.factors, x, y))

    def neg(self, x):
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    def mul(self, x, y):
        return tuple(f.mul(a, c) for f, a, c in zip(self.factors, x, y))

    def is_unit(self, x):
        return all(f.is_unit(a) for f, a in zip(self.factors, x))

    def inverse(self, x):
        return tuple(f.inverse(a) for f, a in zip(self.factors, x))

    def gen_payloads(self):
        n = len(self.factors)
        return [
            tuple(f.one_payload() if i == j else f.zero_payload() for j, f in enumerate(self.factors))
            for i in range(n)
        ]

    def expand(self, x):
        n = len(self.factors)
        out = {}
        for i, a in enumerate(x):
            if a != 0:
                out[tuple(1 if j == i else 0 for j in range(n))] = a
        return out

    def relations(self):
        n = len(self.factors)
        unit = lambda i, e=1: tuple(e if j == i else 0 for j in range(n))  # noqa: E731
        rel = []
        for i in range(n):
            rel.append({unit(i, 2): 1, unit(i): -1})
            for j in range(i + 1, n):
                rel.append({tuple(1 if t in (i, j) else 0 for t in range(n)): 1})
        total = {unit(i): 1 for i in range(n)}
        total[(0,) * n] = -1
        rel.append(total)
        return rel

    def format(self, x):
        return "(" + ",".join(f.format(a) for f, a in zip(self.factors, x)) + ")"

    def parse_payload(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError(f"product literal must be a tuple: {text!r}")
        parts = [t for t in text[1:-1].split(",")]
        if len(parts) != len(self.factors):
            raise ParseError(f"expected {len(self.factors)} components in {text!r}")
        return tuple(f.parse_payload(t) for f, t in zip(self.factors, parts))

    def random(self, rng):
        return RingElement(self, tuple(f.random(rng).payload for f in self.factors))


class RingElement:
    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.from_scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise DescriptorMismatch(f"{self.ring} vs {other.ring}")
        return other.payload

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.add(self.payload, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.sub(self.payload, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.mul(self.payload, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.payload))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return RingElement(self.ring, self.ring.inverse(self.payload))

    def is_unit(self):
        return self.ring.is_unit(self.payload)

    def is_zero(self):
        return self.ring.is_zero(self.payload)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.payload == self.ring.from_scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.payload == other.payload

    def __hash__(self):
        return hash((self.ring, self.payload))

    def coeffs(self):
        """Coefficients as base-ring elements (series and extensions)."""
        return [RingElement(self.ring.base, c) for c in self.payload]

    def __str__(self):
        return self.ring.format(self.payload)

    def __repr__(self):
        return f"RingElement({self.ring.spec()}, {self})"


def ring_arith(op, x, y=None):
    """Dispatch ``add``/``sub``/``mul``/``neg`` with the descriptor check."""
    if op == "neg":
        return -x
    if y is None or x.ring != y.ring:
        raise DescriptorMismatch(f"{x.ring} vs {getattr(y, 'ring', None)}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def series(desc, coeffs):
    return RingElement(desc, desc.canonical(list(coeffs)))


def series_var(desc):
    return RingElement(desc, desc.gen_payloads()[-1])


def truncate(x, N):
    """Reduce a series to the lower precision u^N."""
    desc = x.ring
    if N > desc.N:
        raise PrecisionExhausted(f"cannot raise precision from {desc.N} to {N}")
    if N < 1:
        raise PrecisionExhausted("precision exhausted")
    new = TruncSeries(desc.base, desc.var, N)
    return RingElement(new, x.payload[:N])


def series_substitute(f, g):
    """f(g) truncated at u^N; g must have zero constant term."""
    desc = f.ring
    if g.ring != desc:
        raise DescriptorMismatch(f"{f.ring} vs {g.ring}")
    if not desc.base.is_zero(g.payload[0]):
        raise ValueError("substitution needs a series without constant term")
    # Horner from the top coefficient
    b = desc.base
    acc = desc.zero_payload()
    for c in reversed(f.payload):
        acc = desc.mul(acc, g.payload)
        acc = (b.add(acc[0], c),) + acc[1:]
    return RingElement(desc, acc)


def _binomial_mod(a, n, p, k):
    """C(a, n) mod p^k for a p-adic integer a given as int or Fraction."""
    v = p_valuation(_factorial(n), p) if n > 1 else 0
    work = p ** (k + v)
    if isinstance(a, Fraction):
        if a.denominator % p == 0:
            raise ValueError(f"{a} is not a p-adic integer")
        A = a.numerator * pow(a.denominator, -1, work) % work
    else:
        A = a % work
    num = 1
    for i in range(n):
        num = num * (A - i) % work
    fact = _factorial(n)
    w = fact // p ** v
    if num % p ** v:
        raise ArithmeticError("binomial numerator lost p-adic digits")
    return (num // p ** v) * pow(w, -1, p ** k) % p ** k


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def binomial_power(exponent, N, *, p=None, k=None, var="u"):
    """(1+u)^a = sum_{n<N} C(a, n) u^n over Z/p^k.

    ``exponent`` may be an int, a Fraction with denominator prime to p, or a
    ``PAdicTrunc`` element. For ring elements the integer representative is
    used, which is exact for integer exponents; pass a Fraction for exponents
    such as 1/(1+p) so every coefficient is the image of the p-adic binomial.
    """
    if isinstance(exponent, RingElement):
        desc = exponent.ring
        if not isinstance(desc, PAdicTrunc):
            raise DescriptorMismatch("binomial_power needs a PAdicTrunc exponent")
        p = desc.p
        k = desc.k if k is None else k
        a = exponent.payload
        coeffs = [comb(a, n) % p ** k for n in range(N)]
    else:
        if p is None or k is None:
            raise ValueError("p and k are required for a scalar exponent")
        coeffs = [_binomial_mod(exponent, n, p, k) for n in range(N)]
    return RingElement(TruncSeries(PAdicTrunc(p, k), var, N), tuple(coeffs))


def exact_divide(f, d):
    """Quotient f/d where d = u^v * unit; the result has precision N - v."""
    desc = f.ring
    if d.ring != desc:
        raise DescriptorMismatch(f"{f.ring} vs {d.ring}")
    b = desc.base
    v = next((i for i, c in enumerate(d.payload) if not b.is_zero(c)), None)
    if v is None:
        raise ZeroDivisorError("division by the zero series")
    if not b.is_unit(d.payload[v]):
        raise NotDivisible(f"divisor {d} is not u^{v} times a unit")
    for i in range(v):
        if not b.is_zero(f.payload[i]):
            raise NotDivisible(f"{f} is not divisible by {desc.var}^{v}")
    n_new = desc.N - v
    if n_new < 1:
        raise PrecisionExhausted(f"dividing by {desc.var}^{v} exhausts precision {desc.N}")
    new = TruncSeries(b, desc.var, n_new)
    num = f.payload[v:]
    den = d.payload[v:]
    return RingElement(new, new.mul(num, new.inverse(den)))


def evaluate_expansion(expansion, images, *, one, add, mul, scale, zero):
    """Evaluate ``{exponent tuple: scalar}`` at generator ``images``."""
    cache = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            if e == 0:
                cache[key] = one
            elif e == 1:
                cache[key] = images[i]
            else:
                half = power(i, e // 2)
                sq = mul(half, half)
                cache[key] = mul(sq, images[i]) if e % 2 else sq
        return cache[key]

    acc = zero
    for exp, s in expansion.items():
        term = one
        for i, e in enumerate(exp):
            if e:
                term = mul(term, power(i, e))
        acc = add(acc, scale(s, term))
    return acc


# ---------------------------------------------------------------- literals

_SCALAR_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_scalar(text):
    text = text.strip()
    if not _SCALAR_RE.match(text):
        raise ParseError(f"bad scalar literal {text!r}")
    return Fraction(text) if "/" in text else int(text)


def _split_terms(text):
    terms, cur, depth = [], "", 0
    for ch in text.replace(" ", ""):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "*^/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    return terms


def _parse_poly(text, var, base):
    coeffs = {}
    for term in _split_terms(text):
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        if var in term:
            head, _, tail = term.partition(var)
            head = head.rstrip("*")
            coef = _parse_scalar(head) if head else 1
            if tail.startswith("^"):
                exp = int(tail[1:])
            elif tail == "":
                exp = 1
            else:
                raise ParseError(f"bad term {term!r}")
        else:
            coef, exp = _parse_scalar(term), 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    n = max(coeffs) + 1 if coeffs else 1
    return [base.from_scalar(coeffs.get(i, 0)) for i in range(n)]


def _format_poly(base, coeffs, var):
    parts = []
    for i, c in enumerate(coeffs):
        if base.is_zero(c):
            continue
        s = base.format(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and s == "1":
            term = mono
        elif mono:
            term = f"{s}*{mono}"
        else:
            term = s
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def parse_descriptor(text):
    """Parse ``Z``, ``Q``, ``Z/9``, ``Zp(3,2)``, ``Series(<d>,u,5)``,
    ``Product(<d>,...)`` and ``Ext(<d>,w,[1,0,1])``."""
    text = text.replace(" ", "")
    desc, rest = _parse_desc(text, 0)
    if rest != len(text):
        raise ParseError(f"trailing text in ring descriptor {text!r}")
    return desc


def _parse_desc(text, i):
    if text.startswith("Zp(", i):
        j = text.index(")", i)
        p, k = text[i + 3 : j].split(",")
        return PAdicTrunc(int(p), int(k)), j + 1
    if text.startswith("Z/", i):
        m = re.match(r"\d+", text[i + 2 :])
        if not m:
            raise ParseError(f"bad modulus in {text!r}")
        return Modular(int(m.group())), i + 2 + m.end()
    if text.startswith("Series(", i):
        base, j = _parse_desc(text, i + 7)
        m = re.match(r",([A-Za-z_]\w*),(\d+)\)", text[j:])
        if not m:
            raise ParseError(f"bad series descriptor {text!r}")
        return TruncSeries(base, m.group(1), int(m.group(2))), j + m.end()
    if text.startswith("Ext(", i):
        base, j = _parse_desc(text, i + 4)
        m = re.match(r",([A-Za-z_]\w*),\[([-\d,]+)\]\)", text[j:])
        if not m:
            raise ParseError(f"bad extension descriptor {text!r}")
        mod = tuple(int(c) for c in m.group(2).split(","))
        return Extension(base, m.group(1), mod), j + m.end()
    if text.startswith("Product(", i):
        factors = []
        j = i + 8
        while True:
            f, j = _parse_desc(text, j)
            factors.append(f)
            if text[j] == ",":
                j += 1
                continue
            if text[j] == ")":
                return Product(tuple(factors)), j + 1
            raise ParseError(f"bad product descriptor {text!r}")
    if text.startswith("Z", i):
        return Integers(), i + 1
    if text.startswith("Q", i):
        return Rationals(), i + 1
    raise ParseError(f"unknown ring descriptor at {text[i:]!r}")
