"""Line-oriented description files for algebroids and comodules.

    format = 1
    name = divpow
    [ring]
    Z/3
    [basis]
    window = 9
    levels = 0 1 2 3 4 5 6 7 8        (optional, default 0 1 2 ...)
    [unit]
    0:1
    [mult]
    1 1 -> 2:2                         (i <= j; unlisted products are untabulated)
    [etaR]
    0 -> 0:(0,1)                       (one line per ring generator)
    [delta]
    2 -> (0,2):1 (1,1):1 (2,0):1       ((a,b) is e_a (x) e_b)
    [epsilon]
    0 -> 1
    [conj]
    selfdual = true                    (or lines i -> k:coeff)
    [comodule]                         (optional)
    rank = 2
    0 1 -> 1:1                         (psi(m_s) = sum_t m_t (x) gamma_ts)

Coefficients use the ring's literal syntax and must not contain spaces.
``#`` starts a comment.
"""
from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .comod import Comodule
from .errors import IndexOutOfWindow, ParseError
from .freemod import TensorVector, Vector
from .hopf import HopfAlgebroid, derive_antipode
from .rings import parse_descriptor

__all__ = ["Description", "parse", "parse_file", "serialize", "data_path", "FORMAT_VERSION"]

FORMAT_VERSION = 1
SECTIONS = ("ring", "basis", "unit", "mult", "etaR", "delta", "epsilon", "conj", "comodule")
REQUIRED = ("ring", "basis", "unit", "mult", "etaR", "delta", "epsilon", "conj")


class Description:
    def __init__(self, algebroid, comodule=None, selfdual=False):
        self.algebroid = algebroid
        self.comodule = comodule
        self.selfdual = selfdual


def data_path(name):
    """Path of a file shipped in hopfdual/data."""
    return Path(str(resources.files("hopfdual") / "data" / name))


def parse_file(path):
    p = Path(path)
    if not p.exists() and not p.is_absolute() and data_path(p.name).exists():
        p = data_path(p.name)
    return parse(p.read_text(encoding="utf-8"))


# -- parsing --------------------------------------------------------------------

_PAIR = re.compile(r"^\((\d+),(\d+)\):(\S+)$")
_TERM = re.compile(r"^(\d+):(\S+)$")


class _Parser:
    def __init__(self, text):
        self.lines = []
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.lines.append((n, line))
        self.sections = {}
        self.header = {}
        self.window = None

    def split(self):
        if not self.lines:
            raise ParseError("empty file", 1)
        n, first = self.lines[0]
        key, val = _kv(first, n)
        if key != "format":
            raise ParseError("first line must be 'format = 1'", n)
        if val != str(FORMAT_VERSION):
            raise ParseError(f"unsupported format version {val}", n)
        current = None
        for n, line in self.lines[1:]:
            m = re.match(r"^\[(\w+)\]$", line)
            if m:
                name = m.group(1)
                if name not in SECTIONS:
                    raise ParseError(f"unknown section [{name}]", n)
                if name in self.sections:
                    raise ParseError(f"duplicate section [{name}]", n)
                current = name
                self.sections[name] = []
            elif current is None:
                key, val = _kv(line, n)
                self.header[key] = val
            else:
                self.sections[current].append((n, line))
        for name in REQUIRED:
            if name not in self.sections:
                raise ParseError(f"missing section [{name}]", self.lines[-1][0])

    def coeff(self, A, text, n):
        try:
            return A(text)
        except ParseError as exc:
            raise ParseError(f"bad coefficient {text!r}: {exc}", n) from None
        except (ValueError, TypeError, ArithmeticError) as exc:
            raise ParseError(f"bad coefficient {text!r}: {exc}", n) from None

    def index(self, text, n, bound=None):
        i = int(text)
        bound = self.window if bound is None else bound
        if not 0 <= i < bound:
            raise IndexOutOfWindow(f"index {i} outside window {bound}", n)
        return i

    def terms(self, A, text, n, bound=None):
        out = {}
        for tok in text.split():
            m = _TERM.match(tok)
            if not m:
                raise ParseError(f"bad term {tok!r}, expected k:coeff", n)
            k = self.index(m.group(1), n, bound)
            c = self.coeff(A, m.group(2), n)
            out[k] = out[k] + c if k in out else c
        return Vector(A, out)

    def arrow(self, line, n, nkeys):
        if "->" not in line:
            raise ParseError("expected '->'", n)
        lhs, rhs = line.split("->", 1)
        keys = lhs.split()
        if len(keys) != nkeys:
            raise ParseError(f"expected {nkeys} index(es) before '->'", n)
        return keys, rhs.strip()


def _kv(line, n):
    if "=" not in line:
        raise ParseError(f"expected 'key = value', got {line!r}", n)
    key, val = line.split("=", 1)
    return key.strip(), val.strip()


def parse(text):
    ps = _Parser(text)
    ps.split()
    sec = ps.sections

    ring_lines = sec["ring"]
    if len(ring_lines) != 1:
        raise ParseError("[ring] takes exactly one descriptor line", ring_lines[0][0] if ring_lines else 1)
    n, line = ring_lines[0]
    try:
        A = parse_descriptor(line)
    except ParseError as exc:
        raise ParseError(str(exc), n) from None

    levels = None
    for n, line in sec["basis"]:
        key, val = _kv(line, n)
        if key == "window":
            ps.window = int(val)
        elif key == "levels":
            levels = [int(x) for x in val.split()]
        else:
            raise ParseError(f"unknown basis key {key!r}", n)
    if ps.window is None:
        raise ParseError("[basis] needs 'window = W'", sec["basis"][0][0] if sec["basis"] else 1)
    W = ps.window
    basis = list(range(W))
    if levels is not None and len(levels) != W:
        raise ParseError(f"{len(levels)} levels for window {W}", sec["basis"][-1][0])

    if len(sec["unit"]) != 1:
        raise ParseError("[unit] takes exactly one line", sec["unit"][0][0] if sec["unit"] else 1)
    n, line = sec["unit"][0]
    unit = ps.terms(A, line, n)

    mult = {}
    for n, line in sec["mult"]:
        keys, rhs = ps.arrow(line, n, 2)
        i, j = (ps.index(k, n) for k in keys)
        mult[(min(i, j), max(i, j))] = ps.terms(A, rhs, n)

    ngens = len(A.gen_payloads())
    etaR = [None] * ngens
    for n, line in sec["etaR"]:
        keys, rhs = ps.arrow(line, n, 1)
        g = ps.index(keys[0], n, ngens)
        etaR[g] = ps.terms(A, rhs, n)
    if any(e is None for e in etaR):
        raise ParseError(f"[etaR] needs one line for each of the {ngens} ring generators",
                         sec["etaR"][-1][0] if sec["etaR"] else 1)

    delta = {}
    for n, line in sec["delta"]:
        keys, rhs = ps.arrow(line, n, 1)
        k = ps.index(keys[0], n)
        entries = {}
        for tok in rhs.split():
            m = _PAIR.match(tok)
            if not m:
                raise ParseError(f"bad delta term {tok!r}, expected (a,b):coeff", n)
            a, b = ps.index(m.group(1), n), ps.index(m.group(2), n)
            c = ps.coeff(A, m.group(3), n)
            entries[b] = entries.get(b, Vector(A)) + Vector(A, {a: c})
        delta[k] = TensorVector(A, {b: v for b, v in entries.items() if not v.is_zero()})

    epsilon = {}
    for n, line in sec["epsilon"]:
        keys, rhs = ps.arrow(line, n, 1)
        epsilon[ps.index(keys[0], n)] = ps.coeff(A, rhs, n)

    for name, table in (("delta", delta), ("epsilon", epsilon)):
        missing = [k for k in basis if k not in table]
        if missing:
            raise ParseError(f"[{name}] has no entry for index {missing[0]}", sec[name][-1][0] if sec[name] else 1)

    selfdual = False
    conj = {}
    for n, line in sec["conj"]:
        if "->" not in line:
            key, val = _kv(line, n)
            if key != "selfdual" or val not in ("true", "false"):
                raise ParseError("expected 'selfdual = true' or i -> terms", n)
            selfdual = val == "true"
            continue
        keys, rhs = ps.arrow(line, n, 1)
        conj[ps.index(keys[0], n)] = ps.terms(A, rhs, n)
    if selfdual:
        if conj:
            raise ParseError("selfdual = true excludes explicit conj lines", sec["conj"][0][0])
        try:
            conj = derive_antipode(A, basis, unit, mult, delta, epsilon)
        except ValueError as exc:
            raise ParseError(str(exc), sec["conj"][0][0]) from None
    else:
        missing = [k for k in basis if k not in conj]
        if missing:
            raise ParseError(f"[conj] has no entry for index {missing[0]}", sec["conj"][-1][0] if sec["conj"] else 1)

    name = ps.header.get("name", "")
    lv = dict(zip(basis, levels)) if levels is not None else None
    P = HopfAlgebroid(A, basis, unit, mult, etaR, delta, epsilon, conj, levels=lv, name=name)

    M = None
    if "comodule" in sec:
        rank, psi = None, {}
        for n, line in sec["comodule"]:
            if "->" not in line:
                key, val = _kv(line, n)
                if key != "rank":
                    raise ParseError(f"unknown comodule key {key!r}", n)
                rank = int(val)
                continue
            if rank is None:
                raise ParseError("'rank = r' must precede psi entries", n)
            keys, rhs = ps.arrow(line, n, 2)
            t, s = (ps.index(k, n, rank) for k in keys)
            psi[(t, s)] = ps.terms(A, rhs, n)
        if rank is None:
            raise ParseError("[comodule] needs 'rank = r'", sec["comodule"][0][0] if sec["comodule"] else 1)
        M = Comodule(P, rank, psi, name=ps.header.get("comodule", ""))
    return Description(P, M, selfdual)


# -- serialization ---------------------------------------------------------------

def _fmt(c):
    return c.ring.format(c.payload)


def _terms(v):
    return " ".join(f"{k}:{_fmt(c)}" for k, c in sorted(v.items()))


def serialize(P, M=None, *, selfdual=False):
    """Inverse of ``parse`` for algebroids labelled 0..W-1."""
    W = len(P.basis)
    if list(P.basis) != list(range(W)):
        raise ValueError("only algebroids labelled 0..W-1 can be serialized")
    out = [f"format = {FORMAT_VERSION}"]
    if P.name:
        out.append(f"name = {P.name}")
    if M is not None and M.name:
        out.append(f"comodule = {M.name}")
    out += ["[ring]", P.base.spec(), "[basis]", f"window = {W}"]
    if [P.level(k) for k in P.basis] != list(range(W)):
        out.append("levels = " + " ".join(str(P.level(k)) for k in P.basis))
    out += ["[unit]", _terms(P.unit), "[mult]"]
    for (i, j), v in sorted(P.mult.items()):
        out.append(f"{i} {j} -> {_terms(v)}".rstrip())
    out.append("[etaR]")
    for g, v in enumerate(P.etaR):
        out.append(f"{g} -> {_terms(v)}".rstrip())
    out.append("[delta]")
    for k in P.basis:
        terms = sorted((a, b, c) for b, left in P.delta[k].items() for a, c in left.items())
        out.append(f"{k} -> " + " ".join(f"({a},{b}):{_fmt(c)}" for a, b, c in terms))
    out.append("[epsilon]")
    for k in P.basis:
        out.append(f"{k} -> {_fmt(P.epsilon[k])}")
    out.append("[conj]")
    if selfdual:
        out.append("selfdual = true")
    else:
        for k in P.basis:
            out.append(f"{k} -> {_terms(P.conj[k])}".rstrip())
    if M is not None:
        out += ["[comodule]", f"rank = {M.rank}"]
        for (t, s), v in sorted(M.psi.items()):
            out.append(f"{t} {s} -> {_terms(v)}")
    return "\n".join(out) + "\n"
