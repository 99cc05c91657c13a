"""Command-line front end: ``hopfdual <command> [file] [flags]``.

Exit codes: 0 when no check fails, 1 when some check fails, 2 on usage or
input errors. ``--format machine`` prints ``CHECK <name> <status> [witness]``
and ``VALUE <name> <literal>`` lines.
"""
from __future__ import annotations

import argparse
import random
import sys

from . import comod, dual, functor, homalg, hopf, ore
from .errors import ConsistencyError, HopfDualError, WindowExceeded
from .fileformat import parse, parse_file, serialize
from .report import FAIL, PASS, Report
from .rings import Extension, RingElement

COMMANDS = ("validate", "dual-mul", "act", "translate", "round-trip", "tensor", "base-change",
            "beta-dual", "pullback", "identify", "qderham", "pontryagin")
NEEDS_FILE = set(COMMANDS) - {"qderham", "pontryagin"}
NEEDS_COMODULE = {"translate", "pullback", "identify"}
QDERHAM_OPS = ("relation", "act", "cohomology", "frobenius", "rightmod")


class UsageError(Exception):
    pass


class Output:
    def __init__(self, echo):
        self.echo = echo
        self.values = []
        self.reports = []

    def value(self, name, val):
        self.values.append((name, _literal(val)))

    def report(self, rep):
        self.reports.append(rep)

    @property
    def failed(self):
        return any(r.failed for r in self.reports)

    def render(self, fmt):
        if fmt == "machine":
            lines = ["COMMAND " + self.echo]
            lines += [f"VALUE {n} {v.replace(' ', '')}" for n, v in self.values]
            for r in self.reports:
                lines += r.lines("machine")
            return lines
        lines = ["$ hopfdual " + self.echo]
        lines += [f"{n} = {v}" for n, v in self.values]
        for r in self.reports:
            lines += r.lines("text")
        lines.append("result: " + (FAIL if self.failed else PASS))
        return lines


def _literal(v):
    if isinstance(v, RingElement):
        return v.ring.format(v.payload)
    if isinstance(v, dual.DualElement):
        return "[" + ", ".join(_literal(c) for c in v.table()) + "]"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_literal(c) for c in v) + "]"
    if hasattr(v, "items") and hasattr(v, "ring"):
        terms = [f"{k}:{_literal(c)}" for k, c in sorted(v.items(), key=lambda kc: repr(kc[0]))]
        return " ".join(terms) or "0"
    return str(v)


def build_parser():
    ap = argparse.ArgumentParser(prog="hopfdual", description="Hopf algebroid duality checks")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", nargs="?", help="description file (shipped data files may be named directly)")
    ap.add_argument("--window", type=int, default=None)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=100, help="random samples for law checks")
    ap.add_argument("--pair", default=None, help="i,j for dual-mul: print e_i^dual o e_j^dual")
    ap.add_argument("--modulus", default="1,0,1", help="monic modulus of the extension for base change")
    ap.add_argument("--p", type=int, default=None)
    ap.add_argument("--k", type=int, default=None)
    ap.add_argument("--N", type=int, default=None)
    ap.add_argument("--op", choices=QDERHAM_OPS, default="relation")
    ap.add_argument("--orders", default=None, help="comma-separated cyclic orders for pontryagin")
    ap.add_argument("--format", choices=("text", "machine"), default="text")
    return ap


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    out = Output(" ".join(argv))
    try:
        dispatch(args, out)
    except UsageError as exc:
        print(f"hopfdual: error: {exc}", file=sys.stderr)
        return 2
    except HopfDualError as exc:
        print(f"hopfdual: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hopfdual: error: {exc}", file=sys.stderr)
        return 2
    print("\n".join(out.render(args.format)))
    return 1 if out.failed else 0


def dispatch(args, out):
    desc = None
    if args.command in NEEDS_FILE:
        if not args.file:
            raise UsageError(f"{args.command} needs a description file")
        desc = parse_file(args.file)
        if args.command in NEEDS_COMODULE and desc.comodule is None:
            raise UsageError(f"{args.command} needs a file with a [comodule] section")
    handler = globals()["cmd_" + args.command.replace("-", "_")]
    handler(args, desc, out)


def _window(args, P):
    return P.window(args.window) if args.window is not None else P.basis


# -- commands -------------------------------------------------------------------

def cmd_validate(args, desc, out):
    P = desc.algebroid
    out.report(hopf.check_axioms(P, args.window, seed=args.seed))
    if desc.comodule is not None:
        out.report(comod.check_comodule(desc.comodule))


def cmd_dual_mul(args, desc, out):
    P = desc.algebroid
    W = _window(args, P)
    if args.pair:
        i, j = (int(x) for x in args.pair.split(","))
        prod = dual.dual_mul(dual.dual_basis(P, i, W), dual.dual_basis(P, j, W))
        out.value(f"e{i}^dual*e{j}^dual", prod)
    out.report(dual.dual_law_report(P, random.Random(args.seed), args.samples, W))


def cmd_act(args, desc, out):
    """D(etaR(g)) for the dual basis and each ring generator (the action on A)."""
    P = desc.algebroid
    W = _window(args, P)
    gens = P.base.gens() or [P.base.one()]
    rep = Report(title="right A-action")
    bad = None
    for k in W:
        D = dual.dual_basis(P, k, W)
        out.value(f"e{k}^dual(etaR(gens))", [dual.act_on_A(D, g) for g in gens])
        for g in gens:
            try:
                dual.right_A_action(D, g, W)
            except ConsistencyError:
                bad = bad or (k, str(g))
    rep.add("right_action_consistent", PASS if bad is None else FAIL, bad)
    out.report(rep)


def cmd_translate(args, desc, out):
    M = desc.comodule
    P = M.algebroid
    act = comod.to_module(M)
    for k in _window(args, P):
        out.value(f"act(e{k}^dual)", act.matrix(dual.dual_basis(P, k)))
    out.report(comod.iff_test(M))


def cmd_round_trip(args, desc, out):
    P, M = desc.algebroid, desc.comodule
    rep = Report(title="round trip")
    text = serialize(P, M, selfdual=desc.selfdual)
    again = parse(text)
    same = serialize(again.algebroid, again.comodule, selfdual=again.selfdual) == text
    same = same and again.algebroid.mult == P.mult and again.algebroid.delta == P.delta
    rep.add("parse_serialize", PASS if same else FAIL)
    if M is not None:
        try:
            back = comod.from_module(comod.to_module(M), len(P.basis))
            rep.add("from_module_to_module", PASS if back == M else FAIL)
        except HopfDualError as exc:
            rep.add("from_module_to_module", FAIL, type(exc).__name__)
    out.report(rep)


def cmd_tensor(args, desc, out):
    P = desc.algebroid
    T = hopf.tensor_algebroid(P)
    W = args.window if args.window is not None else min(10, len(T.basis))
    out.value("tensor_labels", list(T.window(W)))
    out.report(hopf.check_axioms(T, W, seed=args.seed))
    M = desc.comodule
    if M is not None:
        out.report(comod.check_comodule(comod.tensor_comodule(M, M)))
        rng = random.Random(args.seed)
        rep = Report(title="tensor action")
        bad = None
        for s in range(args.samples):
            D = dual.random_dual(P, rng)
            m = [P.base.random(rng) for _ in range(M.rank)]
            n = [P.base.random(rng) for _ in range(M.rank)]
            try:
                comod.dual_action_on_tensor(D, M, M, m, n)
            except ConsistencyError:
                bad = s
                break
        rep.add("dual_action_on_tensor", PASS if bad is None else FAIL, bad, detail=f"{args.samples} samples")
        out.report(rep)


def _extension(args, P):
    coeffs = tuple(int(c) for c in args.modulus.split(","))
    try:
        B = Extension(P.base, "w", coeffs)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --modulus: {exc}") from None
    return functor.FreeRingExtension.simple(B)


def _base_change(args, P):
    ext = _extension(args, P)
    return ext, functor.BaseChange(P, ext)


def cmd_base_change(args, desc, out):
    P = desc.algebroid
    ext, bc = _base_change(args, P)
    Pf = bc.algebroid
    W = args.window if args.window is not None else min(8, len(Pf.basis))
    out.value("base", ext.target.spec())
    out.value("labels", len(Pf.basis))
    out.report(hopf.check_axioms(Pf, W, seed=args.seed))


def cmd_beta_dual(args, desc, out):
    P = desc.algebroid
    ext, bc = _base_change(args, P)
    S, mor = functor.scalar_extension(P, ext)
    for k in _window(args, S):
        out.value(f"beta_dual(e{k}^dual)", bc.beta_dual(mor, dual.dual_basis(S, k)))
    rep = Report(title="beta dual")
    ok = bc.beta_dual(mor, dual.dual_unit(S)) == dual.dual_unit(bc.algebroid)
    rep.add("unit", PASS if ok else FAIL)
    bad = None
    labels = _window(args, S)
    for i in labels:
        for j in labels:
            a, b = dual.dual_basis(S, i), dual.dual_basis(S, j)
            try:
                if bc.beta_dual(mor, dual.dual_mul(a, b)) != dual.dual_mul(bc.beta_dual(mor, a), bc.beta_dual(mor, b)):
                    bad = bad or (i, j)
            except WindowExceeded:
                continue
    rep.add("multiplicative", PASS if bad is None else FAIL, bad)
    out.report(rep)


def cmd_pullback(args, desc, out):
    P, M = desc.algebroid, desc.comodule
    ext = _extension(args, P)
    S, mor = functor.scalar_extension(P, ext)
    fM = functor.pullback_comodule(mor, M)
    for (t, s), v in sorted(fM.psi.items()):
        out.value(f"gamma[{t},{s}]", v)
    out.report(comod.check_comodule(fM))


def cmd_identify(args, desc, out):
    P, M = desc.algebroid, desc.comodule
    ext, bc = _base_change(args, P)
    S, mor = functor.scalar_extension(P, ext)
    out.report(functor.identification_check(mor, ext, M, seed=args.seed, bc=bc))


def cmd_qderham(args, desc, out):
    for flag in ("p", "k", "N"):
        if getattr(args, flag) is None:
            raise UsageError(f"qderham needs --{flag}")
    p, k, N = args.p, args.k, args.N
    cfg = ore.TwistConfig(p, k, N)
    D = ore.OrePolynomial.nabla(cfg)
    q = cfg.q()
    if args.op == "relation":
        out.value("nabla*q", ore.ore_mul(D, ore.OrePolynomial.scalar(cfg, q)).coeffs)
        out.value("[p]_q", ore.q_integer(cfg))
        out.report(ore.q_relation_check(p, k, N, seed=args.seed))
    elif args.op == "act":
        out.value("nabla(q)", ore.nabla_act(q, cfg))
        out.value("nabla(q^2)", ore.nabla_act(q * q, cfg))
        rep = Report(title="nabla action")
        ok = ore.nabla_act(q, cfg) == ore.q_integer(cfg, N - 1)
        rep.add("nabla_q_is_[p]_q", PASS if ok else FAIL)
        rep.add("nabla_kills_constants", PASS if ore.nabla_act(cfg.base.one(), cfg).is_zero() else FAIL)
        out.report(rep)
    elif args.op == "cohomology":
        res = ore.two_term_cohomology(p, k, N)
        out.value("H0", res.H0)
        out.value("H1", res.H1)
        out.value("artifact_band", list(res.band))
        below = ore.brute_force_kernel_below_band(p, k, N)
        consts = sorted((a,) + (0,) * (res.band[0] - 1) for a in range(p ** k))
        out.value("kernel_below_band", [list(x) for x in sorted(below)])
        rep = Report(title="two-term cohomology")
        rep.add("kernel_below_band_is_constants", PASS if sorted(below) == consts else FAIL)
        out.report(rep)
    elif args.op == "frobenius":
        phi = ore.PhiTwistConfig(p, k, N)
        out.value("transport(nabla)", ore.frobenius_transport(D, phi).coeffs)
        rep = ore.q_relation_check(p, k, N, seed=args.seed)
        sub = Report(title="frobenius transport")
        sub.extend(Report(checks=[c for c in rep.checks if c.name.startswith("frobenius")]))
        out.report(sub)
    elif args.op == "rightmod":
        fq = ore.OrePolynomial(cfg, [cfg.base.zero(), q])
        out.value("reduce(q*nabla)", ore.reduce_right_module(fq))
        rng = random.Random(args.seed)
        rep = Report(title="right module")
        bad = None
        # nabla * Q and its reduction each spend deg(Q) + 1 digits
        deg = max(0, (N - 1) // 2 - 1)
        for s in range(min(args.samples, 20)):
            Q = ore.OrePolynomial(cfg, [cfg.random(rng) for _ in range(deg + 1)])
            if not ore.reduce_right_module(ore.ore_mul(D, Q)).is_zero():
                bad = s
                break
        rep.add("nabla_times_anything_reduces_to_0", PASS if bad is None else FAIL, bad)
        out.report(rep)


def cmd_pontryagin(args, desc, out):
    if args.orders:
        orders = [int(x) for x in args.orders.split(",")]
        M = homalg.FiniteModule.from_orders(orders)
    elif args.file:
        M = _module_from_file(parse_file(args.file), args)
    else:
        raise UsageError("pontryagin needs --orders or a file with a [comodule] over Z/m")
    Dm = homalg.pontryagin_dual(M)
    out.value("invariants", M.invariants)
    out.value("dual_invariants", Dm.invariants)
    rep = Report(title="Pontryagin duality")
    rep.add("involution", PASS if homalg.pontryagin_dual(Dm) == M else FAIL)
    bij, eq = homalg.double_dual_check(M)
    rep.add("double_dual_bijective", PASS if bij else FAIL)
    rep.add("double_dual_equivariant", PASS if eq else FAIL)
    out.report(rep)


def _module_from_file(desc, args):
    M = desc.comodule
    if M is None:
        raise UsageError("the file has no [comodule] section")
    P = M.algebroid
    m = getattr(P.base, "modulus", None)
    if not isinstance(m, int):
        raise UsageError("pontryagin on a comodule needs a base ring Z/m")
    act = comod.to_module(M)
    action = {}
    for k in _window(args, P):
        mat = act.matrix(dual.dual_basis(P, k))
        action[f"e{k}"] = [[int(c.payload) for c in row] for row in mat]
    return homalg.FiniteModule([m] * M.rank, action)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
