"""Command line entry point: ``tmf13 <subcommand> ...``.

Exit status: 0 success, 1 mathematical failure (not liftable, check failed),
2 usage error.  ``TMF13_PROFILE`` (fast | default | deep) picks the default
truncations.
"""

from __future__ import annotations

import argparse
import ast
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import jsonio
from .charclasses import (
    NotInSpanError,
    NotInvariantError,
    RankDeficiencyError,
    TorusClass,
    decompose_into_pontryagin,
    pontryagin_series,
    random_pontryagin_poly,
)
from .curve import discriminant, fgl_from_curve, formal_log, typicalize_2, universal_curve
from .gradedmf import GradedMF
from .series import PrecisionError, QLaurent

PROFILES = {
    "fast": {"qorder": 12, "xdeg": 9, "poles": 1, "rank": 2},
    "default": {"qorder": 20, "xdeg": 13, "poles": 1, "rank": 2},
    "deep": {"qorder": 40, "xdeg": 13, "poles": 2, "rank": 3},
}


class UsageError(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


@dataclass
class RunConfig:
    subcommand: str
    qorder: int
    xdeg: int
    rank: int
    poles: int
    json: bool
    seed: int

    def __post_init__(self):
        for name in ("qorder", "xdeg", "rank"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name} must be positive")
        if self.poles < 0:
            raise UsageError("--poles must be non-negative")


def _profile() -> dict:
    name = os.environ.get("TMF13_PROFILE", "default")
    if name not in PROFILES:
        raise UsageError(f"unknown TMF13_PROFILE {name!r}; choose from {sorted(PROFILES)}")
    return PROFILES[name]


# -- form parsing -------------------------------------------------------------

_NAMES = {"a1": GradedMF.a1, "a3": GradedMF.a3, "Delta": GradedMF.delta}


def parse_form(text: str) -> GradedMF:
    """Parse e.g. ``"a1^3 - 27*a3"`` or ``"a1^12/Delta"`` into a :class:`GradedMF`."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse form {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return GradedMF.const(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise UsageError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b.is_rational():
                    return a * (1 / b.reduced().terms.get((0, 0), Fraction(0)))
                try:
                    return a * b.inverse()
                except ZeroDivisionError:
                    raise UsageError("can only divide by units (powers of a3, a1^3 - 27 a3, Delta)") from None
        raise UsageError(f"unsupported expression in form: {ast.dump(node)[:60]}")

    return ev(tree).reduced()


# -- fixtures -----------------------------------------------------------------

def _fixture(name: str, cfg: RunConfig) -> TorusClass:
    from .lift import expansion_for, miller_character, perturb

    exp = expansion_for(cfg.qorder, max(cfg.poles, 1))
    if name in ("tmf-p1", "p1"):
        tmf = pontryagin_series(cfg.rank, 1, "tmf", cfg.xdeg)[0]
        return tmf if name == "tmf-p1" else miller_character(tmf, exp)
    if name in ("seeded", "perturbed", "tmf-seeded"):
        rng = random.Random(cfg.seed)
        P = random_pontryagin_poly(rng, cfg.rank, cfg.xdeg, "tmf", degree=4, max_pole=1)
        tmf = P.expand(cfg.rank, cfg.xdeg, 4)
        if name == "tmf-seeded":
            return tmf
        k = miller_character(tmf, exp)
        return perturb(k) if name == "perturbed" else k
    raise UsageError(f"unknown fixture {name!r}; choose tmf-p1, p1, tmf-seeded, seeded, perturbed")


def _load_class(arg: str, cfg: RunConfig) -> TorusClass:
    if arg.startswith("fixture:"):
        return _fixture(arg.split(":", 1)[1], cfg)
    try:
        return jsonio.decode_class(jsonio.load_json_arg(arg))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read class: {exc}") from None


# -- output -------------------------------------------------------------------

def _emit(cfg: RunConfig, payload: dict, human: str):
    if cfg.json:
        payload = dict(payload)
        payload.setdefault("schema", jsonio.SCHEMA)
        print(jsonio.dumps(payload))
    else:
        print(human)


def _qs(x: QLaurent, n: int = 8) -> str:
    return repr(x.truncate(min(x.trunc, n)))


# -- subcommands ----------------------------------------------------------------

def cmd_fgl(args, cfg):
    F = fgl_from_curve(universal_curve(), args.bound)
    payload = {"kind": "fgl", "bound": args.bound, "series": jsonio.encode_series(F.series)}
    lines = [f"F(x, y) = {F.series}"]
    if args.log:
        log = formal_log(F)
        payload["log"] = jsonio.encode_series(log)
        lines.append(f"log(t) = {log}")
    if args.typical:
        if args.bound < 5:
            raise UsageError("--typical needs --bound >= 5")
        d = typicalize_2(F)
        payload["v1"], payload["v2"] = jsonio.encode_coeff(d.v1), jsonio.encode_coeff(d.v2)
        lines.append(f"v1 = {d.v1}, v2 = {d.v2}")
    disc = discriminant(universal_curve())
    payload["discriminant"] = jsonio.encode_coeff(disc)
    lines.append(f"Delta = {disc}")
    _emit(cfg, payload, "\n".join(lines))


def cmd_tate(args, cfg):
    from .tate import gamma13_expansion, tate_curve

    E = tate_curve(cfg.qorder)
    g = gamma13_expansion(cfg.qorder)
    payload = {"kind": "tate", "B": jsonio.encode_coeff(E.B), "C": jsonio.encode_coeff(E.C),
               "a1": jsonio.encode_coeff(g.a1_q), "a3": jsonio.encode_coeff(g.a3_q),
               "delta": jsonio.encode_coeff(g.delta())}
    human = "\n".join([f"B  = {_qs(E.B)}", f"C  = {_qs(E.C)}", f"a1(q) = {_qs(g.a1_q)}",
                       f"a3(q) = {_qs(g.a3_q)}", f"Delta(q) = {_qs(g.delta())}"])
    _emit(cfg, payload, human)


def cmd_qexpand(args, cfg):
    from .lift import expansion_for
    from .tate import qexpand

    f = parse_form(args.form)
    exp = expansion_for(cfg.qorder, f.pole)
    val = qexpand(f, exp).truncate(cfg.qorder)
    _emit(cfg, {"kind": "qexpansion", "form": repr(f), "weight": f.weight(), "value": jsonio.encode_coeff(val)},
          f"{f} = {val}")


def cmd_pontryagin(args, cfg):
    ps = pontryagin_series(args.rank, args.upto, args.theory, cfg.xdeg)
    payload = {"kind": "pontryagin", "rank": args.rank, "theory": args.theory,
               "classes": [jsonio.encode_class(p) for p in ps]}
    _emit(cfg, payload, "\n".join(f"p{j + 1} = {p.series}" for j, p in enumerate(ps)))


def cmd_decompose(args, cfg):
    c = _load_class(args.class_, cfg)
    if args.rank is not None and args.rank != c.rank:
        raise UsageError(f"class has rank {c.rank}, not {args.rank}")
    try:
        P = decompose_into_pontryagin(c)
    except NotInvariantError as exc:
        raise MathFailure(str(exc), {"error": "not_invariant", "generator": exc.generator}) from None
    except NotInSpanError as exc:
        raise MathFailure(str(exc), {"error": "not_in_span", "degree": exc.degree,
                                     "residual": jsonio.encode_series(exc.residual)}) from None
    except RankDeficiencyError as exc:
        raise MathFailure(str(exc), {"error": "rank_deficient", "degree": exc.degree}) from None
    _emit(cfg, jsonio.encode_poly(P), repr(P))


def cmd_character(args, cfg):
    from .lift import chern_character, dold_character, expansion_for, miller_character

    c = _load_class(args.class_, cfg)
    if args.to == "ktate":
        if c.theory != "tmf":
            raise UsageError("--to ktate needs a tmf class")
        out = miller_character(c, expansion_for(cfg.qorder, max(cfg.poles, 1)))
    elif c.theory == "tmf":
        out = dold_character(c)
    elif c.theory in ("ktate", "k"):
        out = chern_character(c)
    else:
        raise UsageError(f"no character from theory {c.theory!r} to {args.to}")
    _emit(cfg, jsonio.encode_class(out), f"[{out.theory}, degree {out.degree}] {out.series}")


def _report_out(cfg, report, extra=None):
    payload = jsonio.encode_lift_report(report)
    if extra:
        payload.update(extra)
    if report.liftable:
        human = f"liftable (full rank: {report.full_rank})\nlift = {report.lift.series}"
        _emit(cfg, payload, human)
        return
    w = report.witness or {}
    raise MathFailure(f"{report.status}: coefficient of z^{w.get('monomial')} (degree {w.get('degree')}, "
                      f"weight {w.get('weight')}) fails at q^{w.get('q_exponent')}", payload)


def cmd_lift(args, cfg):
    from .lift import expansion_for, lift_from_tate

    c = _load_class(args.class_, cfg)
    if c.theory != "ktate":
        raise UsageError("lift takes a ktate class")
    try:
        r = lift_from_tate(c, args.degree, m=cfg.rank if args.rank else None, xdeg=cfg.xdeg,
                           qorder=cfg.qorder, max_pole=cfg.poles, exp=expansion_for(cfg.qorder, cfg.poles))
    except NotInvariantError as exc:
        raise MathFailure(str(exc), {"error": "not_invariant", "generator": exc.generator}) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _report_out(cfg, r)


def cmd_witten(args, cfg):
    from .witten import a_hat_genus, witten_genus_series

    try:
        raw = jsonio.load_json_arg(args.pontryagin)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read Pontryagin numbers: {exc}") from None
    # {"1,1": 3, "2": -1} or [[[1,1],3], [[2],-1]]
    items = raw.items() if isinstance(raw, dict) else raw
    numbers = {}
    for key, val in items:
        part = tuple(int(x) for x in key.split(",")) if isinstance(key, str) else tuple(key)
        numbers[part] = val
    try:
        w = witten_genus_series(numbers, args.dim, cfg.qorder)
        ahat = a_hat_genus(numbers, args.dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, {"kind": "witten_genus", "dim": args.dim, "series": jsonio.encode_coeff(w),
                "a_hat": jsonio.encode_coeff(ahat)}, f"W = {w}\nA-hat = {ahat}")


def _jacobi_fn(name: str, path: str | None):
    from .jacobi import eisenstein_numeric, phi_numeric, s_character_numeric

    if name == "e4":
        return eisenstein_numeric(4)
    if name == "e6":
        return eisenstein_numeric(6)
    if name == "phi":
        return lambda z, tau: phi_numeric(tau, z)
    if name == "s-char":
        return lambda z, tau: s_character_numeric(tau, z)
    if name == "file":
        if not path:
            raise UsageError("--fn file needs --file PATH defining J(z, tau)")
        import runpy

        ns = runpy.run_path(path)
        if "J" not in ns:
            raise UsageError(f"{path} does not define J(z, tau)")
        return ns["J"]
    raise UsageError(f"unknown function {name!r}")


def cmd_jacobi(args, cfg):
    from .jacobi import check_invariance

    J = _jacobi_fn(args.fn, args.file)
    rep = check_invariance(J, args.level, args.weight, Fraction(args.index), samples=args.samples,
                           tol=args.tol, height=args.height, seed=cfg.seed)
    payload = {"kind": "invariance", "passed": rep.passed, "max_deviation": rep.max_deviation,
               "samples": rep.samples, "generators": rep.generators, "note": rep.note,
               "worst_matrix": rep.worst[0] if rep.worst else None}
    human = f"{'pass' if rep.passed else 'fail'}: max deviation {rep.max_deviation:.3e} " \
            f"over {rep.samples} samples x {rep.generators} elements ({rep.note})"
    if not rep.passed:
        raise MathFailure(human, payload)
    _emit(cfg, payload, human)


def cmd_phi(args, cfg):
    from .jacobi import phi_numeric, phi_series

    if args.symbolic:
        P = phi_series(cfg.xdeg, cfg.qorder)
        _emit(cfg, {"kind": "phi_series", "series": jsonio.encode_series(P.series)}, repr(P.series))
        return
    if args.tau is None or args.z is None:
        raise UsageError("phi needs --tau and --z (or --symbolic)")
    try:
        tau, z = complex(args.tau.replace("i", "j")), complex(args.z.replace("i", "j"))
        v = phi_numeric(tau, z)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, {"kind": "phi_value", "re": v.real, "im": v.imag}, f"Phi = {v.real:.15g} {v.imag:+.15g}i")


def cmd_loop_lift(args, cfg):
    from .jacobi import phi_pipeline

    v = _load_class(args.vhat, cfg)
    if v.theory != "ktate":
        raise UsageError("--vhat must be a ktate class")
    try:
        res = phi_pipeline(v, args.level_m, qorder=cfg.qorder, max_pole=cfg.poles, xdeg=cfg.xdeg,
                           q_shift=args.q_shift)
    except ValueError as exc:
        raise MathFailure(str(exc), {"error": "not_invariant"}) from None
    _report_out(cfg, res.report, {"s_power": res.s_power, "level": res.level, "span": res.span,
                                  "q_shift": res.q_shift})


def cmd_verify(args, cfg):
    from .acceptance import run_suite

    results = run_suite(args.suite, None if cfg.json else (lambda r: print(r.line(), flush=True)))
    ok = all(r.passed for r in results)
    if cfg.json:
        print(jsonio.dumps({"schema": jsonio.SCHEMA, "kind": "verify", "suite": args.suite, "passed": ok,
                            "results": [{"number": r.number, "name": r.name, "passed": r.passed,
                                         "detail": r.detail} for r in results]}))
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    if not ok:
        raise MathFailure("acceptance suite failed", None if not cfg.json else {"silent": True})


COMMANDS = {
    "fgl": cmd_fgl, "tate": cmd_tate, "qexpand": cmd_qexpand, "pontryagin": cmd_pontryagin,
    "decompose": cmd_decompose, "character": cmd_character, "lift": cmd_lift, "witten": cmd_witten,
    "jacobi": cmd_jacobi, "phi": cmd_phi, "loop-lift": cmd_loop_lift, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    prof = _profile()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--qorder", type=int, default=prof["qorder"], help="q-adic truncation")
    common.add_argument("--xdeg", type=int, default=prof["xdeg"], help="x-degree bound (exclusive)")
    common.add_argument("--poles", type=int, default=prof["poles"], help="maximal Delta pole order")

    p = argparse.ArgumentParser(prog="tmf13", description="Level-3 elliptic characteristic classes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fgl", parents=[common], help="formal group law of the universal curve")
    s.add_argument("--bound", type=int, default=6)
    s.add_argument("--log", action="store_true")
    s.add_argument("--typical", action="store_true")

    sub.add_parser("tate", parents=[common], help="Tate curve and level-3 q-expansions")

    s = sub.add_parser("qexpand", parents=[common], help="q-expansion of a form in a1, a3, Delta")
    s.add_argument("form")

    s = sub.add_parser("pontryagin", parents=[common], help="Pontryagin classes on a torus")
    s.add_argument("--rank", type=int, default=prof["rank"])
    s.add_argument("--upto", type=int, default=1)
    s.add_argument("--theory", choices=("tmf", "k", "additive"), default="tmf")

    s = sub.add_parser("decompose", parents=[common], help="write a torus class in Pontryagin classes")
    s.add_argument("--class", dest="class_", required=True, help="JSON, path, or fixture:NAME")
    s.add_argument("--rank", type=int)

    s = sub.add_parser("character", parents=[common], help="Miller, Chern or Dold character")
    s.add_argument("--to", choices=("ktate", "rational"), required=True)
    s.add_argument("--class", dest="class_", required=True)
    s.add_argument("--rank", type=int, default=prof["rank"])

    s = sub.add_parser("lift", parents=[common], help="lift a K_Tate class to level-3 TMF")
    s.add_argument("--class", dest="class_", required=True)
    s.add_argument("--degree", type=int)
    s.add_argument("--rank", type=int)

    s = sub.add_parser("witten", parents=[common], help="Witten genus from Pontryagin numbers")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--pontryagin", required=True, help='e.g. \'{"1,1": 3, "2": -1}\'')

    s = sub.add_parser("jacobi", parents=[common], help="sampled Gamma(n) invariance check")
    s.add_argument("action", choices=("check",))
    s.add_argument("--level", type=int, default=1)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--index", default="0")
    s.add_argument("--samples", type=int, default=8)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--height", type=int, default=2)
    s.add_argument("--fn", choices=("e4", "e6", "phi", "s-char", "file"), required=True)
    s.add_argument("--file")

    s = sub.add_parser("phi", parents=[common], help="evaluate or expand Phi(tau, z)")
    s.add_argument("--tau")
    s.add_argument("--z")
    s.add_argument("--symbolic", action="store_true")

    s = sub.add_parser("loop-lift", parents=[common], help="phi pipeline for loop-group characters")
    s.add_argument("--vhat", required=True)
    s.add_argument("--level-m", dest="level_m", type=int, required=True)
    s.add_argument("--q-shift", dest="q_shift", type=int, default=0)
    s.add_argument("--rank", type=int, default=prof["rank"])

    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.add_argument("--suite", choices=("core", "full"), default="core")
    return p


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except UsageError as exc:
        print(f"tmf13: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rank = getattr(args, "rank", None)
        cfg = RunConfig(args.command, args.qorder, args.xdeg, _profile()["rank"] if rank is None else rank,
                        args.poles, args.json, args.seed)
        COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tmf13: {exc}", file=sys.stderr)
        return 2
    except MathFailure as exc:
        if args.json and exc.payload is not None and not (isinstance(exc.payload, dict) and exc.payload.get("silent")):
            payload = dict(exc.payload)
            payload.setdefault("schema", jsonio.SCHEMA)
            payload.setdefault("message", str(exc))
            print(jsonio.dumps(payload))
        elif not args.json:
            print(str(exc))
        return 1
    except PrecisionError as exc:
        print(f"tmf13: precision: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
