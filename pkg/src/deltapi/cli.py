"""Batch command-line front end.  Every subcommand prints one JSON document.

Exit codes: 0 on success, 2 when an operation's precondition fails (a JSON
error object {code, module, message} is printed), 64 on malformed flags.

Option precedence: explicit flag > --config file > DELTA_PI_PREC (precision
only) > built-in default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import characters, formal_group, gm, jets, padic, qexp, sharp
from .errors import DeltaPiError
from .serialize import dumps, fraction_str, series_document

EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE = 0, 2, 64
DEFAULT_PREC = 10

DEFAULTS = {
    "p": 5, "min_poly": None, "kind": "trivial", "prec": None,
    "qprec": 10, "delta_deg": None, "times": 1,
    "tprec": 12, "n": 1, "e": None, "alpha_max": 625,
    "kappa": 3, "order": None, "exponent": 1, "k": 4, "ell": 2,
    "eisenstein_root": False, "curve": None, "level": None,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- shared helpers -------------------------------------------------------------------

def _int_list(text):
    return [int(x) for x in str(text).split(",") if x.strip()]


def _frac_list(text):
    return [Fraction(x.strip()) for x in str(text).split(",") if x.strip()]


def _ctx(o):
    prec = o.prec
    if o.min_poly is None:
        return padic.PadicCtx.zp(o.p, prec)
    mp = tuple(_int_list(o.min_poly))
    kind = o.kind if o.kind != "trivial" else "ramified"
    return padic.PadicCtx(o.p, mp, kind, prec)


def _value(ctx, text):
    """An element: integer, fraction, comma list of t-coefficients, or p-adic literal."""
    text = str(text)
    if "," in text and "[" not in text:
        return ctx.from_coeffs(_int_list(text))
    return padic.parse_padic(ctx, text)


def _load_json_arg(text):
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    return json.loads(text)


def _curve(o, ctx):
    if o.curve is None:
        return formal_group.WeierstrassCurve(*formal_group.CURVE_11A1.coefficients, ctx=ctx)
    data = _load_json_arg(o.curve) if not isinstance(o.curve, dict) else o.curve
    return formal_group.WeierstrassCurve.from_dict(data, ctx=ctx)


def _qexp_series(o, ctx, text):
    # coefficients past the list are zero up to --qprec
    coeffs = _frac_list(text)
    q_prec = o.qprec
    return jets.JetSeries.from_qexp(ctx, coeffs, q_prec, delta_deg=o.delta_deg or 2)


def _phi_poly(text, ap=None, p=None):
    if text == "preset":
        return jets.PhiPoly.ordinary_preset(ap, p)
    return jets.PhiPoly.parse(text)


def _newform(o):
    if o.newform is not None:
        return qexp.NewformData.from_dict(_load_json_arg(o.newform))
    E = _curve(o, None)
    level = o.level if o.level is not None else 11
    return qexp.NewformData.from_curve(E, level, o.p, max(o.qprec, 1))


# -- subcommands -----------------------------------------------------------------------

def cmd_delta(o):
    ctx = _ctx(o)
    if o.qexp is not None:
        s = _qexp_series(o, ctx, o.qexp)
        return {"input": series_document(s), "delta": series_document(jets.delta_series(s))}
    x = _value(ctx, o.x)
    out = {"ctx": ctx.to_dict(), "x": x, "valuation": _val(x), "delta": padic.delta_pi(x)}
    if x.is_unit():
        out["inverse"] = x.inverse()
    if o.y is not None:
        y = _value(ctx, o.y)
        out.update({"y": y, "sum": x + y, "product": x * y, "c_pi": padic.c_pi(x, y)})
    return out


def _val(x):
    v = padic.valuation(x)
    return None if v == float("inf") else v


def cmd_phi(o):
    ctx = _ctx(o)
    if o.qexp is None:
        x = _value(ctx, o.x)
        return {"ctx": ctx.to_dict(), "x": x, "phi": padic.frobenius(x)}
    s = _qexp_series(o, ctx, o.qexp)
    if o.phi_poly is not None:
        out = jets.apply_phi_poly(_phi_poly(o.phi_poly), s)
    else:
        out = s
        for _ in range(o.times):
            out = jets.phi_series(out)
    doc = {"input": series_document(s), "result": series_document(out)}
    if o.against is not None:
        other = _qexp_series(o, ctx, o.against).with_order(out.order)
        doc["agree_mod_pi_power"] = jets.compare_mod_pi_power(out, other)
    return doc


def cmd_psi_gm(o):
    ctx = _ctx(o)
    params = gm.GmPsiParams.for_ctx(ctx)
    meta = {"m": params.m, "series_cutoff": params.series_cutoff, "tail_valuation": params.tail_valuation}
    if o.qexp is not None:
        s = _qexp_series(o, ctx, o.qexp)
        return {"ctx": ctx.to_dict(), **meta, "psi": series_document(gm.psi_gm_on_series(s, params))}
    x = _value(ctx, o.x)
    return {"ctx": ctx.to_dict(), **meta, "x": x, "psi": gm.psi_gm(x, params)}


def _fg(o, ctx):
    return formal_group.formal_group_law(_curve(o, ctx), o.tprec)


def cmd_formal_log(o):
    ctx = _ctx(o)
    fg = _fg(o, ctx)
    law = [{"i": i, "j": j, "c": fraction_str(c)} for (i, j), c in sorted(fg.F.items())]
    return {
        "curve": fg.curve.to_dict(),
        "t_prec": fg.t_prec,
        "log_coeffs": [fraction_str(c) for c in fg.log_coeffs],
        "hazewinkel_integral": fg.is_log_integral(ctx.p),
        "law": law,
    }


def cmd_jet_log(o):
    ctx = _ctx(o)
    fg = _fg(o, ctx)
    if o.x is not None:
        x = _value(ctx, o.x)
        return {"ctx": ctx.to_dict(), "n": o.n, "x": x, "value": formal_group.eval_jet_log(o.n, fg, x)}
    jl = formal_group.jet_log(o.n, fg, ctx)
    return {"n": jl.n, "nu": jl.nu, "tail_bound": jl.tail_bound, "series": series_document(jl.series)}


def cmd_val_bound(o):
    e = o.e if o.e is not None else _ctx(o).e
    r = formal_group.valuation_bound_check(o.alpha_max, p=o.p, e=e)
    return {"alpha_max": r.alpha_max, "p": r.p, "e": r.e, "violations": list(r.violations),
            "min_slack": round(r.min_slack, 12), "min_valuation": r.min_valuation,
            "tail_increasing": r.tail_increasing, "ok": r.ok}


def cmd_teichmuller(o):
    ctx = _ctx(o)
    return {"ctx": ctx.to_dict(), "d": o.d, "teichmuller": characters.teichmuller(o.d, ctx)}


def cmd_conjugates(o):
    return {"kappa": o.kappa, "p": o.p, "conjugates": characters.conjugates(o.p, o.kappa)}


def cmd_serre_check(o):
    ctx = _ctx(o)
    order = o.order if o.order is not None else o.p - 1
    chi = characters.CharacterData.from_generator(o.p, order, o.exponent)
    ok = characters.check_serre_compat(chi, o.kappa, o.p, ctx)
    return {"p": o.p, "kappa": o.kappa, "order": order, "exponent": o.exponent, "compatible": ok}


def cmd_bernoulli(o):
    return {"k": o.k, "B": fraction_str(qexp.bernoulli(o.k))}


def cmd_eisenstein(o):
    ctx = _ctx(o)
    return {"p": o.p, "series": series_document(qexp.eisenstein_qexp(o.p, o.qprec, ctx))}


def cmd_f_inverse(o):
    ctx = _ctx(o)
    nf = _newform(o)
    return {"N": nf.N, "p": nf.p, "series": series_document(qexp.f_inverse(nf, o.qprec, ctx))}


def cmd_ap(o):
    E = _curve(o, None)
    return {"curve": E.to_dict(), "ell": o.ell, "points": qexp.count_points(E, o.ell),
            "ap": qexp.ap_point_count(E, o.ell)}


def cmd_hensel_root(o):
    ctx = _ctx(o)
    if o.eisenstein_root:
        z = qexp.eisenstein_root(o.p, o.qprec, ctx)
        return {"p": o.p, "root": series_document(z)}
    if o.poly is None or o.tau0 is None:
        raise UsageError("hensel-root needs --poly and --tau0 (or --eisenstein-root)")
    coeffs = [ctx(c) for c in _frac_list(o.poly)]
    res = qexp.hensel_lift_root(coeffs, _value(ctx, o.tau0))
    return {"ctx": ctx.to_dict(), "poly": [fraction_str(c) for c in _frac_list(o.poly)],
            "root": res.root, "iterations": res.iterations}


def cmd_sharp(o):
    ctx = _ctx(o)
    nf = _newform(o)
    text = o.phi_poly or "preset"
    P = _phi_poly(text, nf.coefficient(nf.p) if text == "preset" else None, nf.p)
    spec = sharp.SharpSpec(nf, {"id": P}, kappa=o.kappa_weight,
                           realized_kappa_prime=o.kappa_prime, order=max(P.degree, 1))
    res = sharp.assemble_sharp(spec, o.qprec, ctx)
    return {"phi_poly": [fraction_str(c) for c in P.coeffs], "series": series_document(res.series),
            "metadata": res.metadata}


# subcommand -> (handler, operations it exposes)
REGISTRY = {
    "delta": (cmd_delta, ("padic.delta_pi", "padic.c_pi", "padic.arith", "jets.delta_series")),
    "phi": (cmd_phi, ("padic.frobenius", "jets.phi_series", "jets.apply_phi_poly", "jets.series_arith")),
    "psi-gm": (cmd_psi_gm, ("gm.psi_gm", "gm.psi_gm_on_series")),
    "formal-log": (cmd_formal_log, ("formal_group.formal_group_law",)),
    "jet-log": (cmd_jet_log, ("formal_group.jet_log", "formal_group.eval_jet_log")),
    "val-bound": (cmd_val_bound, ("formal_group.valuation_bound_check",)),
    "teichmuller": (cmd_teichmuller, ("characters.teichmuller",)),
    "conjugates": (cmd_conjugates, ("characters.conjugates",)),
    "serre-check": (cmd_serre_check, ("characters.check_serre_compat",)),
    "bernoulli": (cmd_bernoulli, ("qexp.bernoulli",)),
    "eisenstein": (cmd_eisenstein, ("qexp.eisenstein_qexp",)),
    "f-inverse": (cmd_f_inverse, ("qexp.f_inverse",)),
    "ap": (cmd_ap, ("qexp.ap_point_count",)),
    "hensel-root": (cmd_hensel_root, ("qexp.hensel_lift_root",)),
    "sharp": (cmd_sharp, ("sharp.assemble_sharp", "sharp.integrality_exponent", "sharp.nonzero_check")),
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config")
    common.add_argument("--p", type=int)
    common.add_argument("--min-poly", dest="min_poly")
    common.add_argument("--kind", choices=("trivial", "ramified", "unramified"))
    common.add_argument("--prec", type=int)
    common.add_argument("--qprec", type=int)
    common.add_argument("--delta-deg", dest="delta_deg", type=int)

    parser = _Parser(prog="deltapi", description="delta_pi calculus kernel")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    mk = {name: sub.add_parser(name, parents=[common]) for name in REGISTRY}

    for name in ("delta", "phi", "psi-gm"):
        mk[name].add_argument("--x")
        mk[name].add_argument("--qexp", help="comma-separated coefficients of q^0, q^1, ...")
    mk["delta"].add_argument("--y")
    mk["phi"].add_argument("--times", type=int)
    mk["phi"].add_argument("--phi-poly", dest="phi_poly")
    mk["phi"].add_argument("--against")
    for name in ("formal-log", "jet-log", "ap", "f-inverse", "sharp"):
        mk[name].add_argument("--curve", help="JSON file or inline JSON {a1,a2,a3,a4,a6}")
    for name in ("formal-log", "jet-log"):
        mk[name].add_argument("--tprec", type=int)
    mk["jet-log"].add_argument("--n", type=int, choices=(1, 2))
    mk["jet-log"].add_argument("--x")
    mk["val-bound"].add_argument("--alpha-max", dest="alpha_max", type=int)
    mk["val-bound"].add_argument("--e", type=int)
    mk["teichmuller"].add_argument("--d", type=int, required=True)
    for name in ("conjugates", "serre-check"):
        mk[name].add_argument("--kappa", type=int)
    mk["serre-check"].add_argument("--order", type=int)
    mk["serre-check"].add_argument("--exponent", type=int)
    mk["bernoulli"].add_argument("--k", type=int)
    mk["ap"].add_argument("--ell", type=int)
    for name in ("f-inverse", "sharp"):
        mk[name].add_argument("--newform", help="JSON file {N, weight, p, an}")
        mk[name].add_argument("--level", type=int)
    mk["sharp"].add_argument("--phi-poly", dest="phi_poly")
    mk["sharp"].add_argument("--kappa", dest="kappa_weight", type=int)
    mk["sharp"].add_argument("--kappa-prime", dest="kappa_prime", type=int)
    mk["hensel-root"].add_argument("--poly", help="coefficients from the constant term up")
    mk["hensel-root"].add_argument("--tau0")
    mk["hensel-root"].add_argument("--eisenstein-root", dest="eisenstein_root", action="store_true",
                                   default=None)
    return parser


def _resolve(ns, env):
    cfg = {}
    if ns.config:
        with open(ns.config) as fh:
            cfg = json.load(fh)
        if "ctx" in cfg:
            c = cfg.pop("ctx")
            cfg.setdefault("p", c.get("p"))
            cfg.setdefault("kind", c.get("kind"))
            if tuple(c.get("min_poly", (0, 1))) != (0, 1):
                cfg.setdefault("min_poly", ",".join(str(x) for x in c["min_poly"]))
            cfg.setdefault("prec", c.get("prec_M"))
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    env_prec = env.get("DELTA_PI_PREC")
    for key, value in vars(ns).items():
        if value is not None:
            continue
        if key in cfg:
            value = cfg[key]
        elif key == "prec":
            value = int(env_prec) if env_prec else DEFAULT_PREC
        else:
            value = DEFAULTS.get(key)
        setattr(ns, key, value)
    if isinstance(ns.min_poly, list):
        ns.min_poly = ",".join(str(x) for x in ns.min_poly)
    if isinstance(getattr(ns, "curve", None), dict):
        ns.curve = json.dumps(ns.curve)
    return ns


def dispatch(argv=None, env=None, out=None):
    """Run one subcommand; returns the exit code."""
    out = sys.stdout if out is None else out
    env = os.environ if env is None else env
    try:
        ns = build_parser().parse_args(argv)
        ns = _resolve(ns, env)
        handler = REGISTRY[ns.command][0]
        result = handler(ns)
    except UsageError as exc:
        out.write(dumps({"error": {"code": "usage", "module": "cli", "message": str(exc)}}))
        return EXIT_USAGE
    except DeltaPiError as exc:
        out.write(dumps({"error": exc.to_dict()}))
        return EXIT_PRECONDITION
    except (ValueError, ArithmeticError, OSError) as exc:
        out.write(dumps({"error": {"code": type(exc).__name__, "module": "cli", "message": str(exc)}}))
        return EXIT_PRECONDITION
    out.write(dumps(result))
    return EXIT_OK


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
