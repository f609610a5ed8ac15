"""Canonical JSON forms for contexts, p-adic numbers and jet series."""

from __future__ import annotations

import json
from fractions import Fraction

from .jets import JetSeries
from .padic import PadicCtx, PadicNum, parse_padic


def padic_to_str(x):
    return str(x)


def series_to_json(s):
    """List of {monomial: {q, dq}, coeff} sorted by (a, b1, ..., bn)."""
    return [{"monomial": {"q": k[0], "dq": list(k[1:])}, "coeff": padic_to_str(c)}
            for k, c in s.items()]


def series_from_json(ctx, data, order, q_prec, delta_deg):
    coeffs = {}
    for item in data:
        m = item["monomial"]
        key = (m["q"],) + tuple(m.get("dq", ()))
        coeffs[key] = parse_padic(ctx, item["coeff"])
    return JetSeries(ctx, order, q_prec, delta_deg, coeffs)


def series_document(s):
    return {
        "ctx": s.ctx.to_dict(),
        "order": s.order,
        "q_prec": s.q_prec,
        "delta_deg": s.delta_deg,
        "terms": series_to_json(s),
    }


def fraction_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _default(obj):
    if isinstance(obj, PadicNum):
        return padic_to_str(obj)
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, JetSeries):
        return series_document(obj)
    if isinstance(obj, PadicCtx):
        return obj.to_dict()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """Deterministic JSON text (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(obj, default=_default, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
