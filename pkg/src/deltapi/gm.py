"""The delta_pi-character of the multiplicative group.

    psi(x) = pi^m * sum_{n>=1} (-1)^(n-1) (pi^n / n) (delta_pi x / x^p)^n

Since phi(x) / x^p = 1 + pi * delta_pi(x) / x^p, this is pi^m times the
logarithm of phi(x)/x^p, which makes psi a homomorphism from units to the
additive group.  ``m`` is chosen minimal so that every term is integral.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAUnit
from .jets import JetSeries, delta_series
from .padic import PadicCtx, PadicNum, delta_pi, vp


def minimal_m(p, e):
    """max(0, max_n (e*v_p(n) - n)); only n = p^k can attain the max."""
    best, k = 0, 1
    while p ** k <= e * k + p:
        best = max(best, e * k - p ** k)
        k += 1
    return best


def term_valuation_bound(n, m, p, e):
    """Lower bound n + m - e*v_p(n) for v_pi(pi^(n+m)/n)."""
    return n + m - e * vp(n, p)


def series_cutoff(p, e, m, prec):
    """Smallest N with n + m - e*v_p(n) >= prec for every n > N."""
    # for n in [p^k, p^(k+1)): n - e*v_p(n) >= p^k - e*k, increasing in k once
    # p^k(p-1) >= e
    k = 0
    while not (p ** k - e * k + m >= prec and p ** k * (p - 1) >= e):
        k += 1
    bound = p ** k
    last_bad = 0
    for n in range(1, bound + 1):
        if term_valuation_bound(n, m, p, e) < prec:
            last_bad = n
    return last_bad


@dataclass(frozen=True)
class GmPsiParams:
    ctx: PadicCtx
    m: int
    series_cutoff: int

    @classmethod
    def for_ctx(cls, ctx):
        m = minimal_m(ctx.p, ctx.e)
        return cls(ctx, m, series_cutoff(ctx.p, ctx.e, m, ctx.prec))

    @property
    def tail_valuation(self):
        """Every dropped term has valuation at least this."""
        return self.ctx.prec

    def coefficient(self, n):
        """(-1)^(n-1) pi^(n+m) / n."""
        c = (self.ctx.one() / self.ctx.from_int(n)).shift(n + self.m)
        return c if n % 2 else -c


def psi_gm(x, params=None):
    if params is None:
        params = GmPsiParams.for_ctx(x.ctx)
    if not isinstance(x, PadicNum) or not x.is_unit():
        raise NotAUnit(f"psi is defined on units, got {x}", module="gm")
    y = delta_pi(x) / x ** x.ctx.p
    acc = x.ctx.zero(abs_prec=params.tail_valuation)
    power = x.ctx.one()
    for n in range(1, params.series_cutoff + 1):
        power = power * y
        acc = acc + power * params.coefficient(n)
    return acc.add_bigoh(params.tail_valuation)


def psi_gm_on_series(x, params=None):
    """psi applied in the jet-series ring; the output has order x.order + 1.

    Coefficients are capped at the tail certificate; monomials that never
    appear are exact zeros up to that same bound.
    """
    if params is None:
        params = GmPsiParams.for_ctx(x.ctx)
    if not isinstance(x, JetSeries) or not x.is_unit():
        raise NotAUnit("psi needs a series with unit constant term", module="gm")
    p = x.ctx.p
    y = delta_series(x) * (x ** p).inverse()
    acc = JetSeries.zero(x.ctx, y.q_prec, y.order, y.delta_deg)
    power = None
    for n in range(1, params.series_cutoff + 1):
        power = y if power is None else power * y
        acc = acc + power.scale(params.coefficient(n))
    cap = params.tail_valuation
    return JetSeries(acc.ctx, acc.order, acc.q_prec, acc.delta_deg,
                     {k: c.add_bigoh(cap) for k, c in acc.coeffs.items()})
