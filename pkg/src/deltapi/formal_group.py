"""Formal groups of elliptic curves, their logarithms, and jet-logarithms.

Everything up to the logarithm is exact arithmetic over Q (``Fraction``);
p-adic numbers only enter when the jet-logarithms are assembled in a context
and when logarithms are evaluated at points.

The formal group law is built geometrically (chord through two points of
the formal group, then the inverse), not as ``l^{-1}(l(T1) + l(T2))``, so the
identity ``l(F(T1, T2)) = l(T1) + l(T2)`` is a genuine check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadReduction, OutOfDomain, PrecisionExhausted
from .jets import JetSeries, phi_series
from .padic import PadicCtx, PadicNum, delta_pi, vp


# -- univariate truncated series over Q: lists c[0..N] -----------------------

def _mul(a, b, N):
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a[:N + 1]):
        if x:
            for j, y in enumerate(b[:N + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def _add(*series):
    N = min(len(s) for s in series) - 1
    return [sum((s[i] for s in series), Fraction(0)) for i in range(N + 1)]


def _scale(a, c):
    return [c * x for x in a]


def _inv(a, N):
    if a[0] == 0:
        raise ZeroDivisionError("series without constant term")
    out = [Fraction(0)] * (N + 1)
    out[0] = 1 / Fraction(a[0])
    for n in range(1, N + 1):
        s = sum((a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1)), Fraction(0))
        out[n] = -s * out[0]
    return out


def _deriv(a):
    return [i * a[i] for i in range(1, len(a))] + [Fraction(0)]


def _const(c, N):
    return [Fraction(c)] + [Fraction(0)] * N


def _t_pow(k, N):
    out = [Fraction(0)] * (N + 1)
    if k <= N:
        out[k] = Fraction(1)
    return out


# -- bivariate truncated series: dict (i, j) -> Fraction, total degree <= N ----

def _bmul(a, b, N):
    out = {}
    for (i1, j1), x in a.items():
        for (i2, j2), y in b.items():
            if i1 + i2 + j1 + j2 <= N:
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _badd(*terms):
    out = {}
    for t in terms:
        for k, v in t.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _bscale(a, c):
    return {k: c * v for k, v in a.items() if c * v}


def _bcompose(f, g, N):
    """f(g(T1, T2)) for univariate f and bivariate g without constant term."""
    out = {}
    for c in reversed(f[:N + 1]):
        out = _badd(_bmul(out, g, N), {(0, 0): c} if c else {})
    return out


def _binv(a, N):
    c0 = a.get((0, 0), 0)
    if not c0:
        raise ZeroDivisionError("bivariate series without constant term")
    rest = {k: -v / c0 for k, v in a.items() if k != (0, 0)}
    # 1/a = (1/c0) * sum rest^k
    out, power = {(0, 0): Fraction(1)}, {(0, 0): Fraction(1)}
    for _ in range(N):
        power = _bmul(power, rest, N)
        if not power:
            break
        out = _badd(out, power)
    return _bscale(out, 1 / Fraction(c0))


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0
    ctx: PadicCtx | None = None

    def __post_init__(self):
        if self.ctx is not None and self.ctx.kind == "unramified":
            raise ValueError("curves are taken over trivial or ramified contexts")

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def discriminant(self):
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def has_good_reduction(self, p):
        return self.discriminant % p != 0

    def to_dict(self):
        return dict(zip(("a1", "a2", "a3", "a4", "a6"), self.coefficients))

    @classmethod
    def from_dict(cls, d, ctx=None):
        return cls(*(int(d.get(k, 0)) for k in ("a1", "a2", "a3", "a4", "a6")), ctx=ctx)

    def on_curve(self, x, y, p):
        a1, a2, a3, a4, a6 = self.coefficients
        return (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0


CURVE_11A1 = WeierstrassCurve(0, -1, 1, -10, -20)


def weierstrass_w(curve, N):
    """w(t) = -1/y as a power series in t = -x/y, by Newton iteration on
    w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3."""
    a1, a2, a3, a4, a6 = (Fraction(c) for c in curve.coefficients)
    t = _t_pow(1, N)
    t2 = _t_pow(2, N)
    w = _t_pow(3, N)
    known = 3
    while True:
        w2 = _mul(w, w, N)
        rhs = _add(_t_pow(3, N), _scale(_mul(t, w, N), a1), _scale(_mul(t2, w, N), a2),
                   _scale(w2, a3), _scale(_mul(t, w2, N), a4), _scale(_mul(w2, w, N), a6))
        g = _add(w, _scale(rhs, -1))
        if not any(g):
            return w
        dg = _add(_const(1, N), _scale(t, -a1), _scale(t2, -a2), _scale(w, -2 * a3),
                  _scale(_mul(t, w, N), -2 * a4), _scale(w2, -3 * a6))
        w = _add(w, _scale(_mul(g, _inv(dg, N), N), -1))
        known *= 2
        if known > 4 * (N + 3):
            raise PrecisionExhausted("Newton iteration for w(t) did not settle", module="formal_group")


def invariant_differential(curve, N):
    """omega(t) with omega = omega(t) dt = dx / (2y + a1 x + a3)."""
    a1, a3 = Fraction(curve.a1), Fraction(curve.a3)
    w = weierstrass_w(curve, N + 3)
    W = w[3:] + [Fraction(0)] * 3            # w / t^3
    W = W[:N + 1]
    tW1 = [Fraction(0)] + _deriv(W)[:N]      # t * W'
    num = _add(_scale(W, 2), tW1)
    den = _add(_scale(W, 2), _scale(_mul(_t_pow(1, N), W, N), -a1),
               _scale(_mul(_t_pow(3, N), _mul(W, W, N), N), -a3))
    return _mul(num, _inv(den, N), N)


@dataclass(frozen=True)
class FormalGroupData:
    curve: WeierstrassCurve
    t_prec: int
    F: dict                       # (i, j) -> Fraction, total degree <= t_prec
    log_coeffs: tuple             # c_1, ..., c_{t_prec}
    w: tuple = field(repr=False, default=())

    def log_series(self):
        """[0, c_1, ..., c_N] as a univariate list."""
        return [Fraction(0)] + list(self.log_coeffs)

    def hazewinkel_numerators(self):
        """n * c_n, integral by Hazewinkel's theorem."""
        return [n * c for n, c in enumerate(self.log_coeffs, 1)]

    def is_log_integral(self, p):
        return all(a == 0 or vp(a, p) >= 0 for a in self.hazewinkel_numerators())

    def law_eval(self, x, y):
        """F(x, y) for p-adic points of positive valuation (truncated)."""
        ctx = x.ctx
        acc = ctx.zero(abs_prec=self.t_prec + 1)
        xp = [ctx.one()]
        yp = [ctx.one()]
        for _ in range(self.t_prec):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        for (i, j), c in sorted(self.F.items()):
            acc = acc + xp[i] * yp[j] * ctx.from_rational(c)
        return acc.add_bigoh(self.t_prec + 1)

    def double(self, x):
        return self.law_eval(x, x)

    def log_eval(self, x):
        """l(x) for v(x) >= 1, with a certified precision cap for the tail."""
        if x.valuation() < 1:
            raise OutOfDomain(f"logarithm needs a point of positive valuation, got {x}")
        ctx = x.ctx
        v = min(x.valuation(), x.abs_prec)
        acc = ctx.zero(abs_prec=x.abs_prec + 1)
        power = ctx.one()
        for n, c in enumerate(self.log_coeffs, 1):
            power = power * x
            if c:
                acc = acc + power * ctx.from_rational(c)
        return acc.add_bigoh(log_tail_bound(self.t_prec, v, ctx.p, ctx.e))


def log_tail_bound(t_prec, v, p, e):
    """min over n > t_prec of n*v - e*v_p(n): valuation floor of dropped
    terms c_n x^n when n*c_n is integral and v(x) = v.

    Scans the blocks [p^k, p^(k+1)); inside a block every value of v_p(n)
    first occurs within p^k of the block start.  Stops once the block lower
    bound p^k*v - e*k has passed the running minimum and is increasing.
    """
    best = math.inf
    k = 0
    while True:
        lo, hi = max(t_prec + 1, p ** k), p ** (k + 1) - 1
        if lo <= hi:
            if lo * v - e * k >= best and p ** k * (p - 1) * v >= e:
                return best
            for n in range(lo, min(hi, lo + p ** k) + 1):
                best = min(best, n * v - e * vp(n, p))
        k += 1


def formal_group_law(curve, t_prec, require_good_reduction=True):
    """F and l of the curve's formal group to total degree ``t_prec``."""
    if t_prec < 2:
        raise ValueError("t_prec must be >= 2")
    if curve.discriminant == 0:
        raise BadReduction("singular Weierstrass equation", module="formal_group")
    if require_good_reduction and curve.ctx is not None and not curve.has_good_reduction(curve.ctx.p):
        raise BadReduction(f"curve has bad reduction at {curve.ctx.p}", module="formal_group")
    N = t_prec
    a1, a2, a3, a4, a6 = (Fraction(c) for c in curve.coefficients)
    w = weierstrass_w(curve, N + 2)
    omega = invariant_differential(curve, N)
    log_coeffs = tuple(omega[n - 1] / n for n in range(1, N + 1))

    # chord through (t1, w(t1)) and (t2, w(t2)): w = lambda t + nu
    lam = {}
    for n in range(3, N + 2):
        A = w[n]
        if A:
            for j in range(n):
                if j + (n - 1 - j) <= N:
                    lam[(j, n - 1 - j)] = lam.get((j, n - 1 - j), 0) + A
    T1, T2 = {(1, 0): Fraction(1)}, {(0, 1): Fraction(1)}
    w1 = {(n, 0): w[n] for n in range(N + 1) if w[n]}
    nu = _badd(w1, _bscale(_bmul(lam, T1, N), -1))
    lam2 = _bmul(lam, lam, N)
    # substituting w = lam*t + nu into the equation for w gives a cubic in t
    # whose roots sum to -(t^2 coefficient)/(t^3 coefficient)
    num = _badd(_bscale(lam, -a1), _bscale(lam2, -a3), _bscale(nu, -a2),
                _bscale(_bmul(lam, nu, N), -2 * a4), _bscale(_bmul(lam2, nu, N), -3 * a6))
    den = _badd({(0, 0): Fraction(1)}, _bscale(lam, a2), _bscale(lam2, a4),
                _bscale(_bmul(lam2, lam, N), a6))
    t3 = _badd(_bscale(T1, -1), _bscale(T2, -1), _bmul(num, _binv(den, N), N))
    # inverse: i(t) = -t / (1 - a1 t - a3 w(t))
    inv_den = _add(_const(1, N), _scale(_t_pow(1, N), -a1), _scale(w[:N + 1], -a3))
    i_series = _scale(_mul(_t_pow(1, N), _inv(inv_den, N), N), -1)
    F = _bcompose(i_series, t3, N)
    return FormalGroupData(curve, t_prec, F, log_coeffs, tuple(w[:N + 1]))


def log_of_law(fg):
    """l(F(T1, T2)) as a bivariate series (for the linearization check)."""
    return _bcompose(fg.log_series(), fg.F, fg.t_prec)


def log_sum(fg):
    """l(T1) + l(T2) as a bivariate series."""
    out = {}
    for n, c in enumerate(fg.log_coeffs, 1):
        if c:
            out[(n, 0)] = out.get((n, 0), 0) + c
            out[(0, n)] = out.get((0, n), 0) + c
    return out


@dataclass(frozen=True)
class JetLog:
    n: int
    series: JetSeries     # variables dT, ..., d^n T (the q slot is T, set to 0)
    nu: int               # minimal nu >= 0 with pi^nu * series integral
    tail_bound: int       # valuation floor of the dropped (delta-degree > t_prec) part


def jet_log(n, fg, ctx):
    """L^n = (1/pi) l(phi^n(T)) at T = 0, for n in {1, 2}.

    The substitution T = 0 kills monomials containing T and keeps the
    delta-variables.  Delta-degrees are kept up to ``fg.t_prec``; since every
    monomial of phi^n(T)|_{T=0} has delta-degree >= 1, the power H^k has
    delta-degree >= k and the retained part is exact.
    """
    if n not in (1, 2):
        raise ValueError("jet order must be 1 or 2")
    D = fg.t_prec
    p = ctx.p
    Q = (D + 1) * p ** n
    T = JetSeries.variable(ctx, 0, Q, order=0, delta_deg=D)
    img = T
    for _ in range(n):
        img = phi_series(img)
    H = JetSeries(ctx, n, 0, D, {k: c for k, c in img.coeffs.items() if k[0] == 0})
    acc = JetSeries.zero(ctx, 0, n, D)
    power = None
    for k, c in enumerate(fg.log_coeffs, 1):
        power = H if power is None else power * H
        if c:
            acc = acc + power.scale(ctx.from_rational(c))
    series = acc.shift_pi(-1)
    vals = [c.val if c.prec else c.abs_prec for c in series.coeffs.values()]
    nu = max(0, -min(vals, default=0))
    return JetLog(n, series, nu, jet_log_tail_bound(D, p, ctx.e))


def jet_log_tail_bound(t_prec, p, e):
    """min over k > t_prec of k - 1 - e*v_p(k)."""
    return log_tail_bound(t_prec, 1, p, e) - 1


@dataclass(frozen=True)
class ValuationBoundReport:
    alpha_max: int
    p: int
    e: int
    violations: tuple
    min_slack: float
    min_valuation: int          # min over alpha of v_pi(pi^(alpha-1)/alpha)
    tail_increasing: bool

    @property
    def ok(self):
        return not self.violations


def valuation_bound_check(alpha_max, ctx=None, *, p=None, e=None):
    """Check v_pi(pi^(a-1)/a) >= a - 1 - e*log_p(a) for 1 <= a <= alpha_max.

    v_pi(pi^(a-1)/a) = a - 1 - e*v_p(a), so the inequality reduces to
    p^(v_p(a)) <= a, which is checked exactly in integers.
    """
    if ctx is not None:
        p, e = ctx.p, ctx.e
    if alpha_max < 1:
        raise ValueError("alpha_max must be >= 1")
    violations = []
    min_slack = math.inf
    min_val = None
    for a in range(1, alpha_max + 1):
        j = vp(a, p)
        v = a - 1 - e * j
        if p ** j > a:
            violations.append(a)
        min_slack = min(min_slack, e * (math.log(a, p) - j))
        min_val = v if min_val is None else min(min_val, v)
    # beyond alpha_max: for a in [p^k, p^(k+1)), v >= p^k - 1 - e*k, increasing
    # in k as soon as p^k (p - 1) >= e
    k = max(1, int(math.log(alpha_max, p)))
    tail_increasing = p ** k * (p - 1) >= e
    return ValuationBoundReport(alpha_max, p, e, tuple(violations), min_slack, min_val, tail_increasing)


def eval_jet_log(n, fg, x):
    """(1/pi) l(phi^n(x)) for a point x of positive valuation.

    phi^n(x) is built as x^p + pi*delta_pi(x), iterated.
    """
    if not isinstance(x, PadicNum) or x.valuation() < 1:
        raise OutOfDomain(f"eval_jet_log needs v(x) >= 1, got {x}")
    ctx = x.ctx
    X = x
    for _ in range(n):
        X = X ** ctx.p + delta_pi(X).shift(1)
    if X.is_zero():
        return ctx.big_oh(X.abs_prec - 1)
    return fg.log_eval(X).shift(-1)
