"""Truncated delta-Fourier expansion ring K_pi((q))[dq, d2q, ...].

A :class:`JetSeries` is a sparse map from monomials to :class:`PadicNum`
coefficients.  A monomial ``q^a (dq)^b1 ... (d^n q)^bn`` is stored as the
flat key ``(a, b1, ..., bn)``; ``n`` is the jet order of the series.

Two truncations are in force:

* q-adic: every monomial with ``a <= q_prec`` is exactly known;
* delta-degree: monomials with ``b1 + ... + bn > delta_deg`` are dropped.

The delta-degree truncation is an ideal stable under the Frobenius action, so
it commutes with every operation here.  The q-adic one is not (``phi(q)``
contains ``pi*dq``, of q-degree 0), so each operation recomputes a sound
``q_prec`` for its output instead of trusting the input's.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import NonDivisible, OrderOverflow, PrecisionExhausted
from .padic import PadicCtx, PadicNum, frobenius

MAX_ORDER = 4


def default_delta_deg(order):
    return 2 * order + 2


def _binom(a, j):
    """Generalized binomial coefficient; valid for negative ``a``."""
    if a >= 0:
        return comb(a, j)
    num = 1
    for i in range(j):
        num *= a - i
    den = 1
    for i in range(2, j + 1):
        den *= i
    return num // den


def _pad(key, order):
    return key + (0,) * (order + 1 - len(key))


@dataclass(frozen=True, eq=False)
class JetSeries:
    ctx: PadicCtx
    order: int
    q_prec: int
    delta_deg: int
    coeffs: dict

    __hash__ = None

    def __post_init__(self):
        clean = {}
        for key, c in self.coeffs.items():
            key = _pad(tuple(key), self.order)
            if len(key) != self.order + 1:
                raise ValueError(f"monomial {key} has the wrong jet order")
            if key[0] > self.q_prec or sum(key[1:]) > self.delta_deg:
                continue
            if any(b < 0 for b in key[1:]):
                raise ValueError("negative exponent on a delta variable")
            if not isinstance(c, PadicNum):
                c = self.ctx.from_rational(c)
            clean[key] = c
        object.__setattr__(self, "coeffs", clean)
        if self.q_prec < 0:
            raise PrecisionExhausted("no q-adic digit can be guaranteed", module="jets")
        if clean and min(k[0] for k in clean) < -self.q_prec:
            raise PrecisionExhausted("Laurent tail exceeds the q-precision bound", module="jets")

    # constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, ctx, q_prec, order=0, delta_deg=None):
        return cls(ctx, order, q_prec, default_delta_deg(order) if delta_deg is None else delta_deg, {})

    @classmethod
    def constant(cls, ctx, c, q_prec, order=0, delta_deg=None):
        return cls(ctx, order, q_prec, default_delta_deg(order) if delta_deg is None else delta_deg,
                   {(0,) * (order + 1): ctx(c)})

    @classmethod
    def variable(cls, ctx, i, q_prec, order=None, delta_deg=None):
        """q for i = 0, otherwise the i-th delta variable d^i q."""
        order = max(i, 0 if order is None else order)
        key = [0] * (order + 1)
        key[0 if i == 0 else i] = 1
        return cls(ctx, order, q_prec, default_delta_deg(order) if delta_deg is None else delta_deg,
                   {tuple(key): ctx.one()})

    @classmethod
    def from_qexp(cls, ctx, coeffs, q_prec=None, start=0, delta_deg=None, order=0):
        """sum c_n q^(start+n) for a coefficient list (ints, Fractions, PadicNum)."""
        if q_prec is None:
            q_prec = start + len(coeffs) - 1
        data = {}
        for n, c in enumerate(coeffs):
            if start + n > q_prec:
                break
            if isinstance(c, PadicNum) or c != 0:
                data[(start + n,) + (0,) * order] = c
        return cls(ctx, order, q_prec, default_delta_deg(order) if delta_deg is None else delta_deg, data)

    def with_order(self, order):
        if order < self.order:
            raise ValueError("cannot lower the jet order")
        return JetSeries(self.ctx, order, self.q_prec, self.delta_deg,
                         {_pad(k, order): c for k, c in self.coeffs.items()})

    def truncate(self, q_prec=None, delta_deg=None):
        return JetSeries(self.ctx, self.order,
                         self.q_prec if q_prec is None else min(q_prec, self.q_prec),
                         self.delta_deg if delta_deg is None else min(delta_deg, self.delta_deg),
                         self.coeffs)

    # queries ----------------------------------------------------------------------

    def __getitem__(self, key):
        key = _pad(tuple(key) if isinstance(key, tuple) else (key,), self.order)
        if key in self.coeffs:
            return self.coeffs[key]
        return self.ctx.zero()

    def items(self):
        return sorted(self.coeffs.items())

    def low(self):
        """Lowest q-exponent present (0 for the empty series)."""
        return min((k[0] for k in self.coeffs), default=0)

    def valuation(self):
        """Minimum pi-adic valuation over all coefficients."""
        return min((c.valuation() for c in self.coeffs.values()), default=float("inf"))

    def max_delta_degree(self):
        return max((sum(k[1:]) for k in self.coeffs), default=0)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs.values())

    def constant_term(self):
        return self[(0,)]

    def is_unit(self):
        return self.low() >= 0 and self.constant_term().is_unit()

    def variables_used(self):
        """Indices i such that d^i q (i=0: q) occurs with a nonzero exponent."""
        used = set()
        for k in self.coeffs:
            for i, b in enumerate(k):
                if b:
                    used.add(i)
        return used

    # arithmetic -------------------------------------------------------------------

    def _align(self, other):
        if isinstance(other, JetSeries):
            if other.ctx != self.ctx:
                raise ValueError("series over different contexts")
            order = max(self.order, other.order)
            return self.with_order(order), other.with_order(order)
        other = JetSeries.constant(self.ctx, other, self.q_prec, self.order, self.delta_deg)
        return self, other

    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return JetSeries(a.ctx, a.order, min(a.q_prec, b.q_prec), min(a.delta_deg, b.delta_deg), out)

    __radd__ = __add__

    def __neg__(self):
        return JetSeries(self.ctx, self.order, self.q_prec, self.delta_deg,
                         {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.ctx(c)
        return JetSeries(self.ctx, self.order, self.q_prec, self.delta_deg,
                         {k: v * c for k, v in self.coeffs.items()})

    def shift_pi(self, n):
        """Multiply every coefficient by pi^n (exact; n may be negative)."""
        return JetSeries(self.ctx, self.order, self.q_prec, self.delta_deg,
                         {k: c.shift(n) for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, JetSeries):
            if isinstance(other, (int, Fraction, PadicNum)):
                return self.scale(other)
            return NotImplemented
        a, b = self._align(other)
        q_prec = min(a.q_prec + min(b.low(), 0), b.q_prec + min(a.low(), 0))
        dd = min(a.delta_deg, b.delta_deg)
        out = {}
        bitems = list(b.coeffs.items())
        for ka, ca in a.coeffs.items():
            da = sum(ka[1:])
            for kb, cb in bitems:
                qa = ka[0] + kb[0]
                if qa > q_prec or da + sum(kb[1:]) > dd:
                    continue
                key = tuple(x + y for x, y in zip(ka, kb))
                prod = ca * cb
                out[key] = out[key] + prod if key in out else prod
        return JetSeries(a.ctx, a.order, q_prec, dd, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = JetSeries.constant(self.ctx, 1, self.q_prec, self.order, self.delta_deg)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        """Inverse of a power series with unit constant term (Newton iteration)."""
        if self.low() < 0 or not self.constant_term().is_unit():
            from .errors import NotAUnit
            raise NotAUnit("series has no unit constant term", module="jets")
        y = JetSeries.constant(self.ctx, self.constant_term().inverse(), self.q_prec,
                               self.order, self.delta_deg)
        # error 1 - s*y lies in the ideal of positive total (q, delta) degree,
        # which vanishes beyond q_prec + delta_deg
        reach = 1
        while reach <= self.q_prec + self.delta_deg:
            y = y * (2 - self * y)
            reach *= 2
        return y

    def __truediv__(self, other):
        if isinstance(other, JetSeries):
            return self * other.inverse()
        return self.scale(self.ctx(1) / self.ctx(other))

    def __eq__(self, other):
        if not isinstance(other, JetSeries):
            other = JetSeries.constant(self.ctx, other, self.q_prec, self.order, self.delta_deg)
        return (self - other).is_zero()

    def __repr__(self):
        terms = " + ".join(f"({c}){_mono_str(k)}" for k, c in self.items()[:8])
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"JetSeries[{terms or '0'}{more} ; q<={self.q_prec}, ddeg<={self.delta_deg}]"

    # Frobenius action and the pi-derivation ---------------------------------

    def phi(self, max_order=MAX_ORDER):
        return phi_series(self, max_order)

    def delta(self, max_order=MAX_ORDER):
        return delta_series(self, max_order)


def _mono_str(key):
    parts = []
    if key[0]:
        parts.append("q" if key[0] == 1 else f"q^{key[0]}")
    for i, b in enumerate(key[1:], 1):
        if b:
            name = "dq" if i == 1 else f"d{i}q"
            parts.append(name if b == 1 else f"{name}^{b}")
    return "*" + "*".join(parts) if parts else ""


def _var_image(p, i, e, jmax, order_out):
    """phi(x_i)^e as (int coefficient, pi exponent, key) triples.

    x_0 = q and x_i = d^i q; phi(x_i) = x_i^p + pi * x_{i+1}.
    """
    out = []
    for j in range(0, jmax + 1):
        c = _binom(e, j)
        if c == 0:
            if e >= 0 and j > e:
                break
            continue
        key = [0] * (order_out + 1)
        key[i] += p * (e - j)
        key[i + 1] += j
        out.append((c, j, key))
    return out


def phi_series(s, max_order=MAX_ORDER):
    """Apply phi: coefficients by the Frobenius lift, variables by
    phi(d^i q) = (d^i q)^p + pi d^(i+1) q.  Raises the jet order by one."""
    if s.order + 1 > max_order:
        raise OrderOverflow(f"jet order {s.order + 1} exceeds the maximum {max_order}")
    ctx, p, D = s.ctx, s.ctx.p, s.delta_deg
    order = s.order + 1
    # unknown monomials (a > q_prec) only reach q-degrees >= p(q_prec + 1 - D)
    q_prec = min(s.q_prec, p * (s.q_prec + 1 - D) - 1)
    if q_prec < 0:
        raise PrecisionExhausted("q-precision too small for the delta-degree bound", module="jets")
    ints = {}

    def as_padic(n):
        if n not in ints:
            ints[n] = ctx.from_int(n)
        return ints[n]

    out = {}
    for key, c in s.coeffs.items():
        fc = frobenius(c)
        # images of the delta variables, multiplied together
        partial = [(1, 0, [0] * (order + 1))]
        for i in range(1, s.order + 1):
            b = key[i]
            if not b:
                continue
            new = []
            for (c1, j1, k1) in partial:
                for (c2, j2, k2) in _var_image(p, i, b, D, order):
                    k = [x + y for x, y in zip(k1, k2)]
                    if sum(k[1:]) > D:
                        continue
                    new.append((c1 * c2, j1 + j2, k))
            partial = new
        a = key[0]
        if a:
            qimg = _var_image(p, 0, a, D, order)
            new = []
            for (c1, j1, k1) in partial:
                for (c2, j2, k2) in qimg:
                    k = [x + y for x, y in zip(k1, k2)]
                    if k[0] > q_prec or sum(k[1:]) > D:
                        continue
                    new.append((c1 * c2, j1 + j2, k))
            partial = new
        for (n, j, k) in partial:
            if k[0] > q_prec:
                continue
            term = (fc * as_padic(n)).shift(j)
            k = tuple(k)
            out[k] = out[k] + term if k in out else term
    return JetSeries(ctx, order, q_prec, D, out)


def delta_series(s, max_order=MAX_ORDER):
    """(phi(s) - s^p) / pi, raising the order by one."""
    for k, c in s.coeffs.items():
        if c.prec and c.val < 0:
            raise NonDivisible(f"coefficient of {k} is not integral", module="jets")
    num = phi_series(s, max_order) - s ** s.ctx.p
    _check_divisible(num)
    return num.shift_pi(-1)


def _check_divisible(s):
    for k, c in s.coeffs.items():
        if c.prec and c.val < 1:
            raise NonDivisible(f"coefficient of {k} is not divisible by pi: {c}", module="jets")


def c_pi_series(s, t):
    p = s.ctx.p
    num = s ** p + t ** p - (s + t) ** p
    _check_divisible(num)
    return num.shift_pi(-1)


def compare_mod_pi_power(s, t):
    """Largest k such that s - t has every coefficient of valuation >= k.

    Capped by the absolute precision of the difference's coefficients (and by
    the context precision when the difference has no stored coefficients).
    """
    d = s - t
    if not d.coeffs:
        return d.ctx.prec
    k = min(c.abs_prec if c.is_zero() else c.val for c in d.coeffs.values())
    cap = min(c.abs_prec for c in d.coeffs.values())
    return min(k, cap)


@dataclass(frozen=True)
class PhiPoly:
    """sum a_i phi^i, an element of K_pi[phi] (or W = Z[phi]).

    Coefficients may be ints, Fractions or PadicNum values.  Multiplication is
    the twisted one, ``(a phi^i)(b phi^j) = a phi^i(b) phi^(i+j)``.
    """

    coeffs: tuple = (1,)

    def __post_init__(self):
        c = list(self.coeffs) or [0]
        while len(c) > 1 and _is_zero(c[-1]):
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if not (len(self.coeffs) == 1 and _is_zero(self.coeffs[0])) else -1

    def is_zero(self):
        return self.degree < 0

    @classmethod
    def phi(cls):
        return cls((0, 1))

    @classmethod
    def ordinary_preset(cls, ap, p):
        """(phi^2 - a_p phi + p) / p."""
        return cls((Fraction(1), Fraction(-ap, p), Fraction(1, p)))

    @classmethod
    def parse(cls, text):
        """Comma-separated coefficients a_0, a_1, ... (rationals allowed)."""
        return cls(tuple(Fraction(x.strip()) for x in text.split(",")))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PhiPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return PhiPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PhiPoly):
            return PhiPoly(tuple(x * other for x in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * _frob_n(b, i)
        return PhiPoly(tuple(out))

    def __rmul__(self, other):
        return PhiPoly(tuple(other * x for x in self.coeffs))

    def to_list(self):
        return [str(c) for c in self.coeffs]

    def __str__(self):
        return ",".join(self.to_list())


def _is_zero(c):
    return c.is_zero() if isinstance(c, PadicNum) else c == 0


def _frob_n(c, n):
    if not isinstance(c, PadicNum):
        return c
    for _ in range(n):
        c = frobenius(c)
    return c


def apply_phi_poly(P, g, max_order=MAX_ORDER):
    """P(phi) g for a JetSeries or PadicNum ``g``."""
    if isinstance(g, PadicNum):
        acc = g.ctx.zero()
        x = g
        for i, a in enumerate(P.coeffs):
            if i:
                x = frobenius(x)
            acc = acc + x * g.ctx(a)
        return acc
    deg = max(P.degree, 0)
    if g.order + deg > max_order:
        raise OrderOverflow(f"jet order {g.order + deg} exceeds the maximum {max_order}")
    images = [g]
    for _ in range(deg):
        images.append(phi_series(images[-1], max_order))
    out = JetSeries.zero(g.ctx, images[-1].q_prec, g.order + deg, g.delta_deg)
    for a, img in zip(P.coeffs, images):
        if _is_zero(a):
            out = out + JetSeries.zero(g.ctx, img.q_prec, img.order, img.delta_deg)
            continue
        out = out + img.scale(a)
    return out


def weight_power(x, w):
    """x^w = prod phi^i(x)^(a_i) for w = sum a_i phi^i with integer a_i."""
    result = None
    y = x
    for i, a in enumerate(w.coeffs):
        if i:
            y = y.phi() if isinstance(y, JetSeries) else frobenius(y)
        term = y ** int(a)
        result = term if result is None else result * term
    return result
