"""Truncated arithmetic in R_pi and its fraction field K_pi.

A :class:`PadicCtx` fixes the prime ``p``, a monic defining polynomial in
``t`` and the number of significant pi-adic digits carried.  Three kinds of
context are supported, never mixed:

* ``trivial``    -- Z_p itself, ``pi = p``;
* ``ramified``   -- Z_p[t]/(m) with m Eisenstein, ``pi = t``, ``e = deg m``;
* ``unramified`` -- Z_p[t]/(m) with m irreducible mod p, ``pi = p``.

Elements are :class:`PadicNum` values ``pi^val * unit`` where the unit is
known modulo ``pi^prec`` (capped relative precision).  Internally the unit is
a tuple of integer coefficients in the basis ``1, t, ..., t^(d-1)``; because
the pi-adic valuation of ``sum a_i t^i`` is ``min(e*v_p(a_i) + i)`` in the
ramified case (and ``min v_p(a_i)`` otherwise), reduction modulo ``pi^k`` is
a coefficient-wise reduction and the representation is canonical.

The Frobenius lift is the identity on trivial and ramified contexts and the
unique lift of ``x -> x^p`` on unramified ones.  ``delta_pi`` and ``c_pi``
implement the Fermat quotient operator and its addition cocycle.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, NonDivisible, NotAUnit

KINDS = ("trivial", "ramified", "unramified")


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def vp(n, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- polynomials over F_p, used only to validate unramified contexts ---------

def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, b, p):
    a = _fp_trim(x % p for x in a)
    b = _fp_trim(x % p for x in b)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _fp_trim(a)
    return a


def _fp_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _fp_mod(out, m, p)


def _fp_gcd(a, b, p):
    a, b = _fp_trim(x % p for x in a), _fp_trim(x % p for x in b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def irreducible_mod_p(poly, p):
    """Rabin-style test: gcd(t^(p^i) - t, m) = 1 for i <= deg/2."""
    m = _fp_trim(c % p for c in poly)
    d = len(m) - 1
    if d < 1:
        return False
    x = [0, 1]
    power = x
    for _ in range(d // 2):
        # power <- power^p mod m
        result = [1]
        base, e = power, p
        while e:
            if e & 1:
                result = _fp_mulmod(result, base, m, p)
            base = _fp_mulmod(base, base, m, p)
            e >>= 1
        power = result
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] -= 1
        g = _fp_gcd(m, diff, p)
        if len(g) > 1:
            return False
    return True


@dataclass(frozen=True)
class PadicCtx:
    """Ambient ring descriptor.  ``min_poly`` lists coefficients low -> high."""

    p: int
    min_poly: tuple = (0, 1)
    kind: str = "trivial"
    prec: int = 20

    def __post_init__(self):
        object.__setattr__(self, "min_poly", tuple(int(c) for c in self.min_poly))
        p, m = self.p, self.min_poly
        if not is_prime(p) or p < 5:
            raise ValueError(f"p must be a prime >= 5, got {p}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.prec < 1:
            raise ValueError("prec must be >= 1")
        if len(m) < 2 or m[-1] != 1:
            raise ValueError("min_poly must be monic of degree >= 1")
        if self.kind != "trivial" and len(m) < 3:
            raise ValueError("degree-1 extensions are the trivial context")
        if self.kind == "trivial":
            if m != (0, 1):
                raise ValueError("trivial context uses min_poly (0, 1)")
        elif self.kind == "ramified":
            if any(c % p for c in m[:-1]) or m[0] % (p * p) == 0:
                raise ValueError(f"{m} is not Eisenstein at {p}")
        elif not irreducible_mod_p(m, p):
            raise ValueError(f"{m} is not irreducible mod {p}")

    # constructors ---------------------------------------------------------

    @classmethod
    def zp(cls, p, prec=20):
        return cls(p, (0, 1), "trivial", prec)

    @classmethod
    def ramified(cls, p, min_poly, prec=20):
        return cls(p, tuple(min_poly), "ramified", prec)

    @classmethod
    def unramified(cls, p, min_poly, prec=20):
        return cls(p, tuple(min_poly), "unramified", prec)

    def with_prec(self, prec):
        return replace(self, prec=prec)

    def to_dict(self):
        return {"p": self.p, "min_poly": list(self.min_poly),
                "kind": self.kind, "prec_M": self.prec}

    @classmethod
    def from_dict(cls, d):
        kind = d.get("kind", "trivial")
        min_poly = d.get("min_poly", (0, 1))
        return cls(int(d["p"]), tuple(min_poly), kind, int(d.get("prec_M", d.get("prec", 20))))

    # invariants of the extension -----------------------------------------

    @property
    def degree(self):
        return len(self.min_poly) - 1

    @property
    def e(self):
        return self.degree if self.kind == "ramified" else 1

    @property
    def f(self):
        return self.degree if self.kind == "unramified" else 1

    # raw coefficient-tuple arithmetic ------------------------------------
    # A "raw" element is an integral tuple of length ``degree`` read modulo
    # pi^k for some k the caller keeps track of.

    def _modulus(self, k, i):
        if k <= 0:
            return 1
        if self.kind == "ramified":
            return self.p ** max(0, -(-(k - i) // self.e))
        return self.p ** k

    def _reduce(self, a, k):
        return tuple(c % self._modulus(k, i) for i, c in enumerate(a))

    def _zero(self):
        return (0,) * self.degree

    def _one(self):
        return (1,) + (0,) * (self.degree - 1)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        out = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        m = self.min_poly
        for k in range(2 * d - 2, d - 1, -1):
            c = out[k]
            if c:
                out[k] = 0
                for i in range(d):
                    out[k - d + i] -= c * m[i]
        return tuple(out[:d])

    def _scale(self, a, n):
        return tuple(n * x for x in a)

    def _valuation(self, a, k):
        """pi-adic valuation of raw ``a`` known mod pi^k, capped at k."""
        a = self._reduce(a, k)
        best = k
        for i, c in enumerate(a):
            if c:
                if self.kind == "ramified":
                    best = min(best, self.e * vp(c, self.p) + i)
                else:
                    best = min(best, vp(c, self.p))
        return best

    def _pi_pow(self, n):
        if self.kind != "ramified":
            return (self.p ** n,) + (0,) * (self.degree - 1)
        return _ramified_pi_pow(self, n)

    def _div_pi(self, a, k):
        """Exact division by pi of raw ``a`` (valuation >= 1) known mod pi^k."""
        p = self.p
        if self.kind != "ramified":
            if any(c % p for c in a):
                raise NonDivisible("coefficient not divisible by p")
            return self._reduce(tuple(c // p for c in a), k - 1)
        # x / t = -(x * g) / m_0 with g = (m(t) - m_0) / t
        m = self.min_poly
        y = self._mul(a, m[1:])
        if any(c % p for c in y):
            raise NonDivisible("element has valuation 0")
        inv_u = pow(m[0] // p, -1, self._modulus(k, 0))
        return self._reduce(tuple(-(c // p) * inv_u for c in y), k - 1)

    def _residue_inverse(self, a):
        """Inverse of a unit modulo pi (as a raw tuple)."""
        p = self.p
        if self.kind != "unramified":
            return (pow(a[0] % p, -1, p),) + (0,) * (self.degree - 1)
        # residue field has p^f elements
        result, base, e = self._one(), self._reduce(a, 1), p ** self.f - 2
        while e:
            if e & 1:
                result = self._reduce(self._mul(result, base), 1)
            base = self._reduce(self._mul(base, base), 1)
            e >>= 1
        return result

    def _unit_inverse(self, a, k):
        """Newton iteration y <- y(2 - a y) for a unit known mod pi^k."""
        y = self._residue_inverse(a)
        two = self._scale(self._one(), 2)
        known = 1
        while known < k:
            known = min(2 * known, k)
            y = self._reduce(self._mul(y, self._sub(two, self._mul(a, y))), known)
        return self._reduce(y, k)

    # element construction --------------------------------------------------

    def _from_raw(self, a, k, shift=0):
        """The element pi^shift * a where raw ``a`` is known modulo pi^k."""
        a = self._reduce(a, k)
        w = self._valuation(a, k)
        if w >= k:
            return PadicNum(self, shift + k, self._zero(), 0)
        if w:
            if self.kind != "ramified":
                a = tuple(c // self.p ** w for c in a)
            else:
                kk = k
                for _ in range(w):
                    a = self._div_pi(a, kk)
                    kk -= 1
        rel = min(k - w, self.prec)
        return PadicNum(self, shift + w, self._reduce(a, rel), rel)

    def from_int(self, n, prec=None):
        n = int(n)
        if n == 0:
            return self.zero()
        prec = self.prec if prec is None else prec
        v = vp(n, self.p) * self.e
        raw = (n,) + (0,) * (self.degree - 1)
        return self._from_raw(raw, v + prec)

    def from_rational(self, x, prec=None):
        x = Fraction(x)
        if x.denominator == 1:
            return self.from_int(x.numerator, prec)
        return self.from_int(x.numerator, prec) / self.from_int(x.denominator, prec)

    def from_coeffs(self, coeffs, prec=None):
        """Element sum c_i t^i for integer coefficients c_i."""
        coeffs = tuple(int(c) for c in coeffs) + (0,) * (self.degree - len(coeffs))
        if len(coeffs) != self.degree:
            raise ValueError("too many coefficients for this context")
        prec = self.prec if prec is None else prec
        if not any(coeffs):
            return self.zero()
        k = self._valuation(coeffs, _raw_val_bound(self, coeffs)) + prec
        return self._from_raw(coeffs, k)

    def __call__(self, x):
        if isinstance(x, PadicNum):
            if x.ctx != self:
                if x.ctx.with_prec(self.prec) != self:
                    raise ValueError("element belongs to a different context")
                return PadicNum(self, x.val, x.unit, min(x.prec, self.prec))
            return x
        if isinstance(x, (tuple, list)):
            return self.from_coeffs(x)
        if isinstance(x, str):
            return parse_padic(self, x)
        return self.from_rational(x)

    def zero(self, abs_prec=None):
        return PadicNum(self, self.prec if abs_prec is None else abs_prec, self._zero(), 0)

    def one(self):
        return PadicNum(self, 0, self._reduce(self._one(), self.prec), self.prec)

    def uniformizer(self):
        return PadicNum(self, 1, self._reduce(self._one(), self.prec), self.prec)

    def gen(self):
        """The generator t of the extension (equal to 0 in the trivial context)."""
        if self.kind == "trivial":
            return self.zero()
        return self.from_coeffs((0, 1))

    def big_oh(self, k):
        """The zero element O(pi^k)."""
        return PadicNum(self, k, self._zero(), 0)

    def random_element(self, rng, min_val=0, max_val=0):
        """Uniform random element with valuation in [min_val, max_val]."""
        v = rng.randint(min_val, max_val)
        while True:
            raw = tuple(rng.randrange(self._modulus(self.prec, i)) for i in range(self.degree))
            if self._valuation(raw, self.prec) == 0:
                return PadicNum(self, v, self._reduce(raw, self.prec), self.prec)

    def teichmuller_lift(self, d):
        from .characters import teichmuller
        return teichmuller(d, self)


def _raw_val_bound(ctx, coeffs):
    # any k exceeding the true valuation works for locating it
    return ctx.e * max(vp(c, ctx.p) for c in coeffs if c) + ctx.degree + 1


@lru_cache(maxsize=None)
def _ramified_pi_pow(ctx, n):
    a = ctx._one()
    t = (0, 1) + (0,) * (ctx.degree - 2)
    for _ in range(n):
        a = ctx._mul(a, t)
    return a


@lru_cache(maxsize=None)
def _frobenius_of_t(ctx, k):
    """Root of min_poly congruent to t^p mod p, known mod p^k (unramified)."""
    p, m = ctx.p, ctx.min_poly
    # residue guess t^p
    theta = ctx._one()
    t = (0, 1) + (0,) * (ctx.degree - 2)
    for _ in range(p):
        theta = ctx._reduce(ctx._mul(theta, t), 1)

    def ev(poly, x):
        acc = ctx._zero()
        for c in reversed(poly):
            acc = ctx._add(ctx._mul(acc, x), (c,) + (0,) * (ctx.degree - 1))
        return acc

    dm = tuple(i * c for i, c in enumerate(m))[1:]
    known = 1
    while known < k:
        known = min(2 * known, k)
        fx = ev(m, theta)
        dfx = ctx._unit_inverse(ctx._reduce(ev(dm, theta), known), known)
        theta = ctx._reduce(ctx._sub(theta, ctx._mul(fx, dfx)), known)
    return theta


@dataclass(frozen=True, eq=False)
class PadicNum:
    """``pi^val * unit`` with the unit known modulo ``pi^prec``.

    ``prec == 0`` marks the zero element ``O(pi^val)``.
    """

    ctx: PadicCtx
    val: int
    unit: tuple
    prec: int

    __hash__ = None

    # basic queries ----------------------------------------------------------

    @property
    def abs_prec(self):
        return self.val + self.prec

    def is_zero(self):
        return self.prec == 0

    def valuation(self):
        return math.inf if self.prec == 0 else self.val

    def is_unit(self):
        return self.prec > 0 and self.val == 0

    def _raw(self, base, k):
        """Raw tuple of pi^(val-base)*unit, reduced mod pi^k (needs val >= base)."""
        if self.prec == 0 or k <= self.val - base:
            return self.ctx._zero()
        a = self.unit
        shift = self.val - base
        if shift:
            a = self.ctx._mul(a, self.ctx._pi_pow(shift))
        return self.ctx._reduce(a, k)

    def add_bigoh(self, k):
        """Cap the absolute precision at pi^k."""
        if k >= self.abs_prec:
            return self
        if self.prec == 0 or k <= self.val:
            return self.ctx.big_oh(min(k, self.val) if self.prec == 0 else k)
        rel = k - self.val
        return PadicNum(self.ctx, self.val, self.ctx._reduce(self.unit, rel), rel)

    def shift(self, n):
        """Multiply by pi^n (exact)."""
        return PadicNum(self.ctx, self.val + n, self.unit, self.prec)

    # ring operations -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNum):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("mixing elements of different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        base = min(self.val, other.val)
        k = min(self.abs_prec, other.abs_prec) - base
        if k <= 0:
            return ctx.big_oh(base + k)
        raw = ctx._add(self._raw(base, k), other._raw(base, k))
        return ctx._from_raw(raw, k, base)

    __radd__ = __add__

    def __neg__(self):
        if self.prec == 0:
            return self
        return PadicNum(self.ctx, self.val, self.ctx._reduce(self.ctx._scale(self.unit, -1), self.prec), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if self.prec == 0 or other.prec == 0:
            return ctx.big_oh(self.val + other.val)
        rel = min(self.prec, other.prec)
        return PadicNum(ctx, self.val + other.val,
                        ctx._reduce(ctx._mul(self.unit, other.unit), rel), rel)

    __rmul__ = __mul__

    def inverse(self):
        if self.prec == 0:
            raise DivisionByZero("inverting an element indistinguishable from 0")
        unit = self.ctx._unit_inverse(self.unit, self.prec)
        return PadicNum(self.ctx, -self.val, unit, self.prec)

    def unit_inverse(self):
        """Inverse inside R_pi; requires valuation 0."""
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit", module="padic")
        return self.inverse()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.ctx.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    # lifts and printing ------------------------------------------------------

    def coefficients(self):
        """Canonical coefficients in the basis 1, t, ..., as ints/Fractions."""
        if self.prec == 0:
            return (0,) * self.ctx.degree
        if self.val >= 0:
            return self._raw(0, self.abs_prec)
        n = -(-(-self.val) // self.ctx.e)
        scaled = self * self.ctx.from_int(self.ctx.p ** n)
        return tuple(Fraction(c, self.ctx.p ** n) for c in scaled._raw(0, scaled.abs_prec))

    def lift(self):
        """Canonical rational representative (trivial/degree-1 contexts)."""
        c = self.coefficients()
        if len(c) != 1:
            raise ValueError("lift() needs a degree-1 context; use coefficients()")
        return c[0]

    def residue(self):
        """Reduction mod pi as a raw tuple (requires val >= 0)."""
        if self.val < 0 and self.prec:
            raise ValueError("not integral")
        return self._raw(0, 1) if self.abs_prec >= 1 else self.ctx._zero()

    def __str__(self):
        if self.prec == 0:
            return f"0+O(pi^{self.val})"
        if self.ctx.degree == 1:
            body = str(self.unit[0])
        else:
            body = "[" + ",".join(str(c) for c in self.unit) + "]"
        return f"{body}*pi^{self.val}+O(pi^{self.abs_prec})"

    def __repr__(self):
        return f"PadicNum({self})"

    # Frobenius lift and pi-derivation -----------------------------------------

    def frobenius(self):
        return frobenius(self)

    def delta(self):
        return delta_pi(self)


_PADIC_RE = re.compile(
    r"^\s*(?:(?P<zero>0)|(?P<body>-?\d+|\[[-\d,\s]+\])\*pi\^(?P<val>-?\d+))"
    r"\s*\+\s*O\(pi\^(?P<abs>-?\d+)\)\s*$")


def parse_padic(ctx, s):
    """Inverse of ``str(PadicNum)``; plain integers and fractions also accepted."""
    m = _PADIC_RE.match(s)
    if not m:
        return ctx.from_rational(Fraction(s.strip()))
    k = int(m.group("abs"))
    if m.group("zero"):
        return ctx.big_oh(k)
    body = m.group("body")
    coeffs = tuple(int(c) for c in body.strip("[]").split(",")) if body.startswith("[") else (int(body),)
    coeffs += (0,) * (ctx.degree - len(coeffs))
    v = int(m.group("val"))
    rel = k - v
    unit = ctx._reduce(coeffs, rel)
    if rel <= 0 or ctx._valuation(unit, rel) != 0:
        raise ValueError(f"malformed p-adic literal {s!r}")
    return PadicNum(ctx, v, unit, rel)


def frobenius(x):
    """The Frobenius lift phi; phi(x) = x^p mod pi."""
    ctx = x.ctx
    if ctx.kind != "unramified" or x.prec == 0:
        return x
    theta = _frobenius_of_t(ctx, x.prec)
    acc = ctx._zero()
    power = ctx._one()
    for c in x.unit:
        acc = ctx._add(acc, ctx._scale(power, c))
        power = ctx._reduce(ctx._mul(power, theta), x.prec)
    return PadicNum(ctx, x.val, ctx._reduce(acc, x.prec), x.prec)


def frobenius_generator(ctx, prec=None):
    """phi(t) as an element of the context."""
    if ctx.kind != "unramified":
        return ctx.gen()
    return frobenius(ctx.gen() if prec is None else ctx.gen().add_bigoh(prec))


def _integral_raw(x, name):
    if x.prec and x.val < 0:
        raise NonDivisible(f"{name} requires an integral argument, got {x}")
    return x._raw(0, x.abs_prec), x.abs_prec


def delta_pi(x):
    """Fermat quotient (phi(x) - x^p) / pi; consumes one digit of precision."""
    ctx = x.ctx
    raw, k = _integral_raw(x, "delta_pi")
    if k <= 0:
        return ctx.big_oh(k - 1)
    fx = frobenius(x)._raw(0, k)
    xp = (x ** ctx.p)._raw(0, k)
    num = ctx._reduce(ctx._sub(fx, xp), k)
    if ctx._valuation(num, k) < 1:
        raise NonDivisible("phi(x) - x^p is a unit: broken Frobenius lift")
    return ctx._from_raw(ctx._div_pi(num, k), k - 1)


def c_pi(x, y):
    """C_pi(x, y) = (x^p + y^p - (x+y)^p) / pi for integral x, y."""
    ctx = x.ctx
    y = x._coerce(y)
    _integral_raw(x, "c_pi")
    _integral_raw(y, "c_pi")
    k = min(x.abs_prec, y.abs_prec)
    if k <= 0:
        return ctx.big_oh(k - 1)
    p = ctx.p
    num = (x ** p + y ** p - (x + y) ** p)._raw(0, k)
    if ctx._valuation(num, k) < 1:
        raise NonDivisible("C_pi numerator is a unit")
    return ctx._from_raw(ctx._div_pi(num, k), k - 1)


def valuation(x):
    return x.valuation()
