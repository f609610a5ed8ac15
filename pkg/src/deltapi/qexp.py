"""Classical q-expansion inputs: Bernoulli numbers, E_{p-1}, newform data,
point counting, the anti-derivative f^(-1), and Hensel lifting."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .errors import (BadReduction, DenominatorNotUnit, InsufficientCoefficients,
                     NotEtale, PrecisionExhausted)
from .jets import JetSeries
from .padic import PadicNum, is_prime, vp


@lru_cache(maxsize=None)
def _bernoulli_table(k):
    B = [Fraction(1)]
    for m in range(1, k + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


def bernoulli(k):
    """B_k from sum_{j<=m} C(m+1, j) B_j = 0 (so B_1 = -1/2)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _bernoulli_table(k)[k]


def sigma(n, k):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein_coefficients(k, n_max):
    """Exact rational coefficients of the normalized weight-k Eisenstein series."""
    if k < 2 or k % 2:
        raise ValueError("weight must be even and >= 2")
    factor = Fraction(-2 * k) / bernoulli(k)
    return [Fraction(1)] + [factor * sigma(n, k - 1) for n in range(1, n_max + 1)]


def eisenstein_qexp(p, q_prec, ctx):
    """E_{p-1} as an order-0 series with coefficients in the context."""
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    k = p - 1
    factor = Fraction(-2 * k) / bernoulli(k)
    if factor != 0 and vp(factor, p) < 0:
        raise DenominatorNotUnit(f"-2k/B_k = {factor} is not {p}-integral", module="qexp")
    return JetSeries.from_qexp(ctx, eisenstein_coefficients(k, q_prec), q_prec)


# -- point counting -----------------------------------------------------------------

def count_points(E, ell):
    """#E(F_ell), projective, by enumeration (the singular point included)."""
    a1, a2, a3, a4, a6 = (c % ell for c in E.coefficients)
    n = 1  # point at infinity
    for x in range(ell):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % ell
        for y in range(ell):
            if (y * y + a1 * x * y + a3 * y - rhs) % ell == 0:
                n += 1
    return n


def ap_point_count(E, ell):
    """a_ell = ell + 1 - #E(F_ell) at a prime of good reduction."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if E.discriminant % ell == 0:
        raise BadReduction(f"{ell} divides the discriminant {E.discriminant}", module="qexp")
    a = ell + 1 - count_points(E, ell)
    if a * a > 4 * ell:
        raise AssertionError(f"Hasse bound violated: a_{ell} = {a}")
    return a


def an_from_curve(E, n_max):
    """a_1..a_n_max of the weight-2 newform attached to E (minimal model).

    At a bad prime the same count ell + 1 - #E(F_ell) gives 1, -1 or 0 for
    split, non-split and additive reduction; prime powers then follow
    a_{l^k} = a_l^k there and the Hecke recursion elsewhere.
    """
    ap = {}
    for ell in range(2, n_max + 1):
        if is_prime(ell):
            if E.discriminant % ell:
                ap[ell] = ap_point_count(E, ell)
            else:
                ap[ell] = ell + 1 - count_points(E, ell)
    a = [0] * (n_max + 1)
    a[1] = 1
    for n in range(2, n_max + 1):
        m, ell = n, next(d for d in range(2, n + 1) if n % d == 0)
        k = 0
        while m % ell == 0:
            m //= ell
            k += 1
        if m > 1:
            a[n] = a[m] * a[ell ** k]
            continue
        good = E.discriminant % ell != 0
        if k == 1:
            a[n] = ap[ell]
        elif good:
            a[n] = ap[ell] * a[ell ** (k - 1)] - ell * a[ell ** (k - 2)]
        else:
            a[n] = ap[ell] * a[ell ** (k - 1)]
    return a[1:]


# -- newforms ------------------------------------------------------------------------

@dataclass(frozen=True)
class NewformData:
    N: int
    weight: int
    p: int
    a: tuple                  # a_1, a_2, ... as Fractions
    source: str = "file"

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if not a or a[0] != 1:
            raise ValueError("newform must be normalized with a_1 = 1")
        if gcd(self.N, self.p) != 1:
            raise ValueError(f"level {self.N} is not prime to p = {self.p}")
        if self.source not in ("file", "point_counting"):
            raise ValueError(f"unknown source {self.source!r}")
        bad = self.multiplicativity_failures()
        if bad:
            m, n = bad[0]
            raise ValueError(f"a_{m * n} != a_{m} a_{n}")

    def multiplicativity_failures(self, limit=None):
        a = self.a
        top = len(a) if limit is None else min(limit, len(a))
        out = []
        for m in range(2, top + 1):
            for n in range(m + 1, top // m + 1):
                if gcd(m, n) == 1 and a[m * n - 1] != a[m - 1] * a[n - 1]:
                    out.append((m, n))
        return out

    def coefficient(self, n):
        if n > len(self.a):
            raise InsufficientCoefficients(f"a_{n} requested, only {len(self.a)} known", module="qexp")
        return self.a[n - 1]

    @classmethod
    def from_curve(cls, E, N, p, n_max):
        return cls(N, 2, p, tuple(an_from_curve(E, n_max)), "point_counting")

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["N"]), int(d.get("weight", 2)), int(d["p"]),
                   tuple(Fraction(x) for x in d["an"]), d.get("source", "file"))

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        an = [int(x) if x.denominator == 1 else str(x) for x in self.a]
        return {"N": self.N, "weight": self.weight, "p": self.p, "an": an}


def f_inverse(nf, q_prec, ctx):
    """sum a_n / n q^n for n <= q_prec."""
    if q_prec > len(nf.a):
        raise InsufficientCoefficients(
            f"q_prec {q_prec} exceeds the {len(nf.a)} known coefficients", module="qexp")
    coeffs = [Fraction(0)] + [nf.a[n - 1] / n for n in range(1, q_prec + 1)]
    return JetSeries.from_qexp(ctx, coeffs, q_prec)


def q_derivative(s):
    """q d/dq on an order-0 series."""
    return JetSeries(s.ctx, s.order, s.q_prec, s.delta_deg,
                     {k: c * k[0] for k, c in s.coeffs.items() if k[0]})


# -- Hensel lifting --------------------------------------------------------------------

def _horner(coeffs, z):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def _derivative(coeffs):
    return [c * i for i, c in enumerate(coeffs)][1:] or [0]


def _is_unit(x):
    return isinstance(x, (PadicNum, JetSeries)) and x.is_unit()


def _divisible_by_pi(x):
    if isinstance(x, PadicNum):
        return x.is_zero() or x.valuation() >= 1
    return all(c.is_zero() or c.valuation() >= 1 for c in x.coeffs.values())


def _newton_step(f, df, z):
    d = _horner(df, z)
    return z - _horner(f, z) * d.inverse()


@dataclass(frozen=True)
class HenselResult:
    root: object
    iterations: int


def hensel_lift_root(coeffs, tau0, max_iter=64):
    """Newton iteration for a root of sum coeffs[i] z^i congruent to tau0.

    ``coeffs`` are ring elements (PadicNum or JetSeries, ints allowed) listed
    from the constant term up; tau0 must be a simple root modulo pi.  The
    returned root satisfies f = 0 at the working precision and is a fixed
    point of one further Newton step.
    """
    f = list(coeffs)
    df = _derivative(f)
    if not _divisible_by_pi(_horner(f, tau0)):
        raise ValueError("tau0 is not a root modulo pi")
    if not _is_unit(_horner(df, tau0)):
        raise NotEtale("f'(tau0) is not a unit", module="qexp")
    z = tau0
    for it in range(1, max_iter + 1):
        z = _newton_step(f, df, z)
        if _horner(f, z).is_zero():
            if not (_newton_step(f, df, z) - z).is_zero():
                raise PrecisionExhausted("Newton step does not stabilize", module="qexp")
            return HenselResult(z, it)
    raise PrecisionExhausted("Newton iteration did not converge", module="qexp")


def eisenstein_root(p, q_prec, ctx):
    """The (p-1)-st root of E_{p-1} with constant term 1."""
    E = eisenstein_qexp(p, q_prec, ctx)
    one = JetSeries.constant(ctx, 1, q_prec)
    coeffs = [-E] + [JetSeries.zero(ctx, q_prec)] * (p - 2) + [one]
    return hensel_lift_root(coeffs, one).root
