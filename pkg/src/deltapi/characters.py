"""Teichmüller lifts, Dirichlet characters as exact root-of-unity data, and
conjugate weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import DegenerateWeight, NotAUnit, PrecisionExhausted
from .padic import PadicCtx, is_prime


def teichmuller(d, ctx, prec=None):
    """The (p-1)-st root of unity congruent to ``d`` mod p.

    Computed as the limit of d, d^p, d^(p^2), ...; stops once x^p == x at
    the working precision.
    """
    if prec is not None:
        ctx = ctx.with_prec(prec)
    p = ctx.p
    if d % p == 0:
        raise NotAUnit(f"{d} is not a unit mod {p}", module="characters")
    x = ctx.from_int(d % p)
    while True:
        y = x ** p
        if y.unit == x.unit and y.val == x.val:
            return x
        x = y


def primitive_root(p):
    """Smallest generator of (Z/pZ)^x."""
    order = p - 1
    factors = {f for f in range(2, order + 1) if order % f == 0 and all(f % g for g in range(2, f))}
    for g in range(2, p):
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    return 1


@dataclass(frozen=True)
class ConjugacyQuery:
    p: int
    kappa: int

    def __post_init__(self):
        if not 3 <= self.kappa <= self.p:
            raise ValueError(f"weight must satisfy 3 <= kappa <= p, got {self.kappa}")


def conjugates(query, kappa=None):
    """All kappa' in [1, p-2] with kappa' = c(2 - kappa) mod p-1, c a unit.

    Accepts a :class:`ConjugacyQuery` or ``(p, kappa)``.  The pair form takes
    any integer weight, so a weight = 2 mod p-1 (e.g. p + 1) reaches the
    DegenerateWeight error instead of being rejected up front.  The orbit of
    x under multiplication by (Z/nZ)^x is the set of residues y with
    gcd(y, n) = gcd(x, n), which is what gets enumerated here.
    """
    if isinstance(query, ConjugacyQuery):
        p, kappa = query.p, query.kappa
    else:
        p = query
        if not is_prime(p) or p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
    n = p - 1
    x = (2 - kappa) % n
    if x == 0:
        raise DegenerateWeight(f"kappa={kappa} is 2 mod {n}: no conjugate in [1, {n - 1}]")
    g = gcd(x, n)
    return sorted(y for y in range(1, n) if gcd(y, n) == g)


@dataclass(frozen=True)
class CharacterData:
    """A Dirichlet character with values zeta_order^values[a]."""

    modulus: int
    order: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = {a % self.modulus: k % self.order for a, k in self.values.items()}
        object.__setattr__(self, "values", vals)
        for a in vals:
            if gcd(a, self.modulus) != 1:
                raise ValueError(f"{a} is not a unit mod {self.modulus}")

    @classmethod
    def from_generator(cls, p, order, exponent, g=None):
        """Character of (Z/pZ)^x sending the generator g to zeta_order^exponent."""
        g = primitive_root(p) if g is None else g
        vals, x = {}, 1
        for i in range(p - 1):
            vals[x] = exponent * i
            x = x * g % p
        return cls(p, order, vals)

    @classmethod
    def trivial(cls, modulus):
        return cls(modulus, 1, {a: 0 for a in range(1, modulus) if gcd(a, modulus) == 1})

    def __call__(self, a):
        return self.values[a % self.modulus]

    def is_multiplicative(self):
        m = self.modulus
        for a, ka in self.values.items():
            for b, kb in self.values.items():
                c = a * b % m
                if c in self.values and self.values[c] != (ka + kb) % self.order:
                    return False
        return self.values.get(1 % m, 0) == 0

    def split(self, N, p):
        """Decompose a character mod N*p as eps_N * eps_p (CRT restriction)."""
        if self.modulus != N * p or gcd(N, p) != 1:
            raise ValueError("modulus must be N*p with gcd(N, p) = 1")
        to_np = lambda aN, ap: next(x for x in range(N * p) if x % N == aN % N and x % p == ap % p)
        eps_n = {a: self(to_np(a, 1)) for a in range(1, max(N, 2)) if gcd(a, N) == 1}
        eps_p = {a: self(to_np(1, a)) for a in range(1, p)}
        return CharacterData(N, self.order, eps_n), CharacterData(p, self.order, eps_p)

    def embed(self, a, zeta_image):
        """Image of the value at ``a`` under zeta_order -> zeta_image."""
        return zeta_image ** self(a)


def check_serre_compat(rho_eps_p, kappa, p, ctx=None, zeta_image=None):
    """Whether rho(eps_p) equals Theta_p^(kappa-2) on a generator of (Z/pZ)^x.

    ``zeta_image`` fixes the embedding (the image of zeta_order); by default
    zeta_order goes to Theta_p(g)^((p-1)/order) for the least primitive root g.
    """
    if rho_eps_p.modulus != p:
        raise ValueError("expected a character modulo p")
    if (p - 1) % rho_eps_p.order:
        raise ValueError("character order must divide p - 1")
    ctx = PadicCtx.zp(p) if ctx is None else ctx
    g = primitive_root(p)
    theta_g = teichmuller(g, ctx)
    if zeta_image is None:
        zeta_image = theta_g ** ((p - 1) // rho_eps_p.order)
    lhs = rho_eps_p.embed(g, zeta_image)
    rhs = theta_g ** (kappa - 2)
    diff = lhs - rhs
    if diff.is_zero() and diff.abs_prec < 1:
        raise PrecisionExhausted("roots of unity indistinguishable at this precision",
                                 module="characters")
    return diff.is_zero()
