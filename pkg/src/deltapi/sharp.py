"""Assembly of sum_sigma P_sigma(phi) (f^(-1))^sigma and its certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from .characters import conjugates
from .errors import DegenerateWeight, Inconclusive, InsufficientCoefficients, OrderOverflow
from .jets import JetSeries, PhiPoly, apply_phi_poly
from .qexp import NewformData, f_inverse


@dataclass(frozen=True)
class SharpSpec:
    """Newform data, its Galois conjugates (sigma -> coefficient list) and the
    phi-polynomials P_sigma.  sigma = "id" is the newform itself."""

    nf: NewformData
    P: dict                               # sigma -> PhiPoly
    conjugate_an: dict = field(default_factory=dict)
    kappa: int | None = None
    realized_kappa_prime: int | None = None
    order: int = 2

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        for sigma, P in self.P.items():
            if P.degree > self.order:
                raise OrderOverflow(f"deg P_{sigma} = {P.degree} exceeds order {self.order}",
                                    module="sharp")
            if sigma != "id" and sigma not in self.conjugate_an:
                raise ValueError(f"no coefficient list for conjugate {sigma!r}")
        if self.realized_kappa_prime is not None:
            if self.kappa is None:
                raise ValueError("realized kappa' needs kappa")
            if self.realized_kappa_prime not in conjugates(self.nf.p, self.kappa):
                raise ValueError(f"{self.realized_kappa_prime} is not a conjugate of {self.kappa}")

    def newform(self, sigma):
        if sigma == "id":
            return self.nf
        nf = self.nf
        return NewformData(nf.N, nf.weight, nf.p, tuple(self.conjugate_an[sigma]), "file")

    def sigmas(self):
        return sorted(self.P, key=lambda s: (s != "id", str(s)))


@dataclass(frozen=True)
class SharpResult:
    series: JetSeries
    terms: tuple                 # (sigma, P_sigma, f^(-1)^sigma) in summation order
    metadata: dict


def integrality_exponent(s):
    """Smallest nu >= 0 with pi^nu * s integral at the tracked precision."""
    worst = 0
    for c in s.coeffs.values():
        v = c.val if c.prec else c.abs_prec
        worst = min(worst, v)
    return -worst


def nonzero_check(s):
    """True if some coefficient is distinguishable from 0.

    An empty series is exactly zero.  If coefficients are stored but all are
    zero at their precision, the question is undecided and Inconclusive is
    raised.
    """
    if not s.coeffs:
        return False
    if any(not c.is_zero() for c in s.coeffs.values()):
        return True
    raise Inconclusive("every stored coefficient is zero at its precision", module="sharp")


def assemble_sharp(spec, q_prec, ctx):
    """sum_sigma P_sigma(phi) applied to f^(-1) of the sigma-conjugate."""
    terms = []
    total = None
    for sigma in spec.sigmas():
        P = spec.P[sigma]
        g = f_inverse(spec.newform(sigma), q_prec, ctx).truncate(delta_deg=spec.order)
        g = JetSeries(ctx, g.order, g.q_prec, spec.order, g.coeffs)
        img = apply_phi_poly(P, g).with_order(spec.order)
        terms.append((sigma, P, g))
        total = img if total is None else total + img
    if total is None:
        total = JetSeries.zero(ctx, q_prec, spec.order, spec.order)
    if total.q_prec < q_prec:
        raise InsufficientCoefficients(
            f"only q^{total.q_prec} is certified, q^{q_prec} requested", module="sharp")
    meta = {"nu": integrality_exponent(total)}
    if spec.kappa is not None:
        try:
            meta["conjugates"] = conjugates(spec.nf.p, spec.kappa)
        except DegenerateWeight:
            meta["conjugates"] = []
    if spec.realized_kappa_prime is not None:
        meta["weight"] = -spec.realized_kappa_prime
    try:
        meta["nonzero"] = nonzero_check(total)
    except Inconclusive:
        meta["nonzero"] = "inconclusive"
    return SharpResult(total, tuple(terms), meta)


def expansion_shape(result, ctx):
    """Recompute sum_sigma P_sigma(phi)(g_sigma) from the recorded terms and
    check the variables are among q, dq, d^2 q only."""
    rebuilt = None
    for _, P, g in result.terms:
        img = apply_phi_poly(P, g).with_order(result.series.order)
        rebuilt = img if rebuilt is None else rebuilt + img
    if rebuilt is None:
        return not result.series.coeffs or result.series.is_zero()
    vars_ok = result.series.variables_used() <= {0, 1, 2} and result.series.order <= 2
    return vars_ok and (rebuilt - result.series).is_zero()


def ordinary_spec(nf, kappa=None, realized_kappa_prime=None):
    """Single-sigma spec with the preset (phi^2 - a_p phi + p) / p."""
    ap = nf.coefficient(nf.p)
    return SharpSpec(nf, {"id": PhiPoly.ordinary_preset(ap, nf.p)}, kappa=kappa,
                     realized_kappa_prime=realized_kappa_prime, order=2)
