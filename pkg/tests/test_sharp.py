from fractions import Fraction

import pytest

from deltapi.errors import Inconclusive, InsufficientCoefficients, OrderOverflow
from deltapi.formal_group import CURVE_11A1
from deltapi.jets import JetSeries, PhiPoly
from deltapi.padic import PadicCtx, vp
from deltapi.qexp import NewformData, f_inverse
from deltapi.sharp import (SharpSpec, assemble_sharp, expansion_shape, integrality_exponent,
                           nonzero_check, ordinary_spec)

CTX = PadicCtx.zp(5, 10)
QPREC = 50


@pytest.fixture(scope="module")
def nf():
    return NewformData.from_curve(CURVE_11A1, 11, 5, 60)


def phi_oracle(poly, p, D, qmax):
    """phi on dict (a, b1, b2) -> Fraction over Q, phi = id on coefficients,
    phi(q) = q^p + p dq, phi(dq) = dq^p + p d2q, delta-degree <= D."""

    def mul(x, y):
        out = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                if k[0] <= qmax and k[1] + k[2] <= D:
                    out[k] = out.get(k, 0) + c1 * c2
        return out

    def power(base, n):
        out = {(0, 0, 0): Fraction(1)}
        for _ in range(n):
            out = mul(out, base)
        return out

    phi_q = {(p, 0, 0): Fraction(1), (0, 1, 0): Fraction(p)}
    phi_dq = {(0, p, 0): Fraction(1), (0, 0, 1): Fraction(p)}
    out = {}
    for (a, b1, b2), c in poly.items():
        assert b2 == 0
        if a and p * max(a - D, 0) > qmax:
            continue
        img = mul(power(phi_q, a), power(phi_dq, b1))
        for k, v in img.items():
            out[k] = out.get(k, 0) + c * v
    return out


def sharp_oracle(an, ap, p, qmax, D=2):
    f = {(n, 0, 0): Fraction(an[n - 1], n) for n in range(1, qmax + 1) if an[n - 1]}
    f1 = phi_oracle(f, p, D, qmax)
    f2 = phi_oracle(f1, p, D, qmax)
    total = {}
    for src, coef in ((f2, Fraction(1, p)), (f1, Fraction(-ap, p)), (f, Fraction(1))):
        for k, v in src.items():
            total[k] = total.get(k, 0) + coef * v
    return {k: v for k, v in total.items() if v}


def test_preset_matches_rational_oracle(nf):
    res = assemble_sharp(ordinary_spec(nf), QPREC, CTX)
    oracle = sharp_oracle(list(nf.a), int(nf.a[4]), 5, QPREC)
    got = {k: c for k, c in res.series.coeffs.items() if not c.is_zero()}
    assert set(got) == set(oracle)
    for k, v in oracle.items():
        assert vp(v, 5) >= 0                       # integral in Z_(5)
        assert got[k] == CTX(v)


def test_preset_is_integral_nonzero_order_two(nf):
    res = assemble_sharp(ordinary_spec(nf), QPREC, CTX)
    s = res.series
    assert s.q_prec >= QPREC
    assert s.order == 2 and s.max_delta_degree() == 2
    assert integrality_exponent(s) == 0
    assert min(c.abs_prec for c in s.coeffs.values()) >= 4
    assert nonzero_check(s) is True
    assert res.metadata["nu"] == 0 and res.metadata["nonzero"] is True


def test_undivided_polynomial_exponents(nf):
    # (phi^2 - phi + 5) f^(-1) is 5 times the preset output, so also integral
    res = assemble_sharp(SharpSpec(nf, {"id": PhiPoly((5, -1, 1))}), QPREC, CTX)
    assert integrality_exponent(res.series) == 0
    # f^(-1) itself carries a_25/25 = -4/25
    assert integrality_exponent(f_inverse(nf, QPREC, CTX)) == 2


def test_zero_polynomial_gives_zero(nf):
    res = assemble_sharp(SharpSpec(nf, {"id": PhiPoly((0,))}), 10, CTX)
    assert res.series.is_zero()
    assert nonzero_check(res.series) is False


def test_identity_polynomial_gives_f_inverse(nf):
    res = assemble_sharp(SharpSpec(nf, {"id": PhiPoly((1,))}, order=1), 10, CTX)
    assert res.series == f_inverse(nf, 10, CTX).with_order(1)


def test_linearity_in_P(nf):
    P, Q = PhiPoly((1, 2, Fraction(1, 5))), PhiPoly((0, -1, 3))
    a = assemble_sharp(SharpSpec(nf, {"id": P}), 30, CTX).series
    b = assemble_sharp(SharpSpec(nf, {"id": Q}), 30, CTX).series
    c = assemble_sharp(SharpSpec(nf, {"id": P + Q}), 30, CTX).series
    assert c == a + b


def test_conjugate_sum(nf):
    spec = SharpSpec(nf, {"id": PhiPoly((1,)), "s1": PhiPoly((0, 1))},
                     conjugate_an={"s1": list(nf.a)}, order=1)
    res = assemble_sharp(spec, 20, CTX)
    assert [t[0] for t in res.terms] == ["id", "s1"]
    assert expansion_shape(res, CTX)


def test_shape_conformance(nf):
    for P in (PhiPoly.ordinary_preset(1, 5), PhiPoly((0, 0, 1)), PhiPoly((2, 1))):
        res = assemble_sharp(SharpSpec(nf, {"id": P}), 30, CTX)
        assert expansion_shape(res, CTX)
        assert res.series.variables_used() <= {0, 1, 2}


def test_metadata_kappa(nf):
    spec = ordinary_spec(nf, kappa=3, realized_kappa_prime=1)
    meta = assemble_sharp(spec, 10, CTX).metadata
    assert meta["conjugates"] == [1, 3] and meta["weight"] == -1
    with pytest.raises(ValueError):
        ordinary_spec(nf, kappa=4, realized_kappa_prime=1)


def test_order_and_coefficient_checks(nf):
    with pytest.raises(OrderOverflow):
        SharpSpec(nf, {"id": PhiPoly((0, 0, 1))}, order=1)
    with pytest.raises(InsufficientCoefficients):
        assemble_sharp(ordinary_spec(nf), 61, CTX)


def test_integrality_exponent_examples():
    s = JetSeries.from_qexp(CTX, [0, Fraction(1, 5)], 5)
    assert integrality_exponent(s) == 1
    assert integrality_exponent(JetSeries.from_qexp(CTX, [0, 3, 4], 5)) == 0


def test_nonzero_inconclusive():
    s = JetSeries(CTX, 0, 5, 2, {(1,): CTX.big_oh(10), (2,): CTX.big_oh(10)})
    with pytest.raises(Inconclusive):
        nonzero_check(s)
    assert nonzero_check(JetSeries.zero(CTX, 5)) is False
