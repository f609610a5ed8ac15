import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from deltapi.errors import BadReduction, InsufficientCoefficients, NotEtale
from deltapi.formal_group import CURVE_11A1, WeierstrassCurve
from deltapi.jets import JetSeries
from deltapi.padic import PadicCtx, is_prime
from deltapi.qexp import (NewformData, an_from_curve, ap_point_count, bernoulli, count_points,
                          eisenstein_coefficients, eisenstein_qexp, eisenstein_root, f_inverse,
                          hensel_lift_root, q_derivative)

Z5 = PadicCtx.zp(5, 6)


def bernoulli_akiyama_tanigawa(n):
    """Independent oracle; this algorithm yields B_1 = +1/2."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def count_points_legendre(E, ell):
    """Projective count via completing the square (odd ell)."""
    a1, a2, a3, a4, a6 = E.coefficients
    n = 1
    for x in range(ell):
        disc = (4 * (x ** 3 + a2 * x * x + a4 * x + a6) + (a1 * x + a3) ** 2) % ell
        n += 1 if disc == 0 else (2 if pow(disc, (ell - 1) // 2, ell) == 1 else 0)
    return n


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert all(bernoulli(k) == 0 for k in range(3, 30, 2))


@pytest.mark.parametrize("k", range(2, 31, 2))
def test_bernoulli_matches_akiyama_tanigawa(k):
    assert bernoulli(k) == bernoulli_akiyama_tanigawa(k)


def test_e4_coefficients():
    c = eisenstein_coefficients(4, 4)
    assert c == [1, 240, 2160, 6720, 17520]
    s = eisenstein_qexp(5, 20, Z5)
    assert s[(0,)] == Z5.one()
    assert s[(1,)] == Z5(240) and s[(2,)] == Z5(2160)
    assert s.q_prec == 20


def test_e6_coefficients():
    assert eisenstein_coefficients(6, 2) == [1, -504, -16632]


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_eisenstein_is_one_mod_p(p):
    ctx = PadicCtx.zp(p, 4)
    s = eisenstein_qexp(p, 15, ctx)
    assert s[(0,)] == ctx.one()
    assert all(c.valuation() >= 1 for k, c in s.coeffs.items() if k[0] > 0)


def test_point_counts_11a1():
    assert [ap_point_count(CURVE_11A1, ell) for ell in (2, 3, 5)] == [-2, -1, 1]
    assert count_points(CURVE_11A1, 2) == 5


@pytest.mark.parametrize("curve", [CURVE_11A1, WeierstrassCurve(1, -1, 1, -3, 5),
                                   WeierstrassCurve(0, 0, 1, -1, 0)])
def test_point_counts_against_legendre_and_hasse(curve):
    for ell in range(3, 50):
        if is_prime(ell) and curve.discriminant % ell:
            assert count_points(curve, ell) == count_points_legendre(curve, ell)
            a = ap_point_count(curve, ell)
            assert a * a <= 4 * ell


def test_bad_prime_rejected():
    with pytest.raises(BadReduction):
        ap_point_count(CURVE_11A1, 11)


def test_an_for_11a1():
    a = an_from_curve(CURVE_11A1, 25)
    # the first coefficients of q prod (1 - q^n)^2 (1 - q^11n)^2
    assert a[:12] == [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2]
    assert a[24] == a[4] * a[4] - 5          # a_25 = a_5^2 - 5


def eta_product_11a1(n_max):
    """q prod (1 - q^n)^2 (1 - q^{11n})^2, an independent source of a_n."""
    series = [0] * (n_max + 1)
    series[0] = 1
    for n in range(1, n_max + 1):
        for step in (n, 11 * n):
            if step > n_max:
                continue
            for _ in range(2):
                for i in range(n_max, step - 1, -1):
                    series[i] -= series[i - step]
    return series[:n_max]        # coefficients of q^1..q^n_max


def test_an_matches_eta_product():
    assert an_from_curve(CURVE_11A1, 60) == eta_product_11a1(60)


def test_newform_validation_and_json(tmp_path):
    nf = NewformData.from_curve(CURVE_11A1, 11, 5, 30)
    assert nf.source == "point_counting"
    path = tmp_path / "nf.json"
    path.write_text(json.dumps(nf.to_dict()))
    back = NewformData.load(path)
    assert back.a == nf.a and back.N == 11
    with pytest.raises(ValueError):
        NewformData(11, 2, 5, (2, 1))
    with pytest.raises(ValueError):
        NewformData(11, 2, 11, (1,))
    with pytest.raises(ValueError):
        NewformData(11, 2, 5, (1, 2, 3, 4, 5, 7))         # a_6 != a_2 a_3
    with pytest.raises(InsufficientCoefficients):
        nf.coefficient(31)


def test_f_inverse_11a1():
    nf = NewformData.from_curve(CURVE_11A1, 11, 5, 30)
    s = f_inverse(nf, 5, PadicCtx.zp(5, 8))
    ctx = s.ctx
    expected = [0, 1, -1, Fraction(-1, 3), Fraction(1, 2), Fraction(1, 5)]
    for n, c in enumerate(expected):
        assert s[(n,)] == ctx(c)
    assert s[(5,)].valuation() == -1
    with pytest.raises(InsufficientCoefficients):
        f_inverse(nf, 31, ctx)


def test_f_inverse_of_q():
    nf = NewformData(1, 2, 5, (1, 0, 0, 0))
    s = f_inverse(nf, 4, Z5)
    assert s == JetSeries.variable(Z5, 0, 4)


def test_q_derivative_inverts_anti_derivative():
    nf = NewformData.from_curve(CURVE_11A1, 11, 5, 40)
    ctx = PadicCtx.zp(5, 8)
    s = q_derivative(f_inverse(nf, 40, ctx))
    original = JetSeries.from_qexp(ctx, [0] + list(nf.a), 40)
    assert s == original


def test_hensel_integer_square_root():
    f = [Z5(-16), Z5(0), Z5(1)]
    assert hensel_lift_root(f, Z5(4)).root == Z5(4)
    assert hensel_lift_root(f, Z5(1)).root == Z5(-4)


def test_hensel_not_etale():
    with pytest.raises(NotEtale):
        hensel_lift_root([Z5(-25), Z5(0), Z5(1)], Z5(0))


@given(st.integers(1, 10 ** 6).filter(lambda n: n % 5))
def test_hensel_square_roots(n):
    sq = Z5(n * n)
    r = hensel_lift_root([-sq, Z5(0), Z5(1)], Z5(n % 5)).root
    assert r * r == sq and (r - n).valuation() >= 1


def test_eisenstein_fourth_root():
    z = eisenstein_root(5, 20, Z5)
    E = eisenstein_qexp(5, 20, Z5)
    assert (z ** 4 - E).is_zero()
    assert z[(0,)] == Z5.one()
    assert z[(1,)] == Z5(60)
    assert z.q_prec == 20
    # one more Newton step leaves it unchanged
    step = (z ** 4 - E) * (z ** 3 * 4).inverse()
    assert (z - step) == z
