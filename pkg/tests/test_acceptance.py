"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script:
``python3 tests/test_acceptance.py``.
"""

import io
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from deltapi.characters import conjugates, teichmuller
from deltapi.cli import dispatch
from deltapi.errors import DegenerateWeight
from deltapi.formal_group import (CURVE_11A1, WeierstrassCurve, eval_jet_log, formal_group_law,
                                  jet_log, log_of_law, log_sum, valuation_bound_check)
from deltapi.gm import psi_gm
from deltapi.padic import PadicCtx, c_pi, delta_pi, frobenius, vp
from deltapi.qexp import (NewformData, ap_point_count, bernoulli, count_points, eisenstein_qexp,
                          eisenstein_root)
from deltapi.sharp import (assemble_sharp, expansion_shape, integrality_exponent, nonzero_check,
                           ordinary_spec, SharpSpec)
from deltapi.jets import PhiPoly

from cli_cases import CASES, EXPECTED_EXIT, HERE

RESULTS = {}


@contextmanager
def criterion(number, title, capsys=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        line = f"[{status}] criterion {number}: {title} ({time.perf_counter() - start:.2f}s)"
        RESULTS[number] = status
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)


# 1 -------------------------------------------------------------------------------------

def check_delta_axioms():
    M = 8
    start = time.perf_counter()
    for p in (5, 7):
        for ctx in (PadicCtx.zp(p, M), PadicCtx.ramified(p, (-p, 0, 1), M)):
            rng = random.Random(p * 1000 + ctx.degree)
            pi = ctx.uniformizer()
            for _ in range(200):
                x = ctx.random_element(rng, 0, 2)
                y = ctx.random_element(rng, 0, 2)
                dx, dy = delta_pi(x), delta_pi(y)
                checks = [
                    delta_pi(x + y) - (dx + dy + c_pi(x, y)),
                    delta_pi(x * y) - (x ** p * dy + y ** p * dx + pi * dx * dy),
                    frobenius(x + y) - (frobenius(x) + frobenius(y)),
                    frobenius(x * y) - frobenius(x) * frobenius(y),
                ]
                for d in checks:
                    assert d.is_zero() and d.abs_prec >= M - 1, (ctx, x, y, d)
    assert time.perf_counter() - start < 5


def test_criterion_1_delta_axioms(capsys):
    with criterion(1, "delta_pi axioms and phi homomorphism, p in {5,7}, Z_p and ramified", capsys):
        check_delta_axioms()


# 2 -------------------------------------------------------------------------------------

def check_psi_gm():
    start = time.perf_counter()
    ctx = PadicCtx.zp(5, 8)
    rng = random.Random(2)
    for _ in range(100):
        x, y = ctx.random_element(rng), ctx.random_element(rng)
        lhs, rhs = psi_gm(x * y), psi_gm(x) + psi_gm(y)
        d = lhs - rhs
        assert d.is_zero() and d.abs_prec >= 6
        assert min(lhs.abs_prec, rhs.abs_prec) >= 6
    for d in range(1, 5):
        assert psi_gm(teichmuller(d, ctx)).is_zero()
    assert time.perf_counter() - start < 5


def test_criterion_2_psi_gm(capsys):
    with criterion(2, "psi on G_m additive on 100 unit pairs, kills Teichmuller units", capsys):
        check_psi_gm()


# 3 -------------------------------------------------------------------------------------

def check_formal_group():
    start = time.perf_counter()
    ctx = PadicCtx.zp(5, 8)
    fg = formal_group_law(WeierstrassCurve(*CURVE_11A1.coefficients, ctx=ctx), 12)
    F = fg.F
    assert {k: v for k, v in F.items() if k[1] == 0} == {(1, 0): 1}
    assert {k: v for k, v in F.items() if k[0] == 0} == {(0, 1): 1}
    assert all(F.get((j, i), 0) == v for (i, j), v in F.items())
    assert max(i + j for i, j in F) <= 12
    rng = random.Random(3)
    for _ in range(10):
        x, y, z = (ctx.random_element(rng, 1, 2) for _ in range(3))
        assert fg.law_eval(fg.law_eval(x, y), z) == fg.law_eval(x, fg.law_eval(y, z))
    assert log_of_law(fg) == log_sum(fg)
    assert all(c == 0 or vp(n * c, 5) >= 0 for n, c in enumerate(fg.log_coeffs, 1))
    for n in (1, 2):
        for _ in range(50):
            x, y = ctx.random_element(rng, 1, 3), ctx.random_element(rng, 1, 3)
            d = eval_jet_log(n, fg, fg.law_eval(x, y)) - (eval_jet_log(n, fg, x) + eval_jet_log(n, fg, y))
            assert d.is_zero()
        assert jet_log(n, fg, ctx).nu == 0
    assert time.perf_counter() - start < 30


def test_criterion_3_formal_group(capsys):
    with criterion(3, "formal group of 11a1 at p=5, t_prec 12", capsys):
        check_formal_group()


# 4 -------------------------------------------------------------------------------------

def check_valuation_bound():
    for e in (1, 4):
        r = valuation_bound_check(625, p=5, e=e)
        assert r.violations == ()
        # direct restatement: a - 1 - e*v_5(a) >= a - 1 - e*log_5(a) iff 5^v_5(a) <= a
        assert all(5 ** vp(a, 5) <= a for a in range(1, 626))


def test_criterion_4_valuation_bound(capsys):
    with criterion(4, "valuation inequality for |alpha| <= 625, e in {1,4}", capsys):
        check_valuation_bound()


# 5 -------------------------------------------------------------------------------------

def brute_conjugates(p, kappa):
    n = p - 1
    return sorted({c * (2 - kappa) % n for c in range(1, n) if gcd(c, n) == 1} - {0})


def check_conjugates():
    for p in (5, 7, 11, 13):
        for kappa in range(3, p + 1):
            expected = brute_conjugates(p, kappa)
            if not expected:
                with pytest.raises(DegenerateWeight):
                    conjugates(p, kappa)
                continue
            got = conjugates(p, kappa)
            assert got == expected
            assert all(1 <= k <= p - 2 for k in got)
    assert conjugates(5, 3) == [1, 3]
    assert conjugates(5, 4) == [2]


def test_criterion_5_conjugates(capsys):
    with criterion(5, "conjugate weights agree with brute force, p in {5,7,11,13}", capsys):
        check_conjugates()


# 6 -------------------------------------------------------------------------------------

def check_teichmuller():
    for p in (5, 7, 11):
        ctx = PadicCtx.zp(p, 6)
        for d in range(1, p):
            t = teichmuller(d, ctx)
            assert t ** (p - 1) == ctx.one()
            assert (t - d).valuation() >= 1
    ctx = PadicCtx.zp(5, 6)
    assert teichmuller(4, ctx) == ctx(-1)


def test_criterion_6_teichmuller(capsys):
    with criterion(6, "Teichmuller lifts, p in {5,7,11}, prec 6", capsys):
        check_teichmuller()


# 7 -------------------------------------------------------------------------------------

def check_eisenstein_hensel():
    assert bernoulli(4) == Fraction(-1, 30)
    ctx = PadicCtx.zp(5, 6)
    E = eisenstein_qexp(5, 20, ctx)
    assert E.q_prec == 20
    assert E[(0,)] == ctx.one() and E[(1,)] == ctx(240) and E[(2,)] == ctx(2160)
    for n in range(1, 21):
        sigma3 = sum(d ** 3 for d in range(1, n + 1) if n % d == 0)
        assert E[(n,)] == ctx(240 * sigma3)
    z = eisenstein_root(5, 20, ctx)
    assert z.q_prec == 20
    assert (z ** 4 - E).is_zero()
    assert all(c.abs_prec >= 6 for c in (z ** 4 - E).coeffs.values())
    assert z[(0,)] == ctx.one() and z[(1,)] == ctx(60)
    assert (z[(1,)] - 60).valuation() >= 1


def test_criterion_7_eisenstein_hensel(capsys):
    with criterion(7, "E_4 to q^20 and its 4th root by Hensel lifting", capsys):
        check_eisenstein_hensel()


# 8 -------------------------------------------------------------------------------------

def check_sharp():
    start = time.perf_counter()
    for ell, a in ((2, -2), (3, -1), (5, 1)):
        assert ap_point_count(CURVE_11A1, ell) == a
        assert ell + 1 - count_points(CURVE_11A1, ell) == a
    nf = NewformData.from_curve(CURVE_11A1, 11, 5, 60)
    ctx = PadicCtx.zp(5, 10)
    res = assemble_sharp(ordinary_spec(nf), 50, ctx)      # (phi^2 - a_5 phi + 5)/5
    s = res.series
    assert s.q_prec >= 50
    assert integrality_exponent(s) == 0
    assert all(c.is_zero() or c.valuation() >= 0 for c in s.coeffs.values())
    assert min(c.abs_prec for c in s.coeffs.values()) >= 4
    assert s.order == 2 and s.max_delta_degree() <= 2
    assert nonzero_check(s) is True
    assert time.perf_counter() - start < 60


def test_criterion_8_sharp_assembly(capsys):
    with criterion(8, "(phi^2 - a_5 phi + 5) f^(-1) / 5 integral to q^50 for 11a1", capsys):
        check_sharp()


# 9 -------------------------------------------------------------------------------------

def check_shape():
    nf = NewformData.from_curve(CURVE_11A1, 11, 5, 60)
    ctx = PadicCtx.zp(5, 10)
    specs = [
        ordinary_spec(nf),
        SharpSpec(nf, {"id": PhiPoly((1,))}, order=1),
        SharpSpec(nf, {"id": PhiPoly((0, 1))}, order=1),
        SharpSpec(nf, {"id": PhiPoly((2, -3, 1))}),
        SharpSpec(nf, {"id": PhiPoly((1, 1)), "s": PhiPoly((0, 0, 1))},
                  conjugate_an={"s": list(nf.a)}),
    ]
    for spec in specs:
        res = assemble_sharp(spec, 40, ctx)
        assert expansion_shape(res, ctx)
        assert res.series.order <= 2
        assert res.series.variables_used() <= {0, 1, 2}


def test_criterion_9_shape(capsys):
    with criterion(9, "outputs are sum_sigma P_sigma(phi) f^(-1)^sigma in q, dq, d2q", capsys):
        check_shape()


# 10 ------------------------------------------------------------------------------------

def check_cli_golden():
    golden = HERE / "golden"
    for name, argv in sorted(CASES.items()):
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            code = dispatch(argv, env={}, out=buf)
            assert code == EXPECTED_EXIT.get(name, 0), name
            outs.append(buf.getvalue().replace(str(HERE), "<tests>"))
        assert outs[0] == outs[1], name
        assert outs[0] == (golden / f"{name}.json").read_text(), name


def test_criterion_10_cli_golden(capsys):
    with criterion(10, "CLI golden files reproduce byte-exactly across two runs", capsys):
        check_cli_golden()


CHECKS = [check_delta_axioms, check_psi_gm, check_formal_group, check_valuation_bound,
          check_conjugates, check_teichmuller, check_eisenstein_hensel, check_sharp,
          check_shape, check_cli_golden]

TITLES = ["delta_pi axioms", "psi on G_m", "formal group of 11a1", "valuation inequality",
          "conjugate weights", "Teichmuller lifts", "E_4 and its 4th root", "sharp assembly",
          "expansion shape", "CLI golden files"]


if __name__ == "__main__":
    failed = 0
    for i, (check, title) in enumerate(zip(CHECKS, TITLES), 1):
        try:
            with criterion(i, title):
                check()
        except Exception as exc:          # report and keep going
            failed += 1
            print(f"    {type(exc).__name__}: {exc}")
    sys.exit(1 if failed else 0)
