"""
Formal group of 11a1 and its jet-logarithms
===========================================

The formal group law of y^2 + y = x^3 - x^2 - 10x - 20, its logarithm, and
the first two jet-logarithms L^1, L^2 attached to it over Z_5.
"""

from deltapi import PadicCtx, eval_jet_log, formal_group_law, jet_log, valuation_bound_check
from deltapi.formal_group import CURVE_11A1, log_of_law, log_sum

E = CURVE_11A1
print("curve       :", E.coefficients, " discriminant", E.discriminant)

fg = formal_group_law(E, t_prec=10)
print("log(t)      =", " + ".join(f"({c}) t^{n}" for n, c in enumerate(fg.log_coeffs, 1) if c))
print("Hazewinkel integrality at 5 :", fg.is_log_integral(5))

# l(F(t1, t2)) = l(t1) + l(t2) as power series
print("log is a homomorphism :", log_of_law(fg) == log_sum(fg))

ctx = PadicCtx.zp(5, 10)
for n in (1, 2):
    L = jet_log(n, fg, ctx)
    print(f"\nL^{n}: nu = {L.nu}, tail bound {L.tail_bound}")
    print("   ", L.series)

# Evaluate at a point of the formal group: t = 5
x = ctx(5)
print("\nL^1(5) =", eval_jet_log(1, fg, x))

report = valuation_bound_check(alpha_max=3, p=5, e=1)
print("valuation bound:", report)
