"""
The character psi of the multiplicative group
=============================================

psi(x) = pi^m log(phi(x)/x^p) turns products of units into sums.
"""

from deltapi import GmPsiParams, JetSeries, PadicCtx, psi_gm
from deltapi.gm import psi_gm_on_series

for ctx in (PadicCtx.zp(7, 10), PadicCtx.ramified(7, (-7, 0, 1), 10)):
    params = GmPsiParams.for_ctx(ctx)
    print(f"e = {ctx.e}: m = {params.m}, terms summed = {params.series_cutoff}")
    a, b = ctx(3), ctx(10)
    lhs = psi_gm(a * b)
    rhs = psi_gm(a) + psi_gm(b)
    print("  psi(3*10)        =", lhs)
    print("  psi(3) + psi(10) =", rhs)
    print("  agree            :", (lhs - rhs).is_zero())

# Roots of unity are killed
Z7 = PadicCtx.zp(7, 10)
print("\npsi(-1) =", psi_gm(Z7(-1)))

# On a series: psi(1 + q) has order one (it involves dq)
s = JetSeries.from_qexp(Z7, [1, 1], q_prec=8)
print("psi(1 + q) =", psi_gm_on_series(s))
