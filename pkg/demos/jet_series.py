"""
Jet series and the lift phi on q-expansions
===========================================

Elements of R((q))[q', q'', ...] truncated in q and in delta-degree.  phi acts
by q -> q^p, delta q -> ... following the universal rule, and delta_pi is
(phi(f) - f^p)/pi computed on whole series.
"""

from deltapi import JetSeries, PadicCtx, PhiPoly, apply_phi_poly, delta_series, phi_series

ctx = PadicCtx.zp(5, 8)
q = JetSeries.variable(ctx, 0, q_prec=12, order=2)
print("q           =", q)
print("phi(q)      =", phi_series(q))
print("delta(q)    =", delta_series(q))

# phi of 1 + q: note the first-order variable dq appears
f = JetSeries.from_qexp(ctx, [1, 1], q_prec=12, order=0)
print("\nphi(1 + q)  =", phi_series(f))

# A phi-polynomial acts with twisted multiplication: (phi - 5)(phi - 1)
P = PhiPoly.parse("5,-6,1")
g = apply_phi_poly(P, q)
print("\n(phi^2 - 6 phi + 5) q =", g)
print("q precision of the image :", g.q_prec)
