"""
The series (phi^2 - a_p phi + p)/p applied to f^(-1) for 11a1
=============================================================

The newform of level 11 has coefficients a_n coming from point counts on
the curve.  Dividing by p keeps the result integral because of the Hecke
relation at p.
"""

from deltapi import NewformData, PadicCtx, assemble_sharp, integrality_exponent
from deltapi.formal_group import CURVE_11A1
from deltapi.qexp import f_inverse
from deltapi.sharp import expansion_shape, ordinary_spec

p = 5
nf = NewformData.from_curve(CURVE_11A1, N=11, p=p, n_max=60)
print("a_1..a_12 :", [int(a) for a in nf.a[:12]])

ctx = PadicCtx.zp(p, 10)
g = f_inverse(nf, 50, ctx)
print("nu(f^(-1)) =", integrality_exponent(g))

spec = ordinary_spec(nf, kappa=3, realized_kappa_prime=3)
res = assemble_sharp(spec, q_prec=12, ctx=ctx)
print("metadata  :", res.metadata)
print("shape ok  :", expansion_shape(res, ctx))
for key, c in list(res.series.items())[:8]:
    print("   ", key, c)
