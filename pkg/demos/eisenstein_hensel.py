"""
Bernoulli numbers, E_{p-1} and its (p-1)-st root
================================================
"""

from deltapi import PadicCtx, bernoulli, eisenstein_qexp
from deltapi.qexp import eisenstein_root

print("B_0..B_12 :", [str(bernoulli(k)) for k in range(13)])

p = 5
ctx = PadicCtx.zp(p, 8)
E4 = eisenstein_qexp(p, q_prec=8, ctx=ctx)
print("\nE_4 =", E4)

# E_4 = 1 mod 5, so z^4 = E_4 has a unique root z = 1 mod 5
z = eisenstein_root(p, q_prec=8, ctx=ctx)
print("z   =", z)
print("z^4 - E_4 is zero :", (z ** 4 - E4).is_zero())
