"""
p-adic numbers and the derivation delta_pi
==========================================

Capped-relative elements of Z_p, a ramified and an unramified extension,
together with the Frobenius lift phi and delta_pi(x) = (phi(x) - x^p)/pi.
"""

import random

from deltapi import PadicCtx, c_pi, delta_pi, frobenius

# Z_5 with eight digits of precision
Z5 = PadicCtx.zp(5, 8)
x = Z5(313)
print("x           =", x)
print("delta(x)    =", delta_pi(x))
print("delta(5)    =", delta_pi(Z5(5)), " (5 - 5^5)/5 = -624")

# delta spends one digit: an element known mod 5^8 gives delta mod 5^7
print("abs prec    :", x.abs_prec, "->", delta_pi(x).abs_prec)

# The sum rule delta(x+y) = delta(x) + delta(y) + C_pi(x, y)
rng = random.Random(1)
y = Z5.random_element(rng)
print("sum rule    :", (delta_pi(x + y) - delta_pi(x) - delta_pi(y) - c_pi(x, y)).is_zero())

# A ramified context, pi^2 = 5.  phi is the identity here.
R = PadicCtx.ramified(5, (-5, 0, 1), 8)
pi = R.uniformizer()
print("\nramified pi =", pi, " pi^2 =", pi * pi)
print("delta(pi)   =", delta_pi(pi))

# An unramified quadratic extension, t^2 = 2; phi lifts t -> t^5.
U = PadicCtx.unramified(5, (-2, 0, 1), 8)
t = U.gen()
print("\nunramified  phi(t) =", frobenius(t))
print("phi(t)^2 == 2 :", (frobenius(t) ** 2 - U(2)).is_zero())
print("phi(t) != t   :", not (frobenius(t) - t).is_zero())
