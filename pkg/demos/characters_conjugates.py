"""
Teichmueller lifts, conjugate weights and the Serre condition
=============================================================
"""

from deltapi import CharacterData, PadicCtx, check_serre_compat, conjugates, teichmuller

ctx = PadicCtx.zp(7, 6)
for d in range(1, 7):
    th = teichmuller(d, ctx)
    print(f"Theta({d}) = {th}   Theta^6 = 1: {(th ** 6 - ctx.one()).is_zero()}")

print()
for kappa in (3, 4, 5, 6, 7):
    print(f"conjugates of kappa = {kappa} mod 7 :", conjugates(7, kappa))

# A quadratic character mod 7 and the weights it is compatible with
eps = CharacterData.from_generator(7, order=2, exponent=1)
print()
for kappa in range(2, 8):
    print(f"kappa = {kappa}: Serre compatible = {check_serre_compat(eps, kappa, 7)}")
