"""Centralizers of degree-zero elements.

For z = a0 + a_-1 T^-1 + ... with a0 not constant, every b0 extends to a
unique w = b0 + b_-1 T^-1 + ... commuting with z.

Run:  python demos/centralizers.py
"""

from deflaurent import DeformedSeries, RatFun, centralizer_solve, commutator, make_spec, power

alpha = RatFun.alpha()
spec = make_spec(1, 1)
z = DeformedSeries(spec, {0: alpha, -1: RatFun(1)})
FLOOR = -7

for b0 in (alpha, alpha**2, alpha**2 + 1, 1 / alpha):
    w = centralizer_solve(z, b0, FLOOR)
    print(f"b0 = {b0.short_string():14} w = {w}")
    print(f"{'':19}[z, w] = {commutator(z, w, floor=FLOOR)}")

print("\nz^2 =", power(z, 2).truncate(FLOOR))
