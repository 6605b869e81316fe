"""Products in the deformed ring: the commutation rule, two product routes, inverses.

Run:  python demos/deformed_products.py
"""

from deflaurent import DeformedSeries, RatFun, commutator, inverse, lambda_coeff, make_spec, mul, mul_oracle

alpha = RatFun.alpha()

for r, s in [(0, 1), (1, 1), (1, 2)]:
    spec = make_spec(r, s)
    T, a = DeformedSeries.T(spec), DeformedSeries.alpha(spec)
    print(f"(r, s) = ({r}, {s}), nu = {spec.nu}")
    print("  T . alpha^3        =", mul(T, DeformedSeries.constant(spec, alpha**3)))
    print("  [T^3, alpha]       =", commutator(DeformedSeries.T(spec, 3), a, floor=-12))
    print("  lambda_-2^k, k<=3  =", [str(lambda_coeff(spec, -2, k)) for k in range(4)])

# Non-polynomial coefficients make T^-1 . b an infinite series: truncate it.
spec = make_spec(1, 1)
z = DeformedSeries(spec, {1: alpha, -1: 1 / (alpha + 1)})
w = DeformedSeries(spec, {0: alpha**2, -2: RatFun(3)})
fast = mul(z, w, floor=-6)
slow = mul_oracle(z, w, floor=-6)
print("\nz      =", z)
print("w      =", w)
print("z w    =", fast)
print("oracle agrees:", fast == slow)

u = inverse(z, floor=-6)
print("z^-1   =", u)
print("z z^-1 =", mul(z, u, floor=-6))
