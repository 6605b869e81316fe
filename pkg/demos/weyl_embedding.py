"""The Weyl algebra and its image in a deformed Laurent series ring.

Run:  python demos/weyl_embedding.py
"""

from deflaurent import DegreeParams, WeylElement, embed, make_spec, symbol, v_degree

p, q = WeylElement.p(), WeylElement.q()

print("qp               =", q * p)
print("(pq)^2           =", (p * q) ** 2)
print("q^3 p^2          =", q**3 * p**2)

z = 3 * p**2 * q - q**3 + 1
for rho, sigma in [(1, 1), (0, 1), (1, -1)]:
    print(f"v_({rho},{sigma})({z}) =", v_degree(DegreeParams(rho, sigma), z))

# p -> alpha T^r, q -> T^s.  Both sides below are exact finite sums.
for r, s in [(1, 1), (1, 2), (2, -1)]:
    spec = make_spec(r, s)
    print(f"\n(r, s) = ({r}, {s})")
    print("  eta(p)          =", embed(spec, p))
    print("  eta(qp - pq)    =", embed(spec, q * p - p * q))
    print("  eta(q^2 p^2)    =", embed(spec, q**2 * p**2))
    print("  symbol(p^2 q)   =", symbol(r, s, p**2 * q))
