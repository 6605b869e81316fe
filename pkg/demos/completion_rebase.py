"""Rewriting series in the generators T0 = p^i q^j, alpha0 = p^s q^-r.

A successful rebase is a membership certificate for the completion of the
Weyl division ring; a failure names the first coefficient that cannot be
written as a function of alpha0.

Run:  python demos/completion_rebase.py
"""

from deflaurent import DeformedSeries, NotInCompletion, RatFun, WeylElement, embed, evaluate_rebased, make_generators, rebase

p, q = WeylElement.p(), WeylElement.q()
FLOOR = -8

for r, s in [(1, 1), (1, 2), (3, 2), (2, -1)]:
    pair = make_generators(r, s, floor=FLOOR)
    print(f"(r, s) = ({r}, {s}): T0 = p^{pair.i} q^{pair.j}, alpha0 = p^{s} q^{-r}")
    for z in (p, q, p**2 * q):
        e = embed(pair.spec, z, floor=FLOOR)
        rb = rebase(pair, e)
        back = evaluate_rebased(rb)
        print(f"  {z!s:8} -> {rb.render()}    (round trip ok: {back == e})")

pair = make_generators(1, 2, floor=FLOOR)
try:
    rebase(pair, DeformedSeries.alpha(pair.spec).truncate(FLOOR))
except NotInCompletion as exc:
    print("\nalpha for (1, 2):", exc)
alpha = RatFun.alpha()
rb = rebase(pair, DeformedSeries.constant(pair.spec, alpha**2).truncate(FLOOR))
print("alpha^2 for (1, 2):", rb.render())
