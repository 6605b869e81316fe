"""The combinatorial and operator identities behind associativity.

Run:  python demos/identities.py
"""

from deflaurent import RatFun, check_condition, coproduct, make_spec
from deflaurent.cli.verify import run_suites

for i in (0, -1, -2, -3):
    terms = " + ".join(str(t) for t in coproduct(None, i))
    print(f"Delta(d{i}) = {terms}")

spec = make_spec(2, 1)
alpha = RatFun.alpha()
a, b = (alpha**3 + 1) / (alpha - 2), alpha**4 - alpha
print("\ncompatibility condition for (2, 1), i = 0..-9:", all(check_condition(spec, i, a, b) for i in range(0, -10, -1)))

print()
for res in run_suites():
    print(f"{'PASS' if res['passed'] else 'FAIL'} {res['suite']:14} {res['checked']:4} cases")
