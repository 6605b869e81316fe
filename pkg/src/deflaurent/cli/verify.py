"""Identity suites run by ``deflaurent verify``.

Each suite returns ``(passed, checked, detail)``; ``detail`` names the
first failing case.  Suites are pure and deterministic for a given seed.
"""

import random
from fractions import Fraction

from ..binomial_kit import (
    check_f12,
    check_poly_interpolation,
    check_vandermonde_shift,
    gen_binom,
    phi_closed_form,
    phi_composition_sum,
)
from ..deformation import LEFT_IDENTITY, CoproductTerm, check_condition, coproduct, make_spec
from ..exact_arith import Poly, RatFun
from ..series import DeformedSeries, commutator, lambda_coeff
from ..weyl import WeylElement, embed

SPEC_SET = [(0, 1), (1, 1), (1, 2), (2, 1), (2, -1), (-1, 3)]

# Known expansions of Delta(delta_i) for i = 0, -1, -2, -3, zero terms dropped
COPRODUCT_TABLE = {
    0: [(1, LEFT_IDENTITY, (0,)), (1, 0, ())],
    -1: [(1, LEFT_IDENTITY, (-1,)), (1, -1, ())],
    -2: [(1, LEFT_IDENTITY, (-2,)), (1, -2, ()), (gen_binom(-1, 1), -1, (0,))],
    -3: [
        (1, LEFT_IDENTITY, (-3,)),
        (1, -3, ()),
        (gen_binom(-1, 1), -1, (-1,)),
        (gen_binom(-2, 1), -2, (0,)),
        (gen_binom(-1, 2), -1, (0, 0)),
    ],
}


def _first_failure(cases, check):
    n = 0
    for case in cases:
        n += 1
        if not check(case):
            return False, n, f"failed at {case}"
    return True, n, ""


def suite_vandermonde(seed):
    values = [Fraction(a) for a in range(-3, 6)] + [Fraction(1, 2), Fraction(-1, 3), Fraction(7, 2)]
    cases = [(a, m, t) for a in values for m in range(7) for t in range(7)]
    return _first_failure(cases, lambda c: check_vandermonde_shift(*c))


def suite_interpolation(seed):
    rng = random.Random(seed)
    zs = [Fraction(z) for z in range(-3, 6)] + [Fraction(1, 2)]
    cases = []
    for l in range(6):
        for z in zs:
            deg = rng.randint(0, l)
            p = Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(deg + 1)])
            cases.append((l, p, z))
    return _first_failure(cases, lambda c: check_poly_interpolation(*c))


def suite_phi(seed):
    cases = [(i, l, nu) for l in range(1, 8) for i in range(1, l + 1) for nu in range(1, 6)]
    return _first_failure(cases, lambda c: phi_composition_sum(*c) == phi_closed_form(*c))


def suite_f12(seed):
    cases = [(l, u, nu) for l in range(1, 6) for u in range(1, 6) for nu in range(1, 6)]
    return _first_failure(cases, lambda c: check_f12(*c))


def suite_lambda(seed):
    spec = make_spec(0, 1)
    cases = [(i, k) for i in range(-10, 11) for k in range(9)]
    return _first_failure(cases, lambda c: lambda_coeff(spec, *c) == gen_binom(*c))


def suite_commutator(seed):
    alpha = RatFun.alpha()

    def check(case):
        (r, s), n = case
        spec = make_spec(r, s)
        c = commutator(DeformedSeries.T(spec, n), DeformedSeries.constant(spec, alpha), floor=-15)
        want = {n - spec.nu: RatFun(Fraction(n, s))} if n else {}
        return c.coeffs == want

    cases = [(rs, n) for rs in SPEC_SET for n in range(-6, 7)]
    return _first_failure(cases, check)


def suite_weyl_relation(seed):
    p, q = WeylElement.p(), WeylElement.q()

    def check(rs):
        spec = make_spec(*rs)
        d = embed(spec, q * p) - embed(spec, p * q)
        return d.is_exact and d.coeffs == {0: RatFun(1)}

    return _first_failure(SPEC_SET, check)


def _random_ratfun(rng, max_deg=2):
    num = [rng.randint(-9, 9) for _ in range(rng.randint(1, max_deg + 1))]
    den = [rng.randint(-9, 9) for _ in range(rng.randint(1, max_deg + 1))]
    if not any(den):
        den = [1]
    return RatFun(num, den)


def suite_condition(seed):
    rng = random.Random(seed)
    pairs = [(_random_ratfun(rng), _random_ratfun(rng)) for _ in range(3)]
    cases = [(rs, i, ab) for rs in SPEC_SET for i in range(-12, 1) for ab in pairs]
    return _first_failure(cases, lambda c: check_condition(make_spec(*c[0]), c[1], *c[2]))


def suite_coproduct(seed):
    def check(i):
        want = sorted(CoproductTerm(Fraction(c), l, js) for c, l, js in COPRODUCT_TABLE[i])
        return coproduct(None, i) == want

    return _first_failure(sorted(COPRODUCT_TABLE, reverse=True), check)


SUITES = {
    "vandermonde": suite_vandermonde,
    "interpolation": suite_interpolation,
    "phi": suite_phi,
    "f12": suite_f12,
    "lambda": suite_lambda,
    "commutator": suite_commutator,
    "weyl-relation": suite_weyl_relation,
    "condition": suite_condition,
    "coproduct": suite_coproduct,
}


def run_suites(names=None, seed=0):
    out = []
    for name in names or list(SUITES):
        passed, checked, detail = SUITES[name](seed)
        out.append({"suite": name, "passed": passed, "checked": checked, "detail": detail})
    return out
