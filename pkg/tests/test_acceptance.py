"""Acceptance criteria 1-15, one PASS/FAIL line each.

Run alone with ``pytest -m acceptance -s``; the lines are also repeated in
the terminal summary of any pytest run that includes this file.
"""

import io
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from deflaurent.binomial_kit import (
    check_f12,
    check_poly_interpolation,
    check_vandermonde_shift,
    gen_binom,
    phi_closed_form,
    phi_composition_sum,
)
from deflaurent.cli import main
from deflaurent.completion import centralizer_solve, evaluate_rebased, make_generators, rebase
from deflaurent.deformation import LEFT_IDENTITY, CoproductTerm, DiffOp, check_condition, coproduct, make_custom_spec, make_spec
from deflaurent.errors import NotInCompletion
from deflaurent.exact_arith import Poly, RatFun
from deflaurent.series import DeformedSeries, commutator, equal_to_floor, inverse, lambda_coeff, mul, mul_oracle
from deflaurent.weyl import DegreeParams, WeylElement, embed, normal_order_word, symbol, v_degree, weyl_mul

from _gen import REBASE_SET, SPEC_SET, random_ratfun, random_series, random_weyl, random_word

pytestmark = pytest.mark.acceptance

alpha = RatFun.alpha()
p, q = WeylElement.p(), WeylElement.q()
GOLDEN = Path(__file__).parent / "golden"


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c01_lambda_specialisation(criterion):
    spec = make_spec(0, 1)
    with Clock() as c:
        bad = [(i, k) for i in range(-10, 11) for k in range(9) if lambda_coeff(spec, i, k) != gen_binom(i, k)]
    assert criterion(1, f"lambda_i^k = C(i,k) for (0,1), 189 cases, {len(bad)} mismatches", not bad, c.elapsed, 1)


def test_c02_commutator_identity(criterion):
    bad = []
    with Clock() as c:
        for rs in SPEC_SET:
            spec = make_spec(*rs)
            for n in range(-6, 7):
                got = commutator(DeformedSeries.T(spec, n), DeformedSeries.alpha(spec), floor=-15)
                want = {n - spec.nu: RatFun(Fraction(n, spec.s))} if n else {}
                if got.coeffs != want:
                    bad.append((rs, n))
    assert criterion(2, f"[T^n, alpha] = n/s T^(n-nu), 78 cases, {len(bad)} mismatches", not bad, c.elapsed, 5)


def test_c03_weyl_relation(criterion):
    bad = []
    with Clock() as c:
        for rs in SPEC_SET:
            spec = make_spec(*rs)
            d = embed(spec, q * p) - embed(spec, p * q)
            if not (d.is_exact and d.coeffs == {0: RatFun(1)}):
                bad.append(rs)
    assert criterion(3, f"embed(qp) - embed(pq) = 1 exactly, {len(bad)} failures", not bad, c.elapsed, 2)


def test_c04_associativity(criterion):
    rng = random.Random(4)
    bad = 0
    with Clock() as c:
        for rs in SPEC_SET:
            spec = make_spec(*rs)
            for _ in range(100):
                a, b, d = (random_series(rng, spec) for _ in range(3))
                left = mul(mul(a, b, floor=-10), d, floor=-10)
                right = mul(a, mul(b, d, floor=-10), floor=-10)
                bad += not equal_to_floor(left, right, -10)
    assert criterion(4, f"associativity, 600 triples at floor -10, {bad} failures", bad == 0, c.elapsed, 60)


def test_c05_oracle_equivalence(criterion):
    rng = random.Random(5)
    bad = 0
    with Clock() as c:
        for rs in SPEC_SET:
            spec = make_spec(*rs)
            for _ in range(200):
                a, b = random_series(rng, spec), random_series(rng, spec)
                bad += mul(a, b, floor=-10) != mul_oracle(a, b, floor=-10)
    assert criterion(5, f"mul == mul_oracle, 1200 pairs, {bad} mismatches", bad == 0, c.elapsed, 60)


def test_c06_inversion(criterion):
    rng = random.Random(6)
    bad = 0
    with Clock() as c:
        for rs in SPEC_SET:
            spec = make_spec(*rs)
            one = DeformedSeries.constant(spec, 1)
            for _ in range(100):
                z = random_series(rng, spec)
                u = inverse(z, floor=-10)
                bad += not equal_to_floor(mul(z, u, floor=-10), one, -10)
                bad += not equal_to_floor(mul(u, z, floor=-10), one, -10)
    assert criterion(6, f"two-sided inverse, 600 series, {bad} failures", bad == 0, c.elapsed, 30)


def test_c07_delta_condition(criterion):
    rng = random.Random(7)
    bad = 0
    with Clock() as c:
        for rs in SPEC_SET:
            spec = make_spec(*rs)
            for _ in range(20):
                a, b = random_ratfun(rng), random_ratfun(rng)
                bad += sum(not check_condition(spec, i, a, b) for i in range(-12, 1))
        broken = make_custom_spec({0: DiffOp.multiplication(alpha)})
        a, b = random_ratfun(rng, nonzero=True), random_ratfun(rng, nonzero=True)
        rejected = not check_condition(broken, 0, a, b)
    ok = bad == 0 and rejected
    title = f"delta-condition, 1560 checks, {bad} failures; broken family rejected: {rejected}"
    assert criterion(7, title, ok, c.elapsed, 30)


def test_c08_coproduct_table(criterion):
    def t(coeff, l, js=()):
        return CoproductTerm(Fraction(coeff), l, tuple(js))

    table = {
        0: [t(1, LEFT_IDENTITY, [0]), t(1, 0)],
        -1: [t(1, LEFT_IDENTITY, [-1]), t(1, -1)],
        -2: [t(1, LEFT_IDENTITY, [-2]), t(1, -2), t(gen_binom(-1, 1), -1, [0])],
        -3: [
            t(1, LEFT_IDENTITY, [-3]),
            t(1, -3),
            t(gen_binom(-1, 1), -1, [-1]),
            t(gen_binom(-2, 1), -2, [0]),
            t(gen_binom(-1, 2), -1, [0, 0]),
        ],
    }
    with Clock() as c:
        bad = [i for i, terms in table.items() if coproduct(None, i) != sorted(terms)]
    assert criterion(8, f"coproduct matches the four listed lines, {len(bad)} mismatches", not bad, c.elapsed, 1)


def test_c09_combinatorial_grids(criterion):
    rng = random.Random(9)
    with Clock() as c:
        values = [Fraction(a) for a in range(-3, 6)] + [Fraction(1, 2), Fraction(-1, 3), Fraction(7, 2)]
        vdm = all(check_vandermonde_shift(a, m, t) for a in values for m in range(7) for t in range(7))
        zs = [Fraction(z) for z in range(-3, 6)] + [Fraction(1, 2)]
        interp = True
        for l in range(6):
            for z in zs:
                coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(0, l) + 1)]
                interp &= check_poly_interpolation(l, Poly(coeffs), z)
        phi = all(
            phi_composition_sum(i, l, nu) == phi_closed_form(i, l, nu)
            for l in range(1, 8)
            for i in range(1, l + 1)
            for nu in range(1, 6)
        )
        f12 = all(check_f12(l, u, nu) for l in range(1, 6) for u in range(1, 6) for nu in range(1, 6))
    ok = vdm and interp and phi and f12
    title = f"grids: vandermonde {vdm}, interpolation {interp}, phi {phi}, f12 {f12}"
    assert criterion(9, title, ok, c.elapsed, 30)


def test_c10_weyl_product_oracle(criterion):
    rng = random.Random(10)

    def element(word):
        out = WeylElement.scalar(1)
        for ch in word:
            out = out * (p if ch == "p" else q)
        return out

    bad = 0
    with Clock() as c:
        for _ in range(100):
            u, v = random_word(rng), random_word(rng)
            bad += weyl_mul(element(u), element(v)) != normal_order_word(u + v)
        square = weyl_mul(p * q, p * q) == WeylElement.monomial(2, 2) + p * q
    ok = bad == 0 and square
    assert criterion(10, f"PBW product vs rewriting, 100 pairs, {bad} mismatches; (pq)^2 ok: {square}", ok, c.elapsed, 10)


def test_c11_degree_laws(criterion):
    rng = random.Random(11)
    bad = 0
    with Clock() as c:
        for rho, sigma in [(1, 1), (0, 1), (1, -1), (2, 3), (Fraction(1, 2), Fraction(1, 3))]:
            params = DegreeParams(rho, sigma)
            for _ in range(100):
                z, w = random_weyl(rng), random_weyl(rng)
                bad += v_degree(params, z * w) != v_degree(params, z) + v_degree(params, w)
                bad += v_degree(params, z + w) > max(v_degree(params, z), v_degree(params, w))
    assert criterion(11, f"v multiplicative and subadditive, 500 pairs, {bad} failures", bad == 0, c.elapsed, 10)


def test_c12_rebase(criterion):
    rng = random.Random(12)
    bad = 0
    with Clock() as c:
        for rs in REBASE_SET:
            pair = make_generators(*rs, floor=-10)
            for _ in range(20):
                e = embed(pair.spec, random_weyl(rng), floor=-10)
                try:
                    back = evaluate_rebased(rebase(pair, e))
                except NotInCompletion:
                    bad += 1
                    continue
                bad += not equal_to_floor(back, e, -10)
        pair = make_generators(1, 2, floor=-10)
        try:
            rebase(pair, DeformedSeries.alpha(pair.spec).truncate(-10))
            rejected = False
        except NotInCompletion:
            rejected = True
    ok = bad == 0 and rejected
    title = f"rebase round trip, 100 embedded elements, {bad} failures; alpha rejected for s = 2: {rejected}"
    assert criterion(12, title, ok, c.elapsed, 120)


def _random_z(rng, spec):
    while True:
        a0 = random_ratfun(rng, 2, nonzero=True)
        if not a0.is_constant():
            break
    terms = {0: a0}
    for d in rng.sample(range(-3, 0), rng.randint(0, 2)):
        terms[d] = random_ratfun(rng, 2, nonzero=True)
    return DeformedSeries(spec, terms)


def test_c13_centralizer(criterion):
    rng = random.Random(13)
    commuting = unique = additive = 0
    total = 0
    with Clock() as c:
        for rs in SPEC_SET:
            spec = make_spec(*rs)
            for _ in range(10):
                z = _random_z(rng, spec)
                bs = [random_ratfun(rng, 2) for _ in range(3)]
                ws = [centralizer_solve(z, b, -10) for b in bs]
                total += 1
                commuting += all(not commutator(z, w, floor=-10).coeffs for w in ws)
                unique += all(
                    equal_to_floor(centralizer_solve(z, w.coefficient(0), -10), w, -10) for w in ws
                ) and equal_to_floor(centralizer_solve(z, z.coefficient(0), -10), z, -10)
                additive += equal_to_floor(centralizer_solve(z, bs[0] + bs[1], -10), ws[0] + ws[1], -10)
    ok = commuting == unique == additive == total
    title = f"centralizer, {total} z x 3 b0: commute {commuting}/{total}, unique {unique}/{total}, additive {additive}/{total}"
    assert criterion(13, title, ok, c.elapsed, 60)


def test_c14_symbol_map(criterion):
    rng = random.Random(14)
    bad = 0
    with Clock() as c:
        for r, s in SPEC_SET:
            for _ in range(50):
                z, w = random_weyl(rng), random_weyl(rng)
                bad += symbol(r, s, z * w) != symbol(r, s, z) * symbol(r, s, w)
            # X = u Y^0 . Y^(r/s) and Y = 1 . Y^(s/s)
            bad += symbol(r, s, p).to_xy_terms() != [(1, 1, 0)]
            bad += symbol(r, s, q).to_xy_terms() != [(1, 0, 1)]
    assert criterion(14, f"symbol multiplicative on 300 pairs, X and Y recovered; {bad} failures", bad == 0, c.elapsed, 10)


def test_c15_golden_files(criterion):
    cases = json.loads((GOLDEN / "manifest.json").read_text())
    names = {case["name"] for case in cases}
    required = {"comm_T3_alpha", "weyl_qp", "embed_inv_q"}
    bad = []
    with Clock() as c:
        for case in cases:
            out, err = io.StringIO(), io.StringIO()
            code = main(case["args"], out=out, err=err)
            name = case["name"]
            same = (
                out.getvalue() == (GOLDEN / f"{name}.out").read_text()
                and err.getvalue() == (GOLDEN / f"{name}.err").read_text()
                and f"{code}\n" == (GOLDEN / f"{name}.code").read_text()
            )
            if not same:
                bad.append(name)
    ok = not bad and required <= names and len(cases) >= 13
    assert criterion(15, f"golden CLI outputs, {len(cases)} commands, {len(bad)} differ", ok, c.elapsed, 5)
