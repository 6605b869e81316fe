import random
from fractions import Fraction

import pytest

from deflaurent.binomial_kit import gen_binom
from deflaurent.deformation import (
    LEFT_IDENTITY,
    CoproductTerm,
    DeformationSpec,
    DiffOp,
    apply_coproduct,
    check_condition,
    coproduct,
    delta_apply,
    make_custom_spec,
    make_spec,
)
from deflaurent.errors import InvalidParameter
from deflaurent.exact_arith import RatFun

from _gen import SPEC_SET, random_ratfun

alpha = RatFun.alpha()


def term(c, l, js=()):
    return CoproductTerm(Fraction(c), l, tuple(js))


# -- make_spec / delta_apply ---------------------------------------------------


def test_make_spec_01_degenerates_to_plain_derivative():
    spec = make_spec(0, 1)
    assert spec.nu == 1
    assert spec.d(1) == 1
    assert all(spec.d(k) == 0 for k in range(2, 8))
    assert spec.support(-20) == [0]
    assert delta_apply(spec, 0, alpha**2) == 2 * alpha


def test_make_spec_11():
    spec = make_spec(1, 1)
    assert spec.nu == 2
    assert spec.d(1) == 1
    assert spec.d(2) == -1
    assert spec.i0 == -1


@pytest.mark.parametrize("rs", [(0, 0), (3, 0), (1, -1), (-3, 2)])
def test_make_spec_rejects(rs):
    with pytest.raises(InvalidParameter):
        make_spec(*rs)


def test_delta_one_is_identity():
    f = (alpha**2 + 3) / (alpha - 1)
    for rs in SPEC_SET:
        assert delta_apply(make_spec(*rs), 1, f) == f


def test_delta_apply_examples():
    assert delta_apply(make_spec(1, 1), -1, alpha**3) == 3 * alpha**2
    # delta_{1-2nu} for (1, 2): d_2 / 2! D^2 with d_2 = (1)(1-3)/4 = -1/2
    spec = make_spec(1, 2)
    assert delta_apply(spec, -5, alpha**3) == Fraction(-1, 4) * 6 * alpha


def test_off_lattice_indices_vanish():
    f = (alpha**3 + 1) / (alpha + 2)
    for rs in SPEC_SET:
        spec = make_spec(*rs)
        for i in range(-12, 1):
            if (1 - i) % spec.nu:
                assert delta_apply(spec, i, f) == 0
                assert spec.delta(i) is None
                assert coproduct(spec, i) == []


def test_delta_rejects_positive_index():
    with pytest.raises(InvalidParameter):
        make_spec(1, 1).delta(1)


def test_operator_composition_matches_repeated_application():
    rng = random.Random(11)
    for rs in SPEC_SET:
        spec = make_spec(*rs)
        ops = spec.support(-9)
        for i in ops:
            for j in ops:
                f = random_ratfun(rng, 3)
                composed = spec.delta(i).compose(spec.delta(j))
                assert composed(f) == delta_apply(spec, i, delta_apply(spec, j, f))


def test_diffop_composition_with_coefficients():
    # (alpha D) o (alpha D) = alpha D + alpha^2 D^2
    a = DiffOp.derivative(1, alpha)
    assert a.compose(a) == DiffOp([(1, alpha), (2, alpha**2)])


def test_diffop_linear():
    op = DiffOp([(0, alpha), (2, RatFun(3))])
    f, g = alpha**4, 1 / (alpha + 1)
    assert op(f + g) == op(f) + op(g)
    assert op(f * 5) == op(f) * 5


# -- condition ---------------------------------------------------------------


def test_condition_examples():
    rng = random.Random(12)
    spec = make_spec(0, 1)
    for _ in range(10):
        assert check_condition(spec, 0, random_ratfun(rng), random_ratfun(rng))
    assert check_condition(make_spec(1, 1), -1, alpha, alpha)


def test_condition_concrete_families():
    rng = random.Random(13)
    pairs = [(random_ratfun(rng, 2), random_ratfun(rng, 2)) for _ in range(3)]
    for rs in SPEC_SET:
        spec = make_spec(*rs)
        for i in range(-12, 1):
            for a, b in pairs:
                assert check_condition(spec, i, a, b), (rs, i)


def test_condition_fails_for_multiplication_operator():
    broken = make_custom_spec({0: DiffOp.multiplication(alpha)})
    assert not check_condition(broken, 0, alpha + 1, alpha**2 - 3)


def test_condition_holds_for_custom_derivation():
    # delta_0 = alpha D is a derivation; everything else zero
    spec = make_custom_spec({0: DiffOp.derivative(1, alpha)})
    assert check_condition(spec, 0, alpha**2 + 1, 1 / alpha)


def test_custom_spec_rejects_positive_index():
    with pytest.raises(InvalidParameter):
        make_custom_spec({1: DiffOp.identity()})


# -- coproduct ---------------------------------------------------------------


def test_coproduct_known_expansions():
    assert coproduct(None, 0) == sorted([term(1, LEFT_IDENTITY, [0]), term(1, 0)])
    assert coproduct(None, -1) == sorted([term(1, LEFT_IDENTITY, [-1]), term(1, -1)])
    assert coproduct(None, -2) == sorted(
        [term(1, LEFT_IDENTITY, [-2]), term(1, -2), term(gen_binom(-1, 1), -1, [0])]
    )
    assert coproduct(None, -3) == sorted(
        [
            term(1, LEFT_IDENTITY, [-3]),
            term(1, -3),
            term(-1, -1, [-1]),
            term(-2, -2, [0]),
            term(1, -1, [0, 0]),
        ]
    )


def test_coproduct_index_constraint():
    for i in range(-7, 1):
        for t in coproduct(None, i):
            if t.l is LEFT_IDENTITY:
                assert t.j_list == (i,)
            else:
                k = len(t.j_list)
                assert sum(t.j_list) - k + t.l == i
                assert t.coeff != 0


def test_coproduct_with_spec_drops_dead_factors():
    got = coproduct(make_spec(1, 1), -3)
    # only odd indices survive for nu = 2
    assert got == sorted([term(1, LEFT_IDENTITY, [-3]), term(1, -3), term(-1, -1, [-1])])
    assert [str(t) for t in coproduct(make_spec(1, 1), -3)] == ["1*(1 x d-3)", "-1*(d-1 x d-1)", "1*(d-3 x 1)"]


def test_coproduct_applied_reproduces_delta_of_product():
    rng = random.Random(14)
    for rs in SPEC_SET:
        spec = make_spec(*rs)
        for i in range(-8, 1):
            a, b = random_ratfun(rng, 2), random_ratfun(rng, 2)
            assert apply_coproduct(spec, coproduct(spec, i), a, b) == delta_apply(spec, i, a * b)


def test_coproduct_rejects_positive():
    with pytest.raises(InvalidParameter):
        coproduct(None, 1)


# -- records -------------------------------------------------------------------


def test_record_round_trip():
    for rs in SPEC_SET:
        spec = make_spec(*rs)
        assert DeformationSpec.from_record(spec.to_record()) == spec
    custom = make_custom_spec({0: DiffOp.derivative(1, alpha), -2: DiffOp([(0, alpha), (1, RatFun(2))])})
    assert DeformationSpec.from_record(custom.to_record()) == custom


def test_record_inconsistent_delta_rejected():
    rec = make_spec(1, 1).to_record()
    rec["deltas"][0][1][0][1] = "5"
    with pytest.raises(InvalidParameter):
        DeformationSpec.from_record(rec)
