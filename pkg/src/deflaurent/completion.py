"""Topological generators of the completion, rebasing, and centralizers.

For coprime (r, s) with s != 0 and nu = r + s > 0 pick r i + s j = 1 and set

    T0 = p^i q^j        (degree 1, leading coefficient alpha^i)
    alpha0 = p^s q^-r   (degree 0, leading coefficient alpha^s)

Every element of the completion is  sum_{n <= N} a_n(alpha0) T0^n  with
a_n in Q(x).  ``rebase`` finds the a_n greedily, one leading term at a
time; a leading coefficient outside Q(alpha^|s|) proves non-membership.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .deformation import delta_apply, make_spec
from .errors import InvalidParameter, NotInCompletion, NotSolvable, PrecisionExhausted, SpecMismatch
from .exact_arith import NEG_INF, RatFun, in_power_subfield
from .series import DeformedSeries, commutator, inverse, mul

__all__ = [
    "GeneratorPair",
    "RebasedSeries",
    "bezout_pair",
    "make_generators",
    "rebase",
    "evaluate_rebased",
    "centralizer_solve",
    "case2_leading_constraint",
]


def bezout_pair(r, s):
    """(i, j) with r i + s j = 1: minimal |i|, then minimal |j|, then i > 0."""
    if s == 0 or gcd(r, s) != 1:
        raise InvalidParameter(f"need coprime (r, s) with s != 0, got ({r}, {s})")
    best = None
    for i in range(-abs(s), abs(s) + 1):
        num = 1 - r * i
        if num % s:
            continue
        j = num // s
        key = (abs(i), abs(j), i <= 0)
        if best is None or key < best[0]:
            best = (key, i, j)
    return best[1], best[2]


def _shift(z, m):
    """z . T^m: right multiplication by a power of T only moves exponents."""
    floor = z.floor if z.is_exact else z.floor + m
    return DeformedSeries(z.spec, {n + m: c for n, c in z.coeffs.items()}, floor)


def _p_power(spec, e, floor):
    """(alpha T^r)^e known to ``floor``."""
    P = DeformedSeries(spec, {spec.r: RatFun.alpha()})
    if e >= 0:
        out = DeformedSeries.constant(spec, 1)
        for _ in range(e):
            out = mul(out, P)
        return out.truncate(floor)
    m = -e
    # m factors of degree -r, each known to f, multiply to a floor of f - (m-1) r
    f = floor + (m - 1) * spec.r
    U = inverse(P, floor=min(f, floor))
    out = U
    for _ in range(m - 1):
        # natural floors only: coarsening a partial product would lose digits later
        out = mul(out, U)
    return out.truncate(floor)


def _t0_image(spec, i, j, floor):
    return _shift(_p_power(spec, i, floor - spec.s * j), spec.s * j)


def _alpha0_image(spec, floor):
    return _shift(_p_power(spec, spec.s, floor + spec.r * spec.s), -spec.r * spec.s)


@dataclass(frozen=True, eq=False)
class GeneratorPair:
    r: int
    s: int
    i: int
    j: int
    floor: int
    T0_image: DeformedSeries = field(repr=False)
    alpha0_image: DeformedSeries = field(repr=False)

    @property
    def spec(self):
        return self.T0_image.spec

    def T0_at(self, floor):
        if floor >= self.floor:
            return self.T0_image.truncate(floor)
        return _t0_image(self.spec, self.i, self.j, floor)

    def alpha0_at(self, floor):
        if floor >= self.floor:
            return self.alpha0_image.truncate(floor)
        return _alpha0_image(self.spec, floor)

    def to_record(self):
        return {"r": self.r, "s": self.s, "i": self.i, "j": self.j}


def make_generators(r, s, floor=-12):
    if s == 0:
        raise InvalidParameter("s must be nonzero")
    if r + s <= 0:
        raise InvalidParameter(f"nu = r + s must be positive (got {r + s})")
    i, j = bezout_pair(r, s)
    spec = make_spec(r, s)
    T0 = _t0_image(spec, i, j, floor)
    A0 = _alpha0_image(spec, floor)
    alpha = RatFun.alpha()
    if T0.deg() != 1 or T0.leading_coefficient() != alpha ** i:
        raise AssertionError("T0 image has the wrong leading term")
    if A0.deg() != 0 or A0.leading_coefficient() != alpha ** s:
        raise AssertionError("alpha0 image has the wrong leading term")
    return GeneratorPair(r, s, i, j, floor, T0, A0)


@dataclass(frozen=True)
class RebasedSeries:
    """sum a_n(alpha0) T0^n; each a_n is a rational function of one variable."""

    pair: GeneratorPair
    terms: dict
    floor: int

    def to_record(self):
        return {
            "pair": self.pair.to_record(),
            "floor": self.floor,
            "terms": [[n, str(a)] for n, a in sorted(self.terms.items(), reverse=True)],
        }

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for n, a in sorted(self.terms.items(), reverse=True):
            if n == 0:
                parts.append(a.short_string("a0"))
            elif a == 1:
                parts.append(f"T0^{n}")
            elif a == -1:
                parts.append(f"-T0^{n}")
            else:
                parts.append(f"{a.short_string('a0')}*T0^{n}")
        return " + ".join(parts)


class _Evaluator:
    """Computes a(alpha0) T0^n to a given floor, caching generator powers."""

    def __init__(self, pair):
        self.pair = pair
        self.spec = pair.spec
        self._a0 = {}
        self._t0 = {}

    def alpha0_powers(self, f, k):
        key = f
        if key not in self._a0:
            self._a0[key] = [DeformedSeries.constant(self.spec, 1)]
        pows = self._a0[key]
        if len(pows) <= k:
            A0 = self.pair.alpha0_at(f)
            while len(pows) <= k:
                pows.append(mul(pows[-1], A0, floor=f))
        return pows[k]

    def poly_at_alpha0(self, poly, f):
        out = DeformedSeries.zero(self.spec)
        for k, c in enumerate(poly.coeffs):
            if c:
                out = out + c * self.alpha0_powers(f, k)
        return out.truncate(f)

    def ratfun_at_alpha0(self, a, f):
        num = self.poly_at_alpha0(a.num, f)
        if a.is_polynomial():
            return num
        den = self.poly_at_alpha0(a.den, f)
        return mul(num, inverse(den, floor=f), floor=f)

    def t0_power(self, n, F):
        """T0^n known to floor F."""
        if n == 0:
            return DeformedSeries.constant(self.spec, 1)
        key = (n, F)
        if key not in self._t0:
            if n > 0:
                # n factors of degree 1 known to f: product floor (n-1) + f
                f = F - n + 1
                T0 = self.pair.T0_at(f)
                out = T0
                for _ in range(n - 1):
                    out = mul(out, T0)
            else:
                m = -n
                # inverse floor f - 2, then m factors of degree -1
                f = F + m + 1
                U = inverse(self.pair.T0_at(f), floor=F + m - 1)
                out = U
                for _ in range(m - 1):
                    out = mul(out, U)
            self._t0[key] = out.truncate(F)
        return self._t0[key]

    def term(self, a, n, F):
        """a(alpha0) T0^n known to floor F."""
        return mul(self.ratfun_at_alpha0(a, F - n), self.t0_power(n, F), floor=F)


def _coefficient_function(a_target, s):
    """Turn g with g(alpha^|s|) = c into a with a(alpha^s) = c."""
    if s > 0:
        return a_target
    # alpha^s = (alpha^|s|)^-1, so a(x) = g(1/x)
    return a_target.compose(RatFun.alpha().inverse())


def rebase(pair, z, max_steps=None, floor=None):
    """Greedy leading-term elimination in the (alpha0, T0) coordinates."""
    if z.spec != pair.spec:
        raise SpecMismatch(f"{z.spec!r} vs {pair.spec!r}")
    F = z.floor
    if floor is not None:
        F = max(F, floor)
    if F == NEG_INF:
        F = pair.floor
    ev = _Evaluator(pair)
    alpha = RatFun.alpha()
    rem = z.truncate(F)
    terms = {}
    steps = 0
    while rem.coeffs:
        if max_steps is not None and steps >= max_steps:
            raise PrecisionExhausted(f"rebase step budget of {max_steps} exhausted at degree {rem.deg()}")
        steps += 1
        n = rem.deg()
        c = rem.leading_coefficient()
        g = in_power_subfield(c / alpha ** (pair.i * n), pair.s)
        if g is None:
            raise NotInCompletion(
                f"leading coefficient {c} at degree {n} is not in Q(alpha^{abs(pair.s)}) * alpha^{pair.i * n}",
                degree=n,
                coefficient=c,
            )
        a = _coefficient_function(g, pair.s)
        terms[n] = a
        rem = (rem - ev.term(a, n, F)).truncate(F)
        if rem.coeffs and rem.deg() >= n:
            raise AssertionError("leading term did not cancel")
    return RebasedSeries(pair, terms, F)


def evaluate_rebased(rebased, floor=None):
    F = rebased.floor if floor is None else max(rebased.floor, floor)
    ev = _Evaluator(rebased.pair)
    out = DeformedSeries.zero(rebased.pair.spec).truncate(F)
    for n, a in rebased.terms.items():
        if n > F:
            out = out + ev.term(a, n, F)
    return out


# -- centralizers ------------------------------------------------------------


def _i0(spec):
    i0 = spec.i0
    if i0 is None:
        raise NotSolvable("the family has no nonzero delta_i; every element commutes with L")
    return i0


def centralizer_solve(z, b0, floor=-12):
    """The unique w = b0 + b_-1 T^-1 + ... with [z, w] = 0, known to max(floor, z.floor).

    z must have degree 0 with delta_{i0}(a0) != 0.  The step for b_s reads the
    coefficient d_s of [z, w_partial] at degree s - 1 + i0; adding b_s T^s
    changes that coefficient by -s delta_{i0}(a0) b_s.
    """
    spec = z.spec
    if not z.coeffs or z.deg() != 0:
        raise NotSolvable(f"centralizer solving needs deg z = 0 (got {z.deg()})")
    i0 = _i0(spec)
    a0 = z.leading_coefficient()
    da0 = delta_apply(spec, i0, a0)
    if not da0:
        raise NotSolvable("delta_{i0}(a0) vanishes; z is not in the solvable case")
    b0 = b0 if isinstance(b0, RatFun) else RatFun(b0)
    Fw = max(floor, z.floor)
    drop = 1 - i0
    L = Fw - drop
    # The unknown tail of z (degree <= z.floor) only reaches [z, w] at degree <= z.floor - drop.
    Z = DeformedSeries(spec, z.coeffs)
    w = {0: b0} if b0 else {}
    C = commutator(Z, DeformedSeries.constant(spec, b0), floor=L)
    for s in range(-1, Fw, -1):
        d_s = C.coeffs.get(s - drop)
        if d_s is None:
            continue
        b_s = d_s / (da0 * s)
        w[s] = b_s
        C = C + commutator(Z, DeformedSeries.monomial(spec, b_s, s), floor=L)
        if C.coeffs.get(s - drop):
            raise AssertionError("centralizer step did not clear its coefficient")
    return DeformedSeries(spec, w, Fw)


def case2_leading_constraint(z, w):
    """n a_n delta_{i0}(b_m) - m b_m delta_{i0}(a_n) == 0 for the leading terms."""
    if not z.coeffs or not w.coeffs:
        raise InvalidParameter("both series must have a known nonzero leading term")
    if z.spec != w.spec:
        raise SpecMismatch(f"{z.spec!r} vs {w.spec!r}")
    spec = z.spec
    i0 = _i0(spec)
    n, a_n = z.deg(), z.leading_coefficient()
    m, b_m = w.deg(), w.leading_coefficient()
    expr = a_n * delta_apply(spec, i0, b_m) * n - b_m * delta_apply(spec, i0, a_n) * m
    return expr.is_zero()
