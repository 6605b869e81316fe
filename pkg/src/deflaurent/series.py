"""Truncated deformed Laurent series  sum_{floor < i <= n} c_i(alpha) T^i.

Precision contract
------------------
A :class:`DeformedSeries` is an exact finite sum of stored terms, known
modulo everything of degree <= ``floor``.  ``floor = NEG_INF`` marks an
exactly known element (a finite sum with no unknown tail).  With
``ub = deg`` when terms are stored and ``ub = floor`` otherwise:

* sum:      floor = max(floor1, floor2)
* product:  floor = max(ub1 + floor2, ub2 + floor1)
* inverse:  floor = floor - 2 * deg

Every product and inverse accepts an optional ``floor`` which coarsens the
result further (and is required when an exact computation would not end).
"""

import json
from fractions import Fraction
from math import inf

from .binomial_kit import gen_binom
from .deformation import DeformationSpec, delta_apply, delta_sequence_sums, make_spec
from .errors import DivisionByZero, InvalidParameter, PrecisionExhausted, SpecMismatch
from .exact_arith import NEG_INF, RatFun

__all__ = [
    "DeformedSeries",
    "RightSeries",
    "lambda_coeff",
    "mul",
    "mul_oracle",
    "mul_right",
    "inverse",
    "power",
    "commutator",
    "anti_iso",
    "in_valuation_ring",
    "equal_to_floor",
    "deg",
]


def _as_ratfun(c):
    return c if isinstance(c, RatFun) else RatFun(c)


def _check_floor(f):
    if f is None or f == NEG_INF:
        return NEG_INF
    if isinstance(f, float):
        raise InvalidParameter(f"floor must be an integer or -inf, got {f}")
    return int(f)


class _SeriesBase:
    __slots__ = ("spec", "coeffs", "floor")

    def __init__(self, spec, coeffs=(), floor=NEG_INF):
        floor = _check_floor(floor)
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        clean = {}
        for n, c in items:
            n = int(n)
            if n <= floor:
                continue
            c = _as_ratfun(c)
            if n in clean:
                c = clean[n] + c
            if c:
                clean[n] = c
            else:
                clean.pop(n, None)
        self.spec = spec
        self.coeffs = dict(sorted(clean.items(), reverse=True))
        self.floor = floor

    @classmethod
    def zero(cls, spec):
        return cls(spec)

    @classmethod
    def constant(cls, spec, c):
        return cls(spec, {0: c})

    @classmethod
    def monomial(cls, spec, c, n):
        return cls(spec, {n: c})

    @classmethod
    def T(cls, spec, n=1):
        return cls(spec, {n: RatFun(1)})

    @classmethod
    def alpha(cls, spec):
        return cls(spec, {0: RatFun.alpha()})

    @property
    def is_exact(self):
        return self.floor == NEG_INF

    def is_zero(self):
        """Exact zero (not merely zero above the floor)."""
        return not self.coeffs and self.is_exact

    def deg(self):
        """Standard degree: top stored exponent, -inf when nothing is stored."""
        return next(iter(self.coeffs)) if self.coeffs else NEG_INF

    @property
    def ub(self):
        """Upper bound on the true degree."""
        return self.deg() if self.coeffs else self.floor

    def leading_coefficient(self):
        if not self.coeffs:
            raise PrecisionExhausted("no term is known above the floor")
        return next(iter(self.coeffs.values()))

    def coefficient(self, n):
        if n <= self.floor:
            raise PrecisionExhausted(f"degree {n} is at or below the floor {self.floor}")
        return self.coeffs.get(n, RatFun(0))

    def terms(self):
        """(degree, coefficient) pairs in descending degree."""
        return list(self.coeffs.items())

    def truncate(self, floor):
        floor = _check_floor(floor)
        return type(self)(self.spec, self.coeffs, max(self.floor, floor))

    def _same(self, other):
        if not isinstance(other, _SeriesBase) or type(other) is not type(self):
            raise TypeError("cannot combine series of different kinds")
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec!r} vs {other.spec!r}")

    def __add__(self, other):
        if not isinstance(other, _SeriesBase):
            other = type(self).constant(self.spec, _as_ratfun(other))
        self._same(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out[n] + c if n in out else c
        return type(self)(self.spec, out, max(self.floor, other.floor))

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return type(self)(self.spec, {n: -c for n, c in self.coeffs.items()}, self.floor)

    def __sub__(self, other):
        if not isinstance(other, _SeriesBase):
            other = type(self).constant(self.spec, _as_ratfun(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def equal_to_floor(self, other, floor=None):
        return equal_to_floor(self, other, floor)

    def __eq__(self, other):
        if not isinstance(other, _SeriesBase) or type(other) is not type(self):
            return NotImplemented
        return self.spec == other.spec and self.floor == other.floor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, self.floor, tuple(self.coeffs.items())))

    # -- text ---------------------------------------------------------------

    def _term_string(self, n, c):
        raise NotImplementedError

    def render(self):
        if not self.coeffs:
            return "0"
        return " + ".join(self._term_string(n, c) for n, c in self.coeffs.items())

    def __str__(self):
        return self.render()

    def __repr__(self):
        tail = "" if self.is_exact else f" + O(T^{self.floor})"
        return f"{type(self).__name__}({self.render()}{tail})"

    def to_record(self):
        if self.spec.is_concrete:
            spec = {"r": self.spec.r, "s": self.spec.s}
        else:
            spec = self.spec.to_record()
        return {
            "spec": spec,
            "floor": None if self.is_exact else self.floor,
            "terms": [[n, str(c)] for n, c in self.coeffs.items()],
        }

    @classmethod
    def from_record(cls, rec):
        spec_rec = rec["spec"]
        if spec_rec.get("mode", "concrete") == "concrete":
            spec = make_spec(spec_rec["r"], spec_rec["s"])
        else:
            spec = DeformationSpec.from_record(spec_rec)
        floor = NEG_INF if rec.get("floor") is None else rec["floor"]
        return cls(spec, [(n, RatFun.parse(c)) for n, c in rec["terms"]], floor)

    def to_json(self):
        return json.dumps(self.to_record(), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_record(json.loads(text))


class DeformedSeries(_SeriesBase):
    """Element sum a_i T^i of L((T^-1)) with coefficients on the left."""

    __slots__ = ()

    def _term_string(self, n, c):
        if n == 0:
            return c.short_string()
        if c == 1:
            return f"T^{n}"
        if c == -1:
            return f"-T^{n}"
        return f"{c.short_string()}*T^{n}"

    def __mul__(self, other):
        if isinstance(other, DeformedSeries):
            return mul(self, other)
        return mul(self, DeformedSeries.constant(self.spec, _as_ratfun(other)))

    def __rmul__(self, other):
        # c * (sum a_i T^i) = sum (c a_i) T^i: left scalars act on coefficients.
        c = _as_ratfun(other)
        return DeformedSeries(self.spec, {n: c * a for n, a in self.coeffs.items()}, self.floor)

    def __pow__(self, n):
        return power(self, n)


class RightSeries(_SeriesBase):
    """Element sum T^i a_i with coefficients written on the right."""

    __slots__ = ()

    def _term_string(self, n, c):
        if n == 0:
            return c.short_string()
        if c == 1:
            return f"T^{n}"
        if c == -1:
            return f"-T^{n}"
        return f"T^{n}*{c.short_string()}"

    def __mul__(self, other):
        return mul_right(self, other)


def deg(z):
    return z.deg()


def in_valuation_ring(z):
    return z.ub <= 0


def equal_to_floor(z1, z2, floor=None):
    """Agreement of all coefficients above the weaker of the floors (and ``floor``)."""
    if z1.spec != z2.spec:
        raise SpecMismatch(f"{z1.spec!r} vs {z2.spec!r}")
    f = max(z1.floor, z2.floor, _check_floor(floor))
    keys = {n for n in z1.coeffs if n > f} | {n for n in z2.coeffs if n > f}
    return all(z1.coeffs.get(n) == z2.coeffs.get(n) for n in keys)


# -- lambda coefficients --------------------------------------------------------


def lambda_coeff(spec, i, k):
    """lambda_i^k with T^i . b = sum_k lambda_i^k b^(k) T^(i - k nu)."""
    if not spec.is_concrete:
        raise InvalidParameter("lambda coefficients exist only for concrete (r, s) specs")
    if k < 0:
        raise InvalidParameter("k must be nonnegative")
    if k == 0:
        return Fraction(1)
    nu = spec.nu
    total = Fraction(0)
    for l in range(1, k + 1):
        total += (-1) ** (k - l) * gen_binom(i, l) * gen_binom(i - l - 1, k - l) * gen_binom(Fraction(l, nu), k)
    return (Fraction(nu, spec.s)) ** k * total


# -- products ---------------------------------------------------------------


class _Acc:
    """Collects contributions per degree and sums them once at the end."""

    def __init__(self):
        self.parts = {}

    def add(self, n, c):
        self.parts.setdefault(n, []).append(c)

    def result(self):
        out = {}
        for n, cs in self.parts.items():
            total = cs[0]
            for c in cs[1:]:
                total = total + c
            out[n] = total
        return out


def _product_floor(z1, z2, floor):
    f = max(z1.ub + z2.floor, z2.ub + z1.floor)
    return max(f, _check_floor(floor))


def _exact_k_bound(spec, i, b):
    """Largest k with a possibly nonzero term in T^i . b, if the expansion is finite."""
    if i == 0:
        return 0
    if b.is_polynomial():
        d = b.num.degree
        return 0 if d == NEG_INF else d
    if spec.is_concrete and spec.nu == 1 and i > 0:
        # lambda_i^k = binom(i, k) / s^k vanishes for k > i.
        return i
    return None


def _prepare(z1, z2, floor):
    if z1.spec != z2.spec:
        raise SpecMismatch(f"{z1.spec!r} vs {z2.spec!r}")
    F = _product_floor(z1, z2, floor)
    if F == NEG_INF:
        if not z1.spec.is_concrete and z1.coeffs and z2.coeffs:
            raise PrecisionExhausted("exact products in a custom family need an explicit floor")
        for i in z1.coeffs:
            for b in z2.coeffs.values():
                if _exact_k_bound(z1.spec, i, b) is None:
                    raise PrecisionExhausted(
                        "the exact product is an infinite series; pass a floor to truncate it"
                    )
    return F


def mul(z1, z2, floor=None):
    """Deformed product, via lambda coefficients (concrete) or memoised sums (custom)."""
    F = _prepare(z1, z2, floor)
    spec = z1.spec
    acc = _Acc()
    if spec.is_concrete:
        nu = spec.nu
        lam = {}
        for i, a in z1.coeffs.items():
            for j, b in z2.coeffs.items():
                e = i + j
                if e <= F:
                    continue
                kmax = _exact_k_bound(spec, i, b) if F == NEG_INF else None
                k = 0
                while e - k * nu > F and (kmax is None or k <= kmax):
                    db = b.derivative(k)
                    if not db:
                        break
                    key = (i, k)
                    if key not in lam:
                        lam[key] = lambda_coeff(spec, i, k)
                    if lam[key]:
                        acc.add(e - k * nu, a * db * lam[key])
                    k += 1
    else:
        for i, a in z1.coeffs.items():
            for j, b in z2.coeffs.items():
                e = i + j
                if e <= F:
                    continue
                acc.add(e, a * b)
                # degree e + m - k > F with m <= 0 forces k < e - F
                top = e - F - 1
                if top < 1:
                    continue
                sums = delta_sequence_sums(spec, b, top, F + 1 - e)
                for (k, m), val in sums.items():
                    if k == 0 or e + m - k <= F:
                        continue
                    c = gen_binom(i, k)
                    if c:
                        acc.add(e + m - k, a * val * c)
    return DeformedSeries(spec, acc.result(), F)


def _chain_lo(spec, val, stop, sh):
    """Lowest delta index worth trying on ``val`` at accumulated shift ``sh``."""
    if stop != -inf:
        return stop - sh
    # Exact mode: a concrete delta_{1-k nu} is c * D^k, so only k <= deg(val) acts.
    if spec.is_concrete and val.is_polynomial():
        return 1 - spec.nu * max(val.num.degree, 1)
    return 0


def _expand_tuples(spec, value, stop, kmax, visit):
    """Walk every chain delta_{j1} ... delta_{jk}(value); prune at or below ``stop``.

    ``visit(k, shift, val)`` receives the chain length, the exponent shift
    sum(j) - k, and the operator image.  ``kmax`` caps the chain length.
    """

    def rec(val, k, sh):
        visit(k, sh, val)
        if kmax is not None and k >= kmax:
            return
        for j in spec.support(_chain_lo(spec, val, stop, sh)):
            nsh = sh + j - 1
            if nsh <= stop:
                continue
            nval = delta_apply(spec, j, val)
            if nval:
                rec(nval, k + 1, nsh)

    rec(value, 0, 0)


def mul_oracle(z1, z2, floor=None):
    """Deformed product by explicit enumeration of index tuples (no memo, no lambda).

    T^n . a = sum_k binom(n, k) sum_{j_1..j_k <= 0} delta_{j1} ... delta_{jk}(a) T^(sum j - k + n)
    """
    F = _prepare(z1, z2, floor)
    spec = z1.spec
    acc = _Acc()
    for i, a in z1.coeffs.items():
        for j, b in z2.coeffs.items():
            e = i + j
            if e <= F:
                continue
            stop = F - e if F != NEG_INF else -inf
            kmax = _exact_k_bound(spec, i, b) if F == NEG_INF else None

            def visit(k, sh, val, i=i, a=a, e=e):
                c = gen_binom(i, k)
                if c:
                    acc.add(e + sh, a * val * c)

            _expand_tuples(spec, b, stop, kmax, visit)
    return DeformedSeries(spec, acc.result(), F)


def mul_right(w1, w2, floor=None):
    """Product in the right-handed ring, where a . T = T a + sum_i T^i eta_i(a), eta = delta.

    T^i a . T^j b = T^i (a . T^j) b, with
    a . T^n = sum_k binom(n, k) sum_tuples T^(sum j - k + n) eta_{j1} ... eta_{jk}(a).
    """
    if not isinstance(w2, RightSeries):
        w2 = RightSeries.constant(w1.spec, _as_ratfun(w2))
    if w1.spec != w2.spec:
        raise SpecMismatch(f"{w1.spec!r} vs {w2.spec!r}")
    F = _product_floor(w1, w2, floor)
    spec = w1.spec
    if F == NEG_INF:
        if not spec.is_concrete and w1.coeffs and w2.coeffs:
            raise PrecisionExhausted("exact products in a custom family need an explicit floor")
        for a in w1.coeffs.values():
            for j in w2.coeffs:
                if _exact_k_bound(spec, j, a) is None:
                    raise PrecisionExhausted("the exact product is an infinite series; pass a floor")
    acc = _Acc()
    for i, a in w1.coeffs.items():
        for j, b in w2.coeffs.items():
            e = i + j
            if e <= F:
                continue
            stop = F - e if F != NEG_INF else -inf
            kmax = _exact_k_bound(spec, j, a) if F == NEG_INF else None

            def visit(k, sh, val, j=j, b=b, e=e):
                c = gen_binom(j, k)
                if c:
                    acc.add(e + sh, val * b * c)

            _expand_tuples(spec, a, stop, kmax, visit)
    return RightSeries(spec, acc.result(), F)


def anti_iso(z):
    """sum a_i T^i  |->  sum T^i a_i."""
    if isinstance(z, RightSeries):
        return DeformedSeries(z.spec, z.coeffs, z.floor)
    return RightSeries(z.spec, z.coeffs, z.floor)


# -- inverse, powers, commutators ------------------------------------------------


def inverse(z, floor=None):
    """Two-sided inverse via z = a_n T^n (1 + w) and a geometric series in w."""
    spec = z.spec
    if z.is_zero():
        raise DivisionByZero("inverse of the zero series")
    if not z.coeffs:
        raise PrecisionExhausted("the series is zero above its floor; its degree is unknown")
    n = z.deg()
    a_n = z.leading_coefficient()
    target = _check_floor(floor)
    if z.is_exact and len(z.coeffs) == 1 and (n == 0 or a_n.is_constant()):
        # a T^n with central a (or n = 0) inverts to a^-1 T^-n exactly.
        exact = DeformedSeries(spec, {-n: a_n.inverse()})
        return exact if target == NEG_INF else exact.truncate(target)
    if z.is_exact:
        if target == NEG_INF:
            raise PrecisionExhausted("the inverse is an infinite series; pass a floor to truncate it")
        z = z.truncate(target + 2 * n)
    F = z.floor - 2 * n
    if target != NEG_INF and target > F:
        F = target
    if F >= -n:
        raise PrecisionExhausted(f"floor {F} leaves no term of the inverse (degree {-n})")
    # v = (a_n T^n)^-1 = T^-n a_n^-1, known to floor F
    v = mul(DeformedSeries.T(spec, -n), DeformedSeries.constant(spec, a_n.inverse()), floor=F)
    w = mul(v, z, floor=F + n) - DeformedSeries.constant(spec, 1)
    if w.coeffs and w.deg() >= 0:
        raise AssertionError("leading term elimination failed")
    total = DeformedSeries.constant(spec, 1)
    term = DeformedSeries.constant(spec, 1)
    neg_w = -w
    wf = F + n
    while True:
        term = mul(term, neg_w, floor=wf)
        if not term.coeffs:
            break
        total = total + term
    total = total.truncate(wf)
    return mul(total, v, floor=F)


def power(z, n, floor=None):
    if n < 0:
        return power(inverse(z, floor), -n, floor)
    result = DeformedSeries.constant(z.spec, 1)
    base = z
    while n:
        if n & 1:
            result = mul(result, base, floor)
        n >>= 1
        if n:
            base = mul(base, base, floor)
    return result


def commutator(z1, z2, floor=None):
    return mul(z1, z2, floor) - mul(z2, z1, floor)
