"""The Weyl algebra A_1 = Q<p, q>/(qp - pq - 1) in the PBW basis p^i q^j.

Also hosts the degree maps v_{rho,sigma}, the embedding
p -> alpha T^r, q -> T^s into a deformed Laurent series ring, and the
graded symbol of an element.
"""

from dataclasses import dataclass
from fractions import Fraction

from .deformation import make_spec
from .errors import EvalError, InvalidParameter, PrecisionExhausted
from .exact_arith import NEG_INF, RatFun, format_rational
from .expr import evaluate, parse
from .series import DeformedSeries, mul

__all__ = [
    "WeylElement",
    "weyl_mul",
    "normal_order_word",
    "DegreeParams",
    "v_degree",
    "equivalent",
    "embed",
    "GradedSymbol",
    "symbol",
]


class WeylElement:
    """Finite sum  sum c_{ij} p^i q^j  with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise InvalidParameter("PBW exponents must be nonnegative")
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + c
        self.coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def p(cls):
        return cls({(1, 0): 1})

    @classmethod
    def q(cls):
        return cls({(0, 1): 1})

    @classmethod
    def scalar(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return set(self.coeffs)

    def __add__(self, other):
        other = _as_weyl(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_weyl(other))

    def __rsub__(self, other):
        return _as_weyl(other) - self

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_mul(self, other)
        c = Fraction(other)
        return WeylElement({k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return WeylElement({k: c * v for k, v in self.coeffs.items()})

    def __pow__(self, n):
        if n < 0:
            raise EvalError("NegativeWeylExponent", "A_1 has no inverses of nonconstant elements")
        out = WeylElement.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def render(self):
        if not self.coeffs:
            return "0"
        keys = sorted(self.coeffs, key=lambda ij: (-(ij[0] + ij[1]), -ij[0]))
        out = ""
        for n, (i, j) in enumerate(keys):
            c = self.coeffs[(i, j)]
            mono = "*".join(
                f"{x}" if e == 1 else f"{x}^{e}" for x, e in (("p", i), ("q", j)) if e
            )
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if n == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"WeylElement({self.render()!r})"

    @classmethod
    def parse(cls, text):
        return weyl_from_expr(parse(text))


def _as_weyl(x):
    if isinstance(x, WeylElement):
        return x
    return WeylElement.scalar(Fraction(x))


def weyl_mul(z, w):
    """PBW product: p^i q^j p^s q^t = sum_k [j]_k [s]_k / k! p^(i+s-k) q^(j+t-k)."""
    out = {}
    for (i, j), c in z.coeffs.items():
        for (s, t), d in w.coeffs.items():
            cd = c * d
            coef = Fraction(1)
            for k in range(min(j, s) + 1):
                if k:
                    coef = coef * (j - k + 1) * (s - k + 1) / k
                key = (i + s - k, j + t - k)
                out[key] = out.get(key, 0) + cd * coef
    return WeylElement(out)


def normal_order_word(word):
    """Normal-order a word in p, q using only the rewrite qp -> pq + 1."""
    pending = {word: Fraction(1)}
    done = {}
    while pending:
        w, c = pending.popitem()
        at = w.find("qp")
        if at < 0:
            key = (w.count("p"), w.count("q"))
            done[key] = done.get(key, 0) + c
            continue
        for nw in (w[:at] + "pq" + w[at + 2 :], w[:at] + w[at + 2 :]):
            pending[nw] = pending.get(nw, 0) + c
    return WeylElement(done)


def weyl_from_expr(tree):
    def atom(name):
        if name == "p":
            return WeylElement.p()
        if name == "q":
            return WeylElement.q()
        raise EvalError("UnknownSymbol", f"{name!r} is not a Weyl algebra generator")

    def div(a, b):
        if not b.coeffs or set(b.coeffs) != {(0, 0)}:
            raise EvalError("UnsupportedOperation", "A_1 only divides by nonzero scalars")
        return a * (1 / b.coeffs[(0, 0)])

    def inv(a):
        raise EvalError("NegativeWeylExponent", "inverses live in the completion; use embed")

    def power(a, n):
        if n < 0:
            raise EvalError("NegativeWeylExponent", f"exponent {n} is negative")
        return a ** n

    return evaluate(tree, atom, number=WeylElement.scalar, div=div, inv=inv, power=power)


# -- degree maps -------------------------------------------------------------


@dataclass(frozen=True)
class DegreeParams:
    rho: Fraction
    sigma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", Fraction(self.rho))
        object.__setattr__(self, "sigma", Fraction(self.sigma))
        if self.rho + self.sigma < 0:
            raise InvalidParameter("v_{rho,sigma} is a degree map only when rho + sigma >= 0")


def v_degree(params, z):
    if z.is_zero():
        return NEG_INF
    return max(params.rho * i + params.sigma * j for i, j in z.coeffs)


def equivalent(p1, p2):
    """Whether (rho2, sigma2) = c (rho1, sigma1) for some rational c > 0."""
    if (p1.rho, p1.sigma) == (0, 0) or (p2.rho, p2.sigma) == (0, 0):
        return (p1.rho, p1.sigma) == (p2.rho, p2.sigma)
    if p1.rho * p2.sigma != p2.rho * p1.sigma:
        return False
    return p1.rho * p2.rho + p1.sigma * p2.sigma > 0


# -- embedding and symbols ---------------------------------------------------


def embed(spec, z, floor=None):
    """eta(z) with eta(p) = alpha T^r and eta(q) = T^s, computed exactly then truncated."""
    if not spec.is_concrete:
        raise InvalidParameter("the embedding needs a concrete (r, s) spec")
    if z.is_zero():
        return DeformedSeries.zero(spec)
    P = DeformedSeries(spec, {spec.r: RatFun.alpha()})
    Q = DeformedSeries.T(spec, spec.s)
    ppow = [DeformedSeries.constant(spec, 1)]
    top_i = max(i for i, _ in z.coeffs)
    for _ in range(top_i):
        ppow.append(mul(ppow[-1], P))
    total = DeformedSeries.zero(spec)
    for (i, j), c in z.coeffs.items():
        # p^i q^j -> (alpha T^r)^i T^(s j); right factors of T only shift exponents
        mono = ppow[i]
        if j:
            mono = DeformedSeries(spec, {n + spec.s * j: a for n, a in mono.coeffs.items()})
        total = total + Fraction(c) * mono
    if floor is not None:
        if total.coeffs and floor >= total.deg():
            raise PrecisionExhausted(f"floor {floor} is not below the leading degree {total.deg()}")
        total = total.truncate(floor)
    return total


@dataclass(frozen=True)
class GradedSymbol:
    """a(u) Y^(n/s) with u = X Y^(-r/s); ``a = None`` is the zero symbol."""

    a: RatFun | None
    n: int
    r: int
    s: int

    @classmethod
    def zero(cls, r, s):
        return cls(None, 0, r, s)

    def is_zero(self):
        return self.a is None

    def __mul__(self, other):
        if (self.r, self.s) != (other.r, other.s):
            raise InvalidParameter("symbols from different gradings")
        if self.is_zero() or other.is_zero():
            return GradedSymbol.zero(self.r, self.s)
        return GradedSymbol(self.a * other.a, self.n + other.n, self.r, self.s)

    def to_xy_terms(self):
        """For polynomial a: list of (coeff, x_exp, y_exp) with X^e Y^((n - r e)/s)."""
        if self.is_zero():
            return []
        if not self.a.is_polynomial():
            raise InvalidParameter("only polynomial symbols expand into X, Y monomials")
        lc = self.a.den.leading_coefficient
        out = []
        for e, c in enumerate(self.a.num.coeffs):
            if c:
                out.append((c / lc, e, Fraction(self.n - self.r * e, self.s)))
        return out

    def render(self):
        if self.is_zero():
            return "0"
        y = Fraction(self.n, self.s)
        ys = "" if y == 0 else f"*Y^({format_rational(y)})"
        return f"{self.a.short_string('u')}{ys}"

    def __str__(self):
        return self.render()


def symbol(r, s, z, floor=None):
    """Leading term of z (a Weyl element or a series) read as a graded symbol."""
    if s == 0:
        raise InvalidParameter("s must be nonzero")
    if isinstance(z, WeylElement):
        if z.is_zero():
            return GradedSymbol.zero(r, s)
        z = embed(make_spec(r, s), z)
    else:
        if (z.spec.r, z.spec.s) != (r, s):
            raise InvalidParameter("series spec does not match (r, s)")
        if z.is_zero():
            return GradedSymbol.zero(r, s)
    if not z.coeffs:
        raise PrecisionExhausted("the leading term is not resolved above the floor")
    return GradedSymbol(z.leading_coefficient(), z.deg(), r, s)
