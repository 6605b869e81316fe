"""Exact scalars, univariate polynomials over Q, and the field Q(alpha).

Rationals are ``fractions.Fraction``.  Polynomials wrap FLINT's ``fmpq_poly``
so that gcds stay fast once high-order derivatives of rational functions
start to appear; the wrapper keeps the public surface in plain Fractions.
"""

from fractions import Fraction
from numbers import Rational

import flint

from .errors import DivisionByZero, InvalidParameter

__all__ = [
    "NEG_INF",
    "Rat",
    "Poly",
    "RatFun",
    "ratfun_arith",
    "ratfun_derivative",
    "in_power_subfield",
    "format_rational",
]

Rat = Fraction

#: Degree of the zero polynomial (and of the zero series): below every integer.
NEG_INF = float("-inf")

VARIABLE = "alpha"


def _to_fmpq(x):
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Rational):
        return flint.fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _to_fraction(x):
    return Fraction(int(x.p), int(x.q))


def format_rational(c, force_fraction=False):
    """``3`` -> ``"3"``, ``Fraction(-1, 2)`` -> ``"-1/2"``."""
    c = Fraction(c)
    if c.denominator == 1 and not force_fraction:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Poly:
    """Immutable polynomial in one variable with rational coefficients."""

    __slots__ = ("_p", "_hash")

    def __init__(self, coeffs=()):
        if isinstance(coeffs, flint.fmpq_poly):
            self._p = coeffs
        elif isinstance(coeffs, Poly):
            self._p = coeffs._p
        elif isinstance(coeffs, (int, Rational)):
            self._p = flint.fmpq_poly([_to_fmpq(coeffs)])
        else:
            self._p = flint.fmpq_poly([_to_fmpq(c) for c in coeffs])
        self._hash = None

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def monomial(cls, c, n):
        if n < 0:
            raise InvalidParameter("negative exponent in a polynomial")
        return cls([0] * n + [c])

    @property
    def coeffs(self):
        """Ascending coefficients; empty for the zero polynomial."""
        return tuple(_to_fraction(c) for c in self._p.coeffs())

    @property
    def degree(self):
        d = self._p.degree()
        return NEG_INF if d < 0 else d

    def is_zero(self):
        return self._p.is_zero()

    def is_constant(self):
        return self._p.degree() <= 0

    @property
    def leading_coefficient(self):
        if self._p.is_zero():
            return Fraction(0)
        return _to_fraction(self._p.coeffs()[-1])

    def exponents(self):
        return [k for k, c in enumerate(self._p.coeffs()) if c != 0]

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return Poly(self._p + other._p)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return Poly(self._p - other._p)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return Poly(other._p - self._p)

    def __neg__(self):
        return Poly(-self._p)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return Poly(self._p * other._p)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InvalidParameter("negative power of a polynomial")
        return Poly(self._p ** n)

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q, r = divmod(self._p, other._p)
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other):
        """Monic gcd (zero only when both inputs are zero)."""
        return Poly(self._p.gcd(_as_poly(other)._p))

    def derivative(self):
        return Poly(self._p.derivative())

    def __call__(self, x):
        if isinstance(x, (int, Rational)):
            return _to_fraction(self._p(_to_fmpq(x)))
        if isinstance(x, Poly):
            return Poly(self._p(x._p))
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._p == other._p

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return not self._p.is_zero()

    def to_string(self, var=VARIABLE):
        cs = self.coeffs
        if not cs:
            return "0"
        pieces = []
        for k in range(len(cs) - 1, -1, -1):
            c = cs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = format_rational(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Rational)):
        return Poly(x)
    return NotImplemented


_ONE = flint.fmpq_poly([1])
_ZERO = flint.fmpq_poly([])


class RatFun:
    """Element of Q(alpha) stored as num/den, coprime, den monic.

    Canonical form makes ``==`` and ``hash`` structural.
    """

    __slots__ = ("_n", "_d", "_derivs", "_hash")

    def __init__(self, num=0, den=1):
        n = _coerce_fmpq_poly(num)
        d = _coerce_fmpq_poly(den)
        if d.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if isinstance(num, RatFun) or isinstance(den, RatFun):
            # (a/b)/(c/d): fold the nested denominators in first.
            nf = num if isinstance(num, RatFun) else RatFun(num)
            df = den if isinstance(den, RatFun) else RatFun(den)
            n = nf._n * df._d
            d = nf._d * df._n
            if d.is_zero():
                raise DivisionByZero("rational function with zero denominator")
        self._n, self._d = _canonical(n, d)
        self._derivs = None
        self._hash = None

    @classmethod
    def _raw(cls, n, d):
        obj = cls.__new__(cls)
        obj._n = n
        obj._d = d
        obj._derivs = None
        obj._hash = None
        return obj

    @classmethod
    def alpha(cls):
        return cls._raw(flint.fmpq_poly([0, 1]), _ONE)

    @classmethod
    def constant(cls, c):
        return cls._raw(flint.fmpq_poly([_to_fmpq(c)]), _ONE)

    @property
    def num(self):
        return Poly(self._n)

    @property
    def den(self):
        return Poly(self._d)

    def is_zero(self):
        return self._n.is_zero()

    def __bool__(self):
        return not self._n.is_zero()

    def is_polynomial(self):
        return self._d.degree() == 0

    def is_constant(self):
        return self._d.degree() == 0 and self._n.degree() <= 0

    def constant_value(self):
        if not self.is_constant():
            raise InvalidParameter(f"{self} is not a constant")
        cs = self._n.coeffs()
        return _to_fraction(cs[0]) if cs else Fraction(0)

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        if self._d == other._d:
            if self._d.is_one():
                return RatFun._raw(self._n + other._n, _ONE)
            return RatFun(self._n + other._n, self._d)
        return RatFun(self._n * other._d + other._n * self._d, self._d * other._d)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self._n, self._d)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        if self._n.is_zero() or other._n.is_zero():
            return RatFun._raw(_ZERO, _ONE)
        if self._d.is_one() and other._d.is_one():
            return RatFun._raw(self._n * other._n, _ONE)
        # Cross-cancel so the result is canonical without a full gcd.
        g1 = self._n.gcd(other._d)
        g2 = other._n.gcd(self._d)
        n = (self._n // g1) * (other._n // g2)
        d = (self._d // g2) * (other._d // g1)
        lc = d.coeffs()[-1]
        if lc != 1:
            n = n / lc
            d = d / lc
        return RatFun._raw(n, d)

    __rmul__ = __mul__

    def inverse(self):
        if self._n.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        lc = self._n.coeffs()[-1]
        return RatFun._raw(self._d / lc, self._n / lc)

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun._raw(self._n ** n, self._d ** n)

    # -- calculus -----------------------------------------------------------

    def derivative(self, k=1):
        """k-th derivative d^k/dalpha^k (memoised on the instance)."""
        if k < 0:
            raise InvalidParameter("negative derivative order")
        if k == 0:
            return self
        derivs = self._derivs or [self]
        if len(derivs) <= k:
            # Extend a private copy and publish it in one assignment, so a
            # concurrent reader never sees a half-built list.
            derivs = list(derivs)
            while len(derivs) <= k:
                derivs.append(_first_derivative(derivs[-1]))
            self._derivs = derivs
        return derivs[k]

    def compose(self, g):
        """Substitute ``g`` (a RatFun) for alpha."""
        g = _as_ratfun(g)
        num = Poly(self._n)(g)
        den = Poly(self._d)(g)
        return num / den

    def __call__(self, x):
        if isinstance(x, (int, Rational)):
            den = Poly(self._d)(x)
            if den == 0:
                raise DivisionByZero(f"pole of {self} at {x}")
            return Poly(self._n)(x) / den
        return self.compose(x)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((Poly(self._n), Poly(self._d)))
        return self._hash

    def to_string(self, var=VARIABLE):
        return f"({Poly(self._n).to_string(var)})/({Poly(self._d).to_string(var)})"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"RatFun({self.to_string()!r})"

    def short_string(self, var=VARIABLE):
        """Compact rendering: ``3/1`` for constants, ``(num)`` for polynomials."""
        if self.is_constant():
            return format_rational(self.constant_value(), force_fraction=True)
        if self.is_polynomial():
            return f"({Poly(self._n).to_string(var)})"
        return self.to_string(var)

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: accepts any rational expression in ``alpha``."""
        from .expr import parse_ratfun

        return parse_ratfun(text)


def _coerce_fmpq_poly(x):
    if isinstance(x, flint.fmpq_poly):
        return x
    if isinstance(x, Poly):
        return x._p
    if isinstance(x, RatFun):
        return x._n
    if isinstance(x, (int, Rational)):
        return flint.fmpq_poly([_to_fmpq(x)])
    if isinstance(x, (list, tuple)):
        return flint.fmpq_poly([_to_fmpq(c) for c in x])
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def _canonical(n, d):
    if n.is_zero():
        return _ZERO, _ONE
    g = n.gcd(d)
    if not g.is_one():
        n = n // g
        d = d // g
    lc = d.coeffs()[-1]
    if lc != 1:
        n = n / lc
        d = d / lc
    return n, d


def _as_ratfun(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Rational)):
        return RatFun.constant(x)
    if isinstance(x, Poly):
        return RatFun._raw(x._p, _ONE)
    return NotImplemented


def _first_derivative(f):
    n, d = f._n, f._d
    if d.is_one():
        return RatFun._raw(n.derivative(), _ONE)
    return RatFun(n.derivative() * d - n * d.derivative(), d * d)


def ratfun_arith(a, b, op):
    """Field operation ``op`` in {"add", "sub", "mul", "div"} on Q(alpha)."""
    a = _as_ratfun(a)
    b = _as_ratfun(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return a / b
    raise InvalidParameter(f"unknown operation {op!r}")


def ratfun_derivative(f):
    return _as_ratfun(f).derivative()


def _deflate(p, m):
    cs = p.coeffs()
    return flint.fmpq_poly(cs[::m]) if cs else _ZERO


def in_power_subfield(f, s):
    """Return g with g(alpha^|s|) == f, or None if f is not in Q(alpha^|s|).

    With f in lowest terms and a monic denominator this is decided by the
    exponents alone: every exponent of num and den must be divisible by |s|.
    """
    if s == 0:
        raise InvalidParameter("power subfield needs s != 0")
    f = _as_ratfun(f)
    m = abs(s)
    if m == 1:
        return f
    for p in (f._n, f._d):
        for k, c in enumerate(p.coeffs()):
            if c != 0 and k % m:
                return None
    return RatFun._raw(_deflate(f._n, m), _deflate(f._d, m))
