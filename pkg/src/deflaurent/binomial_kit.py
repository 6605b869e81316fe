"""Generalised binomials, bracket symbols and brute-force identity checks.

Every function works over exact rationals.  The ``check_*`` helpers evaluate
both sides of a combinatorial identity and compare them exactly; they are
the oracles behind the product formulas in :mod:`deflaurent.series`.
"""

from fractions import Fraction
from math import factorial

from .errors import InvalidParameter
from .exact_arith import Poly

__all__ = [
    "bracket",
    "falling",
    "gen_binom",
    "alternating_binom_sum",
    "check_vandermonde_shift",
    "check_poly_interpolation",
    "compositions",
    "phi_composition_sum",
    "phi_closed_form",
    "check_f12",
    "phi0_closed_form",
    "phi_collapse",
    "phi_collapsed_closed_form",
]


def bracket(a, b, k):
    """[a, b]_k = a (a - b) (a - 2b) ... (a - (k-1) b); 1 when k = 0."""
    if k < 0:
        raise InvalidParameter("bracket needs k >= 0")
    a = Fraction(a)
    b = Fraction(b)
    out = Fraction(1)
    for i in range(k):
        out *= a - i * b
    return out


def falling(a, k):
    """Falling factorial [a]_k = [a, 1]_k."""
    return bracket(a, 1, k)


def gen_binom(a, k):
    """binom(a, k) = [a]_k / k! for rational a and integer k >= 0."""
    if k < 0:
        raise InvalidParameter("binomial needs k >= 0")
    return falling(a, k) / factorial(k)


def alternating_binom_sum(a, n):
    return sum(((-1) ** j * gen_binom(a, j) for j in range(n + 1)), Fraction(0))


def check_vandermonde_shift(a, m, t):
    lhs = sum(
        ((-1) ** j * gen_binom(a, j) * gen_binom(Fraction(a) - j, t) for j in range(m + 1)),
        Fraction(0),
    )
    rhs = (-1) ** m * gen_binom(a, t) * gen_binom(Fraction(a) - t - 1, m)
    return lhs == rhs


def check_poly_interpolation(l, p, z):
    """sum_t (-1)^(l-t) C(z,t) C(z-1-t, l-t) p(t) == p(z) for deg p <= l."""
    p = p if isinstance(p, Poly) else Poly(p)
    if p.degree > l:
        raise InvalidParameter(f"polynomial degree {p.degree} exceeds l = {l}")
    z = Fraction(z)
    lhs = Fraction(0)
    for t in range(l + 1):
        lhs += (-1) ** (l - t) * gen_binom(z, t) * gen_binom(z - 1 - t, l - t) * p(t)
    return lhs == p(z)


def compositions(total, parts):
    """All tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def phi_composition_sum(i, l, nu):
    """Brute force: sum over compositions of l into i parts of prod C(1/nu, j_t)."""
    if not (1 <= i <= l) or nu < 1:
        raise InvalidParameter("need 1 <= i <= l and nu >= 1")
    inv = Fraction(1, nu)
    total = Fraction(0)
    for comp in compositions(l, i):
        term = Fraction(1)
        for j in comp:
            term *= gen_binom(inv, j)
        total += term
    return total


def phi_closed_form(i, l, nu):
    if not (1 <= i <= l) or nu < 1:
        raise InvalidParameter("need 1 <= i <= l and nu >= 1")
    inv = Fraction(1, nu)
    return sum(
        ((-1) ** j * gen_binom(i, j) * gen_binom((i - j) * inv, l) for j in range(i)),
        Fraction(0),
    )


def check_f12(l, u, nu):
    """Binomial identity used to show the concrete delta-family is compatible."""
    if l < 1 or u < 1 or nu < 1:
        raise InvalidParameter("need l, u, nu >= 1")
    inv = Fraction(1, nu)
    lhs = Fraction(0)
    for t in range(u + 1):
        lhs += (
            (-1) ** (u - t)
            * gen_binom(1 - l * nu, t)
            * gen_binom(-l * nu - t, u - t)
            * gen_binom(t * inv, u)
        )
    return lhs == gen_binom(inv - l, u)


def phi0_closed_form(m, j_list, t):
    """sum_{i=0}^{t} C(m, k+i) C(k+i, k) C(J, t-i), k = len(j_list), J = sum(j_list)."""
    k = len(j_list)
    J = sum(j_list)
    return sum(
        (gen_binom(m, k + i) * gen_binom(k + i, k) * gen_binom(J, t - i) for i in range(t + 1)),
        Fraction(0),
    )


def phi_collapse(m, n, j_list, t):
    """sum_q phi0(m; j_list; t - q) C(n, q), before simplification."""
    return sum(
        (phi0_closed_form(m, j_list, t - q) * gen_binom(n, q) for q in range(t + 1)),
        Fraction(0),
    )


def phi_collapsed_closed_form(m, n, j_list, t):
    k = len(j_list)
    return gen_binom(m, k) * gen_binom(m + n - k + sum(j_list), t)
