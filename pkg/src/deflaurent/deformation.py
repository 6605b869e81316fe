"""Delta-families: the operators that deform the Laurent series product.

A family (delta_i)_{i <= 0} of linear operators on L = Q(alpha) defines the
commutation rule ``T*a = a*T + sum_{i<=0} delta_i(a) T^i``.  The concrete
family attached to integers (r, s) with nu = r + s > 0 is

    delta_{1 - k*nu} = d_k / k! * (d/dalpha)^k,   d_k = [1, nu]_k / s^k,

and delta_i = 0 for every other i <= 0.  Custom families are finite maps
from indices to :class:`DiffOp`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from math import factorial

from .binomial_kit import bracket, gen_binom
from .errors import InvalidParameter
from .exact_arith import RatFun

__all__ = [
    "DiffOp",
    "DeformationSpec",
    "CoproductTerm",
    "LEFT_IDENTITY",
    "make_spec",
    "make_custom_spec",
    "delta_apply",
    "delta_sequence_sums",
    "check_condition",
    "coproduct",
    "apply_coproduct",
]


class DiffOp:
    """Linear differential operator  f -> sum coeff * f^(order)."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged = {}
        for order, coeff in terms:
            if order < 0:
                raise InvalidParameter("negative differential order")
            coeff = coeff if isinstance(coeff, RatFun) else RatFun(coeff)
            merged[order] = merged.get(order, RatFun(0)) + coeff
        self.terms = tuple((o, c) for o, c in sorted(merged.items()) if c)

    @classmethod
    def identity(cls):
        return cls([(0, RatFun(1))])

    @classmethod
    def derivative(cls, k=1, coeff=1):
        return cls([(k, RatFun(coeff) if not isinstance(coeff, RatFun) else coeff)])

    @classmethod
    def multiplication(cls, coeff):
        return cls([(0, coeff if isinstance(coeff, RatFun) else RatFun(coeff))])

    def is_zero(self):
        return not self.terms

    @property
    def order(self):
        return self.terms[-1][0] if self.terms else -1

    def __call__(self, f):
        out = RatFun(0)
        for order, coeff in self.terms:
            out = out + coeff * f.derivative(order)
        return out

    def __add__(self, other):
        return DiffOp(self.terms + other.terms)

    def scale(self, c):
        c = c if isinstance(c, RatFun) else RatFun(c)
        return DiffOp((o, c * k) for o, k in self.terms)

    def compose(self, other):
        """self o other, via D^m (b f^(n)) = sum_t C(m,t) b^(t) f^(m+n-t)."""
        out = []
        for m, a in self.terms:
            for n, b in other.terms:
                for t in range(m + 1):
                    db = b.derivative(t)
                    if db:
                        out.append((m + n - t, a * db * int(gen_binom(m, t))))
        return DiffOp(out)

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        inner = ", ".join(f"({o}, {c})" for o, c in self.terms)
        return f"DiffOp([{inner}])"


@dataclass(frozen=True, eq=False)
class DeformationSpec:
    """Parameters of a deformed Laurent series ring.

    ``mode`` is ``"concrete"`` (family determined by r, s) or ``"custom"``
    (finitely many explicit operators in ``deltas``; r, s, nu are None).
    delta_1 is always the identity and is never stored.
    """

    r: int | None
    s: int | None
    mode: str = "concrete"
    deltas: dict = field(default_factory=dict)

    @property
    def nu(self):
        return None if self.r is None else self.r + self.s

    @property
    def is_concrete(self):
        return self.mode == "concrete"

    def d(self, k):
        """d_k = [1, nu]_k / s^k."""
        self._require_concrete("d_k")
        return bracket(1, self.nu, k) / Fraction(self.s) ** k

    def delta_scale(self, k):
        """Scalar d_k / k! in delta_{1-k nu} = (d_k/k!) D^k."""
        return self.d(k) / factorial(k)

    def delta(self, i):
        """delta_i as a DiffOp, or None when delta_i = 0 (i <= 0)."""
        if i > 0:
            raise InvalidParameter(f"delta_{i} is not defined (need i <= 1)")
        if not self.is_concrete:
            op = self.deltas.get(i)
            return op if op is not None and not op.is_zero() else None
        k, rem = divmod(1 - i, self.nu)
        if rem or k < 1:
            return None
        c = self.delta_scale(k)
        return DiffOp.derivative(k, c) if c else None

    def derivative_order(self, i):
        """For concrete specs: k with delta_i = c D^k and c != 0, else None."""
        self._require_concrete("derivative_order")
        k, rem = divmod(1 - i, self.nu)
        if rem or k < 1 or self.delta_scale(k) == 0:
            return None
        return k

    def support(self, lo):
        """Indices lo <= i <= 0 with delta_i != 0, descending."""
        if not self.is_concrete:
            return sorted((i for i, op in self.deltas.items() if lo <= i <= 0 and not op.is_zero()), reverse=True)
        out = []
        k = 1
        while 1 - k * self.nu >= lo:
            if self.delta_scale(k) != 0:
                out.append(1 - k * self.nu)
            elif self.nu == 1:
                # [1, 1]_k vanishes for every k >= 2.
                break
            k += 1
        return out

    @property
    def i0(self):
        """max{i <= 0 : delta_i != 0}; None for the undeformed product."""
        if self.is_concrete:
            return 1 - self.nu
        nz = [i for i, op in self.deltas.items() if not op.is_zero()]
        return max(nz) if nz else None

    def min_index(self):
        """Lowest nonzero index of a custom family (None if unbounded)."""
        if self.is_concrete:
            return None
        nz = [i for i, op in self.deltas.items() if not op.is_zero()]
        return min(nz) if nz else 0

    def _require_concrete(self, what):
        if not self.is_concrete:
            raise InvalidParameter(f"{what} is only defined for concrete (r, s) specs")

    def key(self):
        if self.is_concrete:
            return ("concrete", self.r, self.s)
        return ("custom", tuple(sorted((i, op.terms) for i, op in self.deltas.items() if not op.is_zero())))

    def __eq__(self, other):
        return isinstance(other, DeformationSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_concrete:
            return f"DeformationSpec(r={self.r}, s={self.s})"
        return f"DeformationSpec(custom, deltas={sorted(self.deltas)})"

    # -- serialisation ------------------------------------------------------

    def to_record(self, lo=-6):
        """Structured record; concrete specs list their nonzero deltas down to ``lo``."""
        if self.is_concrete:
            idx = self.support(lo)
            rec = {"mode": "concrete", "r": self.r, "s": self.s}
        else:
            idx = sorted(self.deltas, reverse=True)
            rec = {"mode": "custom", "r": None, "s": None}
        rec["deltas"] = [
            [i, [[o, str(c)] for o, c in self.delta(i).terms]] for i in idx if self.delta(i) is not None
        ]
        return rec

    @classmethod
    def from_record(cls, rec):
        if rec.get("mode", "concrete") == "concrete":
            spec = make_spec(rec["r"], rec["s"])
            for i, terms in rec.get("deltas", []):
                listed = DiffOp((o, RatFun.parse(c)) for o, c in terms)
                if spec.delta(i) != listed:
                    raise InvalidParameter(f"record lists a delta_{i} inconsistent with (r, s)")
            return spec
        deltas = {i: DiffOp((o, RatFun.parse(c)) for o, c in terms) for i, terms in rec["deltas"]}
        return make_custom_spec(deltas)


def make_spec(r, s):
    if s == 0:
        raise InvalidParameter("s must be nonzero")
    if r + s <= 0:
        raise InvalidParameter(f"nu = r + s must be positive (got {r + s})")
    return DeformationSpec(int(r), int(s))


def make_custom_spec(deltas):
    """Finite delta-family {i: DiffOp} with every i <= 0."""
    clean = {}
    for i, op in deltas.items():
        if i > 0:
            raise InvalidParameter(f"custom delta index {i} must be <= 0")
        if not isinstance(op, DiffOp):
            raise InvalidParameter("custom deltas must be DiffOp instances")
        if not op.is_zero():
            clean[int(i)] = op
    return DeformationSpec(None, None, mode="custom", deltas=clean)


def delta_apply(spec, i, f):
    if i == 1:
        return f
    if spec.is_concrete:
        k = spec.derivative_order(i) if i <= 0 else None
        if i > 1:
            raise InvalidParameter(f"delta_{i} is not defined (need i <= 1)")
        if k is None:
            return RatFun(0)
        return f.derivative(k) * spec.delta_scale(k)
    op = spec.delta(i)
    return op(f) if op is not None else RatFun(0)


def delta_sequence_sums(spec, b, max_parts, lo):
    """S[(k, m)] = sum of delta_{j1} ... delta_{jk}(b) over j's <= 0 with sum m.

    Covers 0 <= k <= max_parts and lo <= m <= 0, dropping zero operators.
    Memoised recursion on the first index:  S_k(m) = sum_j delta_j(S_{k-1}(m - j)).
    """
    supp = spec.support(lo)
    table = {(0, 0): b}
    for k in range(1, max_parts + 1):
        for m in range(0, lo - 1, -1):
            acc = None
            for j in supp:
                if j < m:
                    break
                inner = table.get((k - 1, m - j))
                if inner is None or not inner:
                    continue
                v = delta_apply(spec, j, inner)
                if v:
                    acc = v if acc is None else acc + v
            if acc is not None and acc:
                table[(k, m)] = acc
    return table


def check_condition(spec, i, a, b):
    """Whether delta_i(ab) matches the compatibility expansion for this (a, b)."""
    if i > 0:
        raise InvalidParameter("condition is stated for i <= 0")
    lhs = delta_apply(spec, i, a * b)
    rhs = a * delta_apply(spec, i, b) + delta_apply(spec, i, a) * b
    sums = delta_sequence_sums(spec, b, -i, i)
    for k in range(1, -i + 1):
        for l in range(i + k, 1):
            c = gen_binom(l, k)
            if c == 0:
                continue
            da = delta_apply(spec, l, a)
            if not da:
                continue
            inner = sums.get((k, i + k - l))
            if inner is not None:
                rhs = rhs + da * inner * c
    return lhs == rhs


#: Marker for the left tensor factor 1 in a coproduct term 1 (x) delta_i.
LEFT_IDENTITY = None


@total_ordering
@dataclass(frozen=True)
class CoproductTerm:
    """coeff * (delta_l (x) delta_{j1} ... delta_{jk}).

    ``l is LEFT_IDENTITY`` encodes the left factor 1; an empty ``j_list``
    encodes the right factor 1.
    """

    coeff: Fraction
    l: int | None
    j_list: tuple

    def sort_key(self):
        return (self.l is not LEFT_IDENTITY, -(self.l or 0), len(self.j_list), tuple(-j for j in self.j_list), self.coeff)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        left = "1" if self.l is LEFT_IDENTITY else f"d{self.l}"
        right = "*".join(f"d{j}" for j in self.j_list) or "1"
        return f"{self.coeff}*({left} x {right})"


def _nonpositive_tuples(k, total):
    """Ordered k-tuples of integers <= 0 summing to ``total`` (<= 0)."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(0, total - 1, -1):
        for rest in _nonpositive_tuples(k - 1, total - first):
            yield (first,) + rest


def coproduct(spec, i):
    """Explicit finite representative of Delta(delta_i), canonically sorted.

    With ``spec=None`` every delta_j is treated as a nonzero formal symbol;
    otherwise terms containing a vanishing operator are dropped.
    """
    if i > 0:
        raise InvalidParameter("coproduct is defined for i <= 0")

    def alive(idx):
        return spec is None or spec.delta(idx) is not None

    terms = []
    if alive(i):
        terms.append(CoproductTerm(Fraction(1), LEFT_IDENTITY, (i,)))
        terms.append(CoproductTerm(Fraction(1), i, ()))
    for l in range(i + 1, 1):
        if not alive(l):
            continue
        for k in range(1, l - i + 1):
            c = gen_binom(l, k)
            if c == 0:
                continue
            for js in _nonpositive_tuples(k, i + k - l):
                if all(alive(j) for j in js):
                    terms.append(CoproductTerm(c, l, js))
    return sorted(terms)


def apply_coproduct(spec, terms, a, b):
    """m o Delta(delta_i) applied to a (x) b, i.e. sum coeff * delta_l(a) * delta_js(b)."""
    out = RatFun(0)
    for term in terms:
        left = a if term.l is LEFT_IDENTITY else delta_apply(spec, term.l, a)
        right = b
        for j in reversed(term.j_list):
            right = delta_apply(spec, j, right)
        out = out + left * right * term.coeff
    return out
