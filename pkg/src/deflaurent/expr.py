"""Expression syntax shared by the CLI and the text serialisations.

Grammar (lowest to highest precedence)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" exponent)?
    exponent := ["-"] INT | "(" ["-"] INT ")"
    atom   := INT | "p" | "q" | "alpha" | "T" | "(" expr ")"
            | "inv" "(" expr ")" | "comm" "(" expr "," expr ")"

``*`` is kept noncommutative: operands stay in source order.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import EvalError, ParseError

__all__ = [
    "Expr",
    "Num",
    "Sym",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Neg",
    "Pow",
    "Inv",
    "Comm",
    "ATOMS",
    "parse",
    "render",
    "evaluate",
    "parse_ratfun",
    "symbols",
]

ATOMS = ("p", "q", "alpha", "T")
FUNCTIONS = ("inv", "comm")


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Num(Expr):
    value: int


@dataclass(frozen=True)
class Sym(Expr):
    name: str


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int


@dataclass(frozen=True)
class Inv(Expr):
    operand: Expr


@dataclass(frozen=True)
class Comm(Expr):
    left: Expr
    right: Expr


# -- tokenizer ---------------------------------------------------------------

_PUNCT = "+-*/^(),"


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("NAME", text[i:j], i))
            i = j
        elif c in _PUNCT:
            toks.append((c, c, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", i, ("number", "name", "operator"))
    toks.append(("END", "", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, expected=None):
        tok = self.peek()
        if tok[0] != kind:
            self.fail(expected or (repr(kind),))
        return self.advance()

    def fail(self, expected):
        kind, value, at = self.peek()
        found = "end of input" if kind == "END" else repr(value)
        raise ParseError(f"unexpected {found}", at, expected)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "END":
            self.fail(("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            return Pow(base, self.exponent())
        return base

    def exponent(self):
        wrapped = self.peek()[0] == "("
        if wrapped:
            self.advance()
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        tok = self.expect("INT", ("integer exponent",))
        if wrapped:
            self.expect(")", ("')'",))
        return sign * int(tok[1])

    def atom(self):
        kind, value, at = self.peek()
        if kind == "INT":
            self.advance()
            return Num(int(value))
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", ("')'",))
            return node
        if kind == "NAME":
            if value in ATOMS:
                self.advance()
                return Sym(value)
            if value in FUNCTIONS:
                self.advance()
                self.expect("(", ("'('",))
                first = self.expr()
                if value == "inv":
                    self.expect(")", ("')'",))
                    return Inv(first)
                self.expect(",", ("','",))
                second = self.expr()
                self.expect(")", ("')'",))
                return Comm(first, second)
            raise ParseError(f"unknown name {value!r}", at, ATOMS + FUNCTIONS)
        self.fail(("number", "'('", "'-'") + ATOMS + FUNCTIONS)


def parse(text):
    return _Parser(text).parse()


_BINARY = {Add: " + ", Sub: " - ", Mul: "*", Div: "/"}


def render(e):
    """Canonical text; every non-atomic operand is parenthesised."""

    def wrap(x):
        s = render(x)
        return s if isinstance(x, (Num, Sym, Inv, Comm)) else f"({s})"

    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Sym):
        return e.name
    if type(e) in _BINARY:
        return wrap(e.left) + _BINARY[type(e)] + wrap(e.right)
    if isinstance(e, Neg):
        return "-" + wrap(e.operand)
    if isinstance(e, Pow):
        return f"{wrap(e.base)}^{e.exp}"
    if isinstance(e, Inv):
        return f"inv({render(e.operand)})"
    if isinstance(e, Comm):
        return f"comm({render(e.left)}, {render(e.right)})"
    raise TypeError(f"not an expression: {e!r}")


def symbols(e):
    """Set of atom names appearing in ``e``."""
    if isinstance(e, Sym):
        return {e.name}
    if isinstance(e, Num):
        return set()
    out = set()
    for name in ("left", "right", "operand", "base"):
        child = getattr(e, name, None)
        if child is not None:
            out |= symbols(child)
    return out


def evaluate(e, atom, *, number, div=None, inv=None, power=None, comm=None):
    """Fold ``e`` into some ring.

    ``atom(name)`` and ``number(Fraction)`` build leaves.  Optional hooks
    override division, inversion, powers and commutators; a missing hook
    raises EvalError.  Default power uses repeated multiplication and
    ``inv`` for negative exponents.
    """

    def go(x):
        if isinstance(x, Num):
            return number(Fraction(x.value))
        if isinstance(x, Sym):
            return atom(x.name)
        if isinstance(x, Add):
            return go(x.left) + go(x.right)
        if isinstance(x, Sub):
            return go(x.left) - go(x.right)
        if isinstance(x, Mul):
            return go(x.left) * go(x.right)
        if isinstance(x, Neg):
            return -go(x.operand)
        if isinstance(x, Div):
            if div is None:
                raise EvalError("UnsupportedOperation", "division is not available here")
            return div(go(x.left), go(x.right))
        if isinstance(x, Inv):
            if inv is None:
                raise EvalError("UnsupportedOperation", "inv is not available here")
            return inv(go(x.operand))
        if isinstance(x, Pow):
            base = go(x.base)
            if power is not None:
                return power(base, x.exp)
            if x.exp < 0:
                if inv is None:
                    raise EvalError("NegativeExponent", "negative powers are not available here")
                base = inv(base)
            out = number(Fraction(1))
            for _ in range(abs(x.exp)):
                out = out * base
            return out
        if isinstance(x, Comm):
            if comm is None:
                a, b = go(x.left), go(x.right)
                return a * b - b * a
            return comm(go(x.left), go(x.right))
        raise TypeError(f"not an expression: {x!r}")

    return go(e)


def parse_ratfun(text):
    """Read an element of Q(alpha) written with +, -, *, /, ^ and inv."""
    from .exact_arith import RatFun

    tree = parse(text)

    def atom(name):
        if name != "alpha":
            raise EvalError("UnknownSymbol", f"{name!r} is not allowed in a rational function of alpha")
        return RatFun.alpha()

    return evaluate(
        tree,
        atom,
        number=RatFun.constant,
        div=lambda a, b: a / b,
        inv=lambda a: a.inverse(),
        power=lambda a, n: a ** n,
    )
