"""
A small language for generating functions in one variable ``t``.

Arrays can be written on the command line in ordinary closed form::

    >>> evaluate(parse("(1+t-sqrt(1-6*t+t^2))/(4*t)"), 4).coeffs
    (Fraction(1, 1), Fraction(1, 1), Fraction(3, 1), Fraction(11, 1), Fraction(45, 1))

Precedence, tightest first: ``^`` and roots, unary minus, ``* /``, ``+ -``.
Unary minus is stored as ``0 - x``.  Exponents are integer literals (possibly
negative); ``sqrt[k](...)`` is a k-th root and bare ``sqrt(...)`` a square root.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import identities, named
from .errors import ArityError, GFSyntaxError, InsufficientTruncation, MRDError, UnknownFunction
from .series import Series

GRAMMAR = """\
expr   := term (('+'|'-') term)*
term   := unary (('*'|'/') unary)*
unary  := '-' unary | factor
factor := atom ('^' ['-'] int)?
atom   := int | 't' | '(' expr ')' | name '(' [expr (',' expr)*] ')'
        | 'sqrt' ('[' int ']')? '(' expr ')'
name   := catalan | schroeder_small | schroeder_large | fuss | revert | subst
fuss(int) : Fuss-Catalan series F = 1 + t*F^int
revert(e) : compositional inverse of e (e must have valuation 1)
subst(f, g): composition f(g(t)) (g must have zero constant term)
"""

# name -> number of arguments
FUNCTIONS = {
    "catalan": 0,
    "schroeder_small": 0,
    "schroeder_large": 0,
    "fuss": 1,
    "revert": 1,
    "subst": 2,
}


# -- tokens -------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # integer, t, op, lparen, rparen, lbracket, rbracket, comma, name, end
    text: str
    position: int  # byte offset into the UTF-8 source


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<integer>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^])"
    r"|(?P<lparen>\()|(?P<rparen>\))|(?P<lbracket>\[)|(?P<rbracket>\])|(?P<comma>,)"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    byte = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise GFSyntaxError(f"unexpected character {text[i]!r}", byte)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            if kind == "name" and chunk == "t":
                kind = "t"
            tokens.append(Token(kind, chunk, byte))
        byte += len(chunk.encode("utf-8"))
        i = m.end()
    tokens.append(Token("end", "", byte))
    return tokens


# -- AST ----------------------------------------------------------------------
# ``pos`` is excluded from equality so reparsed trees compare equal.


@dataclass(frozen=True)
class Const:
    value: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Root:
    arg: "Expr"
    degree: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    pos: int = field(default=0, compare=False)


Expr = Const | Var | BinOp | Pow | Root | Call


# -- parser -------------------------------------------------------------------

_ATOM_START = ("integer", "t", "(", "-", "name", "sqrt")


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise GFSyntaxError(f"unexpected {found}", tok.position, expected)

    def expect(self, kind, text=None):
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            self.fail([text or kind])
        return self.advance()

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail(["+", "-", "*", "/", "^", "end of input"])
        return e

    def expr(self):
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance()
            left = BinOp(op.text, left, self.term(), op.position)
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance()
            left = BinOp(op.text, left, self.unary(), op.position)
        return left

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            op = self.advance()
            return BinOp("-", Const(0, op.position), self.unary(), op.position)
        return self.factor()

    def factor(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            sign = 1
            if self.tok.kind == "op" and self.tok.text == "-":
                self.advance()
                sign = -1
            if self.tok.kind != "integer":
                self.fail(["integer", "-"] if sign == 1 else ["integer"])
            exp = sign * int(self.advance().text)
            return Pow(base, exp, caret.position)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "integer":
            self.advance()
            return Const(int(tok.text), tok.position)
        if tok.kind == "t":
            self.advance()
            return Var(tok.position)
        if tok.kind == "lparen":
            self.advance()
            e = self.expr()
            if self.tok.kind != "rparen":
                self.fail([")", "+", "-", "*", "/", "^"])
            self.advance()
            return e
        if tok.kind == "name":
            if tok.text == "sqrt":
                return self.root()
            return self.call()
        self.fail(_ATOM_START)

    def root(self):
        kw = self.advance()
        degree = 2
        if self.tok.kind == "lbracket":
            self.advance()
            num = self.expect("integer")
            degree = int(num.text)
            if degree < 2:
                raise GFSyntaxError("root degree must be at least 2", num.position)
            if self.tok.kind != "rbracket":
                self.fail(["]"])
            self.advance()
        if self.tok.kind != "lparen":
            self.fail(["(", "["] if degree == 2 else ["("])
        self.advance()
        arg = self.expr()
        if self.tok.kind != "rparen":
            self.fail([")", "+", "-", "*", "/", "^"])
        self.advance()
        return Root(arg, degree, kw.position)

    def call(self):
        name = self.advance()
        if name.text not in FUNCTIONS:
            raise UnknownFunction(f"unknown function {name.text!r}", name.position, FUNCTIONS)
        if self.tok.kind != "lparen":
            self.fail(["("])
        self.advance()
        args = []
        if self.tok.kind != "rparen":
            args.append(self.expr())
            while self.tok.kind == "comma":
                self.advance()
                args.append(self.expr())
            if self.tok.kind != "rparen":
                self.fail([")", ",", "+", "-", "*", "/", "^"])
        self.advance()
        want = FUNCTIONS[name.text]
        if len(args) != want:
            raise ArityError(
                f"{name.text} takes {want} argument(s), got {len(args)}", name.position
            )
        if name.text == "fuss" and not (isinstance(args[0], Const) and args[0].value >= 1):
            raise GFSyntaxError("fuss needs a positive integer literal", name.position)
        return Call(name.text, tuple(args), name.position)


def parse(text: str) -> Expr:
    """Parse a GF expression; raises GFSyntaxError (with byte position) on bad input."""
    return _Parser(text).parse()


# -- printer ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Pow):
        return 4
    return 5


def pretty(e: Expr) -> str:
    """Render an AST so that ``parse(pretty(e)) == e``."""
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = pretty(e.left)
        if _prec(e.left) < p:
            left = f"({left})"
        right = pretty(e.right)
        if _prec(e.right) <= p:
            right = f"({right})"
        return f"{left} {e.op} {right}" if p == 1 else f"{left}{e.op}{right}"
    if isinstance(e, Pow):
        base = pretty(e.base)
        if _prec(e.base) < 5:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Root):
        inner = pretty(e.arg)
        return f"sqrt({inner})" if e.degree == 2 else f"sqrt[{e.degree}]({inner})"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(pretty(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluator ----------------------------------------------------------------


def _eval(e, order):
    try:
        if isinstance(e, Const):
            return Series.const(e.value, order)
        if isinstance(e, Var):
            return Series.t(order)
        if isinstance(e, BinOp):
            a, b = _eval(e.left, order), _eval(e.right, order)
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if e.op == "*":
                return a * b
            return a / b
        if isinstance(e, Pow):
            return _eval(e.base, order) ** e.exponent
        if isinstance(e, Root):
            return _eval(e.arg, order).root(e.degree)
        if isinstance(e, Call):
            return _eval_call(e, order)
    except GFSyntaxError:
        raise
    except MRDError as exc:
        if getattr(exc, "position", None) is None:
            exc.position = e.pos
            exc.args = (f"{exc.args[0] if exc.args else exc} (at byte {e.pos})",)
        raise
    raise TypeError(f"not an expression node: {e!r}")


def _eval_call(e, order):
    if e.name == "catalan":
        return named.catalan(order)
    if e.name == "schroeder_small":
        return named.schroeder_small(order)
    if e.name == "schroeder_large":
        return named.schroeder_large(order)
    if e.name == "fuss":
        return identities.fuss(e.args[0].value, order)
    if e.name == "revert":
        return _eval(e.args[0], order).reversion()
    return _eval(e.args[0], order).compose(_eval(e.args[1], order))


def evaluate(e: Expr | str, order: int) -> Series:
    """Exact series of ``e`` to ``order``.

    Divisions by powers of ``t`` cost precision, so the tree is evaluated at a
    higher working order until the result is known to ``order``.
    """
    if isinstance(e, str):
        e = parse(e)
    work = order + 4
    for _ in range(8):
        s = _eval(e, work)
        if s.order >= order:
            return s.truncate(order)
        work += 2 * (order - s.order) + 4
    raise InsufficientTruncation(f"could not reach order {order} (best {s.order})")
