"""Class expressions: parsing, evaluation and canonical printing.

Grammar (``^`` binds tightest, then ``*``, ``/``, ``#``, then ``+ -``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/" | "#") unary)*
    unary  := ("-" | "+" | "F") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"

``*`` is the intersection product, ``#`` the Pontryagin product and ``F``
the Fourier transform; ``*`` and ``#`` may not share a level without
parentheses.  ``/`` divides by a scalar.
"""

import re
from fractions import Fraction

from abelsl2 import abvar, corr
from abelsl2.abvar import CohClass, fourier, pontryagin, theta, variety
from abelsl2.errors import AbelSl2Error
from abelsl2.extalg import degree


class ExprError(AbelSl2Error):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownIdentifier(ExprError):
    def __init__(self, name, position):
        super().__init__(f"unknown identifier {name!r} at position {position}")
        self.name = name
        self.position = position


class MixedProductAmbiguity(ExprError):
    def __init__(self, position):
        super().__init__(f"'*' and '#' mixed without parentheses at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (not m.group(1) and not m.group(2) and not m.group(3)):
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^#(),":
                raise ExprSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, v):
        self.tokens = tokenize(text)
        self.i = 0
        self.v = v

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse(self):
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return value

    def expr(self):
        left = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                right = self.term()
                left = _add(left, right, self.v) if val == "+" else _add(left, _neg(right), self.v)
            else:
                return left

    def term(self):
        left = self.unary()
        product = None
        while True:
            kind, val, pos = self.peek()
            if kind != "op" or val not in "*/#":
                return left
            self.take()
            if val in "*#":
                if product is not None and product != val:
                    raise MixedProductAmbiguity(pos)
                product = val
            right = self.unary()
            if val == "*":
                left = _mul(left, right)
            elif val == "#":
                left = pontryagin(_promote(left, self.v), _promote(right, self.v))
            else:
                if isinstance(right, CohClass):
                    if right.degrees() not in ([0], []):
                        raise ExprSyntaxError("division by a non-scalar", pos)
                    right = right.value.coefficient(0)
                if not right:
                    raise ExprSyntaxError("division by zero", pos)
                left = left / right

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            operand = self.unary()
            return operand if val == "+" else _neg(operand)
        if kind == "id" and val == "F":
            self.take()
            if self.v.m != 1:
                raise ExprSyntaxError("F needs a single-factor variety", pos)
            return fourier(_promote(self.unary(), self.v))
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp, epos = self.take()
            if kind != "num":
                raise ExprSyntaxError("exponent must be a nonnegative integer", epos)
            return base ** exp
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Fraction(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "id":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "(":
                self.take()
                arg = self.expr()
                self.expect(")")
                return _call(val, arg, self.v, pos)
            return _identifier(val, self.v, pos)
        raise ExprSyntaxError("unexpected " + ("end of input" if kind == "end" else repr(val)), pos)


def _promote(x, v):
    return x if isinstance(x, CohClass) else abvar.as_class(v, x)


def _neg(x):
    return -x


def _add(a, b, v):
    if isinstance(a, CohClass) or isinstance(b, CohClass):
        return _promote(a, v) + _promote(b, v)
    return a + b


def _mul(a, b):
    if isinstance(a, CohClass) and isinstance(b, CohClass):
        return a * b
    if isinstance(a, CohClass):
        return a * b
    return b * a


_GEN = re.compile(r"^([xy])(\d+)(?:_(\d+))?$")


def _identifier(name, v, pos):
    g = v.g
    if name == "one":
        return v.one()
    if name == "pt":
        return v.point()
    m = _GEN.match(name)
    if m:
        i = int(m.group(2))
        k = int(m.group(3)) if m.group(3) else None
        if (k is None) != (v.m == 1) or not 1 <= i <= g or (k is not None and not 1 <= k <= v.m):
            raise UnknownIdentifier(name, pos)
        factor = 0 if k is None else k - 1
        return v.cls({1 << v.bit(factor, i - 1, 0 if m.group(1) == "x" else 1): 1})
    if v.m == 1 and name == "theta":
        return theta(v)
    if v.m == 2:
        ctx = v.context
        if name in ("theta_1", "theta_2"):
            proj = abvar.proj_p(ctx) if name.endswith("1") else abvar.proj_q(ctx)
            return abvar.pullback(proj, abvar.theta_of(ctx))
        if name == "poincare":
            return abvar.poincare_class(v)
        if name == "diag":
            return corr.diagonal_class(ctx).value
    raise UnknownIdentifier(name, pos)


def _call(name, arg, v, pos):
    if name == "exp":
        arg = _promote(arg, v)
        if arg.value.coefficient(0) or any(d % 2 for d in arg.degrees()):
            raise ExprSyntaxError("exp needs a class of even positive degrees", pos)
        return arg.exp()
    if name in ("graph", "tgraph"):
        if v.m != 2:
            raise ExprSyntaxError(f"{name} lives on A x A", pos)
        if isinstance(arg, CohClass) or arg.denominator != 1:
            raise ExprSyntaxError(f"{name} takes an integer", pos)
        fn = corr.graph if name == "graph" else corr.transpose_graph
        return fn(v.context, int(arg)).value
    raise UnknownIdentifier(name, pos)


def parse(text, ctx, m=1):
    """Evaluate ``text`` to a class on ``A^m`` (``m`` is 1 or 2)."""
    v = variety(ctx, m)
    return _promote(_Parser(text, v).parse(), v)


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _theta_multiple(part, k, v):
    """``c`` with ``part = c theta^k``, or None."""
    th = theta(v) ** k
    mask = next(iter(th.terms))
    c = part.value.coefficient(mask) / th.terms[mask]
    return c if part == th * c else None


def format_class(z):
    """Canonical text: ascending degree, ``theta`` powers when they fit."""
    v = z.variety
    pieces = []
    for k, part in z.value.graded_parts().items():
        cls = CohClass(v, part)
        c = None
        if v.m == 1 and k and k % 2 == 0:
            c = _theta_multiple(cls, k // 2, v)
        if c is not None:
            word = "theta" if k == 2 else f"theta^{k // 2}"
            pieces.append((c, word))
            continue
        for mask in sorted(part.terms):
            pieces.append((part.terms[mask], v.algebra.monomial_label(mask) if mask else None))
    if not pieces:
        return "0"
    out = []
    for n, (c, word) in enumerate(pieces):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if word is None:
            body = format_rational(a)
        elif a == 1:
            body = word
        else:
            body = f"{format_rational(a)}*{word}"
        if n == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
