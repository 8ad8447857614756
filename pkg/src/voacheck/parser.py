"""Text syntax for composite fields.

Grammar (whitespace separated)::

    expression ::= ['-'] term (('+' | '-') term)*
    term       ::= scalar? normprod | scalar
    normprod   ::= ':' factor+ ':' | factor
    factor     ::= ('d^' INT)? FIELD
    FIELD      ::= b | c | beta | gamma | j | T | Wt | W

A normal product of several factors is right-nested.  ``T`` and ``Wt`` are
macros for the stress tensor and the rescaled spin-3 field; ``W`` itself needs
sqrt(6) and is rejected.
"""

from __future__ import annotations

import re
import warnings

from . import wick
from .scalars import ONE, Scalar
from .wick import CompositeField

FREE = ("b", "c", "beta", "gamma", "j")
MACROS = {"T": wick.T_FIELD, "Wt": wick.WT_FIELD}


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_NUM = r"\d+(?:/\d+)?"
_TOKENS = re.compile(
    rf"(?P<ws>\s+)"
    rf"|(?P<scalar>(?:{_NUM}\*?)?i(?![A-Za-z_])|{_NUM}(?:[+-](?:{_NUM})?\*?i)?)"
    rf"|(?P<deriv>d\^(?P<order>\d+))"
    rf"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    rf"|(?P<colon>:)"
    rf"|(?P<op>[+-])"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup if m.lastgroup != "order" else "deriv"
        if kind != "ws":
            out.append((kind, m.group(0), pos))
        pos = m.end()
    out.append(("end", "", pos))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expression(self) -> CompositeField:
        sign = 1
        if self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term() * sign
        while self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.term() * sign
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return total

    def term(self) -> CompositeField:
        coeff = ONE
        kind, val, pos = self.peek()
        if kind == "scalar":
            self.take()
            coeff = Scalar.parse(val)
            if self.peek()[0] not in ("colon", "deriv", "name"):
                return CompositeField.constant(coeff)
        return self.normprod() * coeff

    def normprod(self) -> CompositeField:
        kind, val, pos = self.peek()
        if kind != "colon":
            return self.factor()
        self.take()
        factors = []
        while self.peek()[0] in ("deriv", "name"):
            factors.append(self.factor())
        kind, val, pos2 = self.peek()
        if kind != "colon":
            raise ParseError("expected ':' closing the normal product", pos2)
        if not factors:
            raise ParseError("empty normal product", pos)
        self.take()
        result = wick.nested_normal_product(*factors)
        if not result and all(len(f.terms) == 1 for f in factors):
            warnings.warn(f"normal product at position {pos} is identically zero", stacklevel=3)
        return result

    def factor(self) -> CompositeField:
        order = 0
        kind, val, pos = self.peek()
        if kind == "deriv":
            self.take()
            order = int(val[2:])
            kind, val, pos = self.peek()
        if kind != "name":
            raise ParseError("expected a field name", pos)
        self.take()
        if val in FREE:
            return CompositeField.field(val, order)
        if val in MACROS:
            return wick.derive(MACROS[val], order)
        if val == "W":
            raise ParseError("W needs sqrt(6); use Wt = (sqrt(6)/2) W instead", pos)
        raise ParseError(f"unknown field {val!r}", pos)


def parse_expr(text: str) -> CompositeField:
    return _Parser(text).expression()


def _render_monomial(mono) -> str:
    facs = [f"d^{k} {f}" if k else f for f, k in mono]
    if len(facs) == 1:
        return facs[0]
    return ":" + " ".join(facs) + ":"


def _mono_order(mono):
    return (sum(wick.WEIGHT[f] + k for f, k in mono), len(mono), tuple(wick._fkey(x) for x in mono))


def render_field(A: CompositeField) -> str:
    if not A.terms:
        return "0"
    parts = []
    for mono in sorted(A.terms, key=_mono_order):
        c = A.terms[mono]
        if c.is_real():
            neg = c.re < 0
            mag = -c if neg else c
        else:
            neg = c.re < 0 or (c.re == 0 and c.im < 0)
            mag = -c if neg else c
        body = _render_monomial(mono)
        if not mono:
            text = mag.text(compact=True)
        elif mag == 1:
            text = body
        else:
            text = f"{mag.text(compact=True)} {body}"
        if not parts:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(parts)
