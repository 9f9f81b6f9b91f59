"""Concrete syntax for propositions: a recursive-descent parser and a printer.

Grammar (``*`` binds tighter than ``/\\``, which binds tighter than ``\\/``;
all three are left-associative)::

    prop := or
    or   := and ("\\/" and)*
    and  := star ("/\\" star)*
    star := atom ("*" atom)*
    atom := "true" | ident "|->" int | ident "~" pmf | "(" prop ")"
    pmf  := "ber(" rat ")" | "{" int ":" rat ("," int ":" rat)* "}"
    rat  := int | int "/" int
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import InputError, ParseError
from .props import PMF, And, Dist, Or, PointsTo, Prop, Star, Top

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>\|->)
  | (?P<and>/\\)
  | (?P<or>\\/)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[~*(){}:,/])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            if kind == "sym":
                kind = m.group()
            elif kind == "ident" and m.group() in ("true", "ber"):
                kind = m.group()
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, kind: Optional[str]):
        self.tokens = tokenize(text)
        self.i = 0
        self.kind = kind

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek
        raise ParseError(message, tok.line, tok.col)

    def expect(self, kind: str) -> Token:
        tok = self.peek
        if tok.kind != kind:
            shown = repr(tok.text) if tok.text else "end of input"
            self.fail(f"expected {kind!r}, found {shown}")
        self.i += 1
        return tok

    def accept(self, kind: str) -> bool:
        if self.peek.kind == kind:
            self.i += 1
            return True
        return False

    def parse(self) -> Prop:
        prop = self.disjunction()
        if self.peek.kind != "eof":
            self.fail(f"unexpected {self.peek.text!r}")
        return prop

    def disjunction(self) -> Prop:
        prop = self.conjunction()
        while self.accept("or"):
            prop = Or(prop, self.conjunction())
        return prop

    def conjunction(self) -> Prop:
        prop = self.star()
        while self.accept("and"):
            prop = And(prop, self.star())
        return prop

    def star(self) -> Prop:
        prop = self.atom()
        while self.accept("*"):
            prop = Star(prop, self.atom())
        return prop

    def atom(self) -> Prop:
        tok = self.peek
        if self.accept("true"):
            return Top()
        if self.accept("("):
            prop = self.disjunction()
            self.expect(")")
            return prop
        if tok.kind in ("ident", "ber"):
            self.i += 1
            op = self.peek
            if self.accept("arrow"):
                if self.kind == "prob":
                    self.fail("'|->' is not allowed in a probability proposition", op)
                return PointsTo(tok.text, int(self.expect("int").text))
            if self.accept("~"):
                if self.kind == "store":
                    self.fail("'~' is not allowed in a store proposition", op)
                return Dist(tok.text, self.pmf())
            self.fail("expected '|->' or '~' after a variable")
        shown = repr(tok.text) if tok.text else "end of input"
        self.fail(f"expected a proposition, found {shown}")

    def rat(self) -> Fraction:
        num = int(self.expect("int").text)
        if self.accept("/"):
            tok = self.expect("int")
            if int(tok.text) == 0:
                self.fail("zero denominator", tok)
            return Fraction(num, int(tok.text))
        return Fraction(num)

    def pmf(self) -> PMF:
        tok = self.peek
        try:
            if self.accept("ber"):
                self.expect("(")
                p = self.rat()
                self.expect(")")
                return PMF.bernoulli(p)
            self.expect("{")
            masses: dict[int, Fraction] = {}
            while True:
                key_tok = self.expect("int")
                self.expect(":")
                if int(key_tok.text) in masses:
                    self.fail(f"duplicate value {key_tok.text}", key_tok)
                masses[int(key_tok.text)] = self.rat()
                if not self.accept(","):
                    break
            self.expect("}")
            return PMF(masses)
        except ParseError:
            raise
        except InputError as exc:
            self.fail(str(exc), tok)


def parse_prop(text: str, kind: Optional[str] = None) -> Prop:
    """Parse ``text``; ``kind`` is ``"store"``, ``"prob"`` or ``None`` (either)."""
    if kind not in (None, "store", "prob"):
        raise ValueError(f"unknown proposition kind {kind!r}")
    return _Parser(text, kind).parse()


_PREC = {Or: 1, And: 2, Star: 3}
_OPS = {Or: "\\/", And: "/\\", Star: "*"}


def format_pmf(pmf: PMF) -> str:
    return "{" + ", ".join(f"{k}: {m}" for k, m in pmf.support) + "}"


def print_prop(prop: Prop, context: int = 0) -> str:
    if isinstance(prop, Top):
        return "true"
    if isinstance(prop, PointsTo):
        return f"{prop.var} |-> {prop.value}"
    if isinstance(prop, Dist):
        return f"{prop.var} ~ {format_pmf(prop.pmf)}"
    prec = _PREC[type(prop)]
    text = f"{print_prop(prop.left, prec)} {_OPS[type(prop)]} {print_prop(prop.right, prec + 1)}"
    return f"({text})" if prec < context else text
