"""Infix and prefix concrete syntaxes, printers and the JSON AST form.

Infix grammar (loosest first)::

    imp   := gtr [ '->' imp ]            a -> b desugars to ~a | b
    gtr   := bool [ '>' gtr ]            right-associative
    bool  := unary { op unary }          op is one of & |, never mixed
    unary := '~' unary | primary
    primary := ident ["'"] | top | bot | '(' imp ')'

Runs of a single `&` or `|` operator nest to the right, like `>`.

Prefix grammar: ``!E``, ``*(E)(E)``, ``+(E)(E)``, ``%(E)(E)`` for negation,
conjunction, disjunction and gtr. Lowercase identifiers are literals (with an
optional trailing apostrophe for the complement) and single uppercase letters
are placeholders filled from a binding map.
"""
from __future__ import annotations

import re
from typing import Mapping

from .errors import ParseError, SourceSpan
from .formula import (BOT, TOP, And, Atom, Formula, Gtr, Not, Or, SElem,
                      lit, right_fold)

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<ident>[a-z][a-zA-Z0-9_]*'?)
  | (?P<op>[~&|>()])
""", re.VERBOSE)


def _span(text: str, start: int, end: int) -> SourceSpan:
    start = max(0, min(start, len(text)))
    end = max(start, min(end, len(text)))
    line = text.count("\n", 0, start) + 1
    column = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(start, end, line, column)


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind if kind != "op" else m.group(), m.group(), m.start(), m.end()))
        pos = m.end()
    out.append(("eof", "", len(text), len(text)))
    return out


class _InfixParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok):
        raise ParseError(message, _span(self.text, tok[2], max(tok[3], tok[2] + 1)))

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            self.fail(f"expected {kind!r}, found {what}", tok)
        return self.take()

    def parse(self) -> Formula:
        f = self.imp()
        tok = self.peek()
        if tok[0] != "eof":
            self.fail(f"unexpected {tok[1]!r}", tok)
        return f

    def imp(self) -> Formula:
        left = self.gtr()
        if self.peek()[0] == "arrow":
            self.take()
            return Or(Not(left), self.imp())
        return left

    def gtr(self) -> Formula:
        left = self.boolean()
        if self.peek()[0] == ">":
            self.take()
            return Gtr(left, self.gtr())
        return left

    def boolean(self) -> Formula:
        items = [self.unary()]
        op = None
        while self.peek()[0] in ("&", "|"):
            tok = self.take()
            if op is not None and tok[0] != op:
                self.fail("mixed '&' and '|' without parentheses", tok)
            op = tok[0]
            items.append(self.unary())
        if op is None:
            return items[0]
        return right_fold(And if op == "&" else Or, items)

    def unary(self) -> Formula:
        if self.peek()[0] == "~":
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok[0] == "ident":
            self.take()
            word = tok[1]
            if word == "top":
                return Atom(TOP)
            if word == "bot":
                return Atom(BOT)
            if word.endswith("'"):
                if word[:-1] in ("top", "bot"):
                    self.fail("complement marker on top/bot", tok)
                return Atom(lit(word[:-1], True))
            return Atom(lit(word))
        if tok[0] == "(":
            self.take()
            f = self.imp()
            self.expect(")")
            return f
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        self.fail(f"expected a formula, found {what}", tok)


def parse_infix(text: str) -> Formula:
    return _InfixParser(text).parse()


class _PrefixParser:
    def __init__(self, text: str, bindings: Mapping[str, Formula] | None):
        self.text = text
        self.bindings = bindings or {}
        self.i = 0

    def fail(self, message, start=None, end=None):
        start = self.i if start is None else start
        end = start + 1 if end is None else end
        raise ParseError(message, _span(self.text, start, end))

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def parse(self) -> Formula:
        f = self.exp()
        self.skip_ws()
        if self.i != len(self.text):
            self.fail(f"trailing input {self.text[self.i]!r}")
        return f

    def group(self) -> Formula:
        self.skip_ws()
        if self.i >= len(self.text) or self.text[self.i] != "(":
            self.fail("expected '('")
        open_at = self.i
        self.i += 1
        f = self.exp()
        self.skip_ws()
        if self.i >= len(self.text) or self.text[self.i] != ")":
            self.fail("unbalanced parenthesis", open_at, self.i)
        self.i += 1
        return f

    def exp(self) -> Formula:
        self.skip_ws()
        if self.i >= len(self.text):
            self.fail("unexpected end of input")
        c = self.text[self.i]
        if c == "!":
            self.i += 1
            return Not(self.exp())
        if c in "*+%":
            self.i += 1
            left = self.group()
            right = self.group()
            return {"*": And, "+": Or, "%": Gtr}[c](left, right)
        if c.isupper():
            start = self.i
            self.i += 1
            if c not in self.bindings:
                self.fail(f"unbound placeholder {c!r}", start)
            return self.bindings[c]
        m = re.compile(r"[a-z][a-zA-Z0-9_]*'?").match(self.text, self.i)
        if m is None:
            self.fail(f"unexpected character {c!r}")
        self.i = m.end()
        word = m.group()
        if word.endswith("'"):
            return Atom(lit(word[:-1], True))
        return Atom(lit(word))


def parse_prefix(text: str, bindings: Mapping[str, Formula] | None = None) -> Formula:
    return _PrefixParser(text, bindings).parse()


# -- printing -------------------------------------------------------------

def _elem_str(s: SElem) -> str:
    return str(s)


def to_infix(f: Formula) -> str:
    t = type(f)
    if t is Atom:
        return _elem_str(f.elem)
    if t is Not:
        inner = to_infix(f.child)
        if type(f.child) in (Atom, Not):
            return "~" + inner
        return "~(" + inner + ")"
    if t is Gtr:
        left = to_infix(f.left)
        if type(f.left) is Gtr:
            left = "(" + left + ")"
        return left + " > " + to_infix(f.right)
    op = " & " if t is And else " | "
    left = to_infix(f.left)
    if type(f.left) not in (Atom, Not):
        left = "(" + left + ")"
    right = to_infix(f.right)
    if type(f.right) not in (Atom, Not, t):
        right = "(" + right + ")"
    return left + op + right


def to_prefix(f: Formula) -> str:
    t = type(f)
    if t is Atom:
        if not f.elem.is_literal:
            raise ValueError("prefix syntax has no token for top/bot")
        return _elem_str(f.elem)
    if t is Not:
        return "!" + to_prefix(f.child)
    op = {And: "*", Or: "+", Gtr: "%"}[t]
    return f"{op}({to_prefix(f.left)})({to_prefix(f.right)})"


def to_text(f: Formula, syntax: str = "infix") -> str:
    if syntax == "infix":
        return to_infix(f)
    if syntax == "prefix":
        return to_prefix(f)
    raise ValueError(f"unknown syntax {syntax!r}")


# -- JSON AST -------------------------------------------------------------

def to_json(f: Formula) -> dict:
    t = type(f)
    if t is Atom:
        s = f.elem
        if not s.is_literal:
            return {"op": s.kind}
        return {"op": "lit", "name": s.name, "complement": s.complemented}
    if t is Not:
        return {"op": "not", "child": to_json(f.child)}
    return {"op": f.tag, "left": to_json(f.left), "right": to_json(f.right)}


def from_json(obj: dict) -> Formula:
    op = obj["op"]
    if op == "top":
        return Atom(TOP)
    if op == "bot":
        return Atom(BOT)
    if op == "lit":
        return Atom(lit(obj["name"], bool(obj.get("complement", False))))
    if op == "not":
        return Not(from_json(obj["child"]))
    cls = {"and": And, "or": Or, "gtr": Gtr}[op]
    return cls(from_json(obj["left"]), from_json(obj["right"]))
