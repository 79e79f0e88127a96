"""Recursive-descent parser for the literal language.

Grammar::

    expr    := term ('+' term)*
    term    := factor ('*' mult)*
    factor  := 'w' ('^' expo)? | NAT | 'n' | '(' expr ')' | NAME '(' expr (',' expr)* ')'
    expo    := NAT | 'n' | 'w' | '(' expr ')'
    mult    := NAT | 'n' | '(' expr ')'
    signexp := '[' (('+'|'-') expr (',' ('+'|'-') expr)*)? ']'
    dyadic  := '-'? NAT ('/' NAT | '/2^' NAT)? | '-'? NAT '.' DIGITS

Function calls (``nat_sum``, ``add``, ``mul``, ``sup``) are only accepted when
the caller enables them.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from .limits import Template
from .ordinal import (
    OMEGA,
    P_N,
    P_ZERO,
    Affine,
    Ordinal,
    OrdinalError,
    ParamOrdinal,
    as_param,
    ord_add,
    ord_mul,
    ord_nat_sum,
    param_sup,
)
from .real_bridge import Dyadic, NotDyadic
from .sign import MINUS, PLUS, SignExpansion, normalize


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{line}:{col}: {msg}")
        self.line, self.column = line, col


_TOKEN = re.compile(r"\s*(?:(\d+)|(w\b|w(?=[\^*+)\],\s]|$))|(n\b)|([A-Za-z_]\w*)|(\S))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks: List[Tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("nat", m.group(1), start))
            elif m.group(2):
                self.toks.append(("w", "w", start))
            elif m.group(3):
                self.toks.append(("n", "n", start))
            elif m.group(4):
                self.toks.append(("name", m.group(4), start))
            else:
                self.toks.append(("sym", m.group(5), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def pos(self) -> int:
        t = self.peek()
        return t[2] if t else len(self.text)

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos())

    def take(self, kind: str, value: Optional[str] = None) -> str:
        t = self.peek()
        if t is None or t[0] != kind or (value is not None and t[1] != value):
            self.error(f"expected {value or kind}")
        self.i += 1
        return t[1]

    def accept(self, kind: str, value: Optional[str] = None) -> bool:
        t = self.peek()
        if t is not None and t[0] == kind and (value is None or t[1] == value):
            self.i += 1
            return True
        return False

    def done(self):
        if self.peek() is not None:
            self.error("unexpected trailing input")


FUNCTIONS: Dict[str, Callable] = {
    "nat_sum": lambda a, b: ord_nat_sum(a, b),
    "add": lambda a, b: ord_add(a, b),
    "mul": lambda a, b: ord_mul(a, b),
    "sup": lambda p: param_sup(p),
}


class _ExprParser:
    def __init__(self, lex: _Lexer, functions: bool = False):
        self.lex = lex
        self.functions = functions

    def expr(self) -> ParamOrdinal:
        out = self.term()
        while self.lex.accept("sym", "+"):
            out = out + self.term()
        return out

    def term(self) -> ParamOrdinal:
        out = self.factor()
        while self.lex.accept("sym", "*"):
            out = self._times(out, self.mult())
        return out

    def _times(self, left: ParamOrdinal, right: ParamOrdinal) -> ParamOrdinal:
        try:
            if left.is_constant() and right.is_constant():
                return ParamOrdinal.const(ord_mul(left.to_ordinal(), right.to_ordinal()))
            coeff = _as_affine(right)
            if coeff is None or len(left.terms) != 1:
                self.lex.error("parametric products must be monomial times an affine form")
            e, c = left.terms[0]
            return ParamOrdinal(((e, c * coeff),))
        except OrdinalError as exc:
            self.lex.error(str(exc))

    def factor(self) -> ParamOrdinal:
        lex = self.lex
        t = lex.peek()
        if t is None:
            lex.error("unexpected end of input")
        kind, val, _ = t
        if kind == "w":
            lex.i += 1
            if lex.accept("sym", "^"):
                return ParamOrdinal(((self.expo(), Affine(0, 1)),))
            return as_param(OMEGA)
        if kind == "nat":
            lex.i += 1
            return ParamOrdinal.affine(0, int(val))
        if kind == "n":
            lex.i += 1
            return P_N
        if kind == "sym" and val == "(":
            lex.i += 1
            inner = self.expr()
            lex.take("sym", ")")
            return inner
        if kind == "name" and self.functions and val in FUNCTIONS:
            lex.i += 1
            lex.take("sym", "(")
            args = [self.expr()]
            while lex.accept("sym", ","):
                args.append(self.expr())
            lex.take("sym", ")")
            try:
                if val == "sup":
                    return as_param(FUNCTIONS[val](*args))
                return as_param(FUNCTIONS[val](*(a.to_ordinal() for a in args)))
            except (TypeError, OrdinalError) as exc:
                lex.error(f"{val}: {exc}")
        lex.error(f"unexpected {val!r}")

    def expo(self) -> ParamOrdinal:
        lex = self.lex
        t = lex.peek()
        if t and t[0] == "sym" and t[1] == "(":
            lex.i += 1
            inner = self.expr()
            lex.take("sym", ")")
            return inner
        if t and t[0] in ("nat", "n", "w"):
            return self.factor()
        lex.error("expected an exponent")

    def mult(self) -> ParamOrdinal:
        t = self.lex.peek()
        if t and (t[0] in ("nat", "n") or (t[0] == "sym" and t[1] == "(")):
            return self.factor()
        self.lex.error("expected a multiplier")


def _as_affine(p: ParamOrdinal) -> Optional[Affine]:
    """View a finite parametric expression as a single affine form."""
    a = b = 0
    for e, c in p.terms:
        if e.terms:
            return None
        a += c.a
        b += c.b
    return Affine(a, b)


def _finish(p: ParamOrdinal) -> Union[Ordinal, ParamOrdinal]:
    return p.to_ordinal() if p.is_constant() else p


def parse_param(text: str, functions: bool = False) -> ParamOrdinal:
    lex = _Lexer(text)
    p = _ExprParser(lex, functions).expr()
    lex.done()
    return p


def parse_ordinal(text: str, functions: bool = False) -> Ordinal:
    lex = _Lexer(text)
    p = _ExprParser(lex, functions).expr()
    lex.done()
    if not p.is_constant():
        raise ParseError("expected a constant ordinal, found the parameter n", text, 0)
    return p.to_ordinal()


def _parse_runs(text: str) -> List[Tuple[int, ParamOrdinal]]:
    lex = _Lexer(text)
    lex.take("sym", "[")
    runs = []
    if not lex.accept("sym", "]"):
        while True:
            t = lex.peek()
            if t is None or t[0] != "sym" or t[1] not in "+-":
                lex.error("expected a sign")
            lex.i += 1
            runs.append((PLUS if t[1] == "+" else MINUS, _ExprParser(lex).expr()))
            if lex.accept("sym", "]"):
                break
            lex.take("sym", ",")
    lex.done()
    return runs


def parse_template(text: str) -> Template:
    return Template(tuple(_parse_runs(text)))


def parse_sign_expansion(text: str) -> SignExpansion:
    runs = _parse_runs(text)
    out = []
    for s, l in runs:
        if not l.is_constant():
            raise ParseError("run lengths must be constant here", text, 0)
        out.append((s, l.to_ordinal()))
    return normalize(out)


_DYADIC = re.compile(r"\s*(-?)(\d+)(?:/(?:2\^(\d+)|(\d+))|\.(\d+))?\s*$")


def parse_dyadic(text: str) -> Dyadic:
    m = _DYADIC.match(text)
    if not m:
        raise ParseError("malformed dyadic", text, 0)
    sign, whole, k, den, dec = m.groups()
    if k is not None:
        q = Fraction(int(whole), 1 << int(k))
    elif den is not None:
        if int(den) == 0:
            raise ParseError("zero denominator", text, m.start(4))
        q = Fraction(int(whole), int(den))
    elif dec is not None:
        q = Fraction(whole + "." + dec)
    else:
        q = Fraction(int(whole))
    if sign:
        q = -q
    try:
        return Dyadic.from_fraction(q)
    except NotDyadic as exc:
        raise ParseError(str(exc), text, 0) from None


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("malformed rational", text, 0) from None


def parse_literal(text: str):
    """Parse any literal: sign expansion, dyadic, ordinal or parametric ordinal."""
    s = text.strip()
    if s.startswith("["):
        runs = _parse_runs(s)
        if all(l.is_constant() for _, l in runs):
            return parse_sign_expansion(s)
        return Template(tuple(runs))
    if s.startswith("-") or "/" in s or "." in s:
        return parse_dyadic(s)
    lex = _Lexer(s)
    p = _ExprParser(lex).expr()
    lex.done()
    return _finish(p)
