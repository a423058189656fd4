"""Tiny recursive-descent parser for sums of monomial terms.

Accepted syntax, shared by Weyl expressions and theta polynomials:

    expr   := ['+'|'-'] term { ('+'|'-') term }
    term   := factor { '*' factor }
    factor := INT ['/' INT] | NAME INDEX ['^' INT]

Variables are a letter prefix plus a 1-based index, e.g. ``x1``, ``d2``,
``th1``, ``v2``, ``xi3``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[a-zA-Z]+)(?P<idx>\d+)|(?P<op>[*^+/\-]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r} at offset {pos}")
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int"))))
        elif m.group("var") is not None:
            tokens.append(("var", (m.group("var"), int(m.group("idx")))))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


def parse_terms(text: str) -> list[tuple[Fraction, list[tuple[str, int, int]]]]:
    """Parse into a list of (coefficient, [(prefix, 1-based index, exponent)])."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind, value=None):
        nonlocal pos
        tk, tv = peek()
        if tk != kind or (value is not None and tv != value):
            raise ParseError(f"unexpected token {tv!r} (token #{pos + 1})")
        pos += 1
        return tv

    def parse_factor():
        tk, tv = peek()
        if tk == "int":
            take("int")
            if peek() == ("op", "/"):
                take("op", "/")
                den = take("int")
                if den == 0:
                    raise ParseError("zero denominator")
                return Fraction(tv, den), None
            return Fraction(tv), None
        if tk == "var":
            take("var")
            exp = 1
            if peek() == ("op", "^"):
                take("op", "^")
                exp = take("int")
            return None, (tv[0], tv[1], exp)
        raise ParseError(f"expected a coefficient or variable (token #{pos + 1})")

    def parse_term():
        coeff = Fraction(1)
        vars_ = []
        while True:
            c, v = parse_factor()
            if c is not None:
                coeff *= c
            else:
                vars_.append(v)
            if peek() == ("op", "*"):
                take("op", "*")
                continue
            break
        return coeff, vars_

    terms = []
    sign = 1
    tk, tv = peek()
    if tk == "op" and tv in "+-":
        sign = -1 if tv == "-" else 1
        take("op")
    while True:
        coeff, vars_ = parse_term()
        terms.append((sign * coeff, vars_))
        tk, tv = peek()
        if tk is None:
            break
        if tk == "op" and tv in "+-":
            sign = -1 if tv == "-" else 1
            take("op")
            continue
        raise ParseError(f"unexpected token {tv!r} (token #{pos + 1})")
    return terms


def format_terms(terms: list[tuple[Fraction, list[tuple[str, int]]]]) -> str:
    """Render (coefficient, [(variable name, exponent)]) terms as a sum."""
    if not terms:
        return "0"
    chunks = []
    for coeff, vars_ in terms:
        body = "*".join(f"{name}^{e}" if e > 1 else name for name, e in vars_ if e > 0)
        mag = abs(coeff)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        chunks.append((coeff < 0, text))
    first_neg, first = chunks[0]
    out = ("-" if first_neg else "") + first
    for neg, text in chunks[1:]:
        out += (" - " if neg else " + ") + text
    return out
