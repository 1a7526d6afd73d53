"""Expression parser and canonical pretty-printer.

Grammar (whitespace separates operation symbols; it is otherwise ignored)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := int ['*' factors] | factors
    factors := factor ('*' factor)*
    factor  := (op)* var ['^' int]
    op      := 'Q_' int | ['b'] 'P_' halfint
    halfint := int | int '/2'
    var     := identifier ['(' int ')']      -- parenthesized base degree

Operations bind right to left: ``bP_1/2 bP_1 x`` applies ``bP_1`` first.
Integer constants are accepted as bare terms so every canonical rendering
round-trips, including "0" and "1".
"""

from __future__ import annotations

import re

from .algebra import Generator, Polynomial, mul, poly_pow
from .ops import DLOp, DLSequence, op_to_text

__all__ = ["ParseError", "parse_expr", "parse_seq", "render"]

_OPWORD = re.compile(r"^(?:(b?)P_(\d+)|Q_(\d+))$")
_SYMBOLS = "+-*^()/"


class ParseError(ValueError):
    """Syntax or context error, carrying the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        start = pos
        if ch.isdigit():
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(("num", text[start:pos], start))
        elif ch.isalpha() or ch == "_":
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(("word", text[start:pos], start))
        elif ch in _SYMBOLS:
            tokens.append(("sym", ch, start))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    return tokens


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int] | None:
        tok = self.peek()
        if tok is not None:
            self.i += 1
        return tok

    def match_sym(self, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == "sym" and tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.next()
        if tok is None:
            raise ParseError(f"expected {value or kind}, found end of input",
                             len(self.text))
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, found {tok[1]!r}", tok[2])
        return tok

    @property
    def here(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)


def _op_from_word(p: int, word: str, pos: int, lex: _Lexer) -> DLOp:
    """Build the operation for an already-consumed op-shaped word.

    May consume a following '/2' index continuation.
    """
    m = _OPWORD.match(word)
    assert m is not None
    if m.group(3) is not None:
        if p != 2:
            raise ParseError(f"Q_ operations require p = 2, not p = {p}", pos)
        return DLOp(0, int(m.group(3)))
    if p == 2:
        raise ParseError("P_ operations require an odd prime", pos)
    eps = 1 if m.group(1) else 0
    written = int(m.group(2))
    if lex.match_sym("/"):
        denom = lex.expect("num")
        if denom[1] != "2":
            raise ParseError("only halves are supported in indices", denom[2])
        num = written  # i = written/2, already the doubled value
    else:
        num = 2 * written
    if num < 1:
        raise ParseError("operation index must be at least 1/2", pos)
    return DLOp(eps, num)


def _parse_factor(p: int, lex: _Lexer) -> Polynomial:
    ops: list[DLOp] = []
    while True:
        tok = lex.peek()
        if tok is None or tok[0] != "word" or not _OPWORD.match(tok[1]):
            break
        lex.next()
        ops.append(_op_from_word(p, tok[1], tok[2], lex))
    tok = lex.peek()
    if tok is None or tok[0] != "word":
        raise ParseError("expected a variable", lex.here)
    lex.next()
    base = tok[1]
    base_degree = 0
    if lex.match_sym("("):
        sign = -1 if lex.match_sym("-") else 1
        num = lex.expect("num")
        base_degree = sign * int(num[1])
        lex.expect("sym", ")")
    exponent = 1
    if lex.match_sym("^"):
        exponent = int(lex.expect("num")[1])
    gen = Generator(p, base, base_degree, tuple(ops))
    return poly_pow(Polynomial.from_generator(gen), exponent)


def _parse_term(p: int, lex: _Lexer) -> Polynomial:
    coeff = 1
    tok = lex.peek()
    if tok is not None and tok[0] == "num":
        lex.next()
        coeff = int(tok[1])
        if not lex.match_sym("*"):
            return Polynomial.one(p).scale(coeff)
    value = _parse_factor(p, lex)
    while lex.match_sym("*"):
        value = mul(value, _parse_factor(p, lex))
    return value.scale(coeff)


def parse_expr(s: str, p: int) -> Polynomial:
    """Parse an expression into a canonical polynomial."""
    if not s.strip():
        raise ParseError("empty expression", 0)
    lex = _Lexer(s)
    sign = -1 if lex.match_sym("-") else 1
    value = _parse_term(p, lex).scale(sign)
    while True:
        tok = lex.peek()
        if tok is None:
            break
        if tok[0] != "sym" or tok[1] not in "+-":
            raise ParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
        lex.next()
        term = _parse_term(p, lex)
        value = value + term if tok[1] == "+" else value - term
    return value


def parse_seq(p: int, s: str) -> DLSequence:
    """Parse a whitespace-separated operation sequence, outermost first."""
    lex = _Lexer(s)
    ops: list[DLOp] = []
    while True:
        tok = lex.peek()
        if tok is None:
            break
        if tok[0] != "word" or not _OPWORD.match(tok[1]):
            raise ParseError(f"expected an operation symbol, found {tok[1]!r}",
                             tok[2])
        lex.next()
        ops.append(_op_from_word(p, tok[1], tok[2], lex))
    return tuple(ops)


def _factor_text(p: int, g: Generator, e: int) -> str:
    var = g.base if g.base_degree == 0 else f"{g.base}({g.base_degree})"
    ops = " ".join(op_to_text(p, op) for op in g.seq)
    body = f"{ops} {var}" if ops else var
    return body if e == 1 else f"{body}^{e}"


def render(value: Polynomial | Generator) -> str:
    """Canonical, re-parseable rendering; inverse of :func:`parse_expr`."""
    if isinstance(value, Generator):
        value = Polynomial.from_generator(value)
    if value.is_zero:
        return "0"
    parts = []
    for m, c in value.sorted_terms():
        if m.is_unit:
            parts.append(str(c))
            continue
        body = " * ".join(_factor_text(value.p, g, e) for g, e in m.factors)
        parts.append(body if c == 1 else f"{c}*{body}")
    return " + ".join(parts)
