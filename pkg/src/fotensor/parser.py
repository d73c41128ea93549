"""Recursive-descent parser for the formula surface syntax.

Grammar (quantifier scope extends maximally to the right; precedence
! > & > | > ->, implication right-associative):

    formula     = quantified | implication
    quantified  = ("exists" | "forall") ident "." formula
    implication = disjunction [ "->" formula ]
    disjunction = conjunction { "|" conjunction }
    conjunction = negation { "&" negation }
    negation    = "!" negation | atom
    atom        = ident "(" ident { "," ident } ")"
                | ident "=" ident
                | "(" formula ")"

`succ`, `prec`, `dom` and `leftof` are reserved binary relation names; any
other predicate takes its arity from first use, which must stay consistent
within one parse.
"""

from __future__ import annotations

from .errors import ArityMismatchError, ParseError
from .formulas import (
    Atom,
    Equal,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    PredicateSymbol,
    Variable,
    and_,
    or_,
)

RESERVED_BINARY = ("succ", "prec", "dom", "leftof")

_KEYWORDS = ("exists", "forall")
_PUNCT = {
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
    ".": "DOT",
    "=": "EQ",
    "&": "AMP",
    "|": "PIPE",
    "!": "BANG",
}


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"_Token({self.kind}, {self.text!r}, {self.pos})"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("ARROW", "->", i))
            i += 2
            continue
        if c in _PUNCT:
            tokens.append(_Token(_PUNCT[c], c, i))
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in _KEYWORDS else "IDENT"
            tokens.append(_Token(kind, word, i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(_Token("EOF", "", n))
    return tokens


class FormulaParser:
    def __init__(self, text: str):
        self._tokens = _tokenize(text)
        self._pos = 0
        self._arities: dict[str, int] = {name: 2 for name in RESERVED_BINARY}

    def parse(self) -> Formula:
        f = self._formula()
        tok = self._peek()
        if tok.kind != "EOF":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return f

    def _peek(self) -> _Token:
        return self._tokens[self._pos]

    def _advance(self) -> _Token:
        tok = self._tokens[self._pos]
        self._pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {what}, found {found!r}", tok.pos)
        return self._advance()

    def _formula(self) -> Formula:
        tok = self._peek()
        if tok.kind == "KEYWORD":
            self._advance()
            var = self._expect("IDENT", "a variable after the quantifier")
            self._expect("DOT", "'.'")
            body = self._formula()
            ctor = Exists if tok.text == "exists" else Forall
            return ctor(Variable(var.text), body)
        return self._implication()

    def _implication(self) -> Formula:
        left = self._disjunction()
        if self._peek().kind == "ARROW":
            self._advance()
            # Right-associative; the consequent may open a quantifier whose
            # scope then extends maximally right.
            return Implies(left, self._formula())
        return left

    def _disjunction(self) -> Formula:
        items = [self._conjunction()]
        while self._peek().kind == "PIPE":
            self._advance()
            items.append(self._conjunction())
        return or_(items)

    def _conjunction(self) -> Formula:
        items = [self._negation()]
        while self._peek().kind == "AMP":
            self._advance()
            items.append(self._negation())
        return and_(items)

    def _negation(self) -> Formula:
        if self._peek().kind == "BANG":
            self._advance()
            return Not(self._negation())
        return self._atom()

    def _atom(self) -> Formula:
        tok = self._peek()
        if tok.kind == "LPAREN":
            self._advance()
            inner = self._formula()
            self._expect("RPAREN", "')'")
            return inner
        name = self._expect("IDENT", "a predicate or variable name")
        nxt = self._peek()
        if nxt.kind == "LPAREN":
            self._advance()
            args = [self._expect("IDENT", "a variable name")]
            while self._peek().kind == "COMMA":
                self._advance()
                args.append(self._expect("IDENT", "a variable name"))
            self._expect("RPAREN", "')'")
            if len(args) > 2:
                raise ParseError(
                    f"predicate {name.text!r} used with {len(args)} arguments; "
                    "relations are at most binary",
                    name.pos,
                )
            arity = len(args)
            known = self._arities.setdefault(name.text, arity)
            if known != arity:
                raise ArityMismatchError(
                    f"predicate {name.text!r} used with {arity} argument(s) but "
                    f"previously with {known} (at position {name.pos})"
                )
            terms = tuple(Variable(a.text) for a in args)
            return Atom(PredicateSymbol(name.text, arity), terms)
        if nxt.kind == "EQ":
            self._advance()
            right = self._expect("IDENT", "a variable name")
            return Equal(Variable(name.text), Variable(right.text))
        raise ParseError(
            f"expected '(' or '=' after {name.text!r}", nxt.pos
        )


def parse_formula(text: str) -> Formula:
    """Parse surface syntax into a Formula AST."""
    return FormulaParser(text).parse()
