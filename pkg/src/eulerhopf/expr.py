"""Text form of algebra elements.

Grammar (whitespace is free)::

    expression := ["-"] term (("+" | "-") term)*  |  "0"
    term       := [rational ["*"]] word  |  rational
    word       := letter+  |  "1"
    letter     := "z" "[" int "," int "]"
    rational   := int ["/" int]

Tensor expressions additionally allow ``word ("⊗" word)*`` in a term.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraElement, TensorElement, format_element
from .errors import DomainError, ExpressionSyntaxError
from .words import EMPTY, Letter, Word

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sym>[z\[\],+\-*/⊗]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        else:
            tokens.append((m.group("sym"), m.group("sym"), m.start("sym")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, r: int, tensor: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.r = r
        self.tensor = tensor

    def peek(self, offset: int = 0):
        k = self.k + offset
        return self.tokens[k] if k < len(self.tokens) else ("end", "", len(self.text))

    def take(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            raise ExpressionSyntaxError(f"expected {expected}, found {tok[1] or 'end of input'!r}", tok[2])
        self.k += 1
        return tok

    def integer(self) -> int:
        return int(self.take("num")[1])

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek()[0] == "/":
            self.k += 1
            den_tok = self.peek()
            den = self.integer()
            if den == 0:
                raise ExpressionSyntaxError("zero denominator", den_tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def letter(self) -> Letter:
        start = self.take("z")[2]
        self.take("[")
        i = self.integer()
        self.take(",")
        j = self.integer()
        self.take("]")
        if i < 1:
            raise ExpressionSyntaxError(f"letter z[{i},{j}] needs i >= 1", start)
        if j >= self.r:
            raise DomainError(f"letter z[{i},{j}] at position {start} needs j < r = {self.r}")
        return Letter(i, j, self.r)

    def word(self) -> Word:
        if self._unit_next():
            self.k += 1
            return EMPTY
        letters = [self.letter()]
        while self.peek()[0] == "z":
            letters.append(self.letter())
        return Word(letters)

    def _unit_next(self) -> bool:
        # a lone "1" followed by a separator or the end is the unit word
        kind, value, _ = self.peek()
        return kind == "num" and value == "1" and self.peek(1)[0] in ("end", "+", "-", "⊗")

    def term(self):
        coeff = Fraction(1)
        if self.peek()[0] == "num" and not self._unit_next():
            coeff = self.rational()
            if self.peek()[0] == "*":
                self.k += 1
            if not (self.peek()[0] == "z" or self._unit_next()):
                return coeff, (EMPTY,)
        words = [self.word()]
        while self.tensor and self.peek()[0] == "⊗":
            self.k += 1
            words.append(self.word())
        return coeff, tuple(words)

    def expression(self) -> dict:
        terms: dict = {}
        sign = 1
        if self.peek()[0] == "num" and self.peek()[1] == "0" and self.peek(1)[0] == "end":
            self.k += 1
            return terms
        if self.peek()[0] == "-":
            self.k += 1
            sign = -1
        while True:
            c, key = self.term()
            terms[key] = terms.get(key, 0) + sign * c
            kind = self.peek()[0]
            if kind == "end":
                return terms
            if kind not in ("+", "-"):
                tok = self.peek()
                raise ExpressionSyntaxError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
            sign = 1 if kind == "+" else -1
            self.k += 1


def parse_word_expression(text: str, r: int) -> AlgebraElement:
    """Parse an element such as ``"2 z[1,0] z[1,0] + z[2,0]"``."""
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    terms = _Parser(text, r, tensor=False).expression()
    return AlgebraElement({k[0]: c for k, c in terms.items()}, r)


def parse_tensor_expression(text: str, r: int) -> TensorElement:
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return TensorElement(_Parser(text, r, tensor=True).expression(), r)


def format_expression(x: AlgebraElement) -> str:
    return format_element(x)
