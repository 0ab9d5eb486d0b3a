"""Words and extended letters indexing iterated sums.

A letter is a monomial over dimension indices with nonzero integer
exponents, e.g. ``[1^22]`` (dimension 1 squared times dimension 2).  A
word is a nonempty sequence of letters, e.g. ``[1^22][2^3]``.  The text
grammar below is also the config-file and CLI word syntax::

    word     := letter+
    letter   := '[' factor+ ']'
    factor   := dim exponent?
    dim      := '1'..'9' | '(' integer ')'
    exponent := '^' ('0'..'9' | '(' signed-integer ')')

Dimensions above 9 and exponents outside 0..9 require parentheses, so
compact forms such as ``[1^22]`` stay unambiguous (dimension 1 squared,
then dimension 2).  Whitespace inside brackets is ignored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionOutOfRangeError, ParseError, ZeroExponentError


@dataclass(frozen=True)
class ExtendedLetter:
    """A monomial: ordered ``(dimension, exponent)`` pairs.

    Dimensions are 1-based and strictly increasing, exponents are
    nonzero signed integers.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise ParseError("a letter needs at least one factor")
        prev = 0
        for dim, exp in self.factors:
            if dim <= prev:
                raise ParseError("letter factors must have strictly increasing dimensions")
            if exp == 0:
                raise ZeroExponentError(f"zero exponent for dimension {dim}")
            prev = dim

    @property
    def weight(self) -> int:
        return sum(abs(e) for _, e in self.factors)

    @property
    def max_dim(self) -> int:
        return self.factors[-1][0]

    @property
    def has_negative(self) -> bool:
        return any(e < 0 for _, e in self.factors)

    def __str__(self) -> str:
        parts = []
        for dim, exp in self.factors:
            text = str(dim) if dim <= 9 else f"({dim})"
            if exp != 1:
                text += f"^{exp}" if 2 <= exp <= 9 else f"^({exp})"
            parts.append(text)
        return "[" + "".join(parts) + "]"


@dataclass(frozen=True)
class Word:
    """A nonempty sequence of extended letters."""

    letters: tuple[ExtendedLetter, ...]

    def __post_init__(self):
        if not self.letters:
            raise ParseError("a word needs at least one letter")

    @property
    def weight(self) -> int:
        """Total number of variables, counting exponents by absolute value."""
        return sum(letter.weight for letter in self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def max_dim(self) -> int:
        return max(letter.max_dim for letter in self.letters)

    @property
    def has_negative(self) -> bool:
        return any(letter.has_negative for letter in self.letters)

    def __str__(self) -> str:
        return "".join(str(letter) for letter in self.letters)


def _parse_int(text, i, what):
    """Parse '(' integer ')' starting at ``text[i] == '('``."""
    close = text.find(")", i)
    if close < 0:
        raise ParseError(f"unclosed parenthesis in {what} at position {i}")
    body = text[i + 1 : close]
    try:
        value = int(body)
    except ValueError:
        raise ParseError(f"invalid {what} {body!r}") from None
    return value, close + 1


def _parse_letter(body, d):
    factors: dict[int, int] = {}
    order: list[int] = []
    i = 0
    n = len(body)
    while i < n:
        c = body[i]
        if c == "(":
            dim, i = _parse_int(body, i, "dimension")
        elif c.isdigit() and c != "0":
            dim = int(c)
            i += 1
        else:
            raise ParseError(f"expected a dimension, got {c!r}")
        if dim < 1:
            raise DimensionOutOfRangeError(f"dimension {dim} is not positive")
        if dim > d:
            raise DimensionOutOfRangeError(f"dimension {dim} exceeds series dimension {d}")
        exp = 1
        if i < n and body[i] == "^":
            i += 1
            if i >= n:
                raise ParseError("dangling '^'")
            if body[i] == "(":
                exp, i = _parse_int(body, i, "exponent")
            elif body[i].isdigit():
                exp = int(body[i])
                i += 1
            else:
                raise ParseError(f"expected an exponent, got {body[i]!r}")
            if exp == 0:
                raise ZeroExponentError(f"zero exponent for dimension {dim}")
        if dim in factors:
            factors[dim] += exp
        else:
            factors[dim] = exp
            order.append(dim)
    if not factors:
        raise ParseError("empty letter")
    for dim in order:
        if factors[dim] == 0:
            raise ZeroExponentError(f"exponents of dimension {dim} cancel to zero")
    return ExtendedLetter(tuple((dim, factors[dim]) for dim in sorted(factors)))


def parse_word(text: str, d: int) -> Word:
    """Parse word text against a series of dimension ``d``.

    Repeated dimensions within one letter are merged by summing their
    exponents; the result is canonical (dimensions sorted).
    """
    stripped = "".join(text.split())
    if not stripped:
        raise ParseError("empty word")
    letters = []
    i = 0
    while i < len(stripped):
        if stripped[i] != "[":
            raise ParseError(f"expected '[' at position {i} of {text!r}")
        close = stripped.find("]", i)
        if close < 0:
            raise ParseError(f"unclosed '[' at position {i} of {text!r}")
        letters.append(_parse_letter(stripped[i + 1 : close], d))
        i = close + 1
    return Word(tuple(letters))


def format_word(word: Word) -> str:
    """Canonical text of ``word``; round-trips through :func:`parse_word`."""
    return str(word)


def _letters_of_weight(d: int, k: int) -> list[ExtendedLetter]:
    """All positive-exponent letters of total degree ``k`` over ``d`` dims."""
    out = []
    # Compositions of k over d slots, zeros allowed, at least one positive.
    for cuts in itertools.combinations(range(k + d - 1), d - 1):
        exps = []
        prev = -1
        for cut in cuts:
            exps.append(cut - prev - 1)
            prev = cut
        exps.append(k + d - 2 - prev)
        out.append(ExtendedLetter(tuple((j + 1, e) for j, e in enumerate(exps) if e > 0)))
    return out


def enumerate_words(d: int, max_weight: int) -> list[Word]:
    """All positive-exponent words of weight at most ``max_weight``.

    Ordered by (weight, canonical text) so downstream feature-column
    order is deterministic across runs and platforms.
    """
    if d < 1 or max_weight < 1:
        raise ValueError("d and max_weight must be at least 1")
    letters = {k: _letters_of_weight(d, k) for k in range(1, max_weight + 1)}
    suffixes: dict[int, list[tuple[ExtendedLetter, ...]]] = {0: [()]}
    for n in range(1, max_weight + 1):
        suffixes[n] = [
            (letter,) + rest
            for k in range(1, n + 1)
            for letter in letters[k]
            for rest in suffixes[n - k]
        ]
    out = []
    for n in range(1, max_weight + 1):
        bucket = [Word(t) for t in suffixes[n]]
        bucket.sort(key=str)
        out.extend(bucket)
    return out


def alternating_words(dims: tuple[int, int], length: int) -> tuple[Word, Word]:
    """The two sign-alternating single-variable-letter words of ``length``.

    Letters alternate between the two given dimensions starting with the
    first; exponents alternate between +1 and -1.  The first returned
    word starts with +1, the second with -1.
    """
    a, b = dims
    if length < 1:
        raise ValueError("length must be at least 1")
    plus = []
    minus = []
    for i in range(length):
        dim = a if i % 2 == 0 else b
        sign = 1 if i % 2 == 0 else -1
        plus.append(ExtendedLetter(((dim, sign),)))
        minus.append(ExtendedLetter(((dim, -sign),)))
    return Word(tuple(plus)), Word(tuple(minus))
