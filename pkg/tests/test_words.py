from math import comb

import pytest

from itersig.errors import DimensionOutOfRangeError, ParseError, ZeroExponentError
from itersig.words import (
    ExtendedLetter,
    Word,
    alternating_words,
    enumerate_words,
    format_word,
    parse_word,
)
from conftest import random_word


def test_parse_paper_style_word():
    word = parse_word("[1^22][2^3]", 2)
    assert word.letters[0].factors == ((1, 2), (2, 1))
    assert word.letters[1].factors == ((2, 3),)
    assert word.weight == 6


def test_parse_smallest_word():
    word = parse_word("[1]", 1)
    assert word.letters == (ExtendedLetter(((1, 1),)),)


def test_parse_negative_exponent():
    word = parse_word("[1^(-1)]", 1)
    assert word.letters[0].factors == ((1, -1),)
    assert word.weight == 1


def test_parse_merges_repeated_dimensions():
    word = parse_word("[1^21^3]", 1)
    assert word.letters[0].factors == ((1, 5),)


def test_parse_ignores_whitespace():
    assert str(parse_word("[ 1 ^ 2 2]", 2)) == "[1^22]"


def test_parse_parenthesized_dimension():
    word = parse_word("[(12)^2]", 12)
    assert word.letters[0].factors == ((12, 2),)
    assert str(word) == "[(12)^2]"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_word("", 1)
    with pytest.raises(ParseError):
        parse_word("[1", 1)
    with pytest.raises(ParseError):
        parse_word("[]", 1)
    with pytest.raises(ParseError):
        parse_word("[1]x", 1)
    with pytest.raises(ParseError):
        parse_word("[1^]", 1)
    with pytest.raises(DimensionOutOfRangeError):
        parse_word("[3]", 2)
    with pytest.raises(DimensionOutOfRangeError):
        parse_word("[(0)]", 2)
    with pytest.raises(ZeroExponentError):
        parse_word("[1^0]", 1)
    with pytest.raises(ZeroExponentError):
        parse_word("[1^21^(-2)]", 1)


def test_format_examples():
    assert format_word(parse_word("[1][1]", 1)) == "[1][1]"
    assert format_word(parse_word("[1^22][2^3]", 2)) == "[1^22][2^3]"
    assert format_word(parse_word("[1^(-1)]", 1)) == "[1^(-1)]"
    assert format_word(parse_word("[1^(12)]", 1)) == "[1^(12)]"


def test_parse_format_roundtrip_random(rng):
    for _ in range(1000):
        d = int(rng.integers(1, 4))
        word = random_word(rng, d, max_weight=8, allow_negative=True)
        assert parse_word(format_word(word), d) == word


def expected_counts(d, max_weight):
    counts = {0: 1}
    for n in range(1, max_weight + 1):
        counts[n] = sum(comb(k + d - 1, d - 1) * counts[n - k] for k in range(1, n + 1))
    return [counts[n] for n in range(1, max_weight + 1)]


def test_enumerate_words_examples():
    assert [str(w) for w in enumerate_words(2, 1)] == ["[1]", "[2]"]
    assert len(enumerate_words(2, 5)) == 395
    words13 = enumerate_words(1, 3)
    assert len(words13) == 7
    assert {str(w) for w in words13} == {
        "[1]", "[1^2]", "[1][1]", "[1^3]", "[1^2][1]", "[1][1^2]", "[1][1][1]",
    }


def test_enumerate_counts_match_recurrence():
    for d in (1, 2, 3):
        for max_weight in range(1, 8):
            words = enumerate_words(d, max_weight)
            per_weight = expected_counts(d, max_weight)
            assert len(words) == sum(per_weight)
            for n in range(1, max_weight + 1):
                assert sum(1 for w in words if w.weight == n) == per_weight[n - 1]


def test_enumerate_order_and_contents():
    words = enumerate_words(2, 4)
    keys = [(w.weight, str(w)) for w in words]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    for word in words:
        assert word.weight <= 4
        assert not word.has_negative


def test_alternating_examples():
    plus, minus = alternating_words((1, 1), 3)
    assert str(plus) == "[1][1^(-1)][1]"
    assert str(minus) == "[1^(-1)][1][1^(-1)]"
    plus, _ = alternating_words((1, 2), 4)
    assert str(plus) == "[1][2^(-1)][1][2^(-1)]"
    _, minus = alternating_words((1, 1), 1)
    assert str(minus) == "[1^(-1)]"


def test_word_invariants():
    with pytest.raises(ParseError):
        Word(())
    with pytest.raises(ParseError):
        ExtendedLetter(((2, 1), (1, 1)))  # dims must increase
