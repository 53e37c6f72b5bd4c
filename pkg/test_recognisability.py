from unittest.mock import patch

import pytest

import recognisability
from constants import EXAMPLES
from exceptions import NotPrimitive, NotRecognisable
from language import admitted_words
from models import FixedLetter
from recognisability import first_letter_map, fixed_letter, images_agree, is_recognisable, requires_recognisable, return_words
from substitution import iterate, parse_substitution, power, text_to_word, word_to_text

SLOW_RETURN = "bdbab.ddacb.ca.dddad"


def _returns(name: str) -> list[str]:
    return [word_to_text(word) for word in return_words(parse_substitution(EXAMPLES[name])).words]


def test_first_letter_map():
    assert first_letter_map(parse_substitution("b.ba")) == [1, 1]
    assert first_letter_map(parse_substitution("ab.ac.a")) == [0, 0, 0]


def test_fixed_letter():
    assert fixed_letter(parse_substitution("b.ba")) == FixedLetter(letter=1, order=1)
    assert fixed_letter(parse_substitution("ab.ac.a")) == FixedLetter(letter=0, order=1)
    # Both letters lie on a cycle of length 2, the smallest letter wins
    assert fixed_letter(parse_substitution("ba.ab")) == FixedLetter(letter=0, order=2)
    assert fixed_letter(parse_substitution("b.a")) == FixedLetter(letter=0, order=2)
    # Order 1 beats a smaller letter of order 2
    assert fixed_letter(parse_substitution("bc.ab.ca")) == FixedLetter(letter=2, order=1)


def test_return_words():
    assert _returns("fibonacci") == ["b", "ba"]
    assert _returns("tribonacci") == ["a", "ab", "ac"]
    assert _returns("disconnected") == ["a", "ab", "abcd", "abcdbcdb"]
    assert _returns("hexibonacci") == ["a", "ab", "ac", "ad", "ae", "af"]
    assert _returns("thue-morse") == ["a", "ab", "abb"]
    assert _returns("periodic") == ["ab"]


def test_return_words_for_another_letter():
    tribonacci = parse_substitution(EXAMPLES["tribonacci"])
    returns = return_words(tribonacci, FixedLetter(letter=0, order=1))
    assert returns.fixed.letter == 0
    assert len(returns) == 3
    assert returns.window == 4


def test_return_words_not_primitive():
    with pytest.raises(NotPrimitive):
        return_words(parse_substitution("ab.b"))


def test_images_agree():
    fibonacci = parse_substitution("b.ba")
    b, ba = text_to_word("b"), text_to_word("ba")
    assert images_agree(fibonacci, b + ba, b + ba, 3) is True
    assert images_agree(fibonacci, b + ba, ba + b, 0) is False
    assert images_agree(fibonacci, b + ba, ba + b, 2) is False
    periodic = parse_substitution("ab.ab")
    # Every image of a word of length 2 is a power of ab
    assert images_agree(periodic, text_to_word("ab"), text_to_word("ba"), 1) is True
    # Different lengths never agree
    assert images_agree(fibonacci, b, ba, 2) is False


def test_is_recognisable():
    for name in ["fibonacci", "thue-morse", "tribonacci", "disconnected", "hexibonacci", "period-doubling"]:
        assert is_recognisable(parse_substitution(EXAMPLES[name])) is True, name
    assert is_recognisable(parse_substitution(EXAMPLES["periodic"])) is False
    # a -> aba, b -> bab generates the periodic word ababab...
    assert is_recognisable(parse_substitution("aba.bab")) is False


def test_is_recognisable_invariant_under_powers():
    for name in ["fibonacci", "tribonacci", "periodic"]:
        substitution = parse_substitution(EXAMPLES[name])
        assert is_recognisable(power(substitution, 2)) == is_recognisable(substitution)


def test_is_recognisable_not_primitive():
    with pytest.raises(NotPrimitive):
        is_recognisable(parse_substitution("ab.b"))


def test_requires_recognisable():
    @requires_recognisable
    def guarded(substitution):
        return "ran"

    assert guarded(parse_substitution("b.ba")) == "ran"
    with pytest.raises(NotRecognisable):
        guarded(parse_substitution("ab.ab"))
    with pytest.raises(NotPrimitive):
        guarded(parse_substitution("ab.b"))


def test_return_words_window_is_smallest():
    for name in ["fibonacci", "tribonacci", "disconnected", "thue-morse", "periodic"]:
        substitution = parse_substitution(EXAMPLES[name])
        returns = return_words(substitution)
        f = returns.fixed.letter
        assert all(word.count(f) >= 2 for word in admitted_words(substitution, returns.window).words), name
        if returns.window > 2:
            assert any(word.count(f) < 2 for word in admitted_words(substitution, returns.window - 1).words), name


def test_return_words_long_gaps():
    substitution = parse_substitution(SLOW_RETURN)
    returns = return_words(substitution)
    f = returns.fixed.letter
    assert returns.window > 64
    longest = admitted_words(substitution, returns.window).words
    for word in returns.words:
        assert word[0] == f and word.count(f) == 1
        # Shorter admitted words are exactly the prefixes of longer ones
        assert word + (f,) in {admitted[:len(word) + 1] for admitted in longest}
    # Gaps between consecutive f in a long prefix of the fixed point are return words
    fixed_point = (f,)
    while len(fixed_point) < 20000:
        fixed_point = iterate(substitution, fixed_point, returns.fixed.order)
    positions = [index for index, x in enumerate(fixed_point) if x == f]
    gaps = {fixed_point[start:end] for start, end in zip(positions, positions[1:])}
    assert gaps <= set(returns.words)


def test_return_words_searches_few_lengths():
    recognisability._return_words.cache_clear()
    with patch("recognisability.admitted_words", wraps=admitted_words) as mocked_admitted_words:
        return_words(parse_substitution(SLOW_RETURN))
    # Doubling from 2 past the window, then bisecting without new languages
    assert mocked_admitted_words.call_count <= 8
