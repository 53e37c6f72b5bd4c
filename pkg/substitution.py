"""
Core substitution operations.

Letters are indices 0..l-1 throughout the package. Text such as "ab.ba" only
exists at the edges: `parse_substitution` here, and rendering in storage/export.
"""

import logging
from itertools import chain

from exceptions import EmptyImage, IllegalCharacter, InvalidArgument
from models import IntegerMatrix, Substitution, Word


logger = logging.getLogger(__name__)

SEPARATOR = "."


def letter_name(letter: int) -> str:
    return chr(ord("a") + letter)


def word_to_text(word: Word) -> str:
    return "".join(letter_name(x) for x in word)


def text_to_word(text: str) -> Word:
    word = []
    for character in text:
        if not "a" <= character <= "z":
            raise IllegalCharacter(f"Character {character!r} is not a lowercase letter a-z")
        word.append(ord(character) - ord("a"))
    return tuple(word)


def parse_substitution(text: str) -> Substitution:
    """
    Decodes the dot separated form, images listed in letter order.
    "b.ba" is Fibonacci: a -> b, b -> ba.

    Raises IllegalCharacter, EmptyImage, AlphabetMismatch or AlphabetTooLarge.
    """
    images = []
    for index, chunk in enumerate(text.strip().split(SEPARATOR)):
        if chunk == "":
            raise EmptyImage(f"Image {index + 1} of {text!r} is empty")
        images.append(text_to_word(chunk))
    return Substitution(images=tuple(images))


def iterate(substitution: Substitution, word: Word, times: int = 1) -> Word:
    images = substitution.images
    for _ in range(times):
        word = tuple(chain.from_iterable(images[x] for x in word))
    return word


def power(substitution: Substitution, p: int) -> Substitution:
    if p < 1:
        raise InvalidArgument(f"Power must be at least 1, got {p}")
    if p == 1:
        return substitution
    images = tuple(iterate(substitution, (letter,), p) for letter in range(substitution.alphabet_size))
    return Substitution(images=images)


def compose(outer: Substitution, inner: Substitution) -> Substitution:
    """
    The substitution x -> outer(inner(x)).
    """
    if outer.alphabet_size != inner.alphabet_size:
        raise InvalidArgument(f"Cannot compose substitutions on {outer.alphabet_size} and {inner.alphabet_size} letters")
    images = tuple(iterate(outer, image) for image in inner.images)
    return Substitution(images=images)


def substitution_matrix(substitution: Substitution) -> IntegerMatrix:
    """
    Entry (i, j) counts the occurrences of letter i in the image of letter j.
    """
    size = substitution.alphabet_size
    rows = [[0] * size for _ in range(size)]
    for j, image in enumerate(substitution.images):
        for i in image:
            rows[i][j] += 1
    return IntegerMatrix(rows=tuple(tuple(row) for row in rows))
