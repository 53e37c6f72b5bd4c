"""
Fixed letters, return words and the recognisability test.

A primitive substitution is recognisable exactly when its tiling space is
aperiodic, which is decided by comparing the images of v v' and v' v for every
pair of return words v, v' to a fixed letter.
"""

import logging
from functools import lru_cache, wraps
from itertools import combinations

from exceptions import NotRecognisable
from language import admitted_words
from models import FixedLetter, ReturnWordSet, Substitution, Word
from spectral import requires_primitive


logger = logging.getLogger(__name__)


def first_letter_map(substitution: Substitution) -> list[int]:
    return [image[0] for image in substitution.images]


def fixed_letter(substitution: Substitution) -> FixedLetter:
    """
    Letters on a cycle of the first letter map are the fixed letters,
    the cycle length being the order. Smallest order wins, then smallest letter.
    """
    first = first_letter_map(substitution)
    best = None
    for letter in range(substitution.alphabet_size):
        current = first[letter]
        for order in range(1, substitution.alphabet_size + 1):
            if current == letter:
                if best is None or order < best.order:
                    best = FixedLetter(letter=letter, order=order)
                break
            current = first[current]
    return best


def _holds_twice(words, letter: int) -> bool:
    return all(word.count(letter) >= 2 for word in words)


@lru_cache(maxsize=256)
def _return_words(substitution: Substitution, fixed: FixedLetter) -> ReturnWordSet:
    f = fixed.letter
    # Every return word v has v f admitted, so once all admitted words of a
    # length contain f twice, the gaps between occurrences in them are all of them.
    # The property is monotone in the length: double until it holds, then bisect
    # over prefixes of the longest language, which are exactly the shorter ones.
    high = 2
    longest = admitted_words(substitution, high).words
    while not _holds_twice(longest, f):
        high *= 2
        longest = admitted_words(substitution, high).words
    low = high // 2 if high > 2 else 1
    while high - low > 1:
        middle = (low + high) // 2
        if _holds_twice({word[:middle] for word in longest}, f):
            high = middle
        else:
            low = middle
    window = high
    words = {word[:window] for word in longest}
    found = set()
    for word in words:
        positions = [index for index, x in enumerate(word) if x == f]
        for start, end in zip(positions, positions[1:]):
            found.add(word[start:end])
    ordered = tuple(sorted(found, key=lambda w: (len(w), w)))
    logger.info("Found %s return words to letter %s scanning words of length %s", len(ordered), f, window)
    return ReturnWordSet(fixed=fixed, words=ordered, window=window)


@requires_primitive
def return_words(substitution: Substitution, fixed: FixedLetter | None = None) -> ReturnWordSet:
    return _return_words(substitution, fixed or fixed_letter(substitution))


def images_agree(substitution: Substitution, left: Word, right: Word, depth: int) -> bool:
    """
    Whether phi^depth(left) == phi^depth(right), without building either image.

    Each side is a stack of (letter, depth) tokens standing for phi^depth(letter).
    Identical tokens on top of both stacks expand identically and are dropped together,
    otherwise the deeper one is expanded until two plain letters can be compared.
    """
    images = substitution.images
    left_stack = [(x, depth) for x in reversed(left)]
    right_stack = [(x, depth) for x in reversed(right)]
    while left_stack and right_stack:
        left_top, right_top = left_stack[-1], right_stack[-1]
        if left_top == right_top:
            left_stack.pop()
            right_stack.pop()
            continue
        if left_top[1] == 0 and right_top[1] == 0:
            return False
        stack = left_stack if left_top[1] >= right_top[1] else right_stack
        letter, remaining = stack.pop()
        stack.extend((x, remaining - 1) for x in reversed(images[letter]))
    return not left_stack and not right_stack


@requires_primitive
@lru_cache(maxsize=256)
def is_recognisable(substitution: Substitution) -> bool:
    returns = return_words(substitution)
    depth = returns.fixed.order * substitution.alphabet_size
    for first, second in combinations(returns.words, 2):
        if not images_agree(substitution, first + second, second + first, depth):
            logger.info("Return words %s and %s do not commute under the substitution", first, second)
            return True
    logger.info("All %s return words commute, the substitution is periodic", len(returns))
    return False


def requires_recognisable(func):
    """
    Guards an operation whose first argument is a Substitution.
    Raises NotPrimitive before NotRecognisable.
    """
    @wraps(func)
    def wrapper(substitution: Substitution, *args, **kwargs):
        if not is_recognisable(substitution):
            raise NotRecognisable(f"{func.__name__} needs a recognisable substitution")
        return func(substitution, *args, **kwargs)
    return wrapper
