"""
The language of a primitive substitution: its admitted n-letter words.
"""

import logging
from functools import lru_cache

from exceptions import FiniteLanguage, InvalidArgument
from models import Substitution, Word, WordSet
from spectral import requires_primitive
from substitution import iterate


logger = logging.getLogger(__name__)

SEED_LETTER = 0


def factors(word: Word, n: int) -> set[Word]:
    return {word[i:i + n] for i in range(len(word) - n + 1)}


def _grow_seed(substitution: Substitution, n: int) -> Word:
    if all(len(image) == 1 for image in substitution.images):
        raise FiniteLanguage("The substitution does not expand, its language has no long words")
    seed = (SEED_LETTER,)
    while len(seed) < n:
        seed = iterate(substitution, seed)
    return seed


@lru_cache(maxsize=256)
def _admitted_words(substitution: Substitution, n: int) -> WordSet:
    seed = _grow_seed(substitution, n)
    found = factors(seed, n)
    passes = 0
    quiet_passes = 0
    # Substitute and harvest until two passes in a row add nothing
    while quiet_passes < 2:
        seed = iterate(substitution, seed)
        before = len(found)
        found |= factors(seed, n)
        quiet_passes = quiet_passes + 1 if len(found) == before else 0
        passes += 1
    # Closing under w -> factors of phi(w) makes the set exactly the language
    frontier = list(found)
    closure_additions = 0
    while frontier:
        word = frontier.pop()
        for factor in factors(iterate(substitution, word), n):
            if factor not in found:
                found.add(factor)
                frontier.append(factor)
                closure_additions += 1
    if closure_additions:
        logger.warning("Closure pass added %s words of length %s missed by the seed", closure_additions, n)
    logger.info("Found %s admitted words of length %s after %s passes", len(found), n, passes)
    return WordSet.from_words(n, found)


@requires_primitive
def admitted_words(substitution: Substitution, n: int) -> WordSet:
    if n < 1:
        raise InvalidArgument(f"Word length must be positive, got {n}")
    return _admitted_words(substitution, n)


def complexity(substitution: Substitution, n: int) -> int:
    return len(admitted_words(substitution, n))


def is_admitted(substitution: Substitution, word: Word) -> bool:
    return tuple(word) in admitted_words(substitution, len(word))
