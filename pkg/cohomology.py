"""
First cohomology of the tiling space of a primitive recognisable substitution,
computed three ways:

- Barge-Diamond: the direct limit of the transposed substitution matrix,
  corrected by the eventual range of the Barge-Diamond complex.
- Anderson-Putnam: the map induced on H^1 of the modified Anderson-Putnam
  complex by the collared substitution.
- Properisation: the transposed matrix of the return word substitution.

Groups are reported as presentations (a matrix plus decorations), never classified.
"""

import logging
from math import gcd, lcm

import sympy

from constants import MAX_ALPHABET_SIZE
from complexes import anderson_putnam, component_count, eventual_range, leftmost_letters, rightmost_letters
from exceptions import AlphabetTooLarge, BasisSolveFailure, DecompositionFailure, InvalidArgument, ProperisationFailure
from language import admitted_words, is_admitted
from models import CohomologyMethod, CohomologyPresentation, IntegerMatrix, Properisation, Substitution, Word
from recognisability import requires_recognisable, return_words
from spectral import from_sympy, requires_primitive, stable_rank
from substitution import compose, iterate, substitution_matrix


logger = logging.getLogger(__name__)


def cohomology_rank(presentation: CohomologyPresentation) -> int:
    return stable_rank(presentation.matrix) - presentation.quotient_rank + presentation.free_rank


def _present(method: CohomologyMethod, matrix: IntegerMatrix, quotient_rank: int = 0, free_rank: int = 0) -> CohomologyPresentation:
    rank = stable_rank(matrix) - quotient_rank + free_rank
    return CohomologyPresentation(method=method, matrix=matrix, quotient_rank=quotient_rank, free_rank=free_rank, rank=rank)


def presentation_text(presentation: CohomologyPresentation) -> str:
    """
    Plain text form, e.g. "lim M^T / Z^1" or "lim M^T ⊕ Z^1".
    """
    if presentation.method == CohomologyMethod.BD:
        text = "lim M^T"
        if presentation.quotient_rank:
            text += f" / Z^{presentation.quotient_rank}"
        if presentation.free_rank:
            text += f" ⊕ Z^{presentation.free_rank}"
        return text
    if presentation.method == CohomologyMethod.AP:
        return "lim M_AP"
    return "lim M_psi^T"


@requires_recognisable
def bd_cohomology(substitution: Substitution) -> CohomologyPresentation:
    ranges = eventual_range(substitution)
    return _present(
        CohomologyMethod.BD,
        substitution_matrix(substitution),
        quotient_rank=ranges.component_count - 1,
        free_rank=ranges.first_betti,
    )


def _collared_image(substitution: Substitution, edge: Word) -> list[Word]:
    i, j, k = edge
    # r(i) phi(j) l(k), read through a window of width three
    padded = (rightmost_letters(substitution)[i],) + substitution.images[j] + (leftmost_letters(substitution)[k],)
    return [padded[t:t + 3] for t in range(len(substitution.images[j]))]


@requires_primitive
def collared_substitution_edge(substitution: Substitution, edge: Word) -> list[Word]:
    """
    Image of the Anderson-Putnam edge ijk under the collared substitution.
    A one letter image phi(j) = x collapses to the single edge r(i) x l(k).
    """
    edge = tuple(edge)
    if len(edge) != 3 or not is_admitted(substitution, edge):
        raise InvalidArgument(f"{edge} is not an admitted three letter word")
    return _collared_image(substitution, edge)


@requires_primitive
def boundary_matrix(substitution: Substitution) -> sympy.Matrix:
    """
    Rows are admitted two letter words (vertices), columns admitted three letter
    words (edges). The boundary of edge abc is bc - ab.
    """
    vertices = admitted_words(substitution, 2).words
    edges = admitted_words(substitution, 3).words
    index = {word: row for row, word in enumerate(vertices)}
    boundary = sympy.zeros(len(vertices), len(edges))
    for column, (a, b, c) in enumerate(edges):
        boundary[index[(b, c)], column] += 1
        boundary[index[(a, b)], column] -= 1
    return boundary


def kernel_basis(boundary: sympy.Matrix) -> list[list[int]]:
    """
    Integer basis of the cycle space, each vector scaled to coprime integers.
    An incidence matrix is totally unimodular, so these vectors span the integer kernel.
    """
    basis = []
    for vector in boundary.nullspace():
        entries = [sympy.Rational(x) for x in vector]
        scale = lcm(*(x.q for x in entries))
        scaled = [int(x * scale) for x in entries]
        divisor = gcd(*scaled)
        basis.append([x // divisor for x in scaled])
    return basis


@requires_primitive
def homology_matrix(substitution: Substitution) -> IntegerMatrix:
    """
    Matrix of the collared substitution acting on H_1 of the Anderson-Putnam
    complex in the kernel basis: column i holds the coordinates of the image of generator i.
    """
    edges = admitted_words(substitution, 3).words
    index = {word: column for column, word in enumerate(edges)}
    boundary = boundary_matrix(substitution)
    basis = kernel_basis(boundary)
    expected = len(edges) - len(admitted_words(substitution, 2)) + component_count(anderson_putnam(substitution))
    if len(basis) != expected:
        raise BasisSolveFailure(f"Found {len(basis)} cycle generators, expected {expected}")
    if not basis:
        return IntegerMatrix(rows=())
    generators = sympy.Matrix.hstack(*(sympy.Matrix(vector) for vector in basis))
    images = {edge: _collared_image(substitution, edge) for edge in edges}
    cycles = sympy.zeros(len(edges), len(basis))
    for position, vector in enumerate(basis):
        for column, coefficient in enumerate(vector):
            if coefficient:
                for target in images[edges[column]]:
                    cycles[index[target], position] += coefficient
    if any(boundary * cycles):
        raise BasisSolveFailure("The image of a cycle generator is not a cycle")
    try:
        solution, parameters = generators.gauss_jordan_solve(cycles)
    except ValueError as e:
        raise BasisSolveFailure("The image of a cycle generator is outside the span of the generators") from e
    if parameters.shape[0] != 0 or any(not x.is_integer for x in solution):
        raise BasisSolveFailure("The image of a cycle generator has no unique integer coordinates")
    logger.info("Computed the induced map on %s cycle generators", len(basis))
    return from_sympy(solution)


@requires_recognisable
def ap_cohomology(substitution: Substitution) -> CohomologyPresentation:
    return _present(CohomologyMethod.AP, homology_matrix(substitution).transpose())


def is_left_proper(substitution: Substitution) -> bool:
    return len({image[0] for image in substitution.images}) == 1


def is_right_proper(substitution: Substitution) -> bool:
    return len({image[-1] for image in substitution.images}) == 1


def is_proper(substitution: Substitution) -> bool:
    return is_left_proper(substitution) and is_right_proper(substitution)


def right_conjugate(substitution: Substitution) -> Substitution:
    """
    For a left proper substitution with every image a w_x, the substitution x -> w_x a.
    """
    if not is_left_proper(substitution):
        raise InvalidArgument("Only a left proper substitution has a right conjugate")
    first = substitution.images[0][0]
    return Substitution(images=tuple(image[1:] + (first,) for image in substitution.images))


def _decompose(word: Word, letter: int, alphabet: dict[Word, int]) -> tuple[int, ...]:
    # Cut before every occurrence of letter, each piece must be a return word
    if not word or word[0] != letter:
        raise DecompositionFailure(f"{word} does not start with letter {letter}")
    positions = [index for index, x in enumerate(word) if x == letter] + [len(word)]
    pieces = []
    for start, end in zip(positions, positions[1:]):
        piece = word[start:end]
        if piece not in alphabet:
            raise DecompositionFailure(f"{piece} is not a return word")
        pieces.append(alphabet[piece])
    return tuple(pieces)


def _left_proper_power(substitution: Substitution) -> tuple[int, Substitution]:
    cap = 2 * substitution.alphabet_size ** 2
    current = substitution
    for i in range(1, cap + 1):
        if is_left_proper(current):
            return i, current
        current = compose(current, substitution)
    raise ProperisationFailure(f"No power up to {cap} is left proper")


@requires_primitive
def properise(substitution: Substitution) -> Properisation:
    """
    The return word substitution psi, its first left proper power psi^i,
    the right conjugate of psi^i and the proper substitution psi^i o (psi^i)^(R).

    Return words are renamed a, b, c, ... in (length, lexicographic) order,
    and psi(v) is phi^k(v) cut at every occurrence of the fixed letter.
    """
    returns = return_words(substitution)
    alphabet = returns.words
    if len(alphabet) > MAX_ALPHABET_SIZE:
        raise AlphabetTooLarge(f"{len(alphabet)} return words do not fit in a {MAX_ALPHABET_SIZE} letter alphabet")
    fixed = returns.fixed
    index = {word: letter for letter, word in enumerate(alphabet)}
    images = tuple(_decompose(iterate(substitution, word, fixed.order), fixed.letter, index) for word in alphabet)
    pre_left_proper = Substitution(images=images)
    left_power, left_proper = _left_proper_power(pre_left_proper)
    conjugate = right_conjugate(left_proper)
    logger.info("Properised %s letters into %s return words, left proper at power %s", substitution.alphabet_size, len(alphabet), left_power)
    return Properisation(
        fixed=fixed,
        return_alphabet=alphabet,
        pre_left_proper=pre_left_proper,
        left_power=left_power,
        left_proper=left_proper,
        right_conjugate=conjugate,
        full_proper=compose(left_proper, conjugate),
    )


@requires_recognisable
def properisation_cohomology(substitution: Substitution) -> CohomologyPresentation:
    properisation = properise(substitution)
    return _present(CohomologyMethod.PROPER, substitution_matrix(properisation.pre_left_proper).transpose())


COHOMOLOGY_METHODS = {
    CohomologyMethod.BD: bd_cohomology,
    CohomologyMethod.AP: ap_cohomology,
    CohomologyMethod.PROPER: properisation_cohomology,
}
