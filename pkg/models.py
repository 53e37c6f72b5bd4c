# Pydantic models

from bisect import bisect_left
from enum import Enum
from pydantic import BaseModel, ConfigDict, model_validator

from constants import MAX_ALPHABET_SIZE
from exceptions import AlphabetMismatch, AlphabetTooLarge, EmptyImage


# A word is a tuple of letter indices, 0 standing for 'a'.
Word = tuple[int, ...]


class ComplexKind(Enum):
    BD = "barge-diamond"
    AP = "anderson-putnam"
    ER = "eventual-range"


class Polarity(Enum):
    # IN is the vertex where a tile starts (v+), OUT where it ends (v-)
    IN = "i"
    OUT = "o"


class CohomologyMethod(Enum):
    BD = "barge-diamond"
    AP = "anderson-putnam"
    PROPER = "properisation"


class ProperisationStage(Enum):
    PRE = "pre-left-proper"
    LEFT = "left-proper"
    CONJUGATE = "right-conjugate"
    FULL = "full"


class Substitution(BaseModel):
    """
    A substitution on the alphabet 0..l-1, images[i] being the image of letter i.

    Instances are immutable and hashable, so they can key caches.
    """
    model_config = ConfigDict(frozen=True)

    images: tuple[Word, ...]

    @model_validator(mode="after")
    def check_invariants(self):
        size = len(self.images)
        if size == 0:
            raise EmptyImage("A substitution needs at least one letter")
        if size > MAX_ALPHABET_SIZE:
            raise AlphabetTooLarge(f"Alphabet of {size} letters exceeds {MAX_ALPHABET_SIZE}")
        used = set()
        for letter, image in enumerate(self.images):
            if len(image) == 0:
                raise EmptyImage(f"Image of letter {letter} is empty")
            for x in image:
                if x < 0 or x >= size:
                    raise AlphabetMismatch(f"Image of letter {letter} uses letter {x} outside the alphabet of size {size}")
            used.update(image)
        if len(used) != size:
            missing = sorted(set(range(size)) - used)
            raise AlphabetMismatch(f"Letters {missing} appear in no image")
        return self

    @property
    def alphabet_size(self) -> int:
        return len(self.images)

    def image(self, letter: int) -> Word:
        return self.images[letter]


class IntegerMatrix(BaseModel):
    """
    Square matrix of arbitrary precision integers, stored row by row.
    """
    model_config = ConfigDict(frozen=True)

    rows: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def check_square(self):
        for row in self.rows:
            if len(row) != len(self.rows):
                raise ValueError("Matrix is not square")
        return self

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(rows=tuple(zip(*self.rows)))


class WordSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: int
    # Sorted lexicographically by letter index, no repetition
    words: tuple[Word, ...]

    @classmethod
    def from_words(cls, length: int, words) -> "WordSet":
        return cls(length=length, words=tuple(sorted(set(words))))

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        word = tuple(word)
        index = bisect_left(self.words, word)
        return index < len(self.words) and self.words[index] == word


class Eigenvalue(BaseModel):
    model_config = ConfigDict(frozen=True)

    # The real eigenvalue, or the modulus of a complex conjugate pair reported once
    value: float
    real: float
    imag: float = 0.0
    complex_pair: bool = False


class PFData(BaseModel):
    model_config = ConfigDict(frozen=True)

    eigenvalue: float
    # Left eigenvector, scaled so that the shortest tile has length 1
    tile_lengths: tuple[float, ...]
    # Right eigenvector, scaled to sum 1
    frequencies: tuple[float, ...]
    all_eigenvalues: tuple[Eigenvalue, ...] = ()


class FixedLetter(BaseModel):
    model_config = ConfigDict(frozen=True)

    letter: int
    # Least k with phi^k(letter) starting with letter
    order: int


class ReturnWordSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    fixed: FixedLetter
    # Ordered by length, then lexicographically
    words: tuple[Word, ...]
    # Length of the admitted words that were scanned
    window: int

    def __len__(self) -> int:
        return len(self.words)


class Vertex(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    word: Word
    polarity: Polarity | None = None


class Edge(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    label: Word


class Complex(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ComplexKind
    alphabet_size: int
    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()

    @model_validator(mode="after")
    def check_endpoints(self):
        names = {vertex.name for vertex in self.vertices}
        for edge in self.edges:
            if edge.source not in names or edge.target not in names:
                raise ValueError(f"Edge {edge.label} has an endpoint outside the complex")
        return self


class EventualRange(BaseModel):
    model_config = ConfigDict(frozen=True)

    edges: WordSet
    subcomplex: Complex
    component_count: int
    first_betti: int


class CohomologyPresentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: CohomologyMethod
    matrix: IntegerMatrix
    # Barge-Diamond only: Z^k quotient and Z^l free summand
    quotient_rank: int = 0
    free_rank: int = 0
    rank: int

    @property
    def limit_map(self) -> IntegerMatrix:
        """
        The matrix whose direct limit is the first cohomology group.
        Barge-Diamond keeps the substitution matrix, hence the transpose.
        The other two methods store the induced cohomology map itself.
        """
        if self.method == CohomologyMethod.BD:
            return self.matrix.transpose()
        return self.matrix


class Properisation(BaseModel):
    model_config = ConfigDict(frozen=True)

    fixed: FixedLetter
    # Letter j of every stage stands for return_alphabet[j]
    return_alphabet: tuple[Word, ...]
    pre_left_proper: Substitution
    left_power: int
    left_proper: Substitution
    right_conjugate: Substitution
    full_proper: Substitution

    def stage(self, stage: ProperisationStage) -> Substitution:
        return {
            ProperisationStage.PRE: self.pre_left_proper,
            ProperisationStage.LEFT: self.left_proper,
            ProperisationStage.CONJUGATE: self.right_conjugate,
            ProperisationStage.FULL: self.full_proper,
        }[stage]


class Report(BaseModel):
    """
    Everything the tool knows about one substitution.
    A section that could not be computed is None, with the reason under `skipped`.
    """
    model_config = ConfigDict(frozen=True)

    name: str | None = None
    encoded: str
    substitution: Substitution
    matrix: IntegerMatrix
    primitive: bool
    eigenvalues: tuple[Eigenvalue, ...] | None = None
    pf: PFData | None = None
    strip: str | None = None
    fixed: FixedLetter | None = None
    return_words: tuple[Word, ...] | None = None
    recognisable: bool | None = None
    complexity: tuple[int, ...] | None = None
    properisation: Properisation | None = None
    bd: CohomologyPresentation | None = None
    proper: CohomologyPresentation | None = None
    ap: CohomologyPresentation | None = None
    cohomology_rank: int | None = None
    bd_complex: Complex | None = None
    ap_complex: Complex | None = None
    skipped: dict[str, str] = {}
