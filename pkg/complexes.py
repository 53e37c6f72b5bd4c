"""
Graph complexes of a primitive substitution.

Barge-Diamond: an in vertex and an out vertex per letter, a letter edge between
them, and a transition edge from the out vertex of a to the in vertex of b for
every admitted two letter word ab.

Modified Anderson-Putnam: a vertex per admitted two letter word and an edge
ab -> bc per admitted three letter word abc.
"""

import logging

import networkx as nx

from language import admitted_words
from models import Complex, ComplexKind, Edge, EventualRange, Polarity, Substitution, Vertex, Word, WordSet
from spectral import requires_primitive
from substitution import letter_name, word_to_text


logger = logging.getLogger(__name__)


def leftmost_letters(substitution: Substitution) -> list[int]:
    # l(i): first letter of the image of letter i
    return [image[0] for image in substitution.images]


def rightmost_letters(substitution: Substitution) -> list[int]:
    # r(i): last letter of the image of letter i
    return [image[-1] for image in substitution.images]


def bd_vertex_name(letter: int, polarity: Polarity) -> str:
    return letter_name(letter) + polarity.value


def _bd_vertex(letter: int, polarity: Polarity) -> Vertex:
    return Vertex(name=bd_vertex_name(letter, polarity), word=(letter,), polarity=polarity)


def _transition_edge(word: Word) -> Edge:
    first, second = word
    return Edge(source=bd_vertex_name(first, Polarity.OUT), target=bd_vertex_name(second, Polarity.IN), label=word)


@requires_primitive
def barge_diamond(substitution: Substitution) -> Complex:
    size = substitution.alphabet_size
    vertices = []
    edges = []
    for letter in range(size):
        vertices.append(_bd_vertex(letter, Polarity.IN))
        vertices.append(_bd_vertex(letter, Polarity.OUT))
        edges.append(Edge(source=bd_vertex_name(letter, Polarity.IN), target=bd_vertex_name(letter, Polarity.OUT), label=(letter,)))
    for word in admitted_words(substitution, 2).words:
        edges.append(_transition_edge(word))
    return Complex(kind=ComplexKind.BD, alphabet_size=size, vertices=tuple(vertices), edges=tuple(edges))


@requires_primitive
def anderson_putnam(substitution: Substitution) -> Complex:
    vertices = tuple(Vertex(name=word_to_text(word), word=word) for word in admitted_words(substitution, 2).words)
    edges = tuple(
        Edge(source=word_to_text(word[:2]), target=word_to_text(word[1:]), label=word)
        for word in admitted_words(substitution, 3).words
    )
    return Complex(kind=ComplexKind.AP, alphabet_size=substitution.alphabet_size, vertices=vertices, edges=edges)


def to_graph(cell_complex: Complex) -> nx.MultiGraph:
    """
    The underlying undirected graph. Loops and parallel edges are kept,
    both count towards the first Betti number.
    """
    graph = nx.MultiGraph()
    graph.add_nodes_from(vertex.name for vertex in cell_complex.vertices)
    for edge in cell_complex.edges:
        graph.add_edge(edge.source, edge.target, key=word_to_text(edge.label))
    return graph


def component_count(cell_complex: Complex) -> int:
    if not cell_complex.vertices:
        return 0
    return nx.number_connected_components(to_graph(cell_complex))


def first_betti(cell_complex: Complex) -> int:
    return len(cell_complex.edges) - len(cell_complex.vertices) + component_count(cell_complex)


def _edge_map(substitution: Substitution, words: set[Word]) -> set[Word]:
    left, right = leftmost_letters(substitution), rightmost_letters(substitution)
    return {(right[a], left[b]) for a, b in words}


@requires_primitive
def eventual_range(substitution: Substitution) -> EventualRange:
    """
    Iterates ab -> r(a) l(b) on the admitted two letter words.
    Each image is contained in the previous set, so the first repeat
    of the cardinality is the fixed point.
    """
    current = set(admitted_words(substitution, 2).words)
    rounds = 0
    while True:
        following = _edge_map(substitution, current)
        rounds += 1
        if len(following) == len(current):
            break
        current = following
    logger.info("Eventual range stabilised after %s rounds with %s edges", rounds, len(following))
    edges = WordSet.from_words(2, following)
    endpoints = set()
    for first, second in edges.words:
        endpoints.add((first, Polarity.OUT))
        endpoints.add((second, Polarity.IN))
    # Same order as the Barge-Diamond complex: by letter, in before out
    order = {Polarity.IN: 0, Polarity.OUT: 1}
    vertices = tuple(_bd_vertex(letter, polarity) for letter, polarity in sorted(endpoints, key=lambda pair: (pair[0], order[pair[1]])))
    subcomplex = Complex(
        kind=ComplexKind.ER,
        alphabet_size=substitution.alphabet_size,
        vertices=vertices,
        edges=tuple(_transition_edge(word) for word in edges.words),
    )
    return EventualRange(
        edges=edges,
        subcomplex=subcomplex,
        component_count=component_count(subcomplex),
        first_betti=first_betti(subcomplex),
    )
