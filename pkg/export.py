"""
TikZ pictures and the LaTeX report.

Everything here is plain string building, so the output for a given input is
byte for byte the same on every run.
"""

import logging
import math
import re

from constants import DECIMAL_PLACES, FALLBACK_COLOUR, PALETTE, STRIP_TILES
from complexes import bd_vertex_name
from exceptions import FiniteLanguage, InvalidArgument
from models import CohomologyMethod, CohomologyPresentation, Complex, ComplexKind, Eigenvalue, IntegerMatrix, Polarity, Report, Substitution, Word
from recognisability import fixed_letter
from spectral import requires_primitive
from substitution import iterate, letter_name, word_to_text


logger = logging.getLogger(__name__)

TILE = 0.5
RADIUS = 2
PICTURE_OPTIONS = "[->, node distance=2cm, auto]"
BD_NODE_STYLE = "fill,circle,draw,inner sep=0pt,outer sep=0pt,minimum size=2mm"


def letter_colour(letter: int) -> str:
    if letter < len(PALETTE):
        return PALETTE[letter]
    return FALLBACK_COLOUR


def _number(x: float) -> str:
    # Rounding first keeps -0.000000 out of the output
    return f"{round(x, 6) + 0.0:.6f}"


def _on_circle(position: int, count: int, radius: float) -> str:
    angle = 2 * math.pi * position / count
    return f"({_number(radius * math.cos(angle))},{_number(radius * math.sin(angle))})"


@requires_primitive
def render_strip(substitution: Substitution, count: int = STRIP_TILES) -> str:
    """
    The first `count` letters of phi^m(f), f the fixed letter and m the least
    power long enough, as a row of coloured squares.
    """
    if count < 1:
        raise InvalidArgument(f"A strip needs at least one tile, got {count}")
    if count > 1 and all(len(image) == 1 for image in substitution.images):
        raise FiniteLanguage("The substitution does not expand, no strip can be grown")
    word = (fixed_letter(substitution).letter,)
    while len(word) < count:
        word = iterate(substitution, word)
    if substitution.alphabet_size > len(PALETTE):
        logger.warning("Alphabet of %s letters exhausts the palette, extra letters are gray and labelled", substitution.alphabet_size)
    lines = ["\\begin{tikzpicture}"]
    for position, letter in enumerate(word[:count]):
        x = position * TILE
        lines.append(f"\\fill [{letter_colour(letter)}] ({x:.1f},0.0) rectangle ({x + TILE:.1f},0.5);")
        if letter >= len(PALETTE):
            lines.append(f"\\node at ({x + TILE / 2:.2f},0.25) {{\\tiny ${letter_name(letter)}$}};")
    lines.append(f"\\draw[ultra thick] (0,0) rectangle ({count * TILE:g},0.5);")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines)


def _render_bd_style(cell_complex: Complex) -> list[str]:
    # Positions are those of the full Barge-Diamond complex, so an eventual range
    # lines up with the complex it was taken from.
    count = 2 * cell_complex.alphabet_size
    positions = {}
    for letter in range(cell_complex.alphabet_size):
        positions[bd_vertex_name(letter, Polarity.IN)] = 2 * letter
        positions[bd_vertex_name(letter, Polarity.OUT)] = 2 * letter + 1
    lines = []
    for vertex in cell_complex.vertices:
        lines.append(f"\\node [{BD_NODE_STYLE}] ({vertex.name}) at {_on_circle(positions[vertex.name], count, RADIUS)} {{}};")
    for edge in cell_complex.edges:
        label = word_to_text(edge.label)
        if len(edge.label) == 1:
            colour = letter_colour(edge.label[0])
            lines.append(f"\\draw ({edge.source}) edge[bend right=110, looseness=3, ->, {colour}, ultra thick] node {{${label}$}} ({edge.target});")
        else:
            bend = "bend left" if edge.label[0] == edge.label[1] else "bend right"
            lines.append(f"\\draw ({edge.source}) edge[{bend}, white, line width=4pt] ({edge.target});")
            lines.append(f"\\draw ({edge.source}) edge[{bend}, ->, thick] node[swap] {{${label}$}} ({edge.target});")
    return lines


def _render_ap(cell_complex: Complex) -> list[str]:
    count = len(cell_complex.vertices)
    radius = max(RADIUS, count / 2)
    lines = []
    for position, vertex in enumerate(cell_complex.vertices):
        lines.append(f"\\node [circle,draw] ({vertex.name}) at {_on_circle(position, count, radius)} {{${vertex.name}$}};")
    for edge in cell_complex.edges:
        label = word_to_text(edge.label)
        if edge.source == edge.target:
            lines.append(f"\\draw ({edge.source}) edge[loop above, ->, thick] node {{${label}$}} ({edge.target});")
        else:
            lines.append(f"\\draw ({edge.source}) edge[bend left=10, ->, thick] node {{${label}$}} ({edge.target});")
    return lines


def render_complex(cell_complex: Complex) -> str:
    lines = [f"\\begin{{tikzpicture}}{PICTURE_OPTIONS}"]
    if cell_complex.kind == ComplexKind.AP:
        lines.extend(_render_ap(cell_complex))
    else:
        lines.extend(_render_bd_style(cell_complex))
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines)


def latex_escape(text: str) -> str:
    replacements = {
        "\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#",
        "_": r"\_", "{": r"\{", "}": r"\}", "~": r"\textasciitilde{}", "^": r"\textasciicircum{}",
    }
    return "".join(replacements.get(character, character) for character in text)


def render_matrix(matrix: IntegerMatrix) -> str:
    if matrix.dimension == 0:
        return "$()$"
    rows = " \\\\ ".join(" & ".join(str(entry) for entry in row) for row in matrix.rows)
    return f"$\\left(\\begin{{array}}{{{'c' * matrix.dimension}}} {rows} \\end{{array}}\\right)$"


def _coloured(word: Word) -> str:
    return "".join(f"\\textcolor{{{letter_colour(x)}}}{{{letter_name(x)}}}" for x in word)


def render_substitution(substitution: Substitution, coloured: bool = True) -> str:
    """
    The substitution as an array of letter |-> image rows.
    """
    show = _coloured if coloured else word_to_text
    rows = " \\\\ ".join(f"{show((letter,))} & \\mapsto & {show(image)}" for letter, image in enumerate(substitution.images))
    return f"$\\begin{{array}}{{rcl}} {rows} \\end{{array}}$"


def _power(n: int) -> str:
    return f"\\mathbb{{Z}}^{n}" if n < 10 else f"\\mathbb{{Z}}^{{{n}}}"


def render_presentation(presentation: CohomologyPresentation) -> str:
    if presentation.method != CohomologyMethod.BD:
        return render_matrix(presentation.matrix)
    text = "\\varinjlim M^T"
    if presentation.quotient_rank:
        text += f" / {_power(presentation.quotient_rank)}"
    if presentation.free_rank:
        text += f" \\oplus {_power(presentation.free_rank)}"
    return f"${text}$"


def _eigenvalue_text(eigenvalue: Eigenvalue) -> str:
    text = f"{eigenvalue.value:.{DECIMAL_PLACES}f}"
    if eigenvalue.complex_pair:
        text += " (complex pair)"
    return text


def _decimals(values) -> str:
    return ", ".join(f"{x:.{DECIMAL_PLACES}f}" for x in values)


def _complexity_table(counts: tuple[int, ...]) -> str:
    columns = "c|" + "c" * len(counts)
    header = " & ".join(str(n) for n in range(1, len(counts) + 1))
    values = " & ".join(str(count) for count in counts)
    return f"\\begin{{tabular}}{{{columns}}} $n$ & {header} \\\\ \\hline $p(n)$ & {values} \\end{{tabular}}"


def _yes_no(flag: bool) -> str:
    return "Yes" if flag else "No"


def _skipped(report: Report, section: str) -> str:
    return f"skipped: {latex_escape(report.skipped.get(section, 'not computed'))}"


def _line(report: Report, section: str, heading: str, render) -> str:
    value = getattr(report, section)
    if value is None:
        return f"{heading} {_skipped(report, section)}"
    return f"{heading} {render(value)}"


def _centred(report: Report, section: str, render) -> str:
    value = getattr(report, section)
    if value is None:
        return _skipped(report, section)
    return f"\\begin{{center}}\n{render(value)}\n\\end{{center}}"


def export_report(report: Report) -> str:
    """
    A standalone LaTeX document with every computed section, in the order
    substitution, strip, matrix and spectrum, return words, cohomology, complexes.
    """
    title = latex_escape(report.encoded)
    if report.name:
        title = f"{latex_escape(report.name)} ({title})"
    body = [
        f"\\section*{{{title}}}",
        render_substitution(report.substitution),
        _centred(report, "strip", str),
        f"Substitution Matrix : {render_matrix(report.matrix)}",
        f"Primitive: {_yes_no(report.primitive)}",
        _line(report, "eigenvalues", "Eigenvalues :", lambda values: ", ".join(_eigenvalue_text(e) for e in values)),
        _line(report, "pf", "Tile Lengths :", lambda pf: _decimals(pf.tile_lengths)),
        _line(report, "pf", "Letter Frequencies :", lambda pf: _decimals(pf.frequencies)),
        _line(report, "fixed", "Fixed Letter :", lambda fixed: letter_name(fixed.letter)),
        _line(report, "return_words", "Return Words :", lambda words: ", ".join(word_to_text(word) for word in words)),
        _line(report, "recognisable", "Recognisable:", _yes_no),
        _line(report, "complexity", "Complexity :", _complexity_table),
        _line(report, "properisation", "Full Properisation :", lambda properisation: render_substitution(properisation.full_proper, coloured=False)),
        _line(report, "bd", "Barge Diamond Cohomology Group :", render_presentation),
        _line(report, "proper", "Properisation Cohomology Matrix :", render_presentation),
        _line(report, "ap", "Anderson-Putnam Cohomology Matrix :", render_presentation),
        _line(report, "cohomology_rank", "Cohomology Rank :", str),
        "\\textbf{Barge-Diamond Complex}",
        _centred(report, "bd_complex", render_complex),
        "\\textbf{Anderson-Putnam Complex}",
        _centred(report, "ap_complex", render_complex),
    ]
    lines = [
        "\\documentclass{article}",
        "\\usepackage{amsmath}",
        "\\usepackage{amssymb}",
        "\\usepackage{tikz}",
        "\\begin{document}",
        "",
        "\n\n".join(body),
        "",
        "\\end{document}",
    ]
    logger.info("Exported report for %s", report.name or report.encoded)
    return "\n".join(lines) + "\n"


# Smoke checks on generated LaTeX

ENVIRONMENT = re.compile(r"\\(begin|end)\{([^}]*)\}")


def latex_problems(text: str) -> list[str]:
    """
    Unbalanced environments, braces or inline math, and stray control characters.
    An empty list means the text passed.
    """
    problems = []
    stack = []
    for match in ENVIRONMENT.finditer(text):
        kind, name = match.groups()
        if kind == "begin":
            stack.append(name)
        elif not stack or stack.pop() != name:
            problems.append(f"\\end{{{name}}} does not close the innermost environment")
    problems.extend(f"\\begin{{{name}}} is never closed" for name in stack)
    depth = 0
    dollars = 0
    escaped = False
    for character in text:
        if escaped:
            escaped = False
            continue
        if character == "\\":
            escaped = True
        elif character == "{":
            depth += 1
        elif character == "}":
            depth -= 1
            if depth < 0:
                problems.append("closing brace without an opening one")
                depth = 0
        elif character == "$":
            dollars += 1
        elif ord(character) < 32 and character not in "\n\t":
            problems.append(f"control character {ord(character)}")
    if depth:
        problems.append(f"{depth} braces left open")
    if dollars % 2:
        problems.append("unbalanced inline math")
    return problems


def is_balanced_latex(text: str) -> bool:
    return not latex_problems(text)
