# Python built-in imports
import argparse
import logging
import re
import sys
from pathlib import Path

# Application imports
from constants import EXAMPLES, LOG_LEVEL, REPORT_COMPLEXITY_MAX, STRIP_TILES
from cohomology import COHOMOLOGY_METHODS, presentation_text, properise
from complexes import anderson_putnam, barge_diamond, eventual_range
from exceptions import InvalidArgument, NumericalFailure, ParseError, PreconditionError, SubstitutionError
from export import export_report, render_complex, render_strip
from language import admitted_words
from models import CohomologyMethod, ProperisationStage
from recognisability import is_recognisable, return_words
from report import build_report
from spectral import is_primitive, pf_data, eigenvalues
from storage import ASSIGNMENT, encode, load_substitutions, resolve, save_substitutions
from substitution import parse_substitution, substitution_matrix, word_to_text


logger = logging.getLogger(__name__)

# Checked in order, so subclasses must come before their parents
EXIT_CODES = [
    (ParseError, 2),
    (InvalidArgument, 2),
    (PreconditionError, 3),
    (NumericalFailure, 4),
]

METHOD_CHOICES = {
    "bd": [CohomologyMethod.BD],
    "ap": [CohomologyMethod.AP],
    "proper": [CohomologyMethod.PROPER],
    "all": [CohomologyMethod.BD, CohomologyMethod.PROPER, CohomologyMethod.AP],
}

STAGE_CHOICES = {
    "pre": ProperisationStage.PRE,
    "left": ProperisationStage.LEFT,
    "conjugate": ProperisationStage.CONJUGATE,
    "full": ProperisationStage.FULL,
}


def _matrix_lines(rows) -> list[str]:
    return ["  " + " ".join(str(entry) for entry in row) for row in rows]


def _substitution_lines(substitution) -> list[str]:
    return [f"  {word_to_text((letter,))} -> {word_to_text(image)}" for letter, image in enumerate(substitution.images)]


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
    logger.info("Wrote %s", path)


def command_info(args) -> None:
    _, substitution = resolve(args.substitution)
    matrix = substitution_matrix(substitution)
    print("Substitution Matrix :")
    print("\n".join(_matrix_lines(matrix.rows)))
    primitive = is_primitive(matrix)
    print(f"Primitive: {'Yes' if primitive else 'No'}")
    values = eigenvalues(matrix)
    print("Eigenvalues : " + ", ".join(f"{e.value:.2f}" + (" (complex pair)" if e.complex_pair else "") for e in values))
    if primitive:
        pf = pf_data(matrix)
        print(f"Perron-Frobenius Eigenvalue : {pf.eigenvalue:.2f}")
        print("Tile Lengths : " + ", ".join(f"{x:.2f}" for x in pf.tile_lengths))
        print("Letter Frequencies : " + ", ".join(f"{x:.2f}" for x in pf.frequencies))


def command_words(args) -> None:
    _, substitution = resolve(args.substitution)
    words = admitted_words(substitution, args.n)
    print(len(words))
    if args.list:
        for word in words.words:
            print(word_to_text(word))


def command_recog(args) -> None:
    _, substitution = resolve(args.substitution)
    returns = return_words(substitution)
    print(f"Fixed Letter : {word_to_text((returns.fixed.letter,))}")
    print(f"Order : {returns.fixed.order}")
    print("Return Words : " + ", ".join(word_to_text(word) for word in returns.words))
    print(f"Recognisable: {'Yes' if is_recognisable(substitution) else 'No'}")


def command_complex(args) -> None:
    _, substitution = resolve(args.substitution)
    builders = {"bd": barge_diamond, "ap": anderson_putnam, "er": lambda s: eventual_range(s).subcomplex}
    cell_complex = builders[args.type](substitution)
    tikz = render_complex(cell_complex)
    if args.out:
        _write(args.out, tikz + "\n")
    else:
        print(tikz)


def command_strip(args) -> None:
    _, substitution = resolve(args.substitution)
    print(render_strip(substitution, args.count))


def command_cohomology(args) -> None:
    _, substitution = resolve(args.substitution)
    for method in METHOD_CHOICES[args.method]:
        presentation = COHOMOLOGY_METHODS[method](substitution)
        print(f"{method.value} : {presentation_text(presentation)}")
        print("\n".join(_matrix_lines(presentation.matrix.rows)))
        print(f"Cohomology Rank : {presentation.rank}")


def command_properise(args) -> None:
    _, substitution = resolve(args.substitution)
    if args.repeat < 1:
        raise InvalidArgument(f"--repeat must be at least 1, got {args.repeat}")
    for step in range(args.repeat):
        properisation = properise(substitution)
        substitution = properisation.stage(STAGE_CHOICES[args.stage])
        if args.repeat > 1:
            print(f"Round {step + 1} :")
        print("Return Words : " + ", ".join(word_to_text(word) for word in properisation.return_alphabet))
        print(f"Left Power : {properisation.left_power}")
        print("\n".join(_substitution_lines(substitution)))
        print(f"Encoded : {encode(substitution)}")


def command_report(args) -> None:
    name, substitution = resolve(args.substitution)
    document = export_report(build_report(substitution, name=name, complexity_max=args.complexity))
    if args.out:
        _write(args.out, document)
    else:
        print(document)


def _file_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name) + ".tex"


def command_batch(args) -> None:
    """
    One report per saved substitution. A failing entry is skipped and the rest
    are still written.
    """
    entries, skipped_lines = load_substitutions(args.input)
    directory = Path(args.out)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    skipped = [f"line {number}: {reason}" for number, reason in skipped_lines]
    for name, substitution in entries:
        try:
            document = export_report(build_report(substitution, name=name))
        except SubstitutionError as e:
            logger.error("Skipping %s: %s", name, e)
            skipped.append(f"{name}: {e}")
            continue
        _write(directory / _file_name(name), document)
        written.append(name)
    print(f"Wrote {len(written)} reports to {directory}")
    for reason in skipped:
        print(f"Skipped {reason}")


def command_save(args) -> None:
    """
    Writes a save file for the batch command, the whole catalogue when no
    substitutions are given. Entries are catalogue names, encoded substitutions
    or name=encoded pairs.
    """
    entries = []
    for item in args.substitutions or list(EXAMPLES):
        name, separator, encoded = item.partition(ASSIGNMENT)
        if separator:
            entries.append((name.strip(), parse_substitution(encoded.strip())))
            continue
        name, substitution = resolve(item)
        entries.append((name or item.strip(), substitution))
    save_substitutions(args.out, entries)
    print(f"Saved {len(entries)} substitutions to {args.out}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Substitution tilings: languages, recognisability, complexes and cohomology.")
    commands = parser.add_subparsers(dest="command", required=True)
    help_substitution = "encoded substitution such as b.ba, or a catalogue name such as fibonacci"

    info_parser = commands.add_parser("info", help="matrix, primitivity, eigenvalues and Perron-Frobenius data")
    info_parser.add_argument("substitution", help=help_substitution)
    info_parser.set_defaults(handler=command_info)

    words_parser = commands.add_parser("words", help="number of admitted words of a given length")
    words_parser.add_argument("substitution", help=help_substitution)
    words_parser.add_argument("-n", type=int, required=True, help="word length")
    words_parser.add_argument("--list", action="store_true", help="also print the words, one per line")
    words_parser.set_defaults(handler=command_words)

    recog_parser = commands.add_parser("recog", help="fixed letter, return words and recognisability")
    recog_parser.add_argument("substitution", help=help_substitution)
    recog_parser.set_defaults(handler=command_recog)

    complex_parser = commands.add_parser("complex", help="TikZ picture of a complex")
    complex_parser.add_argument("substitution", help=help_substitution)
    complex_parser.add_argument("--type", choices=["bd", "ap", "er"], default="bd")
    complex_parser.add_argument("--out", help="write to this .tex file instead of printing")
    complex_parser.set_defaults(handler=command_complex)

    strip_parser = commands.add_parser("strip", help="TikZ picture of a patch of the tiling")
    strip_parser.add_argument("substitution", help=help_substitution)
    strip_parser.add_argument("--count", type=int, default=STRIP_TILES)
    strip_parser.set_defaults(handler=command_strip)

    cohomology_parser = commands.add_parser("cohomology", help="first cohomology presentations")
    cohomology_parser.add_argument("substitution", help=help_substitution)
    cohomology_parser.add_argument("--method", choices=list(METHOD_CHOICES), default="all")
    cohomology_parser.set_defaults(handler=command_cohomology)

    properise_parser = commands.add_parser("properise", help="proper substitution on return words")
    properise_parser.add_argument("substitution", help=help_substitution)
    properise_parser.add_argument("--stage", choices=list(STAGE_CHOICES), default="full")
    properise_parser.add_argument("--repeat", type=int, default=1, help="properise the chosen stage again this many times")
    properise_parser.set_defaults(handler=command_properise)

    report_parser = commands.add_parser("report", help="full LaTeX report")
    report_parser.add_argument("substitution", help=help_substitution)
    report_parser.add_argument("--out", help="write to this .tex file instead of printing")
    report_parser.add_argument("--complexity", type=int, default=REPORT_COMPLEXITY_MAX, help="largest word length in the complexity table")
    report_parser.set_defaults(handler=command_report)

    batch_parser = commands.add_parser("batch", help="one report per entry of a save file")
    batch_parser.add_argument("--in", dest="input", required=True, help="save file with 'name = encoded' lines")
    batch_parser.add_argument("--out", required=True, help="directory for the .tex reports")
    batch_parser.set_defaults(handler=command_batch)

    save_parser = commands.add_parser("save", help="write substitutions to a save file")
    save_parser.add_argument("substitutions", nargs="*", help="catalogue names, encoded substitutions or name=encoded, the whole catalogue if none")
    save_parser.add_argument("--out", required=True, help="save file to write")
    save_parser.set_defaults(handler=command_save)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=LOG_LEVEL, format='%(asctime)s %(levelname)s %(module)s %(funcName)s %(message)s')
    args = build_parser().parse_args(argv)
    try:
        args.handler(args)
    except SubstitutionError as e:
        for family, code in EXIT_CODES:
            if isinstance(e, family):
                logger.error("%s: %s", type(e).__name__, e)
                return code
        logger.exception("Internal error")
        return 1
    except OSError as e:
        logger.error("%s", e)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
