"""
Substitutions as text, and save files holding named substitutions.

The encoded form lists the images in letter order separated by dots:
"b.ba" is a -> b, b -> ba.

A save file holds one `name = encoded` pair per line. Blank lines and lines
starting with '#' are ignored.
"""

import logging
from pathlib import Path

from constants import EXAMPLES, SAVE_FILE_ENCODING
from exceptions import ParseError, SaveFileError
from models import Substitution
from substitution import SEPARATOR, parse_substitution, word_to_text


logger = logging.getLogger(__name__)

COMMENT = "#"
ASSIGNMENT = "="


def encode(substitution: Substitution) -> str:
    return SEPARATOR.join(word_to_text(image) for image in substitution.images)


def resolve(text: str) -> tuple[str | None, Substitution]:
    """
    Accepts either a catalogue name such as "fibonacci" or an encoded substitution.
    Returns the name, None for encoded input, along with the substitution.
    """
    name = text.strip().lower()
    if name in EXAMPLES:
        return name, parse_substitution(EXAMPLES[name])
    return None, parse_substitution(text)


def parse_save_file(text: str) -> tuple[list[tuple[str, Substitution]], list[tuple[int, str]]]:
    """
    Every line is handled on its own, so that one bad line doesn't lose the rest.
    Returns the parsed entries and the skipped lines as (line number, reason).
    A name seen before is skipped, the first definition wins.
    """
    entries = []
    skipped_lines = []
    names = set()
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith(COMMENT):
            continue
        name, separator, encoded = line.partition(ASSIGNMENT)
        name, encoded = name.strip(), encoded.strip()
        if not separator or not name:
            logger.error("Line %s is not of the form 'name = encoded'", number)
            skipped_lines.append((number, "expected 'name = encoded'"))
            continue
        if name in names:
            logger.error("Line %s repeats the name %s", number, name)
            skipped_lines.append((number, f"duplicate name {name}"))
            continue
        try:
            substitution = parse_substitution(encoded)
        except ParseError as e:
            logger.error("Line %s has an invalid substitution: %s", number, e)
            skipped_lines.append((number, str(e)))
            continue
        names.add(name)
        entries.append((name, substitution))
    return entries, skipped_lines


def load_substitutions(path: str | Path) -> tuple[list[tuple[str, Substitution]], list[tuple[int, str]]]:
    logger.info("Loading substitutions from %s", path)
    try:
        text = Path(path).read_text(encoding=SAVE_FILE_ENCODING)
    except (OSError, UnicodeDecodeError) as e:
        raise SaveFileError(f"Cannot read {path}: {e}") from e
    entries, skipped_lines = parse_save_file(text)
    logger.info("Loaded %s substitutions, skipped %s lines", len(entries), len(skipped_lines))
    return entries, skipped_lines


def format_save_file(entries: list[tuple[str, Substitution]]) -> str:
    lines = []
    for name, substitution in entries:
        name = name.strip()
        if not name or ASSIGNMENT in name or "\n" in name or name.startswith(COMMENT):
            raise SaveFileError(f"{name!r} cannot be used as a name in a save file")
        lines.append(f"{name} {ASSIGNMENT} {encode(substitution)}")
    return "\n".join(lines) + "\n"


def save_substitutions(path: str | Path, entries: list[tuple[str, Substitution]]) -> None:
    logger.info("Saving %s substitutions to %s", len(entries), path)
    Path(path).write_text(format_save_file(entries), encoding=SAVE_FILE_ENCODING)
