"""
Collects everything known about a substitution into a Report.

Sections whose preconditions fail are left empty and the reason is recorded,
so a report can always be produced, even for a non primitive substitution.
"""

import logging

from constants import REPORT_COMPLEXITY_MAX, STRIP_TILES
from cohomology import COHOMOLOGY_METHODS, properise
from complexes import anderson_putnam, barge_diamond
from exceptions import SubstitutionError, InternalError
from export import render_strip
from language import complexity
from models import CohomologyMethod, Report, Substitution
from recognisability import fixed_letter, is_recognisable, return_words
from spectral import eigenvalues, is_primitive, pf_data
from storage import encode
from substitution import substitution_matrix


logger = logging.getLogger(__name__)

NOT_PRIMITIVE = "the substitution is not primitive"
NOT_RECOGNISABLE = "the substitution is not recognisable"

PRIMITIVE_SECTIONS = ["pf", "strip", "return_words", "recognisable", "complexity", "properisation", "bd_complex", "ap_complex"]
RECOGNISABLE_SECTIONS = ["bd", "proper", "ap", "cohomology_rank"]
METHOD_SECTIONS = {CohomologyMethod.BD: "bd", CohomologyMethod.PROPER: "proper", CohomologyMethod.AP: "ap"}


def _attempt(skipped: dict[str, str], section: str, compute):
    try:
        return compute()
    except InternalError:
        logger.exception("Internal error while computing %s", section)
        skipped[section] = "internal error, see the log"
    except SubstitutionError as e:
        logger.warning("Skipping %s: %s", section, e)
        skipped[section] = str(e)
    return None


def build_report(substitution: Substitution, name: str | None = None, complexity_max: int = REPORT_COMPLEXITY_MAX) -> Report:
    logger.info("Building report for %s", name or encode(substitution))
    matrix = substitution_matrix(substitution)
    skipped = {}
    fields = {
        "name": name,
        "encoded": encode(substitution),
        "substitution": substitution,
        "matrix": matrix,
        "primitive": is_primitive(matrix),
    }
    fields["eigenvalues"] = _attempt(skipped, "eigenvalues", lambda: tuple(eigenvalues(matrix)))
    fields["fixed"] = fixed_letter(substitution)
    if not fields["primitive"]:
        skipped.update({section: NOT_PRIMITIVE for section in PRIMITIVE_SECTIONS + RECOGNISABLE_SECTIONS})
        return Report(**fields, skipped=skipped)

    fields["pf"] = _attempt(skipped, "pf", lambda: pf_data(matrix))
    fields["strip"] = _attempt(skipped, "strip", lambda: render_strip(substitution, STRIP_TILES))
    fields["complexity"] = _attempt(skipped, "complexity", lambda: tuple(complexity(substitution, n) for n in range(1, complexity_max + 1)))
    fields["bd_complex"] = _attempt(skipped, "bd_complex", lambda: barge_diamond(substitution))
    fields["ap_complex"] = _attempt(skipped, "ap_complex", lambda: anderson_putnam(substitution))
    returns = _attempt(skipped, "return_words", lambda: return_words(substitution))
    if returns is None:
        # Without return words neither recognisability nor properisation can be decided
        for section in ["recognisable", "properisation"] + RECOGNISABLE_SECTIONS:
            skipped[section] = skipped["return_words"]
        return Report(**fields, skipped=skipped)
    fields["return_words"] = returns.words
    fields["recognisable"] = _attempt(skipped, "recognisable", lambda: is_recognisable(substitution))
    fields["properisation"] = _attempt(skipped, "properisation", lambda: properise(substitution))
    if not fields["recognisable"]:
        skipped.update({section: skipped.get("recognisable", NOT_RECOGNISABLE) for section in RECOGNISABLE_SECTIONS})
        return Report(**fields, skipped=skipped)

    for method, compute in COHOMOLOGY_METHODS.items():
        section = METHOD_SECTIONS[method]
        fields[section] = _attempt(skipped, section, lambda: compute(substitution))
    ranks = {fields[section].rank for section in METHOD_SECTIONS.values() if fields[section] is not None}
    if len(ranks) > 1:
        logger.warning("Cohomology methods disagree on the rank: %s", sorted(ranks))
    if fields["bd"] is not None:
        fields["cohomology_rank"] = fields["bd"].rank
    elif ranks:
        fields["cohomology_rank"] = min(ranks)
    else:
        skipped["cohomology_rank"] = "no cohomology method succeeded"
    return Report(**fields, skipped=skipped)
