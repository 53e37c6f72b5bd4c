"""
Exceptions raised by the toolkit.

Everything derives from SubstitutionError. It is intentionally not a ValueError,
so that raising one inside a pydantic validator propagates unchanged instead of
being folded into a ValidationError.

The CLI maps the four top level families to exit codes, see main.EXIT_CODES.
"""


class SubstitutionError(Exception):
    pass


# Malformed input: encoded text, save files, alphabets.

class ParseError(SubstitutionError):
    pass


class EmptyImage(ParseError):
    pass


class IllegalCharacter(ParseError):
    pass


class AlphabetMismatch(ParseError):
    pass


class AlphabetTooLarge(ParseError):
    pass


class SaveFileError(ParseError):
    pass


class InvalidArgument(SubstitutionError):
    pass


# Preconditions of an operation that the input substitution does not meet.

class PreconditionError(SubstitutionError):
    pass


class NotPrimitive(PreconditionError):
    pass


class NotRecognisable(PreconditionError):
    pass


class FiniteLanguage(PreconditionError):
    pass


class NumericalFailure(SubstitutionError):
    pass


# Should never happen for valid input, signals a bug.

class InternalError(SubstitutionError):
    pass


class BasisSolveFailure(InternalError):
    pass


class DecompositionFailure(InternalError):
    pass


class ProperisationFailure(InternalError):
    pass
