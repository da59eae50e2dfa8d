"""Exception hierarchy shared by the index modules and the CLI."""


class RIndexError(Exception):
    """Base class for every error raised by this package."""


class InputError(RIndexError, ValueError):
    """The raw input text cannot be indexed."""


class TerminatorError(InputError):
    """The reserved terminator byte occurs inside the input."""


class IndexFormatError(RIndexError):
    """A serialized index file is malformed or has the wrong version."""


class InvalidSchemeError(RIndexError):
    """A macro scheme cannot reproduce its text (e.g. an unseeded copy cycle)."""
