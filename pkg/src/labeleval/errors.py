"""Exception hierarchy.

Everything raised on bad *content* derives from LabelEvalError so the CLI
can map it to a validation exit code; OS-level failures (missing files,
permissions) stay OSError and map to the I/O exit code.
"""


class LabelEvalError(Exception):
    """Base class for all toolkit validation errors."""


class InvalidGeometryError(LabelEvalError):
    """Box with negative/non-finite dimensions or inverted corners."""


class MissingConfidenceError(LabelEvalError):
    """A label that must carry a confidence does not."""


class VocabularyError(LabelEvalError):
    """Malformed vocabulary: duplicate/empty names or bad class index."""


class VocabularyMismatchError(LabelEvalError):
    """Two label sets that must share a vocabulary do not."""

    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = list(left) if left is not None else None
        self.right = list(right) if right is not None else None


class FormatError(LabelEvalError):
    """Annotation file violates its format contract."""


class ParseError(FormatError):
    """Unparseable input; carries the byte offset when known."""

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset


class ReferentialIntegrityError(FormatError):
    """Annotation references an unknown image or category id."""

    def __init__(self, message, offending_ids=()):
        super().__init__(message)
        self.offending_ids = list(offending_ids)


class ValueRangeError(FormatError):
    """Numeric field outside its allowed range."""


class DuplicateRecordError(FormatError):
    """Same image appears twice in one stream."""
