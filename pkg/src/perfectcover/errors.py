"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: non-bijective permutation, parse failure, degree mismatch."""


class SizeLimitError(RuntimeError):
    """An enumeration exceeded the configured element cap."""


class SearchError(RuntimeError):
    """A bounded search exhausted its budget without finding a witness."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class VerificationError(ValueError):
    """Claimed data failed an internal consistency check."""


class InternalError(AssertionError):
    """A condition guaranteed by theory failed; indicates a bug."""
