"""Exception types shared across the package."""


class RangeError(IndexError):
    """An index or length parameter lies outside its documented range."""


class InvalidInputError(ValueError):
    """An input value violates a documented precondition."""


class UnsupportedParameterError(ValueError):
    """A parameter combination is mathematically meaningful but not supported here."""


class ResourceLimitError(RuntimeError):
    """Materializing the request would exceed the configured size cap."""


class NoBoundError(ValueError):
    """No prepend bound can be certified from the observed window."""


class IndexFormatError(ValueError):
    """A serialized index payload is malformed or fails invariant checks."""
