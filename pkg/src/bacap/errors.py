"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidAlphabetError(DomainError):
    """The alphabet size is not a power of two."""


class InvalidSpectrumError(DomainError):
    """A Walsh spectrum does not correspond to any probability distribution."""


class UnsupportedShapeError(DomainError):
    """The channel shape is not handled by the requested routine."""
