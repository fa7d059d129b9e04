"""Exception hierarchy shared by every module of the package."""


class GoldmanError(Exception):
    """Base class for all package errors."""


class WordParseError(GoldmanError, ValueError):
    """A word string could not be parsed; ``token`` names the offending piece."""

    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class RankMismatchError(GoldmanError, ValueError):
    pass


class DomainError(GoldmanError, ValueError):
    """An operation was called outside its mathematical domain."""


class CertificateError(GoldmanError):
    """Surface construction failed its discreteness certificate."""

    def __init__(self, message, word=None):
        super().__init__(message)
        self.word = word


class UnstableEnumerationError(GoldmanError):
    """Intersection enumeration did not stabilise at the requested depth."""

    def __init__(self, message, depth=None):
        super().__init__(message)
        self.depth = depth


class ForeignPointError(DomainError):
    """An intersection point does not belong to the given pair of classes."""
