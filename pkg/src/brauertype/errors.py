"""Exception hierarchy shared by all modules."""


class BrauerError(Exception):
    """Base class for every error raised by this package."""


class DegreeMismatch(BrauerError, ValueError):
    pass


class DegreeTooSmall(BrauerError, ValueError):
    pass


class ParseError(BrauerError, ValueError):
    pass


class NotAMember(BrauerError, ValueError):
    pass


class NotAPermutation(BrauerError, ValueError):
    pass


class InvalidSpec(BrauerError, ValueError):
    pass


class CapExceeded(BrauerError):
    """An enumeration hit its element or time cap.

    ``partial`` holds the number of elements (or classes) seen so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class FormulaMismatch(BrauerError):
    """An enumerated count disagrees with a closed counting formula."""

    def __init__(self, message, key=None, enumerated=None, formula=None):
        super().__init__(message)
        self.key = key
        self.enumerated = enumerated
        self.formula = formula


class CanonicalMissing(BrauerError):
    pass


class CanonicalDuplicated(BrauerError):
    pass
