"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument violates an operation's precondition."""


class BlockMembershipError(ValueError):
    """A string is not a valid message block for the given marker.

    Kept separate from :class:`ParameterError` so the decoder can tell a
    corrupted block apart from a programming mistake.
    """


class DecodeFailure(Exception):
    """The received word could not be decoded."""


class MarkerError(ParameterError):
    """The marker is not an irreducible string of the required length."""


class WindowBoundError(ParameterError):
    """Block length does not exceed the root-change window bound."""


class FieldTooLargeError(ParameterError):
    """There are fewer message blocks than field elements."""
