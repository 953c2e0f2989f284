"""Exceptions raised by jonquil.

Input problems derive from ValueError, exhausted resource bounds from
RuntimeError.  The command line maps the two families onto its exit codes.
"""

__all__ = [
    'BallTooLarge',
    'ClosureBoundExceeded',
    'ConfigError',
    'InvalidInput',
    'InvalidSystem',
    'JonquilError',
    'MissingInverse',
    'NoneFiniteOrder',
    'NotDominant',
    'NotInvariant',
    'NotJonquieres',
    'ParseError',
    'PlaceMismatch',
    'PreconditionFailed',
    'ResourceExhausted',
    'UnsupportedPlace',
    'VerificationError',
    ]


class JonquilError(Exception):
    """Base class for all jonquil errors."""


class InvalidInput(JonquilError, ValueError):
    """The caller handed us something we cannot work with."""


class ParseError(InvalidInput):
    def __init__(self, message, text=None, position=None):
        if text is not None and position is not None:
            message = '{} at position {} in {!r}'.format(
                message, position, text)
        super(ParseError, self).__init__(message)
        self.text = text
        self.position = position


class ConfigError(InvalidInput):
    pass


class NotDominant(InvalidInput):
    pass


class NotJonquieres(InvalidInput):
    pass


class PlaceMismatch(InvalidInput):
    pass


class NotInvariant(InvalidInput):
    pass


class PreconditionFailed(InvalidInput):
    pass


class UnsupportedPlace(InvalidInput):
    pass


class NoneFiniteOrder(InvalidInput):
    pass


class MissingInverse(InvalidInput):
    pass


class InvalidSystem(InvalidInput):
    """A Halphen system violates one or more of its invariants.

    The names of all violated conditions are collected in `violations`.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super(InvalidSystem, self).__init__('; '.join(self.violations))


class ResourceExhausted(JonquilError, RuntimeError):
    """A configured enumeration bound was hit."""


class ClosureBoundExceeded(ResourceExhausted):
    pass


class BallTooLarge(ResourceExhausted):
    pass


class VerificationError(JonquilError, RuntimeError):
    """An internal consistency check failed.  This is always a bug."""
