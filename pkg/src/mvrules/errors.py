"""Shared exception types."""


class MVRulesError(Exception):
    """Base class for all library errors."""


class FormulaSyntaxError(MVRulesError):
    """Raised on malformed formula or rule text; carries the offending position."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnboundVariableError(MVRulesError):
    """A formula variable has no value in the supplied assignment."""


class CarrierError(MVRulesError):
    """An element lies outside the carrier of the algebra it was used with."""


class ResourceGuardError(MVRulesError):
    """A search exceeded its configured resource guard.

    Deciders never report 'valid' past a tripped guard; they either raise
    this or return an explicit resource-exceeded verdict.
    """


class VerificationError(MVRulesError):
    """An internal cross-check failed; indicates a bug, never masked."""
