class PicardError(Exception):
    """Base class for all errors raised by the picard toolkit."""


class DegenerateFormError(PicardError, ValueError):
    """A form or model is zero, singular, or violates its defining relations."""


class ComputationError(PicardError, RuntimeError):
    """An exact computation could not be completed reliably."""


class MalformedInputError(PicardError, ValueError):
    """A curve literal, database line, or query key could not be parsed."""


class VerificationError(PicardError):
    """A classification certificate failed to verify."""

    def __init__(self, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.certificate = certificate or {}
