"""Domain errors raised by the library.

Every error here maps to CLI exit code 2; plain ``OSError`` and parse
failures map to exit code 1.
"""


class ImmaculateError(Exception):
    """Base class for all domain errors."""


class MalformedFan(ImmaculateError):
    pass


class TorusFactor(ImmaculateError):
    pass


class NotQCartier(ImmaculateError):
    pass


class NotCartier(ImmaculateError):
    pass


class NotNef(ImmaculateError):
    pass


class NotSemiprojective(ImmaculateError):
    pass


class NotComplete(ImmaculateError):
    pass


class NonSimplicialFan(ImmaculateError):
    pass


class EmptyPolyhedron(ImmaculateError):
    pass


class TailMismatch(ImmaculateError):
    pass


class UnboundedInput(ImmaculateError):
    pass


class BoxTooSmall(ImmaculateError):
    pass


class IncompatibleFans(ImmaculateError):
    pass


class TorsionUnsupported(ImmaculateError):
    pass


class InvalidParameters(ImmaculateError):
    pass


class RegionEmpty(ImmaculateError):
    pass
