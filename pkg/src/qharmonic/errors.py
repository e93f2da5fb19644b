"""Exception taxonomy shared across the package.

Exit-code mapping used by the CLI: usage/parse problems are distinct from
numeric non-convergence, so the two branches get separate base classes.
"""


class QHarmonicError(Exception):
    """Base class for all package errors."""


class DomainError(QHarmonicError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(QHarmonicError):
    """A q-series denominator vanished before the terminating index."""


class DivergenceError(QHarmonicError):
    """A series or lattice sum fails to converge."""


class PrecisionError(QHarmonicError):
    """Cancellation exceeds what the working precision can resolve."""


class WindowError(QHarmonicError):
    """A truncation window is too small for the requested tolerance."""

    def __init__(self, message, suggested=None):
        super().__init__(message)
        self.suggested = suggested


class GeneratorSetError(QHarmonicError):
    """Mixed or unknown generator sets in an algebra operation."""


class UnsupportedLabelError(QHarmonicError):
    """Representation label outside the calibrated/supported range."""


class CoverageError(QHarmonicError):
    """Transform index window does not cover the bigrade support."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


class ExpressionError(QHarmonicError):
    """Syntax or semantic error in a CLI expression; carries a byte offset."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
