"""Exception types raised across the package."""


class SpectralMooreError(Exception):
    """Base class for all package errors."""


class CoefficientOverflow(SpectralMooreError, OverflowError):
    """An exact integer coefficient left the signed 64-bit range."""


class NoSignChange(SpectralMooreError, ArithmeticError):
    """A root bracket failed; this points at a coefficient bug, not bad input."""


class InvalidSpec(SpectralMooreError, ValueError):
    pass


class CrossCheckFailure(SpectralMooreError, ArithmeticError):
    """Two independent numerical routes disagreed beyond tolerance."""


class ThetaOutOfRange(SpectralMooreError, ValueError):
    pass


class NonPositiveDefect(SpectralMooreError, ValueError):
    pass


class NotInvertible(SpectralMooreError, ValueError):
    pass


class MalformedSpectrum(SpectralMooreError, ValueError):
    pass


class NegativeSquaredEigenvalue(MalformedSpectrum):
    pass


class GraphError(SpectralMooreError, ValueError):
    """Base for errors about graph inputs."""


class UnknownName(GraphError):
    pass


class NotBipartite(GraphError):
    pass


class NotApplicable(GraphError):
    pass


class NonRegular(GraphError):
    pass


class NotConnected(GraphError):
    pass


class TooLarge(GraphError):
    pass


class GraphParseError(GraphError):
    pass
