"""Exception hierarchy.

Every validation failure derives from :class:`QDistError` (a ``ValueError``),
so callers and the CLI can treat them uniformly. ``NoConvergence`` is the one
exception that signals a numerics bug rather than bad input.
"""


class QDistError(ValueError):
    """Base class for invariant violations on user-supplied objects."""


class DimensionMismatch(QDistError):
    pass


class NotHermitian(QDistError):
    pass


class TraceNotOne(QDistError):
    pass


class NotPositive(QDistError):
    pass


class ZeroVector(QDistError):
    pass


class OutsideBlochBall(QDistError):
    pass


class ParamOutOfRange(QDistError):
    pass


class InfeasibleSpectrum(QDistError):
    pass


class AlphaOutOfRange(QDistError):
    pass


class BasisNotOrthonormal(QDistError):
    pass


class NotUnitary(QDistError):
    pass


class BadProbabilities(QDistError):
    pass


class NotTracePreserving(QDistError):
    pass


class ZeroInputDistance(QDistError):
    pass


class UnitalMap(QDistError):
    pass


class NoConvergence(RuntimeError):
    """Jacobi iteration hit its sweep cap."""


class ConsistencyError(RuntimeError):
    """Two independent computation paths disagreed beyond tolerance."""
