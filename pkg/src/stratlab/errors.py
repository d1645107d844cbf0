"""Exception types shared across the package."""


class StratLabError(Exception):
    """Base class for all package errors."""


class OutOfDomain(StratLabError):
    """A point or ball leaves the map's domain."""


class SingularPoint(StratLabError):
    """Evaluation requested at a declared singularity with no convention."""


class DegenerateFrame(StratLabError):
    """A supposed orthonormal frame is rank deficient."""


class ProjectionFailure(StratLabError):
    """A fitted link average lies too close to the sphere's center."""


class QuadratureFailure(StratLabError):
    """An integral's error estimate exceeds the requested tolerance."""


class BudgetExceeded(StratLabError):
    """An iterative search ran out of its iteration budget."""


class PlaneDegenerate(StratLabError):
    """The splitting point lies (numerically) on the given plane."""


class InsufficientData(StratLabError):
    """Not enough usable data points for a fit."""


class ConfigError(StratLabError):
    """A scenario configuration is malformed or inconsistent."""


class TaskFailure(StratLabError):
    """A scenario task ran but its built-in assertion failed."""
