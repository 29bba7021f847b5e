"""Exception hierarchy shared by every module of the package."""


class NuoscError(Exception):
    """Base class for all package errors."""


class DomainError(NuoscError, ValueError):
    """An argument lies outside the domain of the function."""


class ComplexBranch(NuoscError, ValueError):
    """A square root in the parametric constants has a negative argument."""


class NoSignChange(NuoscError, ValueError):
    """The supplied bracket does not straddle a root."""


class NonConvergence(NuoscError, RuntimeError):
    """An iterative method hit its iteration cap."""


class DegenerateStep(NuoscError, ValueError):
    """A finite-difference step vanishes at working precision."""


class GridTooCoarse(NuoscError, RuntimeError):
    """Requested eigenvalues are too close to be separated on this grid."""


class NoConvergenceUnderRefinement(NuoscError, RuntimeError):
    """Grid refinement did not stabilise the requested eigenvalue."""


class ConfigError(NuoscError, ValueError):
    """Invalid input file or run configuration.

    ``line`` and ``field`` locate the problem when known.
    """

    def __init__(self, message, *, path=None, line=None, field=None):
        self.path = path
        self.line = line
        self.field = field
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
