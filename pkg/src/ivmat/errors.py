"""Exception types shared across the package."""


class IvmatError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrix(IvmatError):
    """A matrix required to be nonsingular failed the pivot tolerance test."""


class NotSymmetric(IvmatError):
    """A symmetric matrix was required."""


class NonConvergence(IvmatError):
    """An iterative eigenvalue computation did not converge."""


class CapExceeded(IvmatError):
    """An enumeration would exceed the configured evaluation cap."""


class CycleLimit(IvmatError):
    """The LP solver hit its iteration limit or had numerical trouble."""


class PreconditionViolated(IvmatError):
    """The structural precondition of a theorem-backed operation does not hold."""


class NoApplicableTheorem(IvmatError):
    """No supported matrix class matched; the caller may fall back to the oracle."""


class NoApplicableCase(IvmatError):
    """The right-hand side matches none of the sign cases with a closed-form hull."""


class PivotContainsZero(IvmatError):
    """An interval pivot contains zero, so elimination cannot continue."""


class SingularInside(IvmatError):
    """The interval matrix contains a singular member, so no hull exists."""


class RankTooHigh(IvmatError):
    """A coefficient matrix of a varying parameter has numerical rank above one."""


class CrossDependency(IvmatError):
    """A varying parameter appears in both the matrix and the right-hand side."""


class SingularVertex(IvmatError):
    """A vertex realization of a parametric matrix is singular."""


class EmptySolutionSet(IvmatError):
    """Every orthant subproblem is infeasible: the solution set is empty."""


class UnboundedSolutionSet(IvmatError):
    """The solution set is unbounded, so its interval hull does not exist."""


class OutOfBox(IvmatError):
    """A parameter vector lies outside its interval box."""


class EigenvectorSignAmbiguity(IvmatError):
    """An eigenvector entry is too close to zero to assign a sign."""


class ParseError(IvmatError):
    """A problem file failed to parse; the message points at the offending field."""
