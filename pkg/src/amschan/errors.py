"""Exception types shared across the package."""


class AmschanError(Exception):
    """Base class for all library errors."""


class AlphabetMismatchError(AmschanError):
    """Operands live over different alphabets."""


class InvariantError(AmschanError):
    """A model violates a structural invariant (stochasticity, labeling, ...)."""


class PreconditionError(AmschanError):
    """An operation was called on inputs that fail its stated precondition.

    Distinct from a negative verdict: a rejected input produces an error,
    never a false answer.
    """


class HierarchyViolationError(AmschanError):
    """Internal consistency failure: verdicts contradict the stability hierarchy.

    stationary => quasi-stationary => recurrent-and-AMS => AMS must hold for
    every classified instance; an inversion is a bug, not a reportable verdict.
    """


class BudgetExceededError(AmschanError):
    """A brute-force enumeration would exceed its configured budget."""


class ModelParseError(AmschanError):
    """A model file could not be parsed into a valid description."""


class UnknownTheoremError(AmschanError):
    """The requested check id is not in the registered set."""


class SingularMatrixError(AmschanError):
    """A linear system that should be uniquely solvable was singular."""
