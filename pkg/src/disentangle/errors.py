"""Exception hierarchy shared by all modules.

Every exception carries an ``exit_code`` used by the command line front end:
2 input error, 3 mathematical error, 4 budget exceeded.
"""


class DisentangleError(Exception):
    exit_code = 3


class InputError(DisentangleError):
    exit_code = 2


class ParseError(InputError):
    pass


class DimensionMismatch(DisentangleError):
    pass


class InclusionViolation(DisentangleError):
    """The image of one map is not contained in the kernel of the other."""


class VariableMismatch(DisentangleError):
    pass


class NotDivisible(DisentangleError):
    pass


class NotCentered(DisentangleError):
    pass


class GroebnerBudgetExceeded(DisentangleError):
    exit_code = 4


class NotAChainComplex(DisentangleError):
    pass


class InvalidAction(DisentangleError):
    pass


class GroupTooLarge(DisentangleError):
    pass


class NotADoubleComplex(DisentangleError):
    pass


class ConvergenceMismatch(DisentangleError):
    """Total homology disagrees with the limit page; indicates a bug."""


class CriterionMismatch(DisentangleError):
    """Component criterion and alternating H_0 disagree; indicates a bug."""
