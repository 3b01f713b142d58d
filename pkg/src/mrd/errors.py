"""Exception hierarchy shared by every module.

Each class carries the CLI exit status it maps to: 2 for input/validation
problems, 1 for mathematical failures, 3 for an exhausted work budget.
"""


class MRDError(Exception):
    exit_code = 1


class SeriesError(MRDError):
    """A formal power series operation is undefined for its operands."""

    position = None  # byte offset of the GF expression node, when known


class DivisionByHigherValuation(SeriesError):
    pass


class CompositionWithUnitConstantTerm(SeriesError):
    pass


class NotCompositionallyInvertible(SeriesError):
    pass


class ValuationNotDivisible(SeriesError):
    pass


class LeadingCoefficientNotPerfectPower(SeriesError):
    pass


class IndexBeyondTruncation(SeriesError):
    pass


class InsufficientTruncation(MRDError):
    pass


class NotTriangularInvertible(MRDError):
    pass


class IndexOutOfRange(MRDError):
    pass


class InvalidSpec(MRDError):
    exit_code = 2


class GradingViolation(SeriesError, InvalidSpec):
    exit_code = 2


class KindMismatch(InvalidSpec):
    pass


class EllMismatch(InvalidSpec):
    pass


class ResidueOutOfRange(InvalidSpec):
    pass


class BudgetExceeded(MRDError):
    exit_code = 3

    def __init__(self, needed, budget):
        super().__init__(f"{needed} minors exceed the budget of {budget}")
        self.needed = needed
        self.budget = budget


class GFSyntaxError(MRDError):
    exit_code = 2

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"at byte {position}: {message}{detail}")


class UnknownFunction(GFSyntaxError):
    pass


class ArityError(GFSyntaxError):
    pass
