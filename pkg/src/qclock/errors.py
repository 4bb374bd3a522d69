"""Exception hierarchy shared by all modules."""


class QClockError(Exception):
    """Base class for every error raised by qclock."""


class InvalidArgument(QClockError, ValueError):
    pass


class InvalidState(QClockError, ValueError):
    """A density operator or probability vector failed validation."""


class DegenerateState(QClockError, ArithmeticError):
    """A projection annihilated the state (norm below 1e-12)."""


class CapacityError(QClockError):
    """Requested dense simulation exceeds the 13-qubit budget."""


class ConsistencyError(QClockError, AssertionError):
    """Two independent evaluations of the same quantity disagree."""


class CompileError(QClockError):
    pass
