"""Exception hierarchy shared by all periodforge modules."""


class PeriodforgeError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateFrameError(PeriodforgeError):
    """The pair (omega0, omega1) does not span a lattice with Im(omega1/omega0) > 0."""


class PoleError(PeriodforgeError):
    """Evaluation was requested at (or too close to) a pole."""


class DiscriminantZeroError(PeriodforgeError):
    """The moduli point lies on the discriminant locus; the curve is singular."""


class ConvergenceError(PeriodforgeError):
    """An iterative solver failed to reach its tolerance."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class UnsupportedWeightError(PeriodforgeError):
    """Weight outside the absolutely convergent range of the lattice sums."""


class ContractViolationError(PeriodforgeError):
    """An input violated a documented precondition (e.g. non-periodic sample data)."""


class InconsistencyError(PeriodforgeError):
    """A redundant cross-check failed, signalling numerical breakdown upstream."""


class InternalConsistencyError(PeriodforgeError):
    """An internal invariant that should be unconditionally true was violated."""
