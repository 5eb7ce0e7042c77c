"""Exception types raised on contract violations."""


class WitnessError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(WitnessError):
    pass


class ContractViolation(WitnessError):
    """An input failed a structural or numerical precondition."""


class InvalidParameterError(WitnessError):
    pass


class InvalidOperatorError(WitnessError):
    """The test operator is not a trace-one positive semidefinite matrix."""


class NotApplicableError(WitnessError):
    """A bound or construction was requested outside its domain."""


class NotConstructibleError(WitnessError):
    pass
