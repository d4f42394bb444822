"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NumericalError(ArithmeticError):
    """A floating-point computation drifted past its accuracy threshold."""


class InvariantViolation(AssertionError):
    """A proven mathematical inequality failed to hold on a concrete instance.

    Raising this means the implementation is wrong, not the mathematics.
    """
