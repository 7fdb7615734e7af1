"""Exception hierarchy shared by all modules."""


class LorentzError(ValueError):
    """Base class for every error raised by this package."""


class NonFiniteInput(LorentzError):
    pass


class VelocityOutOfRange(LorentzError):
    pass


class NotARotation(LorentzError):
    pass


class NotUnitTimelike(LorentzError):
    pass


class NotSymmetric(LorentzError):
    pass


class SingularMatrix(LorentzError):
    pass


class ZeroVelocity(LorentzError):
    pass


class NoConvergence(LorentzError):
    def __init__(self, iterations, last_delta):
        super().__init__(
            f"no convergence after {iterations} iterations (last delta {last_delta:.3e})"
        )
        self.iterations = iterations
        self.last_delta = last_delta


class NotLorentz(LorentzError):
    """Input is not a proper orthochronous Lorentz matrix.

    ``classification`` carries the diagnosis from :func:`validate_lorentz`.
    """

    def __init__(self, classification):
        super().__init__(
            f"not proper orthochronous: {classification.kind.value} "
            f"(residual {classification.residual:.3e})"
        )
        self.classification = classification


class ShapeViolation(LorentzError):
    def __init__(self, message, entries):
        super().__init__(message)
        self.entries = entries


class InternalInvariantViolation(LorentzError):
    pass
