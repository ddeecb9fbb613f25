"""Exception hierarchy shared by all gspzeta modules.

Three top-level classes map onto the CLI exit codes: SchemaError (2),
DomainError (3), NumericFailure (4).
"""


class SchemaError(Exception):
    """Malformed input document or command-line arguments."""


class DomainError(Exception):
    """A precondition of an exact operation was violated."""


class NumericFailure(Exception):
    """A numeric kernel failed to reach its target accuracy."""


# exact algebra

class DenominatorVanishes(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class ExponentOverflow(DomainError):
    pass


class SingularInput(DomainError):
    pass


# groups

class NotSymplectic(DomainError):
    pass


class IdentityFailed(DomainError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


# weights

class NotDominant(DomainError):
    pass


class WeightOutOfRange(DomainError):
    pass


class InconsistentWeights(DomainError):
    pass


# regions

class NotInDMinus(DomainError):
    pass


class CriticalityViolated(DomainError):
    pass


# euler factors

class NonHalfIntegerS(DomainError):
    pass


class FactorAbsent(DomainError):
    pass


class LevelTooSmall(DomainError):
    pass


# archimedean

class PoleAt(DomainError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class RegionMismatch(DomainError):
    pass


class AllSamplesAtPoles(DomainError):
    pass


class QuadratureNotConverged(NumericFailure):
    pass
