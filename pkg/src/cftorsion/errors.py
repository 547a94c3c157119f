"""Exception types raised across the package."""


class CFTorsionError(Exception):
    """Base class for all package errors."""


class OddDegree(CFTorsionError):
    pass


class NonSquareLeadingCoefficient(CFTorsionError):
    pass


class PerfectSquare(CFTorsionError):
    pass


class FormViolation(CFTorsionError):
    def __init__(self, index: int, message: str):
        super().__init__(f"index {index}: {message}")
        self.index = index


class NotPeriodic(CFTorsionError):
    pass


class GenusMismatch(CFTorsionError):
    pass


class ZeroDenominator(CFTorsionError):
    pass


class InexactDivision(CFTorsionError):
    pass


class EmptyRange(CFTorsionError):
    pass


class ConstraintViolated(CFTorsionError):
    pass


class NonvanishingViolated(CFTorsionError):
    pass


class RoundTripFailed(CFTorsionError):
    pass


class NotSymmetric(CFTorsionError):
    pass


class NotSextic(CFTorsionError):
    pass


class SingularCurve(CFTorsionError):
    pass


class DegenerateFamily(CFTorsionError):
    pass


class UnverifiedRecord(CFTorsionError):
    pass
