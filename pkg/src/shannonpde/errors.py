"""Exception hierarchy. Everything derives from ``ValueError``."""


class ShannonPDEError(ValueError):
    pass


class InvalidScaleError(ShannonPDEError):
    pass


class SingularArgumentError(ShannonPDEError):
    pass


class InsufficientSupportError(ShannonPDEError):
    pass


class UnsupportedInputError(ShannonPDEError):
    pass


class OnThresholdError(ShannonPDEError):
    pass


class BranchCrossingError(ShannonPDEError):
    pass


class OutOfDeterminacyError(ShannonPDEError):
    pass


class SimplificationInapplicableError(ShannonPDEError):
    pass


class InconsistentLineDataError(ShannonPDEError):
    pass


class ShapeError(ShannonPDEError):
    pass


class SpacingError(ShannonPDEError):
    pass


class MalformedInputError(ShannonPDEError):
    pass
