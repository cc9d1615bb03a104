"""Exception hierarchy.  Every error carries a stable machine-readable ``code``."""


class BcnilError(Exception):
    code = "ERROR"
    #: math precondition failures map to CLI exit code 3, input problems to 2
    precondition = False

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class InputError(BcnilError, ValueError):
    code = "INPUT_ERROR"


class PreconditionError(BcnilError):
    code = "PRECONDITION"
    precondition = True


class AmbientMismatch(BcnilError):
    code = "AMBIENT_MISMATCH"


class FamilyConstraintViolation(PreconditionError):
    code = "FAMILY_CONSTRAINT_VIOLATION"


class NonIntegrable(PreconditionError):
    code = "NON_INTEGRABLE"


class DSquaredNonzero(PreconditionError):
    code = "D_SQUARED_NONZERO"


class UnsupportedPair(BcnilError):
    code = "UNSUPPORTED_PAIR"


class NotHermitian(PreconditionError):
    code = "NOT_HERMITIAN"


class NotPositive(PreconditionError):
    code = "NOT_POSITIVE"


class ConstraintViolation(PreconditionError):
    code = "CONSTRAINT_VIOLATION"


class NotBalanced(PreconditionError):
    code = "NOT_BALANCED"


class OutOfDomain(PreconditionError):
    code = "OUT_OF_DOMAIN"


class WitnessInvalid(BcnilError):
    code = "WITNESS_INVALID"
