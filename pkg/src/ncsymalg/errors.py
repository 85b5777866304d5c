"""Exception hierarchy shared by every module of the package."""


class NcsymError(Exception):
    """Base class for all errors raised by ncsymalg."""


class NotIrreducible(NcsymError):
    pass


class ModulusRequired(NcsymError):
    pass


class NotAField(NcsymError):
    """A nonzero element without inverse was met in a quotient ring."""


class UnsupportedBackend(NcsymError):
    pass


class InvalidEmbedding(NcsymError):
    pass


class InvalidAutomorphism(InvalidEmbedding):
    pass


class NotClosed(NcsymError):
    pass


class AmbientMismatch(NcsymError):
    pass


class FieldMismatch(NcsymError):
    pass


class InvalidBimodule(NcsymError):
    pass


class UnsupportedFlavor(NcsymError):
    pass


class IndexMismatch(NcsymError):
    pass


class BudgetExceeded(NcsymError):
    pass


class WrongShape(NcsymError):
    pass


class ConsistencyError(NcsymError):
    """Two independent computations of the same quantity disagree."""


class ParseError(NcsymError):
    pass


class ValidationError(NcsymError):
    pass
