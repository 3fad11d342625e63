"""Exception hierarchy. Every error raised by the package derives from ChainError."""


class ChainError(Exception):
    pass


class ParseError(ChainError):
    """Malformed chain-spec text."""


class ValidationError(ChainError):
    """Well-formed input that is not a valid irreducible transition matrix."""


class NotIrreducibleError(ValidationError):
    pass


class ForestDimensionError(ChainError):
    """Rows of the maximum-forest matrix disagree, i.e. the digraph has
    more than one component in its maximum in-forests."""


class SingularSystemError(ChainError):
    pass


class EnumerationLimitError(ChainError):
    pass


class StepCapExceeded(ChainError):
    pass
