"""Exception hierarchy shared by the network, learning and CLI layers."""


class FnnError(Exception):
    """Base class for all seqfnn errors."""


class InvalidSampleError(FnnError):
    """An input sample is non-finite or has the wrong length."""


class DimensionMismatchError(FnnError):
    """A vector does not match the dimensionality it is compared against."""


class EmptyRuleBaseError(FnnError):
    """The network has no rules, so no output can be formed."""


class DegenerateActivationError(FnnError):
    """Every rule activation is zero; normalization is undefined."""


class ModeContractError(FnnError):
    """External input was supplied (or withheld) against the operating mode."""


class NotInitializedError(FnnError):
    """Structure learning has not been run before an operation that needs it."""


class DataFormatError(FnnError):
    """A data file or configuration file is missing or malformed."""
