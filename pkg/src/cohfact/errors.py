"""Exception types shared across the package."""


class CohfactError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(CohfactError, ValueError):
    """Dimension or qubit count outside the supported range."""


class DimensionMismatchError(CohfactError, ValueError):
    """Operands have incompatible dimensions."""


class UnphysicalStateError(CohfactError, ValueError):
    """Matrix fails a density-matrix check (Hermiticity, trace, PSD)."""

    def __init__(self, msg, min_eigenvalue=None):
        super().__init__(msg)
        self.min_eigenvalue = min_eigenvalue


class IncoherentDirectionError(CohfactError, ValueError):
    """Family direction has no coherent part; no probe state exists."""


class InvalidChannelError(CohfactError, ValueError):
    """Kraus set is not a valid channel or parameters are out of range."""


class UnreachableTargetError(CohfactError, ValueError):
    """Auxiliary-channel target coordinate sits over a vanishing source one."""

    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class NotAChannelError(CohfactError, ValueError):
    """The linear solve succeeded but no Kraus realization exists."""

    def __init__(self, msg, eps=None):
        super().__init__(msg)
        self.eps = eps


class NotApplicableError(CohfactError, ValueError):
    """Precondition of a conditional verification does not hold."""
