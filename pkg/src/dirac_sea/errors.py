"""Exception hierarchy shared by every module of the package."""


class DiracSeaError(Exception):
    """Base class for all library errors."""


class DomainMismatch(DiracSeaError, ValueError):
    """A position, set or state does not belong to the domain it was used with."""


class NotRepresentable(DiracSeaError, ValueError):
    pass


class NotMember(DiracSeaError, ValueError):
    """A sign was requested at a point that is not an element of the diagram."""


class NotWellOrdered(DiracSeaError, ValueError):
    pass


class NumericModeMismatch(DiracSeaError, TypeError):
    """Exact and floating point values were mixed, or exact mode met a transcendental."""


class CapExceeded(DiracSeaError, ValueError):
    pass


class DimensionMismatch(DiracSeaError, ValueError):
    pass


class UndecidableRule(DiracSeaError, ValueError):
    """An operator rule whose crossing set cannot be certified finite or infinite."""
