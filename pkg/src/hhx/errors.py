"""Exception types shared across the package."""


class HHXError(Exception):
    """Base class for all package errors."""


class ShapeMismatch(HHXError):
    """Matrix or map dimensions are incompatible."""


class CompositionNotZero(HHXError):
    """Two supposed consecutive differentials do not compose to zero."""


class NotAChainMapAtThisDegree(HHXError):
    """A degreewise map fails to send cycles to cycles."""


class DimensionMismatch(HHXError):
    """A coefficient sequence has the wrong length for its basis."""


class InvalidDimension(HHXError):
    """A sphere dimension or truncation level is out of range."""


class TruncationMismatch(HHXError):
    """Two simplicial sets have different truncation levels."""


class TruncationTooShallow(HHXError):
    """The requested homology degree needs a deeper truncation."""


class SquareNotZero(HHXError):
    """A constructed chain complex fails d∘d = 0."""


class NotChainMap(HHXError):
    """A constructed degreewise map fails the chain-map identity."""


class ParseError(HHXError):
    """A document cannot be parsed."""


class UnresolvedReference(HHXError):
    """A document refers to an object that is not defined."""


class UnknownBasisName(HHXError):
    """An element expression uses a basis name that does not exist."""
