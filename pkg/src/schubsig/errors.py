"""Exception hierarchy shared by the engine and the command line."""


class SchubsigError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(SchubsigError, ValueError):
    """Invalid Cartan type, rank, marked node or space shorthand."""


class ResourceError(SchubsigError, RuntimeError):
    """A configured size cap (class count, rank) would be exceeded."""


class ParityError(SchubsigError, ValueError):
    """A method operation was requested on an odd-dimensional space."""


class ValidationError(SchubsigError, ValueError):
    """Input coefficient data violates its contract."""


class ApplicabilityError(SchubsigError, ValueError):
    """The operation is not defined for this space (e.g. not cominuscule)."""
