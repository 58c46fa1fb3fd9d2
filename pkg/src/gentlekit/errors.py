"""Exception hierarchy shared by every module of the toolkit."""


class GentleKitError(Exception):
    """Base class for all toolkit errors."""


class InputError(GentleKitError, ValueError):
    """Malformed or inconsistent input (unknown ids, non-composable paths, ...)."""


class InfiniteDimensional(GentleKitError):
    """The presented algebra has an oriented cycle of nonzero compositions."""


class ConstructionError(GentleKitError):
    """An arc system does not cut the surface into admissible polygons."""


class StringError(InputError):
    """A string word violates one of the homotopy-string clauses."""


class ConfigurationError(GentleKitError):
    """A scenario refers to an operation the toolkit does not know."""
