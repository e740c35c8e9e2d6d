"""Exception hierarchy shared by every module."""


class MolconvError(Exception):
    """Base class for all errors raised by molconv."""


class DomainError(MolconvError, ValueError):
    """Arguments live in the wrong group, or a parameter is out of range."""


class PreconditionError(MolconvError, ValueError):
    """An operation was called on inputs its contract excludes."""


class DataError(MolconvError, ValueError):
    """A pseudometric or input file produced an unusable value."""


class SolverError(MolconvError, RuntimeError):
    """The LP solver failed to terminate or produced an uncertifiable result."""
