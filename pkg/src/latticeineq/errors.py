"""Exception hierarchy shared by every module of the package."""


class LatticeIneqError(ValueError):
    """Base class for all errors raised by ``latticeineq``."""


class CycleError(LatticeIneqError):
    """The cover relation contains a directed cycle, so it is not a poset."""


class NotALattice(LatticeIneqError):
    """Some pair lacks a unique least upper or greatest lower bound."""

    def __init__(self, message, pair=None, bounds=()):
        super().__init__(message)
        self.pair = pair
        self.bounds = tuple(bounds)


class ParamError(LatticeIneqError):
    """Invalid parameters for a lattice constructor or a search config."""


class NotDistributive(LatticeIneqError):
    """An operation needing a distributive lattice was given another one."""


class NotBoolean(LatticeIneqError):
    """An operation needing a Boolean lattice was given another one."""


class PreconditionFailed(LatticeIneqError):
    """A premise of a checker or construction does not hold.

    ``premise`` names the failing premise and ``witness`` carries the
    offending elements when there are any.
    """

    def __init__(self, message, premise=None, witness=None):
        super().__init__(message)
        self.premise = premise
        self.witness = witness


class BudgetExceeded(LatticeIneqError):
    """An exhaustive search would examine more candidates than allowed."""


class FormatError(LatticeIneqError):
    """A lattice, weight or selection file could not be parsed."""

    def __init__(self, cause, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + cause)
        self.cause = cause
        self.path = path
        self.line = line
