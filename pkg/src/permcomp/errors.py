"""Exception types raised across the package.

Every error derives from :class:`PermCompError`, which is itself a
``ValueError`` so callers validating input can catch either.
"""


class PermCompError(ValueError):
    pass


# perm
class DuplicateValues(PermCompError):
    pass


class ArityMismatch(PermCompError):
    pass


class EmptyBlock(PermCompError):
    pass


# graph
class OrderTooLarge(PermCompError):
    pass


# compgraph
class DuplicatePoint(PermCompError):
    pass


# structure
class IndexOutOfRange(PermCompError):
    pass


class PreconditionViolated(PermCompError):
    pass


class HasInducedP3(PreconditionViolated):
    pass


# bijections
class NotAPath(PreconditionViolated):
    pass


class NotAStar(PreconditionViolated):
    pass


class NotA123Path(NotAPath):
    pass


class KOutOfRange(PermCompError):
    pass


# enumeration
class ScaleExceeded(PermCompError):
    pass


class UnsupportedM(PermCompError):
    pass


class BelowThreshold(PermCompError):
    pass
