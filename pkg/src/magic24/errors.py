"""Exception hierarchy shared by all modules."""


class Magic24Error(Exception):
    """Base class for every error raised by this package."""


class NonRegular(Magic24Error, ValueError):
    pass


class NonIntegral(Magic24Error, ValueError):
    pass


class LengthMismatch(Magic24Error, ValueError):
    pass


class NotCentrallySymmetric(Magic24Error, ValueError):
    pass


class CapExceeded(Magic24Error, RuntimeError):
    pass


class GeneratorNotAutomorphism(Magic24Error, ValueError):
    pass


class Inconsistent(Magic24Error, ValueError):
    """A GF(2) system has no solution."""


class PoolMismatch(Magic24Error, ValueError):
    pass


class InvalidSuperimposition(Magic24Error, ValueError):
    pass


class BadTargetSum(Magic24Error, ValueError):
    pass


class UnknownStructure(Magic24Error, ValueError):
    pass


class WrongStructure(Magic24Error, ValueError):
    pass


class ParseError(Magic24Error, ValueError):
    pass
