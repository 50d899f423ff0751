"""Exception hierarchy shared by every module."""


class FDError(Exception):
    """Base class for all errors raised by :mod:`fdmethod`."""


class DegenerateKappa(FDError):
    """Basic eigenvalue coincides with the base potential on some subinterval."""


class ComplexCoercionError(FDError):
    """A value expected to be real carries a non-negligible imaginary part."""


class RootNotBracketed(FDError):
    pass


class DegenerateRoot(FDError):
    pass


class RankDeficiency(FDError):
    """The transfer matrix has a null space of dimension greater than one."""


class ZeroNorm(FDError):
    pass


class SolvabilityViolation(FDError):
    """Right-hand side is not orthogonal to the adjoint null vector."""


class OutOfDomain(FDError):
    pass


class NoConvergence(FDError):
    pass
