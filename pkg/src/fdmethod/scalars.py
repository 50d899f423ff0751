"""Arbitrary-precision scalars, the working-precision context and the wavenumber.

Every numeric routine takes a :class:`PrecisionContext` explicitly.  The
context owns a private :class:`mpmath.MPContext`, so no global mpmath state
is ever read or modified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import mpmath
from mpmath import MPContext

from .errors import ComplexCoercionError, DegenerateKappa

HPReal = mpmath.mpf
HPComplex = mpmath.mpc
Number = Union[int, float, str, "mpmath.mpf"]


@lru_cache(maxsize=None)
def _mp_for(dps: int) -> MPContext:
    mp = MPContext()
    mp.dps = dps
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the digits reserved for rounding loss.

    ``decimal_digits`` is the precision every operation is carried out at;
    results are trusted to ``tolerance = 10**-(decimal_digits - guard_digits)``.
    """

    decimal_digits: int = 50
    guard_digits: int = 15

    def __post_init__(self):
        if self.decimal_digits < 30:
            raise ValueError(f"decimal_digits must be >= 30, got {self.decimal_digits}")
        if self.guard_digits < 10:
            raise ValueError(f"guard_digits must be >= 10, got {self.guard_digits}")
        if self.guard_digits >= self.decimal_digits:
            raise ValueError("guard_digits must be smaller than decimal_digits")

    @classmethod
    def for_rank(cls, digits: int, rank: int, degree: int) -> "PrecisionContext":
        """Context delivering ``digits`` trusted digits for a rank-``rank`` run.

        The guard absorbs the factorial growth ``(M-2p)!`` of the coefficient
        recursions, ``M = (rank+1)(degree+1)``.
        """
        M = (rank + 1) * (max(degree, 0) + 1)
        guard = 10 + math.ceil(M * math.log10(M)) if M > 1 else 10
        return cls(max(digits + guard, 30), guard)

    @property
    def mp(self) -> MPContext:
        return _mp_for(self.decimal_digits)

    @property
    def trusted_digits(self) -> int:
        return self.decimal_digits - self.guard_digits

    @property
    def tolerance(self) -> mpmath.mpf:
        return self.mp.mpf(10) ** (-self.trusted_digits)

    def boosted(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.decimal_digits + max(int(extra), 0), self.guard_digits)

    def real(self, x) -> mpmath.mpf:
        """Convert an int, decimal string, Fraction or mpmath number to a real."""
        if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, int):
            return self.mp.mpf(x.numerator) / x.denominator
        return self.mp.mpf(x)

    def complex(self, x) -> mpmath.mpc:
        return self.mp.mpc(x)

    def to_real(self, z, scale=1) -> mpmath.mpf:
        """Coerce ``z`` to a real, failing if ``|Im z| >= tolerance * max(1, scale)``."""
        z = self.mp.mpc(z)
        if abs(z.imag) >= self.tolerance * max(1, abs(scale)):
            raise ComplexCoercionError(f"imaginary part {mpmath.nstr(z.imag, 5)} above tolerance")
        return self.mp.mpf(z.real)


@dataclass(frozen=True)
class Kappa:
    """``kappa = sqrt(kappa_squared)``, purely imaginary when the square is negative."""

    kappa_squared: mpmath.mpf
    kappa: mpmath.mpc

    @property
    def is_imaginary(self) -> bool:
        return self.kappa_squared < 0


def make_kappa(lambda0, qbar_i, ctx: PrecisionContext) -> Kappa:
    mp = ctx.mp
    k2 = mp.mpf(lambda0) - mp.mpf(qbar_i)
    if abs(k2) <= ctx.tolerance:
        raise DegenerateKappa(f"lambda0 - qbar = {mpmath.nstr(k2, 5)} is zero to tolerance")
    if k2 > 0:
        k = mp.mpc(mp.sqrt(k2), 0)
    else:
        k = mp.mpc(0, mp.sqrt(-k2))
    return Kappa(k2, k)


def entire_trig(kappa: Kappa, x, ctx: PrecisionContext) -> tuple[mpmath.mpc, mpmath.mpc]:
    """``(sin(kappa x), cos(kappa x))`` for real or imaginary kappa."""
    mp = ctx.mp
    arg = kappa.kappa * mp.mpf(x)
    return mp.sin(arg), mp.cos(arg)


def real_basis(k2, x, mp: MPContext) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Real pair ``(sin(kx)/k, cos(kx))`` with ``k = sqrt(k2)``; entire in ``k2``."""
    if k2 > 0:
        k = mp.sqrt(k2)
        return mp.sin(k * x) / k, mp.cos(k * x)
    if k2 < 0:
        k = mp.sqrt(-k2)
        return mp.sinh(k * x) / k, mp.cosh(k * x)
    return mp.mpf(x), mp.one
