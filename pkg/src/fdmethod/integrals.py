"""Closed-form moments of sin^2, cos^2 and sin*cos on one subinterval.

For a subinterval ``[x_lo, x_hi]`` with wavenumber ``kappa``::

    S_p = int x^p sin^2(kappa x) dx
    R_p = int x^p cos^2(kappa x) dx = (x_hi^{p+1} - x_lo^{p+1})/(p+1) - S_p
    T_p = 1/2 int x^p sin(2 kappa x) dx

The antiderivatives are finite sums that are entire in ``kappa`` once the
prefactors are taken into account, so imaginary ``kappa`` is handled by
evaluating them in complex arithmetic.  The sums cancel heavily for large
``p`` or small ``|kappa|``; every evaluation therefore runs in a locally
boosted precision sized from a magnitude bound on the largest term.
"""
from __future__ import annotations

import math

from .scalars import Kappa, PrecisionContext


def _boost_digits(kappa: Kappa, pmax: int, x_lo, x_hi) -> int:
    kabs = max(float(abs(kappa.kappa)), 1e-300)
    xm = max(abs(float(x_lo)), abs(float(x_hi)), 1e-300)
    width = max(float(x_hi - x_lo), 1e-300)
    growth = 2 * abs(float(kappa.kappa.imag)) * xm
    worst = 0.0
    for p in range(pmax + 1):
        lead = max(
            math.lgamma(p + 1) - math.lgamma(p - k + 1) + (p - k) * math.log(xm) - (k + 1) * math.log(kabs)
            for k in range(p + 1)
        )
        scale = p * math.log(xm / 2) + math.log(width) - math.log(p + 1)
        worst = max(worst, lead + growth - min(scale, 0.0))
    return int(math.ceil(worst / math.log(10))) + 10


def _antiderivatives(kappa, pmax: int, x, mp):
    """Antiderivatives of the S and T integrands at ``x`` for ``p = 0..pmax``."""
    k = mp.mpc(kappa)
    x = mp.mpf(x)
    s2, c2 = mp.sin(2 * k * x), mp.cos(2 * k * x)
    # cos(2 k x + j pi/2) for j mod 4
    shifted = (c2, -s2, -c2, s2)
    kx = k * x
    kx_pow = [mp.one]
    for _ in range(pmax + 1):
        kx_pow.append(kx_pow[-1] * kx)
    x_pow = [mp.one]
    for _ in range(pmax):
        x_pow.append(x_pow[-1] * x)
    fac = [mp.one]
    for j in range(1, pmax + 2):
        fac.append(fac[-1] * j)
    two_k = 2 * k
    inv_2k_pow = [1 / two_k]
    for _ in range(pmax):
        inv_2k_pow.append(inv_2k_pow[-1] / two_k)

    GS, GT = [], []
    k_pow = k
    for p in range(pmax + 1):
        inner = kx_pow[p + 1] / (2 * fac[p + 1])
        for j in range(p // 2 + 1):
            inner += (-1) ** (j + 1) * kx_pow[p - 2 * j] / (fac[p - 2 * j] * 2 ** (2 * j + 2)) * s2
        for j in range((p - 1) // 2 + 1 if p >= 1 else 0):
            inner += (-1) ** (j + 1) * kx_pow[p - 2 * j - 1] / (fac[p - 2 * j - 1] * 2 ** (2 * j + 3)) * c2
        if p % 2:
            inner -= mp.mpf((-1) ** ((2 * p + 1) // 4)) / 2 ** (p + 2)
        GS.append(fac[p] / k_pow * inner)
        k_pow *= k

        acc = mp.zero
        for j in range(p + 1):
            acc += x_pow[p - j] * shifted[j % 4] / fac[p - j] * inv_2k_pow[j]
        GT.append(-fac[p] / 2 * acc)
    return GS, GT


def integral_triples(kappa: Kappa, pmax: int, x_lo, x_hi, ctx: PrecisionContext):
    """Lists ``(S, R, T)`` of complex moments for ``p = 0..pmax`` at ``ctx`` precision."""
    hi_ctx = ctx.boosted(_boost_digits(kappa, pmax, x_lo, x_hi))
    mp = hi_ctx.mp
    a, b = mp.mpf(x_lo), mp.mpf(x_hi)
    GS_a, GT_a = _antiderivatives(kappa.kappa, pmax, a, mp)
    GS_b, GT_b = _antiderivatives(kappa.kappa, pmax, b, mp)
    out_S, out_R, out_T = [], [], []
    a_pow, b_pow = a, b
    for p in range(pmax + 1):
        S = GS_b[p] - GS_a[p]
        R = (b_pow - a_pow) / (p + 1) - S
        T = GT_b[p] - GT_a[p]
        out_S.append(ctx.mp.mpc(S))
        out_R.append(ctx.mp.mpc(R))
        out_T.append(ctx.mp.mpc(T))
        a_pow *= a
        b_pow *= b
    return out_S, out_R, out_T


def integral_S(kappa: Kappa, p: int, x_lo, x_hi, ctx: PrecisionContext):
    _check(p, x_lo, x_hi)
    return integral_triples(kappa, p, x_lo, x_hi, ctx)[0][p]


def integral_R(kappa: Kappa, p: int, x_lo, x_hi, ctx: PrecisionContext):
    _check(p, x_lo, x_hi)
    return integral_triples(kappa, p, x_lo, x_hi, ctx)[1][p]


def integral_T(kappa: Kappa, p: int, x_lo, x_hi, ctx: PrecisionContext):
    _check(p, x_lo, x_hi)
    return integral_triples(kappa, p, x_lo, x_hi, ctx)[2][p]


def _check(p, x_lo, x_hi):
    if p < 0 or int(p) != p:
        raise ValueError(f"p must be a nonnegative integer, got {p}")
    if not x_lo < x_hi:
        raise ValueError("need x_lo < x_hi")


class IntegralTable:
    """Real moments of the basis ``s = sin(kx)/k``, ``c = cos(kx)`` on one subinterval.

    ``ss[p] = int x^p s^2 = S_p/k^2``, ``sc[p] = int x^p s c = T_p/k`` and
    ``cc[p] = int x^p c^2 = R_p``.  All three are real for real ``k^2`` of
    either sign.  The table grows on demand.
    """

    def __init__(self, kappa: Kappa, x_lo, x_hi, ctx: PrecisionContext):
        self.kappa = kappa
        self.x_lo, self.x_hi = x_lo, x_hi
        self.ctx = ctx
        self.ss, self.sc, self.cc = [], [], []

    def ensure(self, pmax: int) -> "IntegralTable":
        if pmax < len(self.ss):
            return self
        # recompute with headroom so repeated growth stays cheap
        pmax = max(pmax, 2 * len(self.ss))
        S, R, T = integral_triples(self.kappa, pmax, self.x_lo, self.x_hi, self.ctx)
        k, k2 = self.kappa.kappa, self.kappa.kappa_squared
        to_real = self.ctx.to_real
        self.ss = [to_real(s / k2, s / k2) for s in S]
        self.sc = [to_real(t / k, t / k) for t in T]
        self.cc = [to_real(r, r) for r in R]
        return self
