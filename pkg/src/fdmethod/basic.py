"""The base problem with piecewise-constant potential.

On subinterval ``i`` an eigenfunction is ``a_i s_i(x) + b_i c_i(x)`` with
``s_i = sin(k_i x)/k_i`` and ``c_i = cos(k_i x)``, ``k_i^2 = lambda - qbar_i``.
Both basis functions are real and entire in ``k_i^2``, so the transfer matrix
and its determinant are real for every real ``lambda``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .errors import DegenerateKappa, DegenerateRoot, RankDeficiency, RootNotBracketed, ZeroNorm
from .integrals import IntegralTable
from .potential import BasePotential, Mesh
from .scalars import Kappa, PrecisionContext, make_kappa, real_basis


def expansion_value(a, b, k2, x, mp, order: int = 0):
    """Value (or first/second derivative) of ``sum_p x^p (a_p s(x) + b_p c(x))``."""
    s, c = real_basis(k2, x, mp)
    val = mp.zero
    xp = [mp.one]
    for _ in range(len(a)):
        xp.append(xp[-1] * x)
    for p in range(len(a)):
        base = a[p] * s + b[p] * c
        if order == 0:
            val += xp[p] * base
            continue
        dbase = a[p] * c - k2 * b[p] * s
        if order == 1:
            val += xp[p] * dbase + (p * xp[p - 1] * base if p else 0)
        else:
            term = -k2 * xp[p] * base
            if p >= 1:
                term += 2 * p * xp[p - 1] * dbase
            if p >= 2:
                term += p * (p - 1) * xp[p - 2] * base
            val += term
    return val


def _check_kappas(lam, qbar: BasePotential, ctx: PrecisionContext):
    for v in qbar.values:
        if abs(lam - v) <= ctx.tolerance:
            raise DegenerateKappa(f"lambda coincides with base potential value {mpmath.nstr(v, 10)}")


def assemble_D(lam, mesh: Mesh, qbar: BasePotential, ctx: PrecisionContext):
    """Transfer matrix of the homogeneous boundary/matching system.

    Row 0: boundary at ``A``; rows ``2i-1, 2i``: value and derivative
    continuity at ``x_i``; row ``2N-1``: boundary at ``B``.  Columns are
    ``(a_1, b_1, ..., a_N, b_N)``.
    """
    mp = ctx.mp
    lam = mp.mpf(lam)
    _check_kappas(lam, qbar, ctx)
    N = mesh.N
    D = mp.zeros(2 * N, 2 * N)
    k2 = [lam - v for v in qbar.values]
    s, c = real_basis(k2[0], mesh.A, mp)
    D[0, 0], D[0, 1] = s, c
    for i in range(1, N):
        x = mesh.points[i]
        sl, cl = real_basis(k2[i - 1], x, mp)
        sr, cr = real_basis(k2[i], x, mp)
        L, R = 2 * (i - 1), 2 * i
        D[2 * i - 1, L], D[2 * i - 1, L + 1] = -sl, -cl
        D[2 * i - 1, R], D[2 * i - 1, R + 1] = sr, cr
        D[2 * i, L], D[2 * i, L + 1] = -cl, k2[i - 1] * sl
        D[2 * i, R], D[2 * i, R + 1] = cr, -k2[i] * sr
    s, c = real_basis(k2[-1], mesh.B, mp)
    D[2 * N - 1, 2 * N - 2], D[2 * N - 1, 2 * N - 1] = s, c
    return D


def det_D(lam, mesh: Mesh, qbar: BasePotential, ctx: PrecisionContext):
    return ctx.mp.det(assemble_D(lam, mesh, qbar, ctx))


@dataclass
class Shot:
    """Initial-value solution with ``u(A) = 0``, ``u'(A) = 1`` propagated to ``B``."""

    value: mpmath.mpf
    slope: mpmath.mpf
    count: int  # zeros of u in (A, B], i.e. eigenvalues <= lambda


def shoot(lam, mesh: Mesh, qbar: BasePotential, ctx: PrecisionContext) -> Shot:
    """Propagate across the mesh and count zeros with a scaled Pruefer angle."""
    mp = ctx.mp
    lam = mp.mpf(lam)
    y, dy = mp.zero, mp.one
    band = 0
    for i in range(mesh.N):
        lo, hi = mesh.interval(i)
        k2 = lam - qbar.values[i]
        s, c = real_basis(k2, hi - lo, mp)
        y_new, dy_new = c * y + s * dy, -k2 * s * y + c * dy
        if k2 > 0:
            k = mp.sqrt(k2)
            phi = mp.atan2(k * y, dy)
            if phi < 0:
                phi += mp.pi
            if phi >= mp.pi:
                phi -= mp.pi
            theta = band * mp.pi + phi + k * (hi - lo)
            band = int(mp.floor(theta / mp.pi))
        elif y != 0 and (y_new == 0 or (y_new > 0) != (y > 0)):
            band += 1
        y, dy = y_new, dy_new
    return Shot(y, dy, band)


def eigen_count(lam, mesh: Mesh, qbar: BasePotential, ctx: PrecisionContext) -> int:
    """Number of basic eigenvalues ``<= lam``."""
    return shoot(lam, mesh, qbar, ctx).count


def _refine(f, lo, hi, flo, fhi, tol, max_iter=5000):
    """Illinois iteration on a sign-changing bracket, with a bisection fallback."""
    side = 0
    last_width = hi - lo
    for it in range(1, max_iter + 1):
        if hi - lo <= tol:
            break
        bisect = False
        if it % 4 == 0:
            bisect = hi - lo > last_width / 2
            last_width = hi - lo
        x = (lo + hi) / 2 if bisect else hi - fhi * (hi - lo) / (fhi - flo)
        if not lo < x < hi:
            x = (lo + hi) / 2
        fx = f(x)
        if fx == 0:
            return x
        if (fx > 0) == (fhi > 0):
            hi, fhi = x, fx
            if side == 1:
                flo /= 2
            side = 1
        else:
            lo, flo = x, fx
            if side == -1:
                fhi /= 2
            side = -1
    return lo if abs(flo) < abs(fhi) else hi


def find_basic_eigenvalue(n: int, mesh: Mesh, qbar: BasePotential, ctx: PrecisionContext,
                          guess=None, max_steps: int = 100000):
    """n-th basic eigenvalue (1-based, increasing order)."""
    if n < 1:
        raise ValueError("eigenvalue index starts at 1")
    mp = ctx.mp
    L = mesh.B - mesh.A

    def count(x):
        return eigen_count(x, mesh, qbar, ctx)

    floor = min(qbar.values) - 1  # below the whole spectrum
    if guess is not None:
        g = mp.mpf(guess)
        delta = max(abs(g) * mp.mpf("1e-3"), mp.mpf("1e-6"))
        while True:
            lo, hi = max(g - delta, floor), g + delta
            c_hi = count(hi)
            if c_hi >= n and count(lo) <= n - 1:
                break
            delta *= 4
    else:
        # march upward with the constant-potential eigenvalue spacing
        lo = floor
        hi = lo + mp.pi ** 2 / L ** 2
        c_hi = count(hi)
        steps = 0
        while c_hi < n:
            lo = hi
            k = c_hi + 1
            hi = hi + mp.pi ** 2 * (2 * k - 1) / L ** 2
            c_hi = count(hi)
            steps += 1
            if steps > max_steps:
                raise RootNotBracketed(f"eigenvalue {n} not bracketed after {max_steps} scan steps")
    # shrink until the bracket holds eigenvalue n only
    c_lo = count(lo)
    while not (c_lo == n - 1 and c_hi == n):
        mid = (lo + hi) / 2
        c_mid = count(mid)
        if c_mid >= n:
            hi, c_hi = mid, c_mid
        else:
            lo, c_lo = mid, c_mid
        if hi - lo <= ctx.tolerance * (1 + abs(lo)):
            raise RootNotBracketed(f"could not isolate eigenvalue {n}; multiple eigenvalue?")

    def f(x):
        return shoot(x, mesh, qbar, ctx).value

    tol = mp.mpf(10) ** (-(ctx.decimal_digits - 5)) * (1 + abs(lo) + abs(hi))
    lam = _refine(f, lo, hi, f(lo), f(hi), tol)
    for v in qbar.values:
        if abs(lam - v) <= ctx.tolerance * (1 + abs(v)):
            raise DegenerateRoot(f"eigenvalue {n} coincides with base potential value")
    return lam


def null_and_adjoint(D, ctx: PrecisionContext):
    """Unit right and left null vectors of a singular transfer matrix."""
    mp = ctx.mp
    U, S, V = mp.svd_r(D)
    order = sorted(range(len(S)), key=lambda k: S[k])
    smax = S[order[-1]]
    if len(S) > 1 and S[order[1]] <= ctx.tolerance * smax:
        raise RankDeficiency("null space dimension exceeds one")
    if S[order[0]] > ctx.tolerance * smax:
        raise ValueError(f"matrix is not singular to tolerance: sigma_min = {mpmath.nstr(S[order[0]], 5)}")
    k = order[0]
    n = D.rows
    Y0 = [V[k, j] for j in range(n)]
    Z = [U[j, k] for j in range(n)]
    return Y0, Z


@dataclass
class BasicEigenpair:
    n: int
    lambda0: mpmath.mpf
    kappas: list
    a0: list
    b0: list
    Z: list
    D: object
    mesh: Mesh
    qbar: BasePotential
    ctx: PrecisionContext
    tables: list = field(default_factory=list)

    @property
    def k2(self) -> list:
        return [k.kappa_squared for k in self.kappas]

    @property
    def Y0(self) -> list:
        out = []
        for a, b in zip(self.a0, self.b0):
            out += [a, b]
        return out

    def __call__(self, x, order: int = 0):
        i = self.mesh.locate(x)
        return expansion_value([self.a0[i]], [self.b0[i]], self.kappas[i].kappa_squared,
                               self.ctx.mp.mpf(x), self.ctx.mp, order)


def normalize_basic(n: int, lambda0, Y0, Z, D, mesh: Mesh, qbar: BasePotential,
                    kappas: list, ctx: PrecisionContext) -> BasicEigenpair:
    """Scale a null direction to unit L2 norm with ``u'(A) > 0``."""
    mp = ctx.mp
    tables = [IntegralTable(k, *mesh.interval(i), ctx) for i, k in enumerate(kappas)]
    a = [Y0[2 * i] for i in range(mesh.N)]
    b = [Y0[2 * i + 1] for i in range(mesh.N)]
    norm2 = mp.zero
    for i, t in enumerate(tables):
        t.ensure(0)
        norm2 += a[i] ** 2 * t.ss[0] + 2 * a[i] * b[i] * t.sc[0] + b[i] ** 2 * t.cc[0]
    if norm2 <= ctx.tolerance:
        raise ZeroNorm("null direction has vanishing L2 norm")
    scale = 1 / mp.sqrt(norm2)
    slope = expansion_value([a[0]], [b[0]], kappas[0].kappa_squared, mesh.A, mp, order=1)
    if slope < 0:
        scale = -scale
    a = [x * scale for x in a]
    b = [x * scale for x in b]
    return BasicEigenpair(n, lambda0, list(kappas), a, b, list(Z), D, mesh, qbar, ctx, tables)


def solve_basic(n: int, mesh: Mesh, qbar: BasePotential, ctx: PrecisionContext,
                guess=None) -> BasicEigenpair:
    lam = find_basic_eigenvalue(n, mesh, qbar, ctx, guess=guess)
    kappas = [make_kappa(lam, v, ctx) for v in qbar.values]
    D = assemble_D(lam, mesh, qbar, ctx)
    Y0, Z = null_and_adjoint(D, ctx)
    return normalize_basic(n, lam, Y0, Z, D, mesh, qbar, kappas, ctx)
