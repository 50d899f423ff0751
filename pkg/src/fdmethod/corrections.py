"""One step of the correction recursion.

Layer ``j+1`` on subinterval ``i`` is ``sum_{p=0}^{M(j)} x^p (a_p s(x) + b_p c(x))``
with ``s = sin(kx)/k``, ``c = cos(kx)`` and ``M(j) = (j+1)(r+1)``.  The source
term is stored in the same real basis: ``F = sum_t x^t (phi_t s + gamma_t c)``,
so ``phi_t = k * f_t`` and ``gamma_t = g_t`` for the usual sin/cos expansion
coefficients ``f``, ``g``.  Working in ``k^2`` only keeps every coefficient
real, whether ``k`` is real or imaginary.

Order of one step: eigenvalue correction, source coefficients, tail
coefficients (``p >= 1``), right-hand side, singular solve with the
orthogonality condition fixing the free multiple of the basic solution.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import mpmath

from .basic import BasicEigenpair, expansion_value
from .errors import SolvabilityViolation
from .potential import PolynomialPotential
from .scalars import PrecisionContext


def M_of(j: int, r: int) -> int:
    """Highest power of x in layer ``j+1``; ``M(-1) = 0``."""
    return (j + 1) * (r + 1)


@dataclass
class CorrectionLayer:
    j: int
    lam: mpmath.mpf
    a: list  # a[i][p]
    b: list

    @property
    def size(self) -> int:
        return len(self.a[0])


@dataclass
class SourceCoeffs:
    phi: list  # phi[i][t], t = 0..M(j)-1
    gamma: list

    def f_sin(self, i: int, t: int, kappa) -> mpmath.mpc:
        """Coefficient of ``x^t sin(kx)`` (complex when ``k`` is imaginary)."""
        return self.phi[i][t] / kappa.kappa

    def g_cos(self, i: int, t: int):
        return self.gamma[i][t]


def basic_layer(basic: BasicEigenpair) -> CorrectionLayer:
    return CorrectionLayer(0, basic.lambda0, [[a] for a in basic.a0], [[b] for b in basic.b0])


def _moment(table_vals, q: PolynomialPotential, qbar_i, t):
    acc = -qbar_i * table_vals[t]
    for p, c in enumerate(q.coeffs):
        acc += c * table_vals[t + p]
    return acc


def lambda_correction(layer: CorrectionLayer, basic: BasicEigenpair, q: PolynomialPotential):
    """``lambda^(j+1) = int (q - qbar) u^(j) u^(0) dx`` from the closed-form moments."""
    mp = basic.ctx.mp
    total = mp.zero
    for i, tab in enumerate(basic.tables):
        tab.ensure(layer.size - 1 + q.degree)
        a0, b0, qb = basic.a0[i], basic.b0[i], basic.qbar.values[i]
        for t in range(layer.size):
            at, bt = layer.a[i][t], layer.b[i][t]
            total += at * a0 * _moment(tab.ss, q, qb, t)
            total += (at * b0 + bt * a0) * _moment(tab.sc, q, qb, t)
            total += bt * b0 * _moment(tab.cc, q, qb, t)
    return total


def source_coeffs(j: int, layers: list, lam_next, basic: BasicEigenpair,
                  q: PolynomialPotential) -> SourceCoeffs:
    """Coefficients of ``F^(j+1) = -sum_s lambda^(j+1-s) u^(s) + (q - qbar) u^(j)``.

    ``layers`` holds layers ``0..j``; ``lam_next`` is ``lambda^(j+1)``.
    """
    r = q.degree
    M, M_prev = M_of(j, r), M_of(j - 1, r)
    lam = [layer.lam for layer in layers] + [lam_next]  # lam[k] = lambda^(k)
    cur = layers[j]
    phi, gamma = [], []
    for i in range(basic.mesh.N):
        qb = basic.qbar.values[i]
        ph, ga = [], []
        for t in range(M):
            fa = fb = 0
            for l in range(max(0, t - M_prev), min(r, t) + 1):
                fa += q.coeffs[l] * cur.a[i][t - l]
                fb += q.coeffs[l] * cur.b[i][t - l]
            if t <= M - r - 1:
                for s in range(ceil(t / (r + 1)), j + 1):
                    fa -= lam[j + 1 - s] * layers[s].a[i][t]
                    fb -= lam[j + 1 - s] * layers[s].b[i][t]
                fa -= qb * cur.a[i][t]
                fb -= qb * cur.b[i][t]
            ph.append(fa)
            ga.append(fb)
        phi.append(ph)
        gamma.append(ga)
    return SourceCoeffs(phi, gamma)


def tail_interval(phi: list, gamma: list, k2, mp) -> tuple[list, list]:
    """Closed-form coefficients ``p = 1..M`` on one subinterval (``p = 0`` left at zero).

    Even offsets ``M - 2p`` and odd offsets ``M - 2t + 1`` are explicit sums of
    the source coefficients; the partial sums over ``s`` are accumulated.
    """
    M = len(phi)
    a = [mp.zero] * (M + 1)
    b = [mp.zero] * (M + 1)
    if M == 0:
        return a, b
    fac = [mp.one]
    for k in range(1, M + 2):
        fac.append(fac[-1] * k)
    four_k2 = 4 * k2
    a[M] = gamma[M - 1] / (2 * M)
    b[M] = -phi[M - 1] / (2 * M * k2)

    top_a = gamma[M - 1] * fac[M - 1] / 2
    top_b = phi[M - 1] * fac[M - 1] / (2 * k2)
    sum_a = sum_b = mp.zero
    weight = mp.one  # (-1)^s (4k^2)^s
    for p in range(1, (M + 1) // 2):
        s = p - 1
        sum_a += weight * fac[M - 2 * s - 3] * ((M - 2 * s - 2) * phi[M - 2 * s - 2] + 2 * k2 * gamma[M - 2 * s - 3])
        sum_b += weight * fac[M - 2 * s - 3] * ((M - 2 * s - 2) * gamma[M - 2 * s - 2] - 2 * phi[M - 2 * s - 3])
        weight *= -four_k2
        pref = (-1) ** p / (four_k2 ** p * fac[M - 2 * p])
        a[M - 2 * p] = pref * (top_a - sum_a)
        b[M - 2 * p] = -pref * (top_b + sum_b)

    sum_a = sum_b = mp.zero
    weight = mp.one
    for t in range(1, M // 2 + 1):
        s = t - 1
        sum_a += weight * fac[M - 2 * s - 2] * ((M - 2 * s - 1) * phi[M - 2 * s - 1] + 2 * k2 * gamma[M - 2 * s - 2])
        sum_b += weight * fac[M - 2 * s - 2] * ((M - 2 * s - 1) * gamma[M - 2 * s - 1] - 2 * phi[M - 2 * s - 2])
        weight *= -four_k2
        pref = (-1) ** (t + 1) / (four_k2 ** t * fac[M - 2 * t + 1])
        a[M - 2 * t + 1] = pref * sum_a
        b[M - 2 * t + 1] = pref * sum_b
    return a, b


def tail_coefficients(j: int, src: SourceCoeffs, basic: BasicEigenpair) -> CorrectionLayer:
    """Layer ``j+1`` with every ``p >= 1`` coefficient set and ``p = 0`` still zero."""
    a, b = [], []
    for i, k2 in enumerate(basic.k2):
        ai, bi = tail_interval(src.phi[i], src.gamma[i], k2, basic.ctx.mp)
        a.append(ai)
        b.append(bi)
    return CorrectionLayer(j + 1, None, a, b)


def assemble_rhs(partial: CorrectionLayer, basic: BasicEigenpair) -> list:
    """Right-hand side of ``D Y = H``: the tail's boundary values and interface jumps."""
    mesh, mp = basic.mesh, basic.ctx.mp
    k2 = basic.k2
    N = mesh.N
    tails = [([mp.zero] + partial.a[i][1:], [mp.zero] + partial.b[i][1:]) for i in range(N)]

    def val(i, x, order=0):
        return expansion_value(tails[i][0], tails[i][1], k2[i], x, mp, order)

    H = [mp.zero] * (2 * N)
    H[0] = -val(0, mesh.A)
    for i in range(1, N):
        x = mesh.points[i]
        H[2 * i - 1] = val(i - 1, x) - val(i, x)
        H[2 * i] = val(i - 1, x, 1) - val(i, x, 1)
    H[2 * N - 1] = -val(N - 1, mesh.B)
    return H


def overlap_with_basic(layer: CorrectionLayer, basic: BasicEigenpair):
    """``int u^(0) u^(layer) dx`` from the closed-form moments."""
    mp = basic.ctx.mp
    total = mp.zero
    for i, tab in enumerate(basic.tables):
        tab.ensure(layer.size - 1)
        a0, b0 = basic.a0[i], basic.b0[i]
        for t in range(layer.size):
            at, bt = layer.a[i][t], layer.b[i][t]
            total += a0 * at * tab.ss[t] + (a0 * bt + b0 * at) * tab.sc[t] + b0 * bt * tab.cc[t]
    return total


def solvability_residual(H: list, basic: BasicEigenpair):
    return sum(z * h for z, h in zip(basic.Z, H))


def solve_layer(partial: CorrectionLayer, H: list, basic: BasicEigenpair) -> CorrectionLayer:
    """Fill the ``p = 0`` coefficients from the singular system and orthogonality."""
    ctx = basic.ctx
    mp = ctx.mp
    hmax = max(abs(h) for h in H)
    if abs(solvability_residual(H, basic)) > ctx.tolerance * (1 + hmax):
        raise SolvabilityViolation(
            f"Z^T H = {mpmath.nstr(solvability_residual(H, basic), 5)} for layer {partial.j}")
    n = len(H)
    drop = max(range(n), key=lambda k: abs(basic.Z[k]))
    Y0 = basic.Y0
    A = basic.D.copy()
    rhs = mp.matrix(H)
    for col in range(n):
        A[drop, col] = Y0[col]
    rhs[drop] = 0
    Y = mp.lu_solve(A, rhs)
    a = [list(row) for row in partial.a]
    b = [list(row) for row in partial.b]
    for i in range(basic.mesh.N):
        a[i][0] = Y[2 * i]
        b[i][0] = Y[2 * i + 1]
    layer = CorrectionLayer(partial.j, partial.lam, a, b)
    theta = -overlap_with_basic(layer, basic)
    for i in range(basic.mesh.N):
        a[i][0] += theta * basic.a0[i]
        b[i][0] += theta * basic.b0[i]
    return layer


def correction_step(layers: list, basic: BasicEigenpair, q: PolynomialPotential) -> CorrectionLayer:
    """Compute layer ``j+1`` from layers ``0..j``."""
    j = len(layers) - 1
    lam_next = lambda_correction(layers[j], basic, q)
    src = source_coeffs(j, layers, lam_next, basic, q)
    partial = tail_coefficients(j, src, basic)
    partial.lam = lam_next
    H = assemble_rhs(partial, basic)
    return solve_layer(partial, H, basic)
