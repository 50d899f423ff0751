"""A-posteriori checks: residual norms, errors against references, and an oracle.

The oracle eigenvalue solves only the piecewise-constant base problem (no
correction layers) on a sequence of uniform meshes with ``2^k`` cells and
extrapolates the second-order sequence with a Romberg table in ``h^2``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath

from .basic import expansion_value, find_basic_eigenvalue
from .driver import FDResult, ProblemConfig
from .errors import NoConvergence
from .potential import BasePolicy, Mesh, PolynomialPotential, build_base_potential
from .reference_data import KNOWN_EXACT
from .scalars import PrecisionContext


class ReferenceSource(enum.Enum):
    TABULATED = "paper"
    CLOSED_FORM = "closed-form"
    ORACLE = "oracle"


def known_reference_applies(q: PolynomialPotential, A, B, n: int) -> bool:
    return (n in KNOWN_EXACT and A == 0 and B == 1 and q.degree == 1
            and q.coeffs[0] == -60 and q.coeffs[1] == 120)


# --- residual -----------------------------------------------------------------

def residual_coefficients(result: FDResult, rank: int) -> list:
    """Per-interval ``(P, Q)`` with ``Phi = sum_t x^t (P_t s + Q_t c)``."""
    mp = result.ctx.mp
    A, B = result.summed_coefficients(rank)
    lam_tilde = result.lambda_truncated[rank]
    r = result.q.degree
    out = []
    for i in range(result.mesh.N):
        k2 = result.basic.k2[i]
        a, b = A[i], B[i]
        size = len(a) + r
        P = [mp.zero] * size
        Q = [mp.zero] * size
        # u'' + k^2 u
        for t in range(len(a)):
            if t + 2 < len(a):
                P[t] += (t + 1) * (t + 2) * a[t + 2]
                Q[t] += (t + 1) * (t + 2) * b[t + 2]
            if t + 1 < len(a):
                P[t] -= 2 * (t + 1) * k2 * b[t + 1]
                Q[t] += 2 * (t + 1) * a[t + 1]
        # + (lambda~ - lambda0 + qbar_i - q(x)) u
        w = [-c for c in result.q.coeffs]
        w[0] += lam_tilde - result.basic.lambda0 + result.qbar.values[i]
        for l, wl in enumerate(w):
            for t in range(len(a)):
                P[t + l] += wl * a[t]
                Q[t + l] += wl * b[t]
        out.append((P, Q))
    return out


def residual_norm(result: FDResult, rank: Optional[int] = None):
    """L2 norm of ``u~'' + (lambda~ - q) u~`` assembled from the closed-form moments."""
    mp = result.ctx.mp
    rank = result.m if rank is None else rank
    total = mp.zero
    for (P, Q), tab in zip(residual_coefficients(result, rank), result.basic.tables):
        tab.ensure(2 * len(P))
        for t in range(len(P)):
            for s in range(len(P)):
                total += P[t] * P[s] * tab.ss[t + s] + 2 * P[t] * Q[s] * tab.sc[t + s] + Q[t] * Q[s] * tab.cc[t + s]
    return mp.sqrt(max(total, mp.zero))


def residual_pointwise(result: FDResult, x, rank: Optional[int] = None):
    mp = result.ctx.mp
    rank = result.m if rank is None else rank
    x = mp.mpf(x)
    i = result.mesh.locate(x)
    A, B = result.summed_coefficients(rank)
    k2 = result.basic.k2[i]
    u = expansion_value(A[i], B[i], k2, x, mp)
    upp = expansion_value(A[i], B[i], k2, x, mp, order=2)
    return upp + (result.lambda_truncated[rank] - result.q(x)) * u


def residual_norm_quadrature(result: FDResult, rank: Optional[int] = None):
    """Same norm as :func:`residual_norm`, by adaptive quadrature of the pointwise residual."""
    mp = result.ctx.mp
    rank = result.m if rank is None else rank
    A, B = result.summed_coefficients(rank)
    total = mp.zero
    for i in range(result.mesh.N):
        k2 = result.basic.k2[i]
        lam = result.lambda_truncated[rank]

        def phi2(x, i=i, k2=k2):
            u = expansion_value(A[i], B[i], k2, x, mp)
            upp = expansion_value(A[i], B[i], k2, x, mp, order=2)
            return (upp + (lam - result.q(x)) * u) ** 2

        total += quadrature_check(phi2, result.mesh.interval(i), result.ctx)
    return mp.sqrt(total)


def quadrature_check(f: Callable, interval, ctx: PrecisionContext):
    """Tanh-sinh quadrature, failing unless the error estimate meets the tolerance."""
    mp = ctx.mp
    value, err = mp.quad(f, list(interval), error=True, maxdegree=10)
    if err > ctx.tolerance * (1 + abs(value)):
        raise NoConvergence(f"quadrature error estimate {mpmath.nstr(err, 3)} above tolerance")
    return value


@dataclass
class ResidualReport:
    n: int
    m: int
    lam: mpmath.mpf
    delta: Optional[mpmath.mpf]
    omega: mpmath.mpf
    reference: Optional[mpmath.mpf]
    reference_source: Optional[ReferenceSource]


def reference_eigenvalue(q: PolynomialPotential, A, B, n: int, ctx: PrecisionContext,
                         mode: str = "paper"):
    """``(value, source)`` following the reference mode ``paper|oracle|none``."""
    if mode == "none":
        return None, None
    if mode == "paper" and known_reference_applies(q, A, B, n):
        return ctx.real(KNOWN_EXACT[n]), ReferenceSource.TABULATED
    if q.degree == 0:
        L = ctx.real(B) - ctx.real(A)
        return ctx.real(q.coeffs[0]) + (n * ctx.mp.pi / L) ** 2, ReferenceSource.CLOSED_FORM
    oracle_ctx = PrecisionContext(45, 15)  # about 30 digits, the reach of the extrapolation
    return ctx.real(oracle_eigenvalue(q, (A, B), n, oracle_ctx)), ReferenceSource.ORACLE


def reports(result: FDResult, reference=None, source=None) -> list:
    out = []
    for k, lam in enumerate(result.lambda_truncated):
        delta = abs(lam - reference) if reference is not None else None
        out.append(ResidualReport(result.n, k, lam, delta, residual_norm(result, k), reference, source))
    return out


# --- oracle ---------------------------------------------------------------------

@dataclass
class OracleRun:
    value: mpmath.mpf
    error_estimate: mpmath.mpf
    cells: list      # mesh sizes used
    raw: list        # rank-0 eigenvalue per mesh
    table: list      # Romberg rows


def richardson_oracle(q: PolynomialPotential, interval, n: int, ctx: PrecisionContext,
                      k_min: int = 4, k_max: int = 14) -> OracleRun:
    mp = ctx.mp
    A, B = (ctx.real(v) for v in interval)
    q = PolynomialPotential(tuple(mp.mpf(c) for c in q.coeffs))
    target = ctx.tolerance * 10
    rows, cells, raw = [], [], []
    guess = None
    best_err = None
    stalls = 0
    for k in range(k_min, k_max + 1):
        N = 2 ** k
        mesh = Mesh.uniform(A, B, N, ctx)
        qbar = build_base_potential(q, mesh, BasePolicy.AVERAGE)
        lam = find_basic_eigenvalue(n, mesh, qbar, ctx, guess=guess)
        cells.append(N)
        raw.append(lam)
        row = [lam]
        if rows:
            prev = rows[-1]
            for l in range(1, len(prev) + 1):
                row.append(row[l - 1] + (row[l - 1] - prev[l - 1]) / (4 ** l - 1))
        rows.append(row)
        guess = row[-1]
        if len(rows) >= 3:
            err = abs(row[-1] - rows[-2][-1])
            if err <= target * (1 + abs(row[-1])):
                return OracleRun(row[-1], err, cells, raw, rows)
            if best_err is not None and err >= best_err:
                stalls += 1
                if stalls >= 3:
                    raise NoConvergence(f"extrapolation stalled at error {mpmath.nstr(err, 3)}")
            else:
                stalls = 0
                best_err = err
    raise NoConvergence(f"no convergence with up to 2^{k_max} cells")


def oracle_eigenvalue(q: PolynomialPotential, interval, n: int, ctx: PrecisionContext, **kw):
    """Reference eigenvalue from extrapolated piecewise-constant solves."""
    return richardson_oracle(q, interval, n, ctx, **kw).value


def config_reference(config: ProblemConfig, ctx: PrecisionContext, mode: str = "paper"):
    q, mesh, _ = config.build(ctx)
    return reference_eigenvalue(q, mesh.A, mesh.B, config.n, ctx, mode)


# --- per-layer invariants ---------------------------------------------------------

@dataclass
class LayerCheck:
    """Worst relative violation of each defining property of one layer."""

    j: int
    ode: mpmath.mpf
    matching: mpmath.mpf
    boundary: mpmath.mpf
    orthogonality: mpmath.mpf  # normalization for the basic layer
    solvability: mpmath.mpf

    @property
    def worst(self):
        return max(self.ode, self.matching, self.boundary, self.orthogonality, self.solvability)


def check_threshold(ctx: PrecisionContext):
    return ctx.tolerance * 10 ** 5


def _sample_points(lo, hi, mp, count: int = 5):
    return [lo + (hi - lo) * (1 - mp.cos(mp.pi * (k + mp.mpf(1) / 2) / count)) / 2 for k in range(count)]


def layer_checks(result: FDResult) -> list:
    from .corrections import assemble_rhs, overlap_with_basic, solvability_residual

    basic, mesh, mp = result.basic, result.mesh, result.ctx.mp
    layers = result.layers
    k2 = basic.k2
    out = []
    for j, layer in enumerate(layers):
        def val(i, x, order=0, layer=layer):
            return expansion_value(layer.a[i], layer.b[i], k2[i], x, mp, order)

        # u'' + k^2 u = -sum_s lambda^(j-s) u^(s) + (q - qbar) u^(j-1)
        ode = mp.zero
        for i in range(mesh.N):
            for x in _sample_points(*mesh.interval(i), mp):
                lhs = val(i, x, 2) + k2[i] * val(i, x)
                rhs, scale = mp.zero, abs(val(i, x, 2)) + abs(k2[i] * val(i, x))
                if j:
                    prev = layers[j - 1]
                    w = (result.q(x) - result.qbar.values[i]) * expansion_value(prev.a[i], prev.b[i], k2[i], x, mp)
                    rhs += w
                    scale += abs(w)
                    for s in range(j):
                        us = layers[s]
                        term = layers[j - s].lam * expansion_value(us.a[i], us.b[i], k2[i], x, mp)
                        rhs -= term
                        scale += abs(term)
                ode = max(ode, abs(lhs - rhs) / (1 + scale))
        matching = mp.zero
        for i in range(1, mesh.N):
            x = mesh.points[i]
            for order in (0, 1):
                left, right = val(i - 1, x, order), val(i, x, order)
                matching = max(matching, abs(left - right) / (1 + abs(left)))
        boundary = max(abs(val(0, mesh.A)), abs(val(mesh.N - 1, mesh.B)))
        if j == 0:
            ortho = abs(overlap_with_basic(layer, basic) - 1)
            solv = mp.zero
        else:
            ortho = abs(overlap_with_basic(layer, basic))
            H = assemble_rhs(layer, basic)
            solv = abs(solvability_residual(H, basic)) / (1 + max(abs(h) for h in H))
        out.append(LayerCheck(j, ode, matching, boundary, ortho, solv))
    return out
