"""Rank-m runs, a-priori convergence bounds and evaluation of the approximations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .basic import BasicEigenpair, expansion_value, find_basic_eigenvalue, solve_basic
from .corrections import CorrectionLayer, M_of, basic_layer, correction_step
from .errors import OutOfDomain
from .potential import BasePolicy, BasePotential, Mesh, PolynomialPotential, build_base_potential, sup_norm_diff
from .scalars import PrecisionContext

RANK_CAP = 30


@dataclass(frozen=True)
class ProblemConfig:
    """Everything that defines one run.

    ``points`` lists interior mesh points and overrides the uniform ``N``.
    Numbers may be given as ints or decimal strings so they convert exactly.
    """

    coeffs: tuple = ("-60", "120")
    A: object = 0
    B: object = 1
    N: int = 1
    points: Optional[tuple] = None
    policy: str = "average"
    explicit: Optional[tuple] = None
    n: int = 1
    m: int = 5
    digits: int = 30
    rank_cap: int = RANK_CAP

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.m <= self.rank_cap:
            raise ValueError(f"rank m must lie in [0, {self.rank_cap}]")

    def context(self) -> PrecisionContext:
        degree = max(len(self.coeffs) - 1, 0)
        return PrecisionContext.for_rank(self.digits, self.m, degree)

    def build(self, ctx: PrecisionContext):
        q = PolynomialPotential.from_values(self.coeffs, ctx)
        if self.points is not None:
            mesh = Mesh.from_points([self.A, *self.points, self.B], ctx)
        else:
            mesh = Mesh.uniform(self.A, self.B, self.N, ctx)
        qbar = build_base_potential(q, mesh, BasePolicy(self.policy), self.explicit, ctx)
        return q, mesh, qbar


def double_factorial(k: int) -> int:
    return math.prod(range(k, 0, -2)) if k > 0 else 1


def alpha(m: int) -> Fraction:
    return Fraction(2 * double_factorial(2 * m - 1), double_factorial(2 * m + 2))


@dataclass
class APrioriBound:
    M_n: mpmath.mpf
    r_n: mpmath.mpf
    sup_norm: mpmath.mpf
    alpha: list
    beta: list
    convergent: bool

    def eigenvalue_bound(self, m: int):
        """Upper bound on ``|lambda - lambda~_m|``; infinite when ``r_n >= 1``."""
        return self.sup_norm * self.beta[m]


def theorem1_bounds(q: PolynomialPotential, mesh: Mesh, qbar: BasePotential, n: int, m: int,
                    ctx: PrecisionContext, lambda_n=None) -> APrioriBound:
    mp = ctx.mp
    lam = lambda_n if lambda_n is not None else find_basic_eigenvalue(n, mesh, qbar, ctx)
    gaps = [find_basic_eigenvalue(n + 1, mesh, qbar, ctx) - lam]
    if n > 1:
        gaps.append(lam - find_basic_eigenvalue(n - 1, mesh, qbar, ctx))
    M_n = max(1 / g for g in gaps)
    sup = sup_norm_diff(q, qbar, mesh, ctx)
    r_n = 4 * sup * M_n
    alphas = [ctx.real(alpha(k)) for k in range(m + 2)]
    if r_n < 1:
        betas = [1 + r_n / (1 - r_n) * alphas[1]]
        betas += [r_n ** k / (1 - r_n) * alphas[k] for k in range(1, m + 2)]
    else:
        betas = [mp.inf] * (m + 2)
    return APrioriBound(M_n, r_n, sup, alphas, betas, bool(r_n < 1))


@dataclass
class FDResult:
    config: Optional[ProblemConfig]
    ctx: PrecisionContext
    q: PolynomialPotential
    mesh: Mesh
    qbar: BasePotential
    basic: BasicEigenpair
    layers: list
    theorem1: APrioriBound

    @property
    def n(self) -> int:
        return self.basic.n

    @property
    def m(self) -> int:
        return len(self.layers) - 1

    @property
    def lambdas(self) -> list:
        return [layer.lam for layer in self.layers]

    @property
    def lambda_truncated(self) -> list:
        out, acc = [], self.ctx.mp.zero
        for lam in self.lambdas:
            acc += lam
            out.append(acc)
        return out

    def summed_coefficients(self, rank: int) -> tuple[list, list]:
        """Per-interval coefficients of the rank-``rank`` eigenfunction approximation."""
        mp = self.ctx.mp
        size = self.layers[rank].size
        A = [[mp.zero] * size for _ in range(self.mesh.N)]
        B = [[mp.zero] * size for _ in range(self.mesh.N)]
        for layer in self.layers[: rank + 1]:
            for i in range(self.mesh.N):
                for p in range(layer.size):
                    A[i][p] += layer.a[i][p]
                    B[i][p] += layer.b[i][p]
        return A, B


def _small_kappa_boost(basic: BasicEigenpair, m: int, degree: int) -> int:
    """Extra digits lost to the ``(4 k^2)^-p`` factors of the recursion."""
    k2min = min(abs(k2) for k2 in basic.k2)
    if 4 * k2min >= 1:
        return 0
    return math.ceil(M_of(m, degree) / 2 * -math.log10(float(4 * k2min))) + 5


def run_fd_problem(q: PolynomialPotential, mesh: Mesh, qbar: BasePotential, n: int, m: int,
                   ctx: PrecisionContext, config: Optional[ProblemConfig] = None) -> FDResult:
    basic = solve_basic(n, mesh, qbar, ctx)
    layers = [basic_layer(basic)]
    for _ in range(m):
        layers.append(correction_step(layers, basic, q))
    thm = theorem1_bounds(q, mesh, qbar, n, m, ctx, lambda_n=basic.lambda0)
    return FDResult(config, ctx, q, mesh, qbar, basic, layers, thm)


def run_fd(config: ProblemConfig) -> FDResult:
    """Basic problem plus ``m`` correction layers for the configured eigenpair."""
    ctx = config.context()
    q, mesh, qbar = config.build(ctx)
    basic = solve_basic(config.n, mesh, qbar, ctx)
    extra = _small_kappa_boost(basic, config.m, q.degree)
    if extra:
        ctx = ctx.boosted(extra)
        q, mesh, qbar = config.build(ctx)
    return run_fd_problem(q, mesh, qbar, config.n, config.m, ctx, config)


def eval_approx(result: FDResult, x, rank: Optional[int] = None, order: int = 0):
    """Rank-``rank`` eigenfunction approximation (or a derivative) at ``x``."""
    mp = result.ctx.mp
    rank = result.m if rank is None else rank
    if not 0 <= rank <= result.m:
        raise ValueError(f"rank {rank} not computed")
    x = mp.mpf(x)
    if x < result.mesh.A or x > result.mesh.B:
        raise OutOfDomain(f"x = {mpmath.nstr(x, 8)} outside [A, B]")
    i = result.mesh.locate(x)
    A, B = result.summed_coefficients(rank)
    return expansion_value(A[i], B[i], result.basic.k2[i], x, mp, order)


def eval_layer(layer: CorrectionLayer, basic: BasicEigenpair, i: int, x, order: int = 0):
    return expansion_value(layer.a[i], layer.b[i], basic.k2[i], basic.ctx.mp.mpf(x), basic.ctx.mp, order)
