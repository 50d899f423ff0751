"""Polynomial potential, mesh, piecewise-constant base potential and sup-norms."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import mpmath

from .scalars import PrecisionContext


@dataclass(frozen=True)
class PolynomialPotential:
    """``q(x) = sum_p coeffs[p] * x**p``; trailing zero coefficients are stripped."""

    coeffs: tuple

    @classmethod
    def from_values(cls, values: Sequence, ctx: PrecisionContext) -> "PolynomialPotential":
        cs = [ctx.real(v) for v in values] or [ctx.mp.zero]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "PolynomialPotential":
        if self.degree == 0:
            return PolynomialPotential((0 * self.coeffs[0],))
        return PolynomialPotential(tuple(p * c for p, c in enumerate(self.coeffs) if p > 0))


@dataclass(frozen=True)
class Mesh:
    points: tuple

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a mesh needs at least two points")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("mesh points must be strictly increasing")

    @classmethod
    def uniform(cls, A, B, N: int, ctx: PrecisionContext) -> "Mesh":
        A, B = ctx.real(A), ctx.real(B)
        return cls(tuple(A + (B - A) * i / N for i in range(N)) + (B,))

    @classmethod
    def from_points(cls, points: Sequence, ctx: PrecisionContext) -> "Mesh":
        return cls(tuple(ctx.real(p) for p in points))

    @property
    def N(self) -> int:
        return len(self.points) - 1

    @property
    def A(self):
        return self.points[0]

    @property
    def B(self):
        return self.points[-1]

    def interval(self, i: int) -> tuple:
        """Endpoints of subinterval ``i`` (0-based)."""
        return self.points[i], self.points[i + 1]

    def locate(self, x) -> int:
        """Index of the subinterval holding ``x``: left-closed, last one closed."""
        if x < self.A or x > self.B:
            raise ValueError("x outside the mesh")
        for i in range(self.N - 1):
            if x < self.points[i + 1]:
                return i
        return self.N - 1


class BasePolicy(enum.Enum):
    AVERAGE = "average"
    ZERO = "zero"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class BasePotential:
    values: tuple
    policy: BasePolicy


def build_base_potential(q: PolynomialPotential, mesh: Mesh, policy=BasePolicy.AVERAGE,
                         explicit: Sequence | None = None,
                         ctx: PrecisionContext | None = None) -> BasePotential:
    policy = BasePolicy(policy)
    if policy is BasePolicy.AVERAGE:
        vals = tuple((q(a) + q(b)) / 2 for a, b in zip(mesh.points, mesh.points[1:]))
    elif policy is BasePolicy.ZERO:
        vals = tuple(0 * p for p in mesh.points[1:])
    else:
        if explicit is None or len(explicit) != mesh.N:
            raise ValueError(f"explicit base potential needs {mesh.N} values")
        conv = ctx.real if ctx is not None else mpmath.mpf
        vals = tuple(conv(v) for v in explicit)
    return BasePotential(vals, policy)


# --- Sturm-sequence root isolation -------------------------------------------

def _trim(p: list, eps) -> list:
    p = list(p)
    while len(p) > 1 and abs(p[-1]) <= eps:
        p.pop()
    return p


def _peval(p: list, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _prem(u: list, v: list, eps) -> list:
    """Remainder of ``u / v`` (coefficients low to high)."""
    u = list(u)
    dv = len(v) - 1
    while len(u) - 1 >= dv:
        factor = u[-1] / v[-1]
        shift = len(u) - 1 - dv
        for k in range(dv + 1):
            u[shift + k] -= factor * v[k]
        u.pop()
        if not u:
            return [0 * v[0]]
    return _trim(u, eps)


def sturm_sequence(p: list, eps) -> list:
    dp = [k * c for k, c in enumerate(p)][1:]
    seq = [p, dp]
    while len(seq[-1]) > 1:
        r = _prem(seq[-2], seq[-1], eps)
        if len(r) == 1 and abs(r[0]) <= eps:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq: list, x) -> int:
    signs = [s for s in (mpmath.sign(_peval(p, x)) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots_in(p: Sequence, lo, hi, ctx: PrecisionContext) -> list:
    """Distinct real roots of polynomial ``p`` (low to high) inside ``(lo, hi]``."""
    scale = max(abs(c) for c in p)
    if scale == 0:
        return []
    p = _trim([c / scale for c in p], ctx.tolerance)
    if len(p) < 2:
        return []
    seq = sturm_sequence(p, ctx.tolerance)
    width_tol = ctx.tolerance * (1 + abs(lo) + abs(hi))
    roots = []
    stack = [(lo, hi, _sign_changes(seq, lo) - _sign_changes(seq, hi))]
    while stack:
        a, b, count = stack.pop()
        if count <= 0:
            continue
        if b - a <= width_tol:
            roots.append((a + b) / 2)
            continue
        mid = (a + b) / 2
        left = _sign_changes(seq, a) - _sign_changes(seq, mid)
        stack.append((a, mid, left))
        stack.append((mid, b, count - left))
    return sorted(roots)


def sup_norm_diff(q: PolynomialPotential, qbar: BasePotential, mesh: Mesh,
                  ctx: PrecisionContext):
    """``max_x |q(x) - qbar(x)|`` over the mesh, exact up to root refinement."""
    dq = q.derivative()
    best = ctx.mp.zero
    for i in range(mesh.N):
        a, b = mesh.interval(i)
        candidates = [a, b]
        if q.degree >= 2:
            candidates += real_roots_in(list(dq.coeffs), a, b, ctx)
        for x in candidates:
            best = max(best, abs(q(x) - qbar.values[i]))
    return best
