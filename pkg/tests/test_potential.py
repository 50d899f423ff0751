import mpmath
import pytest
from hypothesis import given, strategies as st

from fdmethod.potential import (BasePolicy, Mesh, PolynomialPotential, build_base_potential,
                                real_roots_in, sup_norm_diff)
from fdmethod.scalars import PrecisionContext

CTX = PrecisionContext(40, 12)
coeff = st.integers(-100, 100)


def test_trailing_zeros_stripped():
    q = PolynomialPotential.from_values([1, 2, 0, 0], CTX)
    assert q.degree == 1
    assert PolynomialPotential.from_values([0, 0], CTX).is_zero


@given(cs=st.lists(coeff, min_size=1, max_size=5), x=st.integers(-5, 5))
def test_horner_and_derivative(cs, x):
    q = PolynomialPotential.from_values(cs, CTX)
    assert q(CTX.real(x)) == sum(c * x ** p for p, c in enumerate(cs))
    dq = q.derivative()
    assert dq(CTX.real(x)) == sum(p * c * x ** (p - 1) for p, c in enumerate(cs) if p)


def test_mesh_uniform_and_locate():
    mesh = Mesh.uniform(0, 1, 3, CTX)
    assert mesh.N == 3 and mesh.A == 0 and mesh.B == 1
    assert mesh.locate(mesh.points[1]) == 1  # left-closed
    assert mesh.locate(CTX.real(0)) == 0
    assert mesh.locate(CTX.real(1)) == 2  # last interval closed
    with pytest.raises(ValueError):
        mesh.locate(CTX.real("1.5"))
    with pytest.raises(ValueError):
        Mesh.from_points([0, "0.5", "0.4", 1], CTX)


def test_base_policies():
    q = PolynomialPotential.from_values([-60, 120], CTX)
    mesh = Mesh.uniform(0, 1, 2, CTX)
    avg = build_base_potential(q, mesh, "average")
    assert avg.values == (-30, 30) and avg.policy is BasePolicy.AVERAGE
    assert build_base_potential(q, mesh, "zero").values == (0, 0)
    ex = build_base_potential(q, mesh, "explicit", ["1.5", 2], CTX)
    assert ex.values == (CTX.real("1.5"), 2)
    with pytest.raises(ValueError):
        build_base_potential(q, mesh, "explicit", [1], CTX)


def test_real_roots():
    # (x - 0.25)(x - 0.5)(x + 3)
    p = [CTX.real("0.375"), CTX.real("-2.125"), CTX.real("2.25"), CTX.real(1)]
    roots = real_roots_in(p, CTX.real(0), CTX.real(1), CTX)
    assert len(roots) == 2
    assert abs(roots[0] - CTX.real("0.25")) < 1e-25
    assert abs(roots[1] - CTX.real("0.5")) < 1e-25


@given(cs=st.lists(coeff, min_size=1, max_size=4), N=st.integers(1, 3))
def test_sup_norm_dominates_samples(cs, N):
    q = PolynomialPotential.from_values(cs, CTX)
    mesh = Mesh.uniform(0, 1, N, CTX)
    qbar = build_base_potential(q, mesh, "average")
    sup = sup_norm_diff(q, qbar, mesh, CTX)
    sampled = mpmath.mpf(0)
    for i in range(N):
        lo, hi = mesh.interval(i)
        for k in range(41):
            x = lo + (hi - lo) * k / 40
            sampled = max(sampled, abs(q(x) - qbar.values[i]))
    assert sampled <= sup * (1 + mpmath.mpf("1e-30"))
    # a dense sample gets within a small relative margin of the true sup
    assert sup - sampled <= mpmath.mpf("0.01") * (1 + sup)


def test_sup_norm_linear_average():
    q = PolynomialPotential.from_values([-60, 120], CTX)
    for N in (1, 2, 3):
        mesh = Mesh.uniform(0, 1, N, CTX)
        sup = sup_norm_diff(q, build_base_potential(q, mesh, "average"), mesh, CTX)
        assert abs(sup - CTX.real(60) / N) < 1e-30
