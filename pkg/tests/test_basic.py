import mpmath
import pytest
from hypothesis import given, strategies as st

from fdmethod.basic import (assemble_D, det_D, eigen_count, expansion_value, find_basic_eigenvalue,
                            null_and_adjoint, shoot, solve_basic)
from fdmethod.errors import DegenerateKappa
from fdmethod.potential import Mesh, PolynomialPotential, build_base_potential
from fdmethod.scalars import PrecisionContext

CTX = PrecisionContext(40, 12)
mp = CTX.mp
Q = PolynomialPotential.from_values([-60, 120], CTX)


def _setup(N, policy="average", q=Q):
    mesh = Mesh.uniform(0, 1, N, CTX)
    return mesh, build_base_potential(q, mesh, policy)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_constant_potential_eigenvalues(n):
    mesh, qbar = _setup(2, q=PolynomialPotential.from_values([0], CTX))
    lam = find_basic_eigenvalue(n, mesh, qbar, CTX)
    assert abs(lam - (n * mp.pi) ** 2) < 1e-30


@pytest.mark.parametrize("N", [1, 2, 3])
def test_determinant_is_shooting_value(N):
    mesh, qbar = _setup(N)
    for lam in ("-7.5", "13", "55.25"):
        d = det_D(CTX.real(lam), mesh, qbar, CTX)
        shot = shoot(CTX.real(lam), mesh, qbar, CTX).value
        assert abs(abs(d) - abs(shot)) < 1e-30 * (1 + abs(d))


@given(lam=st.decimals(-80, 400, places=1))
def test_count_is_monotone_and_brackets(lam):
    mesh, qbar = _setup(3)
    lam = CTX.real(str(lam))
    c = eigen_count(lam, mesh, qbar, CTX)
    assert eigen_count(lam + 5, mesh, qbar, CTX) >= c
    if c:
        assert find_basic_eigenvalue(c, mesh, qbar, CTX) <= lam
    assert find_basic_eigenvalue(c + 1, mesh, qbar, CTX) > lam


def test_guess_path_agrees_with_scan():
    mesh, qbar = _setup(3)
    for n in (1, 2, 4):
        lam = find_basic_eigenvalue(n, mesh, qbar, CTX)
        assert abs(find_basic_eigenvalue(n, mesh, qbar, CTX, guess=lam + 3) - lam) < 1e-30


@pytest.mark.parametrize("N,policy,n,err", [
    (1, "zero", 1, "12.96"), (1, "zero", 4, "1.71"),
    (2, "average", 1, "2.77"), (3, "average", 2, "1.20"),
])
def test_known_base_errors(N, policy, n, err):
    exact = {1: "-3.08815211843854844862886684381", 2: "41.5266775137315677830945919694",
             4: "159.625216916146830891863813793"}
    mesh, qbar = _setup(N, policy)
    lam = find_basic_eigenvalue(n, mesh, qbar, CTX)
    # the printed value is rounded to the digits shown
    half_ulp = mpmath.mpf(10) ** (mpmath.floor(mpmath.log10(float(err))) - len(err.replace(".", "")) + 1) / 2
    assert abs(abs(lam - CTX.real(exact[n])) - mpmath.mpf(err)) <= half_ulp


@pytest.mark.parametrize("N,n", [(1, 1), (2, 1), (3, 2)])
def test_basic_pair(N, n):
    mesh, qbar = _setup(N)
    basic = solve_basic(n, mesh, qbar, CTX)
    tol = 1e-25
    # normalization and sign
    norm2 = mp.quad(lambda x: basic(x) ** 2, list(mesh.points))
    assert abs(norm2 - 1) < tol
    assert basic(mesh.A, order=1) > 0
    assert abs(basic(mesh.A)) < tol and abs(basic(mesh.B)) < tol
    for i in range(1, N):
        x = mesh.points[i]
        for order in (0, 1):
            left = expansion_value([basic.a0[i - 1]], [basic.b0[i - 1]], basic.k2[i - 1], x, mp, order)
            assert abs(left - basic(x, order)) < tol
    # n - 1 interior zeros
    xs = [mesh.A + (mesh.B - mesh.A) * k / 400 for k in range(1, 400)]
    signs = [basic(x) > 0 for x in xs]
    assert sum(a != b for a, b in zip(signs, signs[1:])) == n - 1
    # adjoint vector annihilates D
    D = basic.D
    for col in range(D.cols):
        assert abs(sum(basic.Z[r] * D[r, col] for r in range(D.rows))) < tol


def test_null_and_adjoint_rejects_regular_matrix():
    mesh, qbar = _setup(2)
    with pytest.raises(ValueError):
        null_and_adjoint(assemble_D(CTX.real(1), mesh, qbar, CTX), CTX)


def test_degenerate_kappa():
    mesh, qbar = _setup(2)
    with pytest.raises(DegenerateKappa):
        assemble_D(qbar.values[0], mesh, qbar, CTX)
