from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from fdmethod.driver import ProblemConfig, alpha, double_factorial, eval_approx, run_fd, theorem1_bounds
from fdmethod.errors import OutOfDomain
from fdmethod.scalars import PrecisionContext


def test_alpha_values_and_inequality():
    assert alpha(0) == 1
    assert alpha(1) == Fraction(1, 4)
    assert alpha(2) == Fraction(1, 8)
    assert double_factorial(7) == 105 and double_factorial(-1) == 1
    for m in range(1, 31):
        assert float(alpha(m)) <= 1 / ((m + 1) * mpmath.sqrt(mpmath.pi * m))


def test_config_validation():
    with pytest.raises(ValueError):
        ProblemConfig(n=0)
    with pytest.raises(ValueError):
        ProblemConfig(m=31)
    assert ProblemConfig(m=30).m == 30


def test_free_problem_is_exact_at_every_rank():
    res = run_fd(ProblemConfig(coeffs=("0",), n=2, m=5))
    pi2 = res.ctx.mp.pi ** 2
    for lam in res.lambda_truncated:
        assert abs(lam - 4 * pi2) < res.ctx.tolerance
    assert all(layer.lam == 0 for layer in res.layers[1:])
    assert res.theorem1.r_n == 0 and res.theorem1.convergent
    assert all(b == 0 for b in res.theorem1.beta[1:])


def test_free_problem_eigenfunction():
    res = run_fd(ProblemConfig(coeffs=("0",), n=1, m=2))
    for k in range(3):
        assert abs(eval_approx(res, "0.5", k) - res.ctx.mp.sqrt(2)) < res.ctx.tolerance


def test_prefix_sums_and_domain():
    res = run_fd(ProblemConfig(N=2, n=1, m=4))
    acc = 0
    for lam, tot in zip(res.lambdas, res.lambda_truncated):
        acc += lam
        assert tot == acc
    assert len(res.lambda_truncated) == 5
    with pytest.raises(OutOfDomain):
        eval_approx(res, "1.01")
    with pytest.raises(ValueError):
        eval_approx(res, "0.5", rank=7)


def test_table_entry_rank_four():
    res = run_fd(ProblemConfig(N=2, n=1, m=4, digits=40))
    exact = res.ctx.real("-3.08815211843854844862886684381")
    assert mpmath.nstr(abs(res.lambda_truncated[4] - exact), 3) == "0.000826"


@given(coeffs=st.lists(st.integers(-40, 40), min_size=1, max_size=4),
       N=st.integers(1, 3), n=st.integers(1, 3))
def test_approximation_is_continuous_and_vanishes_at_ends(coeffs, N, n):
    res = run_fd(ProblemConfig(coeffs=tuple(str(c) for c in coeffs), N=N, n=n, m=3, digits=30))
    tol = res.ctx.tolerance * 10 ** 5
    for k in range(4):
        assert abs(eval_approx(res, 0, k)) < tol
        assert abs(eval_approx(res, 1, k)) < tol * (1 + abs(eval_approx(res, "0.5", k)))
        for i in range(1, N):
            x = res.mesh.points[i]
            A, B = res.summed_coefficients(k)
            from fdmethod.basic import expansion_value
            left = expansion_value(A[i - 1], B[i - 1], res.basic.k2[i - 1], x, res.ctx.mp)
            assert abs(left - eval_approx(res, x, k)) < tol * (1 + abs(left))


def test_theorem1_threshold():
    cfg = ProblemConfig(policy="zero", N=1)
    ctx = cfg.context()
    q, mesh, qbar = cfg.build(ctx)
    r12 = theorem1_bounds(q, mesh, qbar, 12, 3, ctx)
    r13 = theorem1_bounds(q, mesh, qbar, 13, 3, ctx)
    assert abs(r12.r_n - 240 / (23 * ctx.mp.pi ** 2)) < ctx.tolerance
    assert not r12.convergent and r13.convergent
    assert r12.beta[1] == ctx.mp.inf
    assert r13.beta[2] == r13.r_n ** 2 * r13.alpha[2] / (1 - r13.r_n)


def test_small_wavenumber_gets_more_digits():
    # the basic eigenvalue sits close to the base value on one interval
    base = ProblemConfig(coeffs=("0",), N=2, n=1, m=3, policy="explicit", explicit=("0", "9.8"), digits=30)
    res = run_fd(base)
    assert res.ctx.decimal_digits >= base.context().decimal_digits
