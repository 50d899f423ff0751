import pytest
from hypothesis import given, strategies as st

from fdmethod.integrals import IntegralTable, integral_R, integral_S, integral_T, integral_triples
from fdmethod.scalars import PrecisionContext, make_kappa

CTX = PrecisionContext(40, 12)
mp = CTX.mp


def _quad_triple(kappa, p, lo, hi):
    k = kappa.kappa
    S = mp.quad(lambda x: x ** p * mp.sin(k * x) ** 2, [lo, hi])
    R = mp.quad(lambda x: x ** p * mp.cos(k * x) ** 2, [lo, hi])
    T = mp.quad(lambda x: x ** p * mp.sin(2 * k * x) / 2, [lo, hi])
    return S, R, T


def test_known_values():
    k = make_kappa(mp.pi ** 2, 0, CTX)
    assert abs(integral_S(k, 0, 0, 1, CTX) - mp.mpf(1) / 2) < 1e-35
    assert abs(integral_S(k, 1, 0, 1, CTX) - mp.mpf(1) / 4) < 1e-35


@given(k2=st.decimals(-200, 200, places=2).filter(lambda v: abs(v) > 0.01),
       p=st.integers(0, 8),
       lo=st.decimals(-1, 1, places=2), width=st.decimals("0.05", 1, places=2))
def test_closed_forms_match_quadrature(k2, p, lo, width):
    kappa = make_kappa(CTX.real(str(k2)), 0, CTX)
    lo = CTX.real(str(lo))
    hi = lo + CTX.real(str(width))
    S, R, T = integral_triples(kappa, p, lo, hi, CTX)
    Sq, Rq, Tq = _quad_triple(kappa, p, lo, hi)
    scale = 1 + abs(Sq) + abs(Rq)
    assert abs(S[p] - Sq) < 1e-30 * scale
    assert abs(R[p] - Rq) < 1e-30 * scale
    assert abs(T[p] - Tq) < 1e-30 * scale


@given(k2=st.decimals(-100, 100, places=2).filter(lambda v: abs(v) > 0.01), p=st.integers(0, 12))
def test_sum_identity(k2, p):
    # S_p + R_p = int x^p
    kappa = make_kappa(CTX.real(str(k2)), 0, CTX)
    lo, hi = CTX.real("0.2"), CTX.real("0.9")
    S, R, _ = integral_triples(kappa, p, lo, hi, CTX)
    exact = (hi ** (p + 1) - lo ** (p + 1)) / (p + 1)
    assert abs(S[p] + R[p] - exact) < 1e-30


def test_single_index_helpers_agree():
    kappa = make_kappa(-7, 0, CTX)
    S, R, T = integral_triples(kappa, 5, 0, 1, CTX)
    assert integral_S(kappa, 5, 0, 1, CTX) == S[5]
    assert integral_R(kappa, 5, 0, 1, CTX) == R[5]
    assert integral_T(kappa, 5, 0, 1, CTX) == T[5]
    with pytest.raises(ValueError):
        integral_S(kappa, -1, 0, 1, CTX)
    with pytest.raises(ValueError):
        integral_S(kappa, 1, 1, 0, CTX)


@pytest.mark.parametrize("k2", ["30", "-30", "0.001"])
def test_table_is_real_and_grows(k2):
    kappa = make_kappa(CTX.real(k2), 0, CTX)
    lo, hi = CTX.real("0.25"), CTX.real("0.75")
    tab = IntegralTable(kappa, lo, hi, CTX).ensure(3)
    first = list(tab.ss[:4])
    tab.ensure(20)
    assert tab.ss[:4] == first and len(tab.ss) >= 21
    k = kappa.kappa
    for p in (0, 7, 20):
        ss = mp.quad(lambda x: x ** p * (mp.sin(k * x) / k) ** 2, [lo, hi])
        sc = mp.quad(lambda x: x ** p * mp.sin(k * x) / k * mp.cos(k * x), [lo, hi])
        cc = mp.quad(lambda x: x ** p * mp.cos(k * x) ** 2, [lo, hi])
        assert abs(tab.ss[p] - ss.real) < 1e-30
        assert abs(tab.sc[p] - sc.real) < 1e-30
        assert abs(tab.cc[p] - cc.real) < 1e-30
