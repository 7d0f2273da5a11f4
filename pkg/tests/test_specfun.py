"""Special functions and limiting densities against independent mpmath oracles."""
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from htrmt.errors import DegenerateConnectionError, DomainError, PoleError
from htrmt.recurrences import EnsembleParams, moments0
from htrmt.specfun import (confluent_limit_error, density_antisym, density_antisym_sq, density_function,
                           density_gaussian, density_jacobi, density_laguerre, density_mass,
                           density_moments, digamma, dyson_constant, dyson_constant_integer,
                           gauss_2f1, gaussian_stieltjes, hyp_pfq, jacobi_wronskian, kummer_1f1,
                           limit_confluence, limit_semicircle, parabolic_cylinder_Dix,
                           stieltjes_gaussian_series, stieltjes_jacobi_series, trigamma)

mp.mp.dps = 30


def m0(family, order, **kw):
    return [float(v) for v in moments0(EnsembleParams.make(family, ring="float", **kw), order).m0]


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


# -- hypergeometric kernels ---------------------------------------------------

@pytest.mark.parametrize("a,b,c,z", [(0.5, 1.5, 2.0, 0.3), (1.2, -3.7, 0.4, 0.45), (2.5, 7.0, 1.5, -0.8),
                                     (-4.0, 2.0, 3.0, 0.9), (0.3, 0.7, -1.5, 0.2)])
def test_gauss_2f1_vs_mpmath(a, b, c, z):
    assert rel(gauss_2f1(a, b, c, z), mp.hyp2f1(a, b, c, z)) < 1e-13


@pytest.mark.parametrize("a,b,z", [(0.5, 1.5, 2.0), (1.5, 0.5, -30.0), (-2.5, 3.0, 10.0),
                                   (3.0, -0.5, 4.0), (0.25, 2.0, 60.0)])
def test_kummer_1f1_vs_mpmath(a, b, z):
    assert rel(kummer_1f1(a, b, z), mp.hyp1f1(a, b, z)) < 1e-12


def test_cancellation_escalates():
    # the alternating series at z = -40 loses ~17 digits in double precision
    got = hyp_pfq([0.5], [1.5], -40.0)
    assert rel(got, mp.hyp1f1(0.5, 1.5, -40)) < 1e-12


def test_explicit_precision_returns_mpc():
    with mp.workdps(40):
        v = hyp_pfq([1, 1], [2], mp.mpf("0.5"), dps=40)
        assert isinstance(v, mp.mpc)
        assert abs(v - 2 * mp.log(2)) < mp.mpf(10) ** -35


def test_hyp_errors():
    with pytest.raises(PoleError):
        hyp_pfq([1.0], [-2.0], 0.3)
    with pytest.raises(DomainError):
        gauss_2f1(1.0, 1.0, 2.0, 1.0)


def test_terminating_series_with_pole_beyond_degree():
    # a = -2 stops the series before the b = -3 pole is reached
    v = hyp_pfq([-2.0], [-3.0], 0.5)
    assert rel(v, 1 + (-2) / (-3) * 0.5 + (-2) * (-1) / ((-3) * (-2) * 2) * 0.25) < 1e-15


# -- parabolic cylinder -------------------------------------------------------

@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.5, 4.0])
@pytest.mark.parametrize("x", [0.0, 0.7, 2.9, 5.0])
def test_pcf_vs_mpmath(alpha, x):
    ref = mp.pcfd(-alpha, mp.mpc(0, x))
    assert rel(parabolic_cylinder_Dix(alpha, x, "series"), ref) < 1e-12
    if abs(x) <= 3:
        assert rel(parabolic_cylinder_Dix(alpha, x, "integral"), ref) < 1e-10


def test_pcf_value_at_origin():
    assert abs(parabolic_cylinder_Dix(1.0, 0.0) - math.sqrt(math.pi / 2)) < 1e-13


def test_pcf_domain():
    with pytest.raises(DomainError):
        parabolic_cylinder_Dix(-0.5, 1.0)


@pytest.mark.parametrize("alpha", [0.5, 2.0])
def test_gaussian_stieltjes_large_x(alpha):
    m = m0("gaussian", 12, alpha=alpha)
    x = 40.0
    series = sum(m[p] / x ** (p + 1) for p in range(13))
    assert rel(gaussian_stieltjes(alpha, x), series) < 1e-13


# -- densities ----------------------------------------------------------------

@pytest.mark.parametrize("kind,params", [
    ("gaussian", {"alpha": 1.3}),
    ("laguerre", {"alpha": 0.8, "alpha1": 0.4}),
    ("jacobi", {"alpha": 1.1, "alpha1": 0.5, "alpha2": 1.7}),
    ("antisym-sq", {"alpha": 1.5}),
])
def test_densities_normalized(kind, params):
    assert abs(density_mass(kind, params) - 1) < 1e-8


def test_gaussian_density_even_and_pcf_form():
    al = 1.7
    for x in (0.3, 1.4, 4.0):
        assert density_gaussian(al, x) == density_gaussian(al, -x)
        d = mp.pcfd(-al, mp.mpc(0, x))
        ref = 1 / (mp.sqrt(2 * mp.pi) * mp.gamma(1 + al) * abs(d) ** 2)
        assert rel(density_gaussian(al, x), ref) < 1e-12


def whittaker_laguerre(a1, al, x):
    w = mp.whitw(-al - mp.mpf(a1) / 2, (1 + mp.mpf(a1)) / 2, -mp.mpf(x))
    return float(1 / (mp.gamma(al + 1) * mp.gamma(al + a1 + 1) * abs(w) ** 2))


@pytest.mark.parametrize("a1", [0.4, 1.5, -0.5])
@pytest.mark.parametrize("x", [0.05, 1.0, 6.0])
def test_laguerre_vs_whittaker(a1, x):
    assert rel(density_laguerre(a1, 0.9, x), whittaker_laguerre(a1, 0.9, x)) < 1e-10


@pytest.mark.parametrize("a1", [0, 1, 2])
def test_laguerre_integer_exponent_limit(a1):
    for x in (0.1, 2.0, 7.0):
        assert rel(density_laguerre(a1, 1.3, x), whittaker_laguerre(a1, 1.3, x)) < 1e-10
    with pytest.raises(DegenerateConnectionError):
        density_laguerre(a1, 1.3, 1.0, limit_policy=False)


def test_laguerre_rejects_inadmissible_integer():
    with pytest.raises(DegenerateConnectionError):
        density_laguerre(-2, 1.0, 1.0)
    with pytest.raises(DomainError):
        density_laguerre(0.5, 1.0, -1.0)


@pytest.mark.parametrize("alpha", [0.5, 1.5, 3.0])
@pytest.mark.parametrize("y", [0.01, 0.7, 12.0])
def test_antisym_sq_vs_whittaker(alpha, y):
    w = mp.whitw(-alpha + mp.mpf(1) / 2, 0, -mp.mpf(y))
    ref = 1 / (mp.gamma(alpha + 1) * mp.gamma(alpha) * abs(w) ** 2)
    assert rel(density_antisym_sq(alpha, y), ref) < 1e-10


def test_antisym_change_of_variable():
    assert density_antisym(1.2, 1.5) == pytest.approx(2 * 1.5 * density_antisym_sq(1.2, 2.25), rel=1e-15)


def test_antisym_second_moment():
    # E y = alpha
    m = density_moments("antisym-sq", {"alpha": 2.0}, 1).value
    assert abs(m[1] - 2.0) < 1e-8


@pytest.mark.parametrize("x", [0.55, 0.8, 0.97])
def test_jacobi_reflection_matches_direct(x):
    a = density_jacobi(0.3, 1.2, 0.9, x)
    b = density_jacobi(0.3, 1.2, 0.9, x, reflect=False)
    assert rel(a, b) < 1e-10


def test_jacobi_domain():
    with pytest.raises(DomainError):
        density_jacobi(0.3, 1.2, 0.9, 1.0)
    with pytest.raises(DegenerateConnectionError):
        density_jacobi(1, 0.5, 0.9, 0.3, limit_policy=False)


@pytest.mark.parametrize("triple", [(0.3, 0.4, 0.9), (1.5, 0.2, 2.0), (-0.5, 0.7, 0.6),
                                    (2.3, 1.1, 1.4), (0.6, -0.4, 3.0)])
@pytest.mark.parametrize("x", np.linspace(0.05, 0.9, 10).tolist())
def test_jacobi_wronskian(triple, x):
    lhs, rhs = jacobi_wronskian(*triple, x)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_confluent_limit_shrinks_like_inverse_b():
    errs = [confluent_limit_error(0.7, 1.3, 2.0, b) for b in (1e2, 1e3, 1e4)]
    assert errs[0] > errs[1] > errs[2]
    for e0, e1 in zip(errs, errs[1:]):
        assert 7 < e0 / e1 < 13


def test_limit_reports():
    sc = limit_semicircle(400.0)
    assert sc.sup_norm < 5e-3
    cf = limit_confluence(0.5, 1.0)
    assert cf.max_rel_error < 1e-3
    assert set(sc.to_dict()) >= {"name", "params", "sup_norm", "max_rel_error"}


# -- digamma family and the Dyson constant ------------------------------------

@given(st.floats(0.05, 40.0))
@settings(max_examples=60, deadline=None)
def test_polygamma_vs_mpmath(a):
    assert abs(trigamma(a) - float(mp.psi(1, a))) <= 1e-13 * float(mp.psi(1, a))
    assert abs(digamma(a) - float(mp.digamma(a))) <= 1e-13 * max(1.0, abs(float(mp.digamma(a))))


@pytest.mark.parametrize("k", [1, 2, 3, 7])
def test_dyson_constant_closed_form(k):
    assert rel(dyson_constant(k), dyson_constant_integer(k)) < 1e-14


# -- large-x series -----------------------------------------------------------

@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.75])
def test_gaussian_stieltjes_series_matches_recurrence(alpha):
    m = m0("gaussian", 16, alpha=alpha)
    got = stieltjes_gaussian_series(alpha, 8)
    for p in range(9):
        assert got[p] == pytest.approx(m[2 * p], rel=1e-12)


@pytest.mark.parametrize("params", [(0.5, 1.5, 1.0), (1.2, 0.3, 2.5), (-0.5, -0.5, 0.75)])
def test_jacobi_stieltjes_series_matches_recurrence(params):
    a1, a2, al = params
    m = m0("jacobi", 8, alpha=al, alpha1=a1, alpha2=a2)
    got = stieltjes_jacobi_series(a1, a2, al, 8)
    assert np.allclose(got, m, rtol=1e-12, atol=0)


def test_density_function_unknown_kind():
    with pytest.raises(DomainError):
        density_function("cauchy", {"alpha": 1.0})
