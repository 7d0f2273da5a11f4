from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import series_oracle
from htrmt import reference as ref
from htrmt.errors import SingularParameterError, UsageError
from htrmt.exactnum import MultiPoly, poly_divmod, poly_eval
from htrmt.recurrences import (EnsembleParams, Family, compute_all, covariance_diagonal, covariances,
                               dos_moments, gaussian_moments_alt, gaussian_reduced_moments, jacobi_moments_alt,
                               moments0, moments1)

a = MultiPoly.var("alpha")
a1 = MultiPoly.var("alpha1")
ZERO = MultiPoly.zero()


@pytest.fixture(scope="module")
def gauss_poly():
    return EnsembleParams.make("gaussian", ring="poly")


@pytest.fixture(scope="module")
def lag_poly():
    return EnsembleParams.make("laguerre", ring="poly")


# -- published closed forms ----------------------------------------------------

def test_gaussian_moments_published(gauss_poly):
    m = moments0(gauss_poly, 8).m0
    for k, want in ref.GAUSSIAN_M0.items():
        assert m[k] == want
    assert m[8] == 105 + 260 * a + 234 * a**2 + 93 * a**3 + 14 * a**4


def test_gaussian_corrections_published(gauss_poly):
    ms = compute_all(gauss_poly, 6)
    assert ms.m1[2] == -a
    assert ms.m1[4] == -5 * a * (a + 1)
    assert ms.m1[6] == -2 * a * (16 + 27 * a + 11 * a**2)
    assert all(ms.m1[p] == ZERO for p in (0, 1, 3, 5))


def test_gaussian_covariance_rows_published(gauss_poly):
    m = moments0(gauss_poly, 12).m0
    cov = covariances(gauss_poly, 4, 8, m)
    for p in range(1, 5):
        for q in range(1, 9):
            assert cov.mu[p][q] == ref.gaussian_cov_row(p, q, m), (p, q)


def test_gaussian_mu_tilde_published(gauss_poly):
    t = covariance_diagonal(gauss_poly, 6)
    assert t[2] == 1 and t[4] == 8 * (a + 1) and t[6] == 3 * (a + 1) * (23 + 16 * a)


def test_laguerre_moments_and_corrections_published(lag_poly):
    ms = compute_all(lag_poly, 3)
    for k in (1, 2, 3):
        assert ms.m0[k] == ref.LAGUERRE_M0[k]
        assert ms.m1[k] == ref.LAGUERRE_M1[k]


def test_laguerre_covariance_rows(lag_poly):
    m = moments0(lag_poly, 9).m0
    cov = covariances(lag_poly, 3, 6, m)
    for q in range(1, 7):
        assert cov.mu[1][q] == ref.laguerre_cov_row(1, q, m)
        assert cov.mu[2][q] == ref.laguerre_cov_row(2, q, m)
        # third row in the form implied by the covariance recurrence (the printed
        # coefficient 1 + alpha1 + 2 alpha should read m_1 = 1 + alpha1 + alpha)
        assert cov.mu[3][q] == ref.laguerre_cov_row(3, q, m, cov.mu[2][q], printed=False)
        assert cov.mu[3][q] != ref.laguerre_cov_row(3, q, m, cov.mu[2][q], printed=True)


def test_dyson_dos_moments_published():
    w = dos_moments(3)
    assert w[1] == 2 * a and w[2] == 2 * a * (1 + 3 * a) and w[3] == 2 * a * (2 + 9 * a + 10 * a**2)


def test_jacobi_closed_forms_at_random_rationals():
    from htrmt.verify import random_rational_triples
    for al, b1, b2 in random_rational_triples():
        p = EnsembleParams.make("jacobi", al, b1, b2)
        ms = compute_all(p, 2)
        want = ref.jacobi_closed_forms(al, b1, b2)
        assert (ms.m0[1], ms.m0[2], ms.m1[1], ms.m1[2]) == (want["m10"], want["m20"], want["m11"], want["m21"])
        assert covariances(p, 1, 1, ms).mu[1][1] == want["mu11"]


# -- independent loop-equation oracle -------------------------------------------

ORACLE_CASES = [
    ("gaussian", (F(3, 7),)),
    ("gaussian", (F(-1, 2),)),
    ("laguerre", (F(3, 7), F(2, 5))),
    ("laguerre", (F(5, 2), F(-1, 3))),
    ("jacobi", (F(3, 7), F(2, 5), F(5, 3))),
    ("jacobi", (F(2), F(-1, 2), F(1, 4))),
]


@pytest.mark.parametrize("family,args", ORACLE_CASES)
def test_against_series_oracle(family, args):
    P = 6
    o = series_oracle.solve(family, *args, P=P)
    p = EnsembleParams.make(family, *args)
    m = moments0(p, 2 * P + 2)
    assert m.m0 == o["m0"]
    cov = covariances(p, P, P, m)
    for (i, j), v in o["mu"].items():
        assert cov.mu[i][j] == v, (i, j)
    assert covariance_diagonal(p, P, m)[: P + 1] == o["mu_tilde"]
    assert moments1(p, P - 1, m).m1 == o["m1"]


@given(st.fractions(min_value=F(-8, 9), max_value=4, max_denominator=9),
       st.fractions(min_value=F(-8, 9), max_value=4, max_denominator=9))
@settings(max_examples=8, deadline=None)
def test_laguerre_oracle_property(al, b1):
    o = series_oracle.solve("laguerre", al, b1, P=4)
    p = EnsembleParams.make("laguerre", al, b1)
    ms = compute_all(p, 3)
    assert ms.m0[:4] == o["m0"][:4] and ms.m1 == o["m1"]


# -- invariants ---------------------------------------------------------------

@pytest.mark.parametrize("family,args", [("gaussian", (None,)), ("laguerre", (None, None))])
def test_covariance_symmetry_poly(family, args):
    p = EnsembleParams.make(family, *args, ring="poly")
    cov = covariances(p, 7, 7)
    for i in range(8):
        for j in range(8):
            assert cov.mu[i][j] == cov.mu[j][i]
            assert cov.mu[0][j] == ZERO


def test_covariance_symmetry_jacobi():
    p = EnsembleParams.make("jacobi", "3/7", "2/5", "5/3")
    cov = covariances(p, 6, 6)
    assert all(cov.mu[i][j] == cov.mu[j][i] for i in range(7) for j in range(7))


def test_gaussian_parity(gauss_poly):
    m = moments0(gauss_poly, 15).m0
    assert all(m[p] == ZERO for p in range(1, 16, 2))
    cov = covariances(gauss_poly, 6, 6)
    assert all(cov.mu[i][j] == ZERO for i in range(7) for j in range(7) if (i + j) % 2)


@pytest.mark.parametrize("family", ["gaussian", "laguerre"])
def test_mu_tilde_is_antidiagonal_sum(family):
    p = EnsembleParams.make(family, ring="poly")
    n = 8
    m = moments0(p, 2 * n + 2)
    cov = covariances(p, n, n, m)
    diag = covariance_diagonal(p, n, m)
    for k in range(n + 1):
        assert diag[k] == sum((cov.mu[i][k - i] for i in range(k + 1)), ZERO)


def test_two_gaussian_recurrences_agree_to_order_20(gauss_poly):
    assert gaussian_moments_alt(20) == moments0(gauss_poly, 20).m0


def test_one_plus_alpha_divides_even_moments(gauss_poly):
    m = moments0(gauss_poly, 20).m0
    reduced = gaussian_reduced_moments(10)
    for k in range(1, 11):
        q, r = poly_divmod(m[2 * k], 1 + a)
        assert r.is_zero() and q == reduced[k]
    # at alpha = -1 every moment beyond the zeroth vanishes
    assert all(poly_eval(m[2 * k], (-1, 0, 0)) == 0 for k in range(1, 11))


def test_jacobi_two_recurrence_forms_agree():
    p = EnsembleParams.make("jacobi", "3/7", "2/5", "5/3")
    assert jacobi_moments_alt(12, p) == moments0(p, 12).m0
    s = EnsembleParams.make("jacobi-symmetric", "5/4", "1/3")
    assert jacobi_moments_alt(12, s) == moments0(s, 12).m0


def test_symmetric_jacobi_matches_general():
    s = moments0(EnsembleParams.make("jacobi-symmetric", "5/4", "1/3"), 10).m0
    g = moments0(EnsembleParams.make("jacobi", "5/4", "1/3", "1/3"), 10).m0
    # the symmetric family lives on (-1, 1): x = 2t - 1 with t the (0, 1) variable
    from math import comb
    for n in range(11):
        shifted = sum(comb(n, k) * 2**k * g[k] * (-1) ** (n - k) for k in range(n + 1))
        assert s[n] == shifted


def test_symmetric_jacobi_small_cases():
    al = F(2)
    assert moments0(EnsembleParams.make("jacobi-symmetric", al, 0), 2).m0[2] == (1 + al) / (3 + 2 * al)


def test_symmetric_jacobi_gaussian_scaling():
    g = moments0(EnsembleParams.make("gaussian", 1.5, ring="float"), 6).m0
    errs = []
    for big in (1e4, 1e6):
        s = moments0(EnsembleParams.make("jacobi-symmetric", 1.5, big, ring="float"), 6).m0
        errs.append(max(abs(s[2 * k] * (2 * big) ** k / g[2 * k] - 1) for k in range(4)))
    # the approach is O(1/a)
    assert errs[1] < 1e-4 and errs[1] < errs[0] / 50


def test_laguerre_at_minus_one_is_antisym_squared():
    for al in ("1/2", "2", "7/3"):
        lag = compute_all(EnsembleParams.make("laguerre", al, -1), 10)
        anti = compute_all(EnsembleParams.make("antisym-squared", al), 10)
        assert lag.m0 == anti.m0 and lag.m1 == anti.m1
    lp = moments0(EnsembleParams.make("laguerre", None, -1, ring="poly"), 8).m0
    ap = moments0(EnsembleParams.make("antisym-squared", ring="poly"), 8).m0
    assert lp == ap


def test_antisym_alpha_two_values():
    assert moments0(EnsembleParams.make("antisym-squared", 2), 3).m0 == [1, 2, 10, 68]


def test_dos_moments_are_alpha_derivatives():
    v = moments0(EnsembleParams.make("antisym-squared", ring="poly"), 6).m0
    w = dos_moments(6)
    for l in range(7):
        assert w[l] == (a * v[l]).derivative("alpha")


@pytest.mark.parametrize("family,args", [("gaussian", ("7/3",)), ("laguerre", ("3/2", "1/5")),
                                         ("jacobi", ("3/7", "2/5", "5/3"))])
def test_float_agrees_with_exact_to_order_12(family, args):
    ex = compute_all(EnsembleParams.make(family, *args), 12)
    fl = compute_all(EnsembleParams.make(family, *[float(F(x)) for x in args], ring="float"), 12)
    for e, f in zip(ex.m0 + ex.m1, fl.m0 + fl.m1):
        assert abs(float(e) - f) <= 1e-10 * max(abs(float(e)), 1e-300) or e == f == 0


def test_laguerre_boundary_example():
    p = EnsembleParams.make("laguerre", 1, 0)
    d = covariance_diagonal(p, 3)
    assert d[1] == 0 and d[2] == 2
    assert moments0(p, 1).m0[1] == 2


def test_singular_jacobi_names_index():
    # 2 + a1 + a2 + 2 alpha = 0 hits the first denominator
    p = EnsembleParams.make("jacobi", "-1/2", "-1/2", "-1/2")
    with pytest.raises(SingularParameterError) as exc:
        moments0(p, 3)
    assert exc.value.index == 1 and "p=1" in str(exc.value)


def test_usage_errors():
    with pytest.raises(UsageError):
        EnsembleParams.make("jacobi", ring="poly")
    with pytest.raises(UsageError):
        EnsembleParams.make("gaussian", "1", alpha1="1")
    with pytest.raises(UsageError):
        EnsembleParams.make("gaussian", "-1")
    with pytest.raises(UsageError):
        EnsembleParams.make("antisym-squared", "1", alpha1="0")
    with pytest.raises(UsageError):
        covariances(EnsembleParams.make("jacobi-symmetric", "1", "1/2"), 2, 2)
    with pytest.raises(UsageError):
        EnsembleParams.make("jacobi", "1", "-1", "0")
    assert Family.parse("Gaussian") is Family.GAUSSIAN
    assert Family.parse("antisym") is Family.ANTISYM_SQUARED
    with pytest.raises(UsageError):
        Family.parse("hermite")


def test_order_64_exact():
    m = moments0(EnsembleParams.make("gaussian", ring="poly"), 64).m0
    assert m[64].degree() == 32
    # leading coefficient: Catalan number C_32 (large-alpha semicircle scaling)
    from math import comb
    assert m[64].terms[(32, 0, 0)] == comb(64, 32) // 33


@given(st.fractions(min_value=F(-49, 50), max_value=10, max_denominator=50))
@settings(max_examples=25, deadline=None)
def test_gaussian_moments_nonnegative(al):
    m = moments0(EnsembleParams.make("gaussian", al), 12).m0
    assert all(x >= 0 for x in m)
