"""Limiting eigenvalue densities and the Dyson-chain density of states.

All evaluations run in mpmath through the authored series kernels and return
floats.  Connection coefficients containing 1/sin(pi*alpha1) are degenerate at
integer alpha1 (the antisymmetric case is alpha1 = -1); there the density is
evaluated at alpha1 = k +/- 1e-6 with at least 50 digits and the two values are
averaged, which leaves an O(eps^2) error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from ..errors import DegenerateConnectionError, DomainError, PrecisionError
from .pcf import pcf_D_imag_mp
from .quadrature import ABS_TOL, QuadResult, integrate, integrate_log_left, truncation_point
from .series import gauss_2f1, kummer_1f1

EPS_INT = 1e-6
DPS = 50
EULER_GAMMA = 0.57721566490153286061


def _near_int(v: float):
    k = round(v)
    return k if abs(v - k) < 1e-12 else None


# -- Gaussian ------------------------------------------------------------

def density_gaussian(alpha: float, x: float) -> float:
    """rho(x) = 1 / (sqrt(2 pi) Gamma(1+alpha) |D_{-alpha}(ix)|^2)."""
    if not alpha > 0:
        raise DomainError("the Gaussian density path needs alpha > 0")
    with mp.workdps(30):
        d = pcf_D_imag_mp(-mp.mpf(alpha), abs(x), 30)
        val = 1 / (mp.sqrt(2 * mp.pi) * mp.gamma(1 + mp.mpf(alpha)) * (d.real**2 + d.imag**2))
        return float(val)


# -- Laguerre ------------------------------------------------------------

def _laguerre_mp(a1, al, x, dps):
    with mp.workdps(dps):
        a1, al, x = mp.mpf(a1), mp.mpf(al), mp.mpf(x)
        ut = mp.gamma(al + 1) * mp.gamma(a1 + 1) / mp.gamma(1 + al + a1) * kummer_1f1(al, -a1, -x, dps).real
        vt = (-mp.pi * al / (mp.sin(mp.pi * a1) * mp.gamma(2 + a1)) * x ** (1 + a1) * mp.exp(-x)
              * kummer_1f1(1 - al, 2 + a1, x, dps).real)
        z = ut + mp.expjpi(a1) * vt
        return mp.gamma(al + 1) / mp.gamma(al + a1 + 1) * x**a1 * mp.exp(-x) / (z.real**2 + z.imag**2)


def density_laguerre(alpha1: float, alpha: float, x: float, limit_policy: bool = True) -> float:
    """Laguerre density from the confluent representation (never via W_{k,m}(-x))."""
    if not x > 0:
        raise DomainError("the Laguerre density is supported on x > 0")
    if not alpha > 0:
        raise DomainError("the Laguerre density path needs alpha > 0")
    k = _near_int(alpha1)
    if k is None:
        if not alpha1 > -1:
            raise DomainError(f"alpha1 must exceed -1, got {alpha1}")
        return float(_laguerre_mp(alpha1, alpha, x, 30))
    if k < -1:
        raise DegenerateConnectionError(f"alpha1 = {k} is not an admissible integer exponent")
    if not limit_policy:
        raise DegenerateConnectionError(f"1/sin(pi*alpha1) is singular at alpha1 = {k}")
    with mp.workdps(DPS):
        kk = mp.mpf(k)
        eps = mp.mpf(EPS_INT)
        lo = _laguerre_mp(kk - eps, alpha, x, DPS)
        hi = _laguerre_mp(kk + eps, alpha, x, DPS)
        return float((lo + hi) / 2)


# -- Jacobi --------------------------------------------------------------

def _jacobi_mp(a1, a2, al, x, dps):
    with mp.workdps(dps):
        a1, a2, al, x = mp.mpf(a1), mp.mpf(a2), mp.mpf(al), mp.mpf(x)
        s = al + a1 + a2
        u = mp.gamma(al + 1) * mp.gamma(a1 + 1) / mp.gamma(1 + al + a1) * gauss_2f1(al, -s - 1, -a1, x, dps).real
        v = (-mp.pi * al * mp.gamma(s + 2) / (mp.sin(mp.pi * a1) * mp.gamma(1 + al + a2) * mp.gamma(2 + a1))
             * (1 - x) ** (1 + a2) * x ** (1 + a1) * gauss_2f1(1 - al, 2 + s, 2 + a1, x, dps).real)
        z = u + mp.expjpi(a1) * v
        pref = mp.gamma(al + 1) * mp.gamma(s + 2) / (mp.gamma(al + a1 + 1) * mp.gamma(al + a2 + 1))
        return pref * x**a1 * (1 - x) ** a2 / (z.real**2 + z.imag**2)


def density_jacobi(alpha1: float, alpha2: float, alpha: float, x: float,
                   limit_policy: bool = True, reflect: bool = True) -> float:
    """Jacobi density on (0, 1).

    For x > 1/2 the reflection rho(x; a1, a2) = rho(1-x; a2, a1) keeps the 2F1
    argument at most 1/2; ``reflect=False`` forces the direct evaluation.
    """
    if not 0 < x < 1:
        raise DomainError("the Jacobi density is supported on 0 < x < 1")
    if not alpha > 0:
        raise DomainError("the Jacobi density path needs alpha > 0")
    if not (alpha1 > -1 and alpha2 > -1):
        raise DomainError("Jacobi exponents must exceed -1")
    if reflect and x > 0.5:
        alpha1, alpha2, x = alpha2, alpha1, 1.0 - x
    k = _near_int(alpha1)
    if k is None:
        return float(_jacobi_mp(alpha1, alpha2, alpha, x, 30))
    if not limit_policy:
        raise DegenerateConnectionError(f"1/sin(pi*alpha1) is singular at alpha1 = {k}")
    with mp.workdps(DPS):
        kk = mp.mpf(k)
        eps = mp.mpf(EPS_INT)
        lo = _jacobi_mp(kk - eps, alpha2, alpha, x, DPS)
        hi = _jacobi_mp(kk + eps, alpha2, alpha, x, DPS)
        return float((lo + hi) / 2)


# -- antisymmetric ensemble and the Dyson chain -----------------------------

def _antisym_sq_mp(alpha, y):
    with mp.workdps(DPS):
        eps = mp.mpf(EPS_INT)
        return (_laguerre_mp(-1 - eps, alpha, y, DPS) + _laguerre_mp(-1 + eps, alpha, y, DPS)) / 2


def density_antisym_sq(alpha: float, y: float) -> float:
    """Density of the squared eigenvalues (the alpha1 -> -1 Laguerre limit)."""
    if not y > 0:
        raise DomainError("the squared-eigenvalue density is supported on y > 0")
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    return float(_antisym_sq_mp(alpha, y))


def density_antisym(alpha: float, x: float) -> float:
    """One-sided density of |eigenvalue|, rho(x) = 2 x rho_sq(x^2) for x > 0."""
    if not x > 0:
        raise DomainError("the antisymmetric density is reported on x > 0")
    return 2.0 * x * density_antisym_sq(alpha, x * x)


def _dyson_mp(alpha, y, h):
    def f(a):
        return mp.mpf(a) * _antisym_sq_mp(a, y)

    with mp.workdps(DPS):
        al = mp.mpf(alpha)
        d1 = (f(al + h) - f(al - h)) / (2 * h)
        d2 = (f(al + h / 2) - f(al - h / 2)) / h
        return (4 * d2 - d1) / 3


def dyson_step(alpha: float) -> float:
    h = 1e-3 * max(1.0, alpha)
    if h >= alpha:
        h = alpha / 2
    if h < 1e-12:
        raise PrecisionError("finite-difference step underflows for this alpha")
    return h


def dyson_dos(alpha: float, y: float) -> float:
    """Mean density of states d/d alpha [alpha * rho_sq(y; alpha)] in squared frequency y."""
    if not y > 0:
        raise DomainError("the density of states is supported on y > 0")
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    return float(_dyson_mp(alpha, y, dyson_step(alpha)))


def trigamma(alpha: float) -> float:
    """psi'(alpha) = sum_n (alpha+n)^-2: ten explicit terms plus the Euler-Maclaurin tail."""
    if not alpha > 0:
        raise DomainError("trigamma here needs alpha > 0")
    n = 10
    head = math.fsum(1.0 / (alpha + k) ** 2 for k in range(n))
    z = alpha + n
    iz = 1.0 / z
    iz2 = iz * iz
    # Bernoulli-number tail of sum_{k>=0} (z+k)^-2
    tail = iz + 0.5 * iz2 + iz * iz2 * (1 / 6 - iz2 * (1 / 30 - iz2 * (1 / 42 - iz2 * (1 / 30 - iz2 * 5 / 66))))
    return head + tail


def digamma(alpha: float) -> float:
    n = 16
    head = -math.fsum(1.0 / (alpha + k) for k in range(n))
    z = alpha + n
    iz2 = 1.0 / (z * z)
    return head + math.log(z) - 0.5 / z - iz2 * (1 / 12 - iz2 * (1 / 120 - iz2 * (1 / 252 - iz2 / 240)))


def dyson_constant(alpha: float) -> float:
    """The small-y constant 2 psi'(alpha) of y |ln y|^3 mu(y)."""
    return 2.0 * trigamma(alpha)


def dyson_constant_integer(alpha: int) -> float:
    """2 (pi^2/6 - sum_{l<alpha} l^-2), the closed form at integer alpha."""
    return 2.0 * (math.pi**2 / 6 - math.fsum(1.0 / l**2 for l in range(1, int(alpha))))


def small_y_shift(alpha: float) -> float:
    """c in |W(-y)| ~ sqrt(y) |ln y + c + i pi| / Gamma(alpha): psi(alpha) + 2 gamma."""
    return digamma(alpha) + 2 * EULER_GAMMA


def antisym_sq_tail_mass(alpha: float, delta: float, power: float = 0.0) -> float:
    """Mass of y^power rho_sq below delta from rho_sq ~ 1/(alpha y ((ln y + c)^2 + pi^2))."""
    v = math.log(delta) + small_y_shift(alpha)
    if power == 0:
        return (math.atan(v / math.pi) + math.pi / 2) / (math.pi * alpha)
    return delta**power / (alpha * power * (v * v + math.pi**2))


def dyson_tail_mass(alpha: float, delta: float) -> float:
    """Mass of the density of states below delta from the same small-y form."""
    v = math.log(delta) + small_y_shift(alpha)
    return trigamma(alpha) / (math.pi**2 + v * v)


# -- curves and quadrature --------------------------------------------------

@dataclass
class DensityCurve:
    kind: str
    params: dict
    grid: np.ndarray
    values: np.ndarray
    quadrature_mass: float
    tolerance: float
    meta: dict = field(default_factory=dict)


KINDS = ("gaussian", "laguerre", "jacobi", "antisym", "antisym-sq", "dyson")
TOLERANCES = {"gaussian": 1e-8, "laguerre": 1e-6, "jacobi": 1e-6, "antisym": 1e-7,
              "antisym-sq": 1e-7, "dyson": 1e-6}


def density_function(kind: str, params: dict):
    """Scalar density x -> rho(x) for a kind and parameter dict."""
    al = float(params["alpha"])
    if kind == "gaussian":
        return lambda x: density_gaussian(al, x)
    if kind == "laguerre":
        a1 = float(params["alpha1"])
        return lambda x: density_laguerre(a1, al, x)
    if kind == "jacobi":
        a1, a2 = float(params["alpha1"]), float(params["alpha2"])
        return lambda x: density_jacobi(a1, a2, al, x)
    if kind == "antisym":
        return lambda x: density_antisym(al, x)
    if kind == "antisym-sq":
        return lambda x: density_antisym_sq(al, x)
    if kind == "dyson":
        return lambda y: dyson_dos(al, y)
    raise DomainError(f"unknown density kind {kind!r}; expected one of {KINDS}")


def _vectorize(fn, pmax, transform=None):
    powers = np.arange(pmax + 1)[:, None]

    def f(x):
        x = np.asarray(x, dtype=float)
        rho = np.array([fn(v) for v in x])
        base = x if transform is None else transform(x)
        return rho[None, :] * base[None, :] ** powers

    return f


def density_moments(kind: str, params: dict, pmax: int = 4, tol: float = ABS_TOL) -> QuadResult:
    """Quadrature of x^p rho(x), p = 0..pmax, over the full support.

    For the antisymmetric kinds the moments are in the squared variable
    y = x^2 (so that index p pairs with the squared-ensemble recurrence), and
    the logarithmic spike at y = 0 is integrated analytically below 1e-12.
    """
    fn = density_function(kind, params)
    al = float(params["alpha"])
    if kind == "gaussian":
        f = _vectorize(fn, pmax)
        end = truncation_point(f, 0.0, 0.5)
        res = integrate(f, -end, end, tol)
        return res
    if kind == "laguerre":
        f = _vectorize(fn, pmax)
        left = integrate_log_left(f, 1.0, tol)
        right = integrate(f, 1.0, truncation_point(f, 1.0, 2.0), tol)
        return QuadResult(left.value + right.value, left.error + right.error, left.evaluations + right.evaluations)
    if kind == "jacobi":
        f = _vectorize(fn, pmax)
        left = integrate_log_left(f, 0.5, tol)
        a1, a2 = float(params["alpha1"]), float(params["alpha2"])
        # right half in u = 1 - x via rho(1-u; a1, a2) = rho(u; a2, a1), so small u never rounds to x = 1
        g = _vectorize(lambda u: density_jacobi(a2, a1, al, u), pmax, transform=lambda u: 1.0 - u)
        right = integrate_log_left(g, 0.5, tol)
        return QuadResult(left.value + right.value, left.error + right.error, left.evaluations + right.evaluations)
    if kind in ("antisym", "antisym-sq", "dyson"):
        sq = density_function("dyson" if kind == "dyson" else "antisym-sq", params)
        delta = 1e-12
        f = _vectorize(sq, pmax)

        def g(s):
            y = np.exp(s)
            return f(y) * y

        mid = integrate(g, math.log(delta), 0.0, tol)
        right = integrate(f, 1.0, truncation_point(f, 1.0, 2.0), tol)
        tail = np.zeros(pmax + 1)
        if kind == "dyson":
            tail[0] = dyson_tail_mass(al, delta)
        else:
            tail = np.array([antisym_sq_tail_mass(al, delta, p) for p in range(pmax + 1)])
        return QuadResult(mid.value + right.value + tail, mid.error + right.error, mid.evaluations + right.evaluations)
    raise DomainError(f"unknown density kind {kind!r}")


def density_mass(kind: str, params: dict, tol: float = ABS_TOL) -> float:
    return float(density_moments(kind, params, 0, tol).value[0])


def density_curve(kind: str, params: dict, grid, with_mass: bool = True) -> DensityCurve:
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise DomainError("density grid must be strictly increasing")
    fn = density_function(kind, params)
    values = np.array([fn(x) for x in grid])
    mass = density_mass(kind, params) if with_mass else float("nan")
    return DensityCurve(kind, dict(params), grid, values, mass, TOLERANCES[kind])


def jacobi_wronskian(alpha1: float, alpha2: float, alpha: float, x: float, dps: int = 30):
    """(u'v - v'u, closed form) for the two local solutions behind the Jacobi density.

    u = 2F1(a, b; c; x), v = x^{1-c} 2F1(a-c+1, b-c+1; 2-c; x) with a = alpha,
    b = -(alpha + alpha1 + alpha2 + 1), c = -alpha1; the closed form is
    (c - 1) x^{-c} (1 - x)^{c-a-b-1}.  Derivatives use d/dx 2F1 = (ab/c) 2F1(+1).
    """
    with mp.workdps(dps):
        a, x = mp.mpf(alpha), mp.mpf(x)
        b = -(a + alpha1 + alpha2 + 1)
        c = -mp.mpf(alpha1)
        a2, b2, c2 = a - c + 1, b - c + 1, 2 - c
        f = gauss_2f1(a, b, c, x, dps).real
        fp = a * b / c * gauss_2f1(a + 1, b + 1, c + 1, x, dps).real
        g = gauss_2f1(a2, b2, c2, x, dps).real
        gp = a2 * b2 / c2 * gauss_2f1(a2 + 1, b2 + 1, c2 + 1, x, dps).real
        v = x ** (1 - c) * g
        vp = (1 - c) * x ** (-c) * g + x ** (1 - c) * gp
        lhs = fp * v - vp * f
        rhs = (c - 1) * x ** (-c) * (1 - x) ** (c - a - b - 1)
        return float(lhs), float(rhs)
