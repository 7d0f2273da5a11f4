"""Parabolic cylinder function D_{-alpha}(z) on the imaginary axis z = i x."""
from __future__ import annotations

import math

import mpmath as mp
import numpy as np

from ..errors import DomainError
from .quadrature import integrate
from .series import kummer_1f1

# beyond this |x| the oscillating integrand loses too many digits in double precision
INTEGRAL_XMAX = 3.0


def _integral(alpha: float, x: float) -> complex:
    # D_{-a}(ix) = e^{x^2/4}/Gamma(a) * int_0^inf t^{a-1} exp(-i x t - t^2/2) dt
    tmax = 9.5  # e^{-t^2/2} < 1e-19 beyond
    if alpha < 1:
        # t = u^{1/a} removes the endpoint singularity: t^{a-1} dt = du / a
        umax = tmax**alpha

        def f(u):
            t = u ** (1.0 / alpha)
            w = np.exp(-0.5 * t * t) / alpha
            return np.vstack((w * np.cos(x * t), -w * np.sin(x * t)))

        res = integrate(f, 0.0, umax, tol=1e-13)
    else:
        def f(t):
            w = t ** (alpha - 1) * np.exp(-0.5 * t * t)
            return np.vstack((w * np.cos(x * t), -w * np.sin(x * t)))

        res = integrate(f, 0.0, tmax, tol=1e-13)
    re, im = res.value
    return complex(re, im) * math.exp(0.25 * x * x - math.lgamma(alpha))


def pcf_D_imag_mp(nu, x, dps: int = 30):
    """D_nu(i x) for any real nu, from the Kummer-transformed confluent series.

    With s = x^2/2,
    D_nu(ix) = 2^{nu/2} e^{-s/2} [ sqrt(pi)/Gamma((1-nu)/2) M((1+nu)/2, 1/2, s)
                                   - i x sqrt(2 pi)/Gamma(-nu/2) M(1+nu/2, 3/2, s) ],
    so both series have a positive argument.
    """
    with mp.workdps(dps):
        nu = mp.mpf(nu)
        x = mp.mpf(x)
        s = x * x / 2
        c0 = mp.sqrt(mp.pi) * mp.rgamma((1 - nu) / 2)
        c1 = -mp.sqrt(2 * mp.pi) * mp.rgamma(-nu / 2)
        m0 = kummer_1f1((1 + nu) / 2, mp.mpf(1) / 2, s, dps=dps).real
        m1 = kummer_1f1(1 + nu / 2, mp.mpf(3) / 2, s, dps=dps).real
        return mp.power(2, nu / 2) * mp.exp(-s / 2) * mp.mpc(c0 * m0, c1 * x * m1)


def parabolic_cylinder_Dix(alpha: float, x: float, method: str = "auto") -> complex:
    """D_{-alpha}(i x) for alpha > 0.

    ``method`` is "integral" (the defining real integral), "series" (confluent
    series) or "auto", which uses the integral for |x| <= 3 and the series
    beyond.
    """
    if not alpha > 0:
        raise DomainError("D_{-alpha}(ix) via its integral needs alpha > 0 (reflection is out of scope)")
    if method == "auto":
        method = "integral" if abs(x) <= INTEGRAL_XMAX else "series"
    if method == "integral":
        return _integral(float(alpha), float(x))
    if method == "series":
        return complex(pcf_D_imag_mp(-alpha, x))
    raise DomainError(f"unknown method {method!r}")


def gaussian_stieltjes(alpha: float, x: float, dps: int = 40) -> float:
    """W(x) = x/(2 alpha) - (1/alpha) d/dx log D_{-alpha}(ix) for real x off the support.

    Uses D'_nu(z) = (z/2) D_nu(z) - D_{nu+1}(z), which gives
    W(x) = x/alpha + (i/alpha) D_{1-alpha}(ix) / D_{-alpha}(ix).
    """
    with mp.workdps(dps):
        d0 = pcf_D_imag_mp(-alpha, x, dps)
        d1 = pcf_D_imag_mp(1 - mp.mpf(alpha), x, dps)
        w = mp.mpf(x) / alpha + mp.mpc(0, 1) / alpha * d1 / d0
        return float(w.real)
