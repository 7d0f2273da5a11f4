"""Asymptotic-limit verifiers and large-x series of the Stieltjes transforms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .densities import density_gaussian, density_jacobi, density_laguerre, dyson_dos
from .series import gauss_2f1, kummer_1f1


@dataclass
class LimitReport:
    name: str
    params: dict
    grid: np.ndarray
    scaled: np.ndarray
    limit: np.ndarray
    sup_norm: float
    max_rel_error: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "params": self.params, "sup_norm": self.sup_norm,
                "max_rel_error": self.max_rel_error, **self.extra}


def _report(name, params, grid, scaled, limit, **extra):
    diff = np.abs(scaled - limit)
    return LimitReport(name, params, grid, scaled, limit, float(diff.max()),
                       float((diff / np.abs(limit)).max()), extra)


def semicircle(y):
    """Unit-mass semicircle on |y| < 2, the large-alpha limit of the scaled Gaussian density."""
    y = np.asarray(y, dtype=float)
    return np.where(np.abs(y) < 2, np.sqrt(np.clip(4 - y * y, 0, None)) / (2 * math.pi), 0.0)


def limit_semicircle(alpha: float, ymax: float = 1.8, npts: int = 73) -> LimitReport:
    """sqrt(alpha) rho_G(sqrt(alpha) y) against the semicircle on |y| <= ymax."""
    grid = np.linspace(-ymax, ymax, npts)
    r = math.sqrt(alpha)
    scaled = np.array([r * density_gaussian(alpha, r * y) for y in grid])
    return _report("semicircle", {"alpha": alpha}, grid, scaled, semicircle(grid))


def weak_disorder_law(y, alpha: float, kappa: float):
    """(1/pi) (4 alpha y / kappa - y^2)^{-1/2} on 0 < y < 4 alpha / kappa (unit mass)."""
    y = np.asarray(y, dtype=float)
    return 1.0 / (math.pi * np.sqrt(4 * alpha * y / kappa - y * y))


def weak_disorder_law_printed(y, alpha: float, kappa: float):
    """The same limit with the exponent placement of the printed intermediate display."""
    y = np.asarray(y, dtype=float)
    return 1.0 / (math.pi * np.sqrt(4 * alpha * np.sqrt(y) / kappa - y))


def limit_weak_disorder(alpha: float, kappa: float, lo: float = 0.1, hi: float = 0.9,
                        npts: int = 17) -> LimitReport:
    """kappa mu(kappa y) against the weak-disorder law on the interior of its support."""
    top = 4 * alpha / kappa
    grid = np.linspace(lo * top, hi * top, npts)
    scaled = np.array([kappa * dyson_dos(alpha, kappa * y) for y in grid])
    printed = weak_disorder_law_printed(grid, alpha, kappa)
    rep = _report("weak-disorder", {"alpha": alpha, "kappa": kappa}, grid, scaled,
                  weak_disorder_law(grid, alpha, kappa), support_end=top)
    rep.extra["printed_form_max_rel_error"] = float((np.abs(scaled - printed) / printed).max())
    return rep


def limit_confluence(alpha1: float, alpha: float, alpha2: float = 1e4, lo: float = 0.1, hi: float = 5.0,
                     npts: int = 50) -> LimitReport:
    """rho_J(x/alpha2)/alpha2 against rho_L(x) on [lo, hi]."""
    grid = np.linspace(lo, hi, npts)
    scaled = np.array([density_jacobi(alpha1, alpha2, alpha, x / alpha2) / alpha2 for x in grid])
    limit = np.array([density_laguerre(alpha1, alpha, x) for x in grid])
    return _report("jacobi-laguerre", {"alpha1": alpha1, "alpha": alpha, "alpha2": alpha2}, grid, scaled, limit)


def confluent_limit_error(a: float, c: float, x: float, b: float) -> float:
    """|2F1(a, b; c; x/b) - 1F1(a; c; x)|, which should shrink like 1/b."""
    return abs(gauss_2f1(a, b, c, x / b, dps=30) - kummer_1f1(a, c, x, dps=30))


# -- large-x series ----------------------------------------------------------

def _log_series(coeffs):
    """Coefficients l_k of log(1 + sum_{k>=1} c_k w^k), from k l_k = k c_k - sum_j j l_j c_{k-j}."""
    n = len(coeffs)
    logs = [0.0] * n
    for k in range(1, n):
        acc = k * coeffs[k]
        for j in range(1, k):
            acc -= j * logs[j] * coeffs[k - j]
        logs[k] = acc / k
    return logs


def stieltjes_gaussian_series(alpha: float, order: int) -> list:
    """Coefficients of x^{-(2p+1)}, p = 0..order, in the large-x expansion of the Gaussian resolvent.

    W(x) = 1/x - (1/alpha) d/dx log(1 + sum_s (alpha)_{2s} / (s! (2x^2)^s)); with
    w = x^{-2} and log(...) = sum l_p w^p the x^{-(2p+1)} coefficient is 2 p l_p / alpha.
    """
    coeffs = [1.0]
    poch = 1.0
    fact = 1.0
    for s in range(1, order + 1):
        poch *= (alpha + 2 * s - 2) * (alpha + 2 * s - 1)
        fact *= s * 2.0
        coeffs.append(poch / fact)
    logs = _log_series(coeffs)
    return [1.0] + [2 * p * logs[p] / alpha for p in range(1, order + 1)]


def _hyp_coeffs(a, b, c, n):
    out = [1.0]
    for k in range(n):
        out.append(out[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    return out


def stieltjes_jacobi_series(alpha1: float, alpha2: float, alpha: float, order: int) -> list:
    """Moments m_0..m_order read off the large-x expansion of the Jacobi resolvent.

    W(x) = 1/x + r F(a+1, b+1; c+1; 1/x) / (x^2 F(a, b; c; 1/x)) with a = alpha,
    b = alpha + alpha1 + 1, c = 2 alpha + alpha1 + alpha2 + 2, r = b / c.
    """
    a, b, c = alpha, alpha + alpha1 + 1, 2 * alpha + alpha1 + alpha2 + 2
    num = _hyp_coeffs(a + 1, b + 1, c + 1, order)
    den = _hyp_coeffs(a, b, c, order)
    # series division q = num / den
    q = []
    for k in range(order):
        acc = num[k]
        for j in range(1, k + 1):
            acc -= den[j] * q[k - j]
        q.append(acc / den[0])
    r = b / c
    return [1.0] + [r * q[k] for k in range(order)]
