"""Published closed forms, transcribed as polynomials for the fixture checks.

Each table is built by polynomial arithmetic in the symbols alpha, alpha1,
alpha2 so it reads the same as the printed formula.
"""
from __future__ import annotations

import math

from .exactnum import MultiPoly

a = MultiPoly.var("alpha")
a1 = MultiPoly.var("alpha1")
a2 = MultiPoly.var("alpha2")
one = MultiPoly.const(1)


def _c(v):
    return MultiPoly.const(v)


# Gaussian: even moments m_{2p,0}, p = 1..4
GAUSSIAN_M0 = {
    2: 1 + a,
    4: 3 + 5 * a + 2 * a**2,
    6: 15 + 32 * a + 22 * a**2 + 5 * a**3,
    8: 105 + 260 * a + 234 * a**2 + 93 * a**3 + 14 * a**4,
}

# Gaussian 1/N corrections m_{2p,1}
GAUSSIAN_M1 = {
    2: -a,
    4: -5 * a * (a + 1),
    6: -2 * a * (16 + 27 * a + 11 * a**2),
}

# Gaussian anti-diagonal covariance sums
GAUSSIAN_MU_TILDE = {
    2: one,
    4: 8 * (a + 1),
    6: 3 * (a + 1) * (23 + 16 * a),
}


def gaussian_cov_row(p: int, q: int, m):
    """Covariance mu_{(p,q)} for p = 1..4 in terms of the moment list m (m[k] = m_{k,0})."""
    def mm(k):
        return m[k] if k >= 0 else 0 * one
    if p == 1:
        return q * mm(q - 1)
    if p == 2:
        return q * mm(q)
    if p == 3:
        return 2 * (1 + a) * q * mm(q - 1) + q * mm(q + 1)
    if p == 4:
        return (3 + 2 * a) * q * mm(q) + q * mm(q + 2)
    raise KeyError(p)


LAGUERRE_M0 = {
    1: 1 + a1 + a,
    2: (1 + a1 + a) * (2 * a + 2 + a1),
    3: (1 + a1 + a) * (6 + 11 * a + 5 * a**2 + 5 * (1 + a) * a1 + a1**2),
}

LAGUERRE_M1 = {
    1: -a,
    2: -a * ((4 + 3 * a1) + 4 * a),
    3: -a * ((17 + 21 * a1 + 6 * a1**2) + a * (33 + 21 * a1) + 16 * a**2),
}


def laguerre_cov_row(p: int, q: int, m, mu2=None, printed: bool = True):
    """Covariance mu_{(p,q)} for p = 1..3; p = 3 needs mu_{(2,q)}.

    The printed p = 3 row has 2 alpha (1 + alpha1 + 2 alpha) where the covariance
    recurrence at p = 2 gives 2 alpha m_{1,0} = 2 alpha (1 + alpha1 + alpha);
    ``printed=False`` returns the latter.
    """
    if p == 1:
        return q * m[q]
    if p == 2:
        return (2 + a1 + 2 * a) * q * m[q] + q * m[q + 1]
    if p == 3:
        lead = (1 + a1 + 2 * a) if printed else (1 + a1 + a)
        return (3 + a1 + 2 * a) * mu2 + 2 * a * lead * q * m[q] + q * m[q + 2]
    raise KeyError(p)


# Dyson chain: density-of-states moments in squared variables
DYSON_W = {
    1: 2 * a,
    2: 2 * a * (1 + 3 * a),
    3: 2 * a * (2 + 9 * a + 10 * a**2),
}


def jacobi_closed_forms(al, b1, b2):
    """m_{1,0}, m_{2,0}, m_{1,1}, m_{2,1}, mu_{(1,1)} at rational parameters."""
    s2 = 2 + 2 * al + b1 + b2
    s3 = 3 + 2 * al + b1 + b2
    m10 = (b1 + 1 + al) / s2
    m11 = -al * (b2 - b1) / s2**2
    core = (2 + b1) * (2 + b1 + b2) + al * (7 + 3 * b1 + 2 * b2) + 3 * al**2
    m20 = (1 + al + b1) * core / (s2**2 * s3)
    q1 = -(1 + al + b1) * s2 * s3 * (9 + 7 * al + 4 * b1 + 2 * b2)
    q2 = core * (13 + 21 * b1 + 2 * b2 + (6 * b1 - b2) * (b1 + b2) + al * (23 + 17 * b1 + 3 * b2)
                 + 10 * al**2)
    m21 = al * (q1 + q2) / (s2**3 * s3**2)
    mu11 = (1 + al + b1) * (1 + al + b2) * (2 + al + b1 + b2) / (s2**3 * s3)
    return {"m10": m10, "m20": m20, "m11": m11, "m21": m21, "mu11": mu11}


def dyson_constant_closed(alpha: int):
    """2 (pi^2/6 - sum_{l<alpha} 1/l^2) for integer alpha."""
    return 2 * (math.pi**2 / 6 - sum(1.0 / l**2 for l in range(1, alpha)))
