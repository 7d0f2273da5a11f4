"""Hypergeometric power series with automatic precision escalation.

The double-precision path sums in Python complex arithmetic.  While summing we
track the largest partial-sum magnitude; if it exceeds 1e6 times the final
magnitude the sum has lost more than six digits to cancellation and is redone
in mpmath at a working precision raised by the number of digits lost.
"""
from __future__ import annotations

import cmath
import math

import mpmath as mp

from ..errors import DomainError, PoleError, PrecisionError

CANCEL_LIMIT = 1e6
MAX_TERMS = 200_000
MAX_DPS = 4000


def _is_nonpos_int(v) -> int | None:
    """Return n if v == -n for an integer n >= 0, else None."""
    v = complex(v)
    if v.imag != 0 or v.real > 0.5:
        return None
    r = round(v.real)
    if r <= 0 and abs(v.real - r) == 0:
        return -r
    return None


def _check_poles(a_list, b_list):
    stop = None  # index where the series terminates naturally
    for a in a_list:
        n = _is_nonpos_int(a)
        if n is not None:
            stop = n if stop is None else min(stop, n)
    for b in b_list:
        n = _is_nonpos_int(b)
        if n is not None and (stop is None or stop >= n):
            raise PoleError(f"lower parameter {b} is a non-positive integer reached by the series")


def _sum_float(a_list, b_list, z):
    z = complex(z)
    term = 1 + 0j
    total = 1 + 0j
    peak = 1.0
    small = 0
    for k in range(MAX_TERMS):
        num = 1 + 0j
        for a in a_list:
            num *= a + k
        den = float(k + 1)
        for b in b_list:
            den *= b + k
        if num == 0:
            return total, peak
        ratio = num / den * z
        term *= ratio
        total += term
        at = abs(total)
        if not math.isfinite(at):
            return total, math.inf
        if at > peak:
            peak = at
        r = abs(ratio)
        if r < 1 and abs(term) * r <= 1e-17 * at * (1 - r):
            small += 1
            if small >= 2:
                return total, peak
        else:
            small = 0
    raise PrecisionError("hypergeometric series did not converge")


def _stop_index(a_list):
    stop = None
    for a in a_list:
        n = _is_nonpos_int(a)
        if n is not None:
            stop = n if stop is None else min(stop, n)
    return stop


def _sum_fixed(a_list, b_list, z, dps):
    """Real series in binary fixed point on Python ints (scale 2^prec).

    Returns (sum, peak) as mpf.  Much faster than term-by-term mpf arithmetic.
    """
    prec = int(dps * 3.33) + 24
    one = 1 << prec
    with mp.workprec(prec + 8):
        fa = [mp.mpf(a) for a in a_list]
        fb = [mp.mpf(b) for b in b_list]
        fz = mp.mpf(z)
        A = [int(mp.nint(a * one)) for a in fa]
        B = [int(mp.nint(b * one)) for b in fb]
        Z = int(mp.nint(fz * one))
    af = [float(a) for a in fa]
    bf = [float(b) for b in fb]
    zf = float(fz)
    shift = prec * (len(A) + 1 - len(B))
    stop = _stop_index(a_list)
    term = one
    total = one
    peak = one
    small = 0
    for k in range(MAX_TERMS):
        if stop is not None and k >= stop:
            break
        num = term * Z
        for a in A:
            num *= a + k * one
        den = k + 1
        for b in B:
            den *= b + k * one
        if shift >= 0:
            den <<= shift
        else:
            num <<= -shift
        term = num // den if (num >= 0) == (den > 0) else -((-num) // den) if den > 0 else num // den
        total += term
        at = abs(total)
        if at > peak:
            peak = at
        r = abs(zf / (k + 1))
        for a in af:
            r *= abs(a + k)
        for b in bf:
            r /= abs(b + k) if b + k != 0 else 1e-300
        if r < 1 and at > 0:
            tb = abs(term).bit_length()
            bound = tb + math.log2(max(r, 1e-300) / (1 - r))
            if term == 0 or bound < at.bit_length() - (prec - 16):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
        else:
            small = 0
    else:
        raise PrecisionError("hypergeometric series did not converge")
    with mp.workprec(prec + 8):
        return mp.mpf(total) / one, mp.mpf(peak) / one


def _sum_mp(a_list, b_list, z, dps):
    if all(complex(v).imag == 0 for v in (*a_list, *b_list, z)):
        return _sum_fixed([complex(v).real if not isinstance(v, mp.mpf) else v for v in a_list],
                          [complex(v).real if not isinstance(v, mp.mpf) else v for v in b_list],
                          z if isinstance(z, mp.mpf) else complex(z).real, dps)
    with mp.workdps(dps):
        a_list = [mp.mpmathify(a) for a in a_list]
        b_list = [mp.mpmathify(b) for b in b_list]
        z = mp.mpmathify(z)
        eps = mp.mpf(10) ** (-dps - 2)
        term = mp.mpf(1)
        total = mp.mpf(1)
        peak = mp.mpf(1)
        small = 0
        for k in range(MAX_TERMS):
            num = mp.mpf(1)
            for a in a_list:
                num *= a + k
            if num == 0:
                return total, peak
            den = mp.mpf(k + 1)
            for b in b_list:
                den *= b + k
            ratio = num / den * z
            term *= ratio
            total += term
            at = abs(total)
            if at > peak:
                peak = at
            r = abs(ratio)
            if r < 1 and abs(term) * r <= eps * at * (1 - r):
                small += 1
                if small >= 2:
                    return total, peak
            else:
                small = 0
    raise PrecisionError("hypergeometric series did not converge")


def hyp_pfq(a_list, b_list, z, dps: int | None = None):
    """Sum pFq(a; b; z) by its power series.

    With ``dps=None`` the double-precision path is tried first and a Python
    ``complex`` is returned.  With an explicit ``dps`` the sum is done in
    mpmath at no less than that many digits and an ``mpc`` is returned.
    Either path escalates precision when the cancellation detector fires.
    """
    _check_poles(a_list, b_list)
    if dps is None:
        total, peak = _sum_float(a_list, b_list, z)
        at = abs(total)
        if math.isfinite(peak) and at > 0 and peak <= CANCEL_LIMIT * at:
            return total
        lost = 0 if not math.isfinite(peak) or at == 0 else math.log10(peak / at)
        work = 16 + int(lost) + 10
        return complex(_escalate(a_list, b_list, z, work))
    return _escalate(a_list, b_list, z, dps)


def _escalate(a_list, b_list, z, dps):
    work = dps
    while True:
        total, peak = _sum_mp(a_list, b_list, z, work)
        at = abs(total)
        if at > 0 and peak <= CANCEL_LIMIT * at:
            return mp.mpc(total)
        if at > 0:
            lost = float(mp.log10(peak / at))
            need = dps + int(lost) + 10
        else:
            need = 2 * work
        if need <= work:
            return mp.mpc(total)
        if need > MAX_DPS:
            if at == 0:
                return mp.mpc(0)
            raise PrecisionError(f"series needs more than {MAX_DPS} digits")
        work = need


def gauss_2f1(a, b, c, z, dps: int | None = None):
    """Gauss hypergeometric function inside the unit disc."""
    if abs(complex(z)) >= 1:
        raise DomainError(f"2F1 series needs |z| < 1, got {z}")
    return hyp_pfq([a, b], [c], z, dps)


def kummer_1f1(a, b, z, dps: int | None = None):
    """Confluent hypergeometric function M(a, b, z).

    For negative real z the Kummer transform M(a,b,z) = e^z M(b-a,b,-z) is
    applied first so the summed series has no alternating cancellation.
    """
    zc = complex(z)
    if zc.imag == 0 and zc.real < 0:
        _check_poles([a], [b])
        if dps is None:
            inner = hyp_pfq([b - a], [b], -zc.real)
            if zc.real > -700:
                return cmath.exp(zc.real) * inner
            return complex(mp.exp(zc.real) * mp.mpc(inner))
        with mp.workdps(dps + 10):
            am, bm, zm = mp.mpmathify(a), mp.mpmathify(b), mp.mpmathify(z).real
            inner = hyp_pfq([bm - am], [bm], -zm, dps)
            return mp.exp(zm) * inner
    return hyp_pfq([a], [b], z, dps)
