"""Moment, covariance and 1/N-correction recurrences for the high-temperature
Gaussian, Laguerre and Jacobi ensembles.

Every routine is a bottom-up dynamic program written once and run over whichever
scalar ring the parameters live in: ``Fraction`` (fixed rational parameters),
``MultiPoly`` (symbolic alpha, alpha1, alpha2) or ``float``.

Index conventions: ``m0[p]`` is the p-th moment of the limiting density,
``mu[p][q]`` the limiting covariance of the p-th and q-th power sums,
``mu_diag[p]`` the anti-diagonal sum over p1 + q1 = p, and ``m1[p]`` the p-th
moment of the leading 1/N correction.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import SingularParameterError, UsageError
from .exactnum import MultiPoly, coerce, scalar_variant


class Family(str, enum.Enum):
    GAUSSIAN = "gaussian"
    LAGUERRE = "laguerre"
    JACOBI = "jacobi"
    JACOBI_SYMMETRIC = "jacobi-symmetric"
    ANTISYM_SQUARED = "antisym-squared"

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, cls):
            return name
        key = str(name).lower().replace("_", "-")
        aliases = {"jacobisymmetric": "jacobi-symmetric", "antisymsquared": "antisym-squared",
                   "antisym": "antisym-squared", "sym-jacobi": "jacobi-symmetric"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise UsageError(f"unknown family {name!r}") from None


_USES_A1 = {Family.LAGUERRE, Family.JACOBI, Family.JACOBI_SYMMETRIC, Family.ANTISYM_SQUARED}
_USES_A2 = {Family.JACOBI, Family.JACOBI_SYMMETRIC}


def _numeric(x):
    return None if isinstance(x, MultiPoly) else x


@dataclass(frozen=True)
class EnsembleParams:
    """Family plus (alpha, alpha1, alpha2), all in one scalar ring.

    For ``JACOBI_SYMMETRIC`` the common exponent a is stored in both alpha1 and
    alpha2; for ``ANTISYM_SQUARED`` alpha1 is pinned to -1.
    """

    family: Family
    alpha: object
    alpha1: object = None
    alpha2: object = None

    def __post_init__(self):
        fam = Family.parse(self.family)
        object.__setattr__(self, "family", fam)
        if fam is Family.GAUSSIAN and (self.alpha1 is not None or self.alpha2 is not None):
            raise UsageError("the Gaussian family takes no alpha1/alpha2")
        if fam is Family.LAGUERRE and self.alpha2 is not None:
            raise UsageError("the Laguerre family takes no alpha2")
        if fam is Family.ANTISYM_SQUARED:
            if self.alpha2 is not None:
                raise UsageError("the antisym-squared family takes no alpha2")
            if self.alpha1 is None:
                object.__setattr__(self, "alpha1", coerce(-1, scalar_variant(self.alpha)))
            elif self.alpha1 != -1:
                raise UsageError("antisym-squared pins alpha1 = -1")
        if fam in _USES_A1 and self.alpha1 is None:
            raise UsageError(f"{fam.value} needs alpha1")
        if fam in _USES_A2 and self.alpha2 is None:
            if fam is Family.JACOBI_SYMMETRIC:
                object.__setattr__(self, "alpha2", self.alpha1)
            else:
                raise UsageError(f"{fam.value} needs alpha2")
        if fam is Family.JACOBI_SYMMETRIC and self.alpha1 != self.alpha2:
            raise UsageError("jacobi-symmetric needs alpha1 == alpha2")
        variants = {scalar_variant(v) for v in (self.alpha, self.alpha1, self.alpha2) if v is not None}
        if len(variants) != 1:
            raise UsageError(f"parameters mix scalar variants {sorted(variants)}")
        if fam in (Family.JACOBI, Family.JACOBI_SYMMETRIC) and "poly" in variants:
            raise UsageError("Jacobi moments are rational functions; use the rational or float ring")
        a = _numeric(self.alpha)
        if a is not None and not a > -1:
            raise UsageError(f"alpha must exceed -1, got {a}")
        if fam is Family.LAGUERRE:
            # alpha1 = -1 is the antisymmetric closure point, still a valid moment sequence
            v = _numeric(self.alpha1)
            if v is not None and not v >= -1:
                raise UsageError(f"alpha1 must be >= -1, got {v}")
        if fam in (Family.JACOBI, Family.JACOBI_SYMMETRIC):
            for name in ("alpha1", "alpha2"):
                v = _numeric(getattr(self, name))
                if v is not None and not v > -1:
                    raise UsageError(f"{name} must exceed -1, got {v}")

    @property
    def ring(self) -> str:
        return scalar_variant(self.alpha)

    @classmethod
    def make(cls, family, alpha=None, alpha1=None, alpha2=None, ring="rational") -> "EnsembleParams":
        """Build parameters in ``ring``; in the poly ring a missing value becomes a symbol."""
        fam = Family.parse(family)

        def lift(value, name, needed):
            if not needed:
                if value is not None:
                    raise UsageError(f"{fam.value} takes no {name}")
                return None
            if value is None:
                if ring != "poly":
                    raise UsageError(f"{fam.value} needs {name} in the {ring} ring")
                return MultiPoly.var(name)
            return coerce(value, ring)

        if fam is Family.ANTISYM_SQUARED:
            if alpha1 is not None and coerce(alpha1, "rational" if ring != "float" else "float") != -1:
                raise UsageError("antisym-squared pins alpha1 = -1")
            return cls(fam, lift(alpha, "alpha", True), coerce(-1, ring))
        if fam is Family.JACOBI_SYMMETRIC:
            a = alpha1 if alpha1 is not None else alpha2
            a = lift(a, "alpha1", True)
            return cls(fam, lift(alpha, "alpha", True), a, a)
        return cls(fam, lift(alpha, "alpha", True), lift(alpha1, "alpha1", fam in _USES_A1),
                   lift(alpha2, "alpha2", fam in _USES_A2))

    def with_ring(self, ring: str) -> "EnsembleParams":
        if ring == self.ring:
            return self
        vals = [None if v is None else coerce(v, ring) for v in (self.alpha, self.alpha1, self.alpha2)]
        return EnsembleParams(self.family, *vals)

    def as_laguerre(self) -> "EnsembleParams":
        if self.family is Family.ANTISYM_SQUARED:
            return EnsembleParams(Family.LAGUERRE, self.alpha, self.alpha1)
        return self

    def to_dict(self) -> dict:
        from .exactnum import scalar_to_json

        out = {"family": self.family.value}
        for name in ("alpha", "alpha1", "alpha2"):
            v = getattr(self, name)
            if v is not None:
                out[name] = scalar_to_json(v)
        return out


@dataclass
class MomentSet:
    params: EnsembleParams
    order: int
    m0: list
    m1: Optional[list] = None


@dataclass
class CovTable:
    params: EnsembleParams
    pmax: int
    qmax: int
    mu: list
    mu_diag: list = field(default_factory=list)


def _zero(params):
    return coerce(0, params.ring)


def _one(params):
    return coerce(1, params.ring)


def _divide(num, den, p, what):
    if den == 0 or (isinstance(den, float) and abs(den) < 1e-300):
        raise SingularParameterError(
            f"{what}: denominator vanishes at p={p} for these parameters", index=p)
    return num / den


def _need(m0: MomentSet | list, order: int, what: str) -> list:
    m = m0.m0 if isinstance(m0, MomentSet) else m0
    if len(m) - 1 < order:
        raise UsageError(f"{what} needs moments to order {order}, got {len(m) - 1}")
    return m


# -- moments of the limiting density ----------------------------------------

def moments0(params: EnsembleParams, order: int, ring: str | None = None) -> MomentSet:
    if ring is not None:
        params = params.with_ring(ring)
    if order < 0:
        raise UsageError("order must be >= 0")
    fam = params.family
    if fam is Family.GAUSSIAN:
        m = _gaussian_m0(params, order)
    elif fam in (Family.LAGUERRE, Family.ANTISYM_SQUARED):
        m = _laguerre_m0(params, order)
    elif fam is Family.JACOBI:
        m = _jacobi_m0(params, order)
    else:
        m = _jacobi_symmetric_m0(params, order)
    return MomentSet(params, order, m)


def _gaussian_m0(params, order):
    al = params.alpha
    zero = _zero(params)
    m = [zero] * (order + 1)
    m[0] = _one(params)
    for p in range(0, order - 1, 2):
        acc = zero
        for s in range(p // 2 + 1):
            acc = acc + m[p - 2 * s] * m[2 * s]
        m[p + 2] = (p + 1) * m[p] + al * acc
    return m


def _laguerre_m0(params, order):
    al, a1 = params.alpha, params.alpha1
    m = [_one(params)]
    for p in range(order):
        acc = _zero(params)
        for s in range(p):
            acc = acc + m[s] * m[p - s]
        m.append((p + 1 + a1 + al) * m[p] + al * acc)
    return m


def _jacobi_m0(params, order):
    al, a1, a2 = params.alpha, params.alpha1, params.alpha2
    m = [_one(params)]
    partial = _zero(params)  # running sum of m[1..p-1]
    for p in range(1, order + 1):
        conv = _zero(params)
        for s in range(1, p):
            conv = conv + m[s] * m[p - s]
        num = (1 + a1 + al) - a2 * partial - al * conv
        m.append(_divide(num, p + 1 + a1 + a2 + 2 * al, p, "Jacobi moment recurrence"))
        partial = partial + m[p]
    return m


def _jacobi_symmetric_m0(params, order):
    al, a = params.alpha, params.alpha1
    zero = _zero(params)
    even = [_one(params)]
    partial = zero
    for p in range(1, order // 2 + 1):
        conv = zero
        for s in range(1, p):
            conv = conv + even[s] * even[p - s]
        num = (1 + al) - 2 * a * partial - al * conv
        even.append(_divide(num, 2 * p + 2 * al + 2 * a + 1, 2 * p, "symmetric Jacobi recurrence"))
        partial = partial + even[p]
    return [even[p // 2] if p % 2 == 0 else zero for p in range(order + 1)]


# -- covariances -------------------------------------------------------------

def covariances(params: EnsembleParams, pmax: int, qmax: int, m0: MomentSet | None = None) -> CovTable:
    """Table mu[p][q] for 0 <= p <= pmax, 0 <= q <= qmax.

    The recurrences run in p with q as a spectator, so symmetry in (p, q) is
    a property to check, not something enforced here.
    """
    fam = params.family
    if fam is Family.JACOBI_SYMMETRIC:
        raise UsageError("no covariance recurrence is available for the symmetric Jacobi family")
    if m0 is None:
        m0 = moments0(params, pmax + qmax)
    need = pmax + qmax if fam is not Family.GAUSSIAN else max(pmax + qmax - 2, 0)
    m = _need(m0, need, "covariances")
    zero = _zero(params)
    mu = [[zero] * (qmax + 1) for _ in range(pmax + 1)]
    al = params.alpha
    if fam is Family.GAUSSIAN:
        for p in range(1, pmax + 1):
            for q in range(1, qmax + 1):
                if (p - q) % 2:
                    continue
                acc = zero
                for s in range(0, (p - 2) // 2 + 1):
                    if p - 2 - 2 * s >= 0:
                        acc = acc + m[2 * s] * mu[p - 2 - 2 * s][q]
                prev = (p - 1) * mu[p - 2][q] if p >= 2 else zero
                mu[p][q] = prev + q * m[p + q - 2] + 2 * al * acc
    elif fam in (Family.LAGUERRE, Family.ANTISYM_SQUARED):
        a1 = params.alpha1
        for p in range(0, pmax):
            for q in range(1, qmax + 1):
                acc = zero
                for s in range(p):
                    acc = acc + m[s] * mu[p - s][q]
                mu[p + 1][q] = (p + 1 + a1) * mu[p][q] + q * m[p + q] + 2 * al * acc
    else:
        a1, a2 = params.alpha1, params.alpha2
        for p in range(1, pmax + 1):
            den = p + a1 + a2 + 2 * al + 1
            for q in range(1, qmax + 1):
                lin = zero
                conv = zero
                for s in range(1, p):
                    lin = lin + mu[s][q]
                    conv = conv + m[s] * mu[p - s][q]
                num = q * (m[q] - m[p + q]) - a2 * lin - 2 * al * conv
                mu[p][q] = _divide(num, den, p, "Jacobi covariance recurrence")
    return CovTable(params, pmax, qmax, mu)


def covariance_diagonal(params: EnsembleParams, pmax: int, m0: MomentSet | None = None) -> list:
    """Anti-diagonal sums mu_diag[p] = sum_{p1+q1=p} mu[p1][q1] from their own one-variable recurrence."""
    fam = params.family
    if fam is Family.JACOBI_SYMMETRIC:
        raise UsageError("no covariance recurrence is available for the symmetric Jacobi family")
    if m0 is None:
        m0 = moments0(params, pmax)
    zero = _zero(params)
    al = params.alpha
    t = [zero] * (pmax + 1)
    if fam is Family.GAUSSIAN:
        m = _need(m0, max(pmax - 2, 0), "covariance_diagonal")
        for p in range(0, pmax // 2):
            acc = zero
            for l in range(1, p + 1):
                acc = acc + t[2 * l] * m[2 * (p - l)]
            t[2 * p + 2] = (p + 1) * t[2 * p] + (2 * p + 1) * (p + 1) * m[2 * p] + 2 * al * acc
    elif fam in (Family.LAGUERRE, Family.ANTISYM_SQUARED):
        m = _need(m0, max(pmax - 1, 0), "covariance_diagonal")
        a1 = params.alpha1
        half = Fraction(1, 2) if params.ring != "float" else 0.5
        for p in range(0, pmax):
            acc = zero
            for s in range(1, p):
                acc = acc + t[s] * m[p - s]
            t[p + 1] = half * (p + 2 + 2 * a1 + 4 * al) * t[p] + (p * (p + 1) // 2) * m[p] + 2 * al * acc
    else:
        m = _need(m0, pmax, "covariance_diagonal")
        a1, a2 = params.alpha1, params.alpha2
        half = Fraction(1, 2) if params.ring != "float" else 0.5
        for p in range(1, pmax + 1):
            weighted = zero
            lin = zero
            conv = zero
            for s in range(1, p):
                weighted = weighted + s * m[s]
                lin = lin + t[s]
                conv = conv + t[s] * m[p - s]
            num = weighted - ((p - 1) * p // 2) * m[p] - a2 * lin - 2 * al * conv
            t[p] = _divide(num, a1 + a2 + 2 * al + 1 + half * p, p, "Jacobi diagonal covariance recurrence")
    return t


def moments1(params: EnsembleParams, order: int, m0: MomentSet | None = None,
             mu_diag: list | None = None) -> MomentSet:
    """Fill the 1/N-correction moments m1[0..order]."""
    fam = params.family
    if fam is Family.JACOBI_SYMMETRIC:
        raise UsageError("no 1/N correction recurrence is available for the symmetric Jacobi family")
    if m0 is None:
        m0 = moments0(params, order)
    m = _need(m0, order, "moments1")
    if mu_diag is None:
        mu_diag = covariance_diagonal(params, order, m0)
    if len(mu_diag) - 1 < order:
        raise UsageError(f"moments1 needs mu_diag to order {order}")
    t = mu_diag
    zero = _zero(params)
    al = params.alpha
    r = [zero] * (order + 1)
    if fam is Family.GAUSSIAN:
        for p in range(0, order // 2):
            acc = zero
            for s in range(p):
                acc = acc + m[2 * s] * r[2 * (p - s)]
            r[2 * p + 2] = (-al * (2 * p + 1) * m[2 * p] + (2 * p + 1) * r[2 * p] + al * t[2 * p]
                            + 2 * al * acc)
    elif fam in (Family.LAGUERRE, Family.ANTISYM_SQUARED):
        a1 = params.alpha1
        for p in range(0, order):
            # quadratic term pairs the correction with the leading moments
            acc = zero
            for l in range(1, p):
                acc = acc + r[l] * m[p - l]
            r[p + 1] = (-al * (p + 1) * m[p] + (p + 1 + a1 + 2 * al) * r[p] + al * t[p]
                        + 2 * al * acc)
    else:
        a1, a2 = params.alpha1, params.alpha2
        for p in range(1, order + 1):
            conv = zero
            lin = zero
            for s in range(1, p):
                conv = conv + r[s] * m[p - s]
                lin = lin + r[s]
            num = al * (p + 1) * m[p] - al * (t[p] + 1) - 2 * al * conv - a2 * lin
            r[p] = _divide(num, p + 1 + a1 + a2 + 2 * al, p, "Jacobi correction recurrence")
    out = m0 if isinstance(m0, MomentSet) else MomentSet(params, order, list(m))
    return MomentSet(out.params, order, list(out.m0[: order + 1]), r)


def compute_all(params: EnsembleParams, order: int, correction: bool = True) -> MomentSet:
    ms = moments0(params, order)
    if correction and params.family is not Family.JACOBI_SYMMETRIC:
        return moments1(params, order, ms)
    return ms


# -- relations and alternative forms ------------------------------------------

def dos_moments(order: int) -> list:
    """Density-of-states moments (squared variables) of the antisymmetric alpha-ensemble.

    w_l = d/d alpha (alpha * v_l) with v_l the alpha1 = -1 Laguerre moments.
    """
    params = EnsembleParams.make(Family.ANTISYM_SQUARED, ring="poly")
    v = moments0(params, order).m0
    a = MultiPoly.var("alpha")
    return [(a * vl).derivative("alpha") for vl in v]


def gaussian_moments_alt(order: int) -> list:
    """Gaussian moments from the reduced recurrence m_{2n} = (1 + alpha) * mt_n."""
    a = MultiPoly.var("alpha")
    one = MultiPoly.const(1)
    nmax = order // 2
    mt = [MultiPoly.zero(), one]
    for n in range(1, nmax):
        acc = MultiPoly.zero()
        for s in range(1, n):
            acc = acc + mt[n - s] * mt[s]
        mt.append((2 * n + 1 + 2 * a) * mt[n] + a * (1 + a) * acc)
    out = []
    for p in range(order + 1):
        if p == 0:
            out.append(one)
        elif p % 2:
            out.append(MultiPoly.zero())
        else:
            out.append((1 + a) * mt[p // 2])
    return out


def gaussian_reduced_moments(order_n: int) -> list:
    """The reduced polynomials mt_1..mt_n (index 0 unused, zero)."""
    a = MultiPoly.var("alpha")
    alt = gaussian_moments_alt(2 * order_n)
    return [MultiPoly.zero()] + [poly_exact_div(alt[2 * n], 1 + a) for n in range(1, order_n + 1)]


def poly_exact_div(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    q, r = p.divmod(d)
    if not r.is_zero():
        raise UsageError(f"{d} does not divide {p}")
    return q


def jacobi_moments_alt(order: int, params: EnsembleParams) -> list:
    """Jacobi moments from the rearranged (shifted-denominator) recurrences."""
    fam = params.family
    if fam not in (Family.JACOBI, Family.JACOBI_SYMMETRIC):
        raise UsageError("jacobi_moments_alt needs a Jacobi family")
    al, a1, a2 = params.alpha, params.alpha1, params.alpha2
    zero, one = _zero(params), _one(params)
    if fam is Family.JACOBI:
        m = [one]
        if order >= 1:
            m.append(_divide(1 + a1 + al, 2 + a1 + a2 + 2 * al, 1, "Jacobi recurrence"))
        for p in range(1, order):
            lead = zero
            for s in range(1, p + 1):
                lead = lead + m[s] * m[p + 1 - s]
            full = zero
            for s in range(0, p + 1):
                full = full + m[s] * m[p - s]
            num = (p + 1 + a1) * m[p] - al * lead + al * full
            m.append(_divide(num, p + 2 + a1 + a2 + 2 * al, p + 1, "Jacobi rearranged recurrence"))
        return m
    even = [one]
    for p in range(0, order // 2):
        lead = zero
        for s in range(1, p + 1):
            lead = lead + even[s] * even[p + 1 - s]
        full = zero
        for s in range(0, p + 1):
            full = full + even[s] * even[p - s]
        num = (2 * p + 1) * even[p] - al * lead + al * full
        even.append(_divide(num, 2 * p + 2 * al + 2 * a1 + 3, 2 * p + 2, "symmetric Jacobi rearranged recurrence"))
    return [even[p // 2] if p % 2 == 0 else zero for p in range(order + 1)]
