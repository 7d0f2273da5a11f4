"""Exact scalars: rationals and multivariate polynomials in (alpha, alpha1, alpha2).

``fractions.Fraction`` is the rational type.  ``MultiPoly`` is a sparse map from
exponent triples to Fraction coefficients, kept canonical (no zero entries) so
that equality is plain dict equality.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import UsageError

Rational = Fraction

VARS = ("alpha", "alpha1", "alpha2")
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_VAR_INDEX.update({"a": 0, "a1": 1, "a2": 2})

Exponents = tuple  # (e_alpha, e_alpha1, e_alpha2)


def as_rational(value) -> Fraction:
    """Parse ints, Fractions, and strings such as ``"3/7"``, ``"-1"`` or ``"0.25"``.

    Floats are refused so exact mode never touches binary rounding.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational: {value!r}") from exc
    raise UsageError(f"exact mode needs int/str/Fraction parameters, got {type(value).__name__}")


def rational_to_str(q: Fraction) -> str:
    """"p/q" in lowest terms, or just "p" for integers."""
    return str(q)


def rational_from_str(s: str) -> Fraction:
    return as_rational(s)


def _var_index(var) -> int:
    if isinstance(var, int) and 0 <= var < 3:
        return var
    try:
        return _VAR_INDEX[var]
    except KeyError:
        raise UsageError(f"unknown polynomial variable {var!r}; expected one of {VARS}") from None


class MultiPoly:
    """Polynomial in alpha, alpha1, alpha2 with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Union[Fraction, int]] | None = None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 3 or min(exps) < 0:
                raise UsageError(f"bad exponent triple {exps}")
            c = as_rational(coeff) + clean.get(exps, 0)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self._terms = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(0, 0, 0): as_rational(c)})

    @classmethod
    def var(cls, name) -> "MultiPoly":
        e = [0, 0, 0]
        e[_var_index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var) -> int:
        i = _var_index(var)
        return max((e[i] for e in self._terms), default=-1)

    def constant(self) -> Fraction:
        return self._terms.get((0, 0, 0), Fraction(0))

    # arithmetic
    @staticmethod
    def _coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero constant is exact in this ring
        if isinstance(other, MultiPoly):
            if other.degree() > 0:
                raise UsageError("MultiPoly division by a non-constant polynomial")
            other = other.constant()
        other = as_rational(other)
        if other == 0:
            raise ZeroDivisionError("MultiPoly division by zero")
        return self * (1 / other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError("MultiPoly power must be a non-negative int")
        out, base = MultiPoly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # evaluation and calculus
    def eval(self, at: Iterable) -> Fraction:
        return poly_eval(self, at)

    def derivative(self, var) -> "MultiPoly":
        return poly_derivative(self, var)

    def divmod(self, divisor: "MultiPoly"):
        return poly_divmod(self, divisor)

    def __call__(self, alpha=0, alpha1=0, alpha2=0):
        return poly_eval(self, (alpha, alpha1, alpha2))

    # presentation
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(VARS, exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def to_json(self) -> list:
        return [
            {"exponents": list(e), "coeff": rational_to_str(c)} for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, records) -> "MultiPoly":
        if isinstance(records, str):
            records = json.loads(records)
        return cls({tuple(r["exponents"]): rational_from_str(r["coeff"]) for r in records})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Parse the output of ``str()``: sums of ``c*alpha^k*alpha1^j`` monomials."""
        text = text.replace(" ", "").replace("-", "+-")
        out = cls()
        for chunk in filter(None, text.split("+")):
            sign = -1 if chunk.startswith("-") else 1
            chunk = chunk.lstrip("-")
            coeff, exps = Fraction(sign), [0, 0, 0]
            for factor in chunk.split("*"):
                m = re.fullmatch(r"(alpha[12]?)(?:\^(\d+))?", factor)
                if m:
                    exps[_var_index(m.group(1))] += int(m.group(2) or 1)
                else:
                    coeff *= as_rational(factor)
            out = out + cls({tuple(exps): coeff})
        return out


def poly_eval(p: MultiPoly, at) -> Fraction:
    """Exact evaluation at (alpha, alpha1, alpha2), Horner-style in alpha."""
    a, a1, a2 = (as_rational(v) if not isinstance(v, float) else v for v in at)
    if not p._terms:
        return Fraction(0)
    # group by (e_alpha1, e_alpha2), then Horner in alpha
    groups: dict = {}
    for (e0, e1, e2), c in p._terms.items():
        groups.setdefault((e1, e2), {})[e0] = c
    total = 0
    for (e1, e2), coeffs in groups.items():
        acc = 0
        for k in range(max(coeffs), -1, -1):
            acc = acc * a + coeffs.get(k, 0)
        total += acc * a1**e1 * a2**e2
    return total


def poly_derivative(p: MultiPoly, var) -> MultiPoly:
    i = _var_index(var)
    out = {}
    for exps, c in p._terms.items():
        if exps[i]:
            e = list(exps)
            e[i] -= 1
            out[tuple(e)] = c * exps[i]
    return MultiPoly(out)


def _lead(p: MultiPoly):
    # lex order alpha > alpha1 > alpha2
    e = max(p._terms)
    return e, p._terms[e]


def poly_divmod(p: MultiPoly, d: MultiPoly):
    """Multivariate division with lex order; returns (quotient, remainder)."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    de, dc = _lead(d)
    q, r, rest = MultiPoly(), MultiPoly(), p
    while not rest.is_zero():
        e, c = _lead(rest)
        if all(x >= y for x, y in zip(e, de)):
            t = MultiPoly({tuple(x - y for x, y in zip(e, de)): c / dc})
            q = q + t
            rest = rest - t * d
        else:
            lt = MultiPoly({e: c})
            r = r + lt
            rest = rest - lt
    return q, r


# -- ring dispatch -----------------------------------------------------------

RING_NAMES = ("rational", "poly", "float")


def scalar_variant(x) -> str:
    if isinstance(x, MultiPoly):
        return "poly"
    if isinstance(x, float):
        return "float"
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return "rational"
    raise UsageError(f"not a Scalar: {type(x).__name__}")


def _check_same(a, b):
    va, vb = scalar_variant(a), scalar_variant(b)
    if va != vb:
        raise UsageError(f"scalar variant mismatch: {va} vs {vb}")


def ring_add(a, b):
    _check_same(a, b)
    return a + b


def ring_mul(a, b):
    _check_same(a, b)
    return a * b


def ring_neg(a):
    scalar_variant(a)
    return -a


def coerce(value, ring: str):
    """Lift a parameter or integer constant into the named ring."""
    if ring == "float":
        if isinstance(value, MultiPoly):
            raise UsageError("cannot coerce a polynomial to float")
        return float(value)
    if ring == "rational":
        if isinstance(value, MultiPoly):
            if value.degree() > 0:
                raise UsageError("symbolic parameter in rational ring")
            return value.constant()
        return as_rational(value)
    if ring == "poly":
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.const(as_rational(value))
    raise UsageError(f"unknown ring {ring!r}; expected one of {RING_NAMES}")


def scalar_to_json(x):
    """Exact entries become strings; floats stay numbers (shortest round-trip repr)."""
    if isinstance(x, MultiPoly):
        return x.to_json()
    if isinstance(x, Fraction):
        return rational_to_str(x)
    if isinstance(x, int):
        return rational_to_str(Fraction(x))
    return float(x)


def scalar_to_text(x) -> str:
    if isinstance(x, MultiPoly):
        return str(x)
    if isinstance(x, Fraction):
        return rational_to_str(x)
    return repr(float(x))
