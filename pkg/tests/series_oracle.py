"""Independent oracle: solve the loop equations as truncated power series.

Nothing here uses the package recurrences.  The one-point function
W(x) = sum_p m_p x^{-p-1} is found order by order from the first loop
equation; the two-point function W2(x1, x2) = sum mu_{(p,q)} x1^{-p-1} x2^{-q-1}
from the linear equation it satisfies (a dense rational linear solve); the 1/N
term from the corrected one-point equation.  Series live in t_i = 1/x_i.
"""
from __future__ import annotations

from fractions import Fraction as Fr

D = 16  # total-degree truncation, reset per oracle call


class S:
    """Truncated bivariate series in (t1, t2) over Fractions."""

    def __init__(self, d=None):
        self.d = {k: v for k, v in (d or {}).items() if v != 0 and k[0] + k[1] <= D}

    def __add__(self, o):
        o = o if isinstance(o, S) else S({(0, 0): Fr(o)})
        r = dict(self.d)
        for k, v in o.d.items():
            r[k] = r.get(k, 0) + v
        return S(r)

    __radd__ = __add__

    def __neg__(self):
        return S({k: -v for k, v in self.d.items()})

    def __sub__(self, o):
        return self + (-o if isinstance(o, S) else -Fr(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, S):
            return S({k: v * o for k, v in self.d.items()})
        r = {}
        for (i, j), v in self.d.items():
            for (k, l), w in o.d.items():
                if i + j + k + l <= D:
                    r[(i + k, j + l)] = r.get((i + k, j + l), 0) + v * w
        return S(r)

    __rmul__ = __mul__

    def c(self, i, j=0):
        return self.d.get((i, j), Fr(0))


def t1():
    return S({(1, 0): Fr(1)})


def dx1(s):
    # d/dx1 of t1^i = -i t1^{i+1}
    return S({(i + 1, j): -i * v for (i, j), v in s.d.items() if i > 0})


def dx2(s):
    return S({(i, j + 1): -j * v for (i, j), v in s.d.items() if j > 0})


def x1_times(s):
    return S({(i - 1, j): v for (i, j), v in s.d.items()})


def geometric():
    """1/(1 - t1) = x1/(x1 - 1)."""
    return S({(i, 0): Fr(1) for i in range(D + 1)})


def one_point(m, which=1, shift=1):
    return S({((p + shift, 0) if which == 1 else (0, p + shift)): Fr(v) for p, v in enumerate(m)})


def divided_difference(m):
    """(W(x1) - W(x2)) / (x1 - x2) for W = sum m_p x^{-p-1}, as a series in t1, t2."""
    r = {}
    for p, v in enumerate(m):
        k = p + 1
        for j in range(k):
            key = (j + 1, k - j)
            r[key] = r.get(key, 0) - Fr(v)
    return S(r)


def _gauss_solve(A, b):
    n = len(A[0])
    M = [row[:] + [bb] for row, bb in zip(A, b)]
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            raise RuntimeError(f"underdetermined column {c}")
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bq for a, bq in zip(M[i], M[r])]
        r += 1
    for i in range(r, len(M)):
        if M[i][n] != 0:
            raise RuntimeError("inconsistent system")
    return [M[i][n] for i in range(n)]


def _solve_affine(resid, unknowns, keys):
    zero = {u: Fr(0) for u in unknowns}
    base = resid(zero)
    A = [[None] * len(unknowns) for _ in keys]
    for j, u in enumerate(unknowns):
        e = dict(zero)
        e[u] = Fr(1)
        r = resid(e)
        for i, k in enumerate(keys):
            A[i][j] = r.c(*k) - base.c(*k)
    return dict(zip(unknowns, _gauss_solve(A, [-base.c(*k) for k in keys])))


def _solve_one_point(F, n, start=0, lookahead=4):
    m = [] if start == 0 else [Fr(0)] * start
    for k in range(start, n + 1):
        def res(u):
            W = one_point(m + [u])
            return F(W, dx1(W))
        for key in range(0, k + lookahead + 1):
            r0, r1 = res(Fr(0)).c(key), res(Fr(1)).c(key)
            if r1 != r0:
                m.append(-r0 / (r1 - r0))
                break
        else:
            raise RuntimeError("no determining coefficient")
    return m


def _solve_two_point(F, pmax, lift):
    unknowns = [(p, q) for p in range(pmax + 1) for q in range(pmax + 1) if p + q <= pmax]
    keys = [(i, j) for i in range(pmax + lift + 1) for j in range(pmax + lift + 1) if i + j <= pmax + lift]

    def res(u):
        return F(S({(p + 1, q + 1): v for (p, q), v in u.items()}))

    return _solve_affine(res, unknowns, keys)


def solve(family: str, alpha, alpha1=None, alpha2=None, P: int = 6) -> dict:
    """Return m0 (order 2P+2), mu[(p,q)] (p+q <= P), mu_tilde (0..P) and m1 (0..P-1)."""
    global D
    D = 2 * P + 6
    al = Fr(alpha)
    a1 = None if alpha1 is None else Fr(alpha1)
    a2 = None if alpha2 is None else Fr(alpha2)
    T1 = t1()
    g = geometric()
    if family == "gaussian":
        F0 = lambda W, dW: (-dW) - x1_times(W) + 1 + al * W * W
        lift = 1
    elif family == "laguerre":
        F0 = lambda W, dW: (-dW) + a1 * T1 * W - W + T1 + al * W * W
        lift = 2
    elif family == "jacobi":
        F0 = lambda W, dW: ((-dW) + (a1 * T1 + a2 * T1 * g) * W - (1 + a1 + a2 + al) * T1 * T1 * g
                            + al * W * W)
        lift = 3
    else:
        raise ValueError(family)
    m = _solve_one_point(F0, 2 * P + 2)

    if family == "gaussian":
        F2 = lambda W2: (-dx1(W2)) - x1_times(W2) + dx2(divided_difference(m)) + 2 * al * one_point(m) * W2
    elif family == "laguerre":
        F2 = lambda W2: ((-dx1(W2)) + a1 * T1 * W2 - W2 + dx2(divided_difference(m) + T1 * one_point(m, 2))
                         + 2 * al * W2 * one_point(m))
    else:
        def F2(W2):
            w1b = one_point(m, 2)
            x2dw = S({(i, j - 1): v for (i, j), v in dx2(w1b).d.items()})
            return ((-dx1(W2)) + (a1 * T1 + a2 * T1 * g) * W2 + T1 * T1 * g * (w1b + x2dw)
                    + dx2(divided_difference(m) + T1 * w1b) + 2 * al * W2 * one_point(m))
    mu = _solve_two_point(F2, P, lift)
    tilde = [sum(mu[(a, k - a)] for a in range(k + 1)) for k in range(P + 1)]

    W2diag = S({(p + 2, 0): v for p, v in enumerate(tilde)})
    W0 = one_point(m)
    if family == "gaussian":
        F1 = lambda W, dW: al * dx1(W0) - dW - x1_times(W) + 2 * al * W0 * W + al * W2diag
    elif family == "laguerre":
        F1 = lambda W, dW: al * dx1(W0) - dW + a1 * T1 * W - W + al * W2diag + 2 * al * W0 * W
    else:
        F1 = lambda W, dW: (al * dx1(W0) - dW + (a1 * T1 + a2 * T1 * g) * W + al * T1 * T1 * g + al * W2diag
                            + 2 * al * W0 * W)
    m1 = _solve_one_point(F1, P - 1, start=1, lookahead=5)
    return {"m0": m, "mu": mu, "mu_tilde": tilde, "m1": m1}
