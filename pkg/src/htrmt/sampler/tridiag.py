"""Random tridiagonal models: the antisymmetric Gaussian beta- and alpha-ensembles
and Dyson's type-I disordered chain.

Only the positive superdiagonal is ever stored.  The antisymmetric matrix A with
that superdiagonal is similar (through i and a diagonal sign change) to the
real symmetric tridiagonal T with zero diagonal and the same off-diagonal, so
the eigenvalues of T are the imaginary parts of those of A.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..errors import UsageError
from .gamma import gamma_variates
from .rng import trial_stream


class ModelKind(str, enum.Enum):
    ANTISYM_BETA = "antisym-beta"
    ANTISYM_ALPHA = "antisym-alpha"
    DYSON = "dyson"

    @classmethod
    def parse(cls, name) -> "ModelKind":
        if isinstance(name, cls):
            return name
        key = str(name).lower().replace("_", "-")
        key = {"beta": "antisym-beta", "alpha": "antisym-alpha", "dyson-chain": "dyson"}.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise UsageError(f"unknown model {name!r}") from None


@dataclass(frozen=True)
class TridiagModel:
    """``size`` is the matrix dimension for the antisymmetric models and the
    number of masses N (dimension 2N-1) for the Dyson chain."""

    kind: ModelKind
    size: int
    alpha: float
    kappa: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind.parse(self.kind))
        if self.size < 1 or (self.kind is not ModelKind.DYSON and self.size < 2):
            raise UsageError("model size too small")
        if not self.alpha > 0:
            raise UsageError("alpha must be positive")
        if not self.kappa > 0:
            raise UsageError("kappa must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.size - 1 if self.kind is ModelKind.DYSON else self.size

    @property
    def pairs(self) -> int:
        return self.dim // 2

    @property
    def beta(self) -> float:
        """beta = 2 alpha / (number of eigenvalue pairs) for the beta-ensemble."""
        return 2.0 * self.alpha / max(self.pairs, 1)

    def shapes(self) -> np.ndarray:
        """Gamma shapes of the squared superdiagonal entries."""
        n = self.dim
        if self.kind is ModelKind.ANTISYM_BETA:
            j = np.arange(1, n)
            return self.beta * (n - j) / 4.0
        return np.full(n - 1, float(self.alpha))

    def scale(self) -> float:
        return 1.0 / self.kappa if self.kind is ModelKind.DYSON else 1.0

    def to_dict(self) -> dict:
        out = {"model": self.kind.value, "size": self.size, "dim": self.dim, "alpha": self.alpha}
        if self.kind is ModelKind.ANTISYM_BETA:
            out["beta"] = self.beta
        if self.kind is ModelKind.DYSON:
            out["kappa"] = self.kappa
            out["gamma_scale"] = 1.0 / self.kappa
        return out


def build_tridiag(model: TridiagModel, seed: int, trial: int = 0) -> np.ndarray:
    """The dim-1 positive superdiagonal entries for one trial."""
    rng = trial_stream(seed, trial)
    lam = gamma_variates(model.shapes(), rng) * model.scale()
    return np.sqrt(lam)


def build_batch(model: TridiagModel, seed: int, trials) -> np.ndarray:
    return np.stack([build_tridiag(model, seed, t) for t in trials])
