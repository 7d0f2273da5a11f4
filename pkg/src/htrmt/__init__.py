"""High-temperature beta ensembles: exact moment recurrences, limiting densities and tridiagonal sampling."""
from .errors import HtrmtError
from .exactnum import MultiPoly, Rational
from .recurrences import EnsembleParams, Family, covariances, moments0, moments1

__version__ = "0.1.0"
__all__ = ["HtrmtError", "MultiPoly", "Rational", "EnsembleParams", "Family", "covariances",
           "moments0", "moments1", "__version__"]
