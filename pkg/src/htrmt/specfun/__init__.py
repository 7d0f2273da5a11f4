"""Special functions, limiting densities and asymptotic-limit checks."""
from .densities import (DensityCurve, KINDS, density_antisym, density_antisym_sq, density_curve,
                        density_function, density_gaussian, density_jacobi, density_laguerre,
                        density_mass, density_moments, digamma, dyson_constant, dyson_constant_integer,
                        dyson_dos, jacobi_wronskian, trigamma)
from .limits import (LimitReport, confluent_limit_error, limit_confluence, limit_semicircle,
                     limit_weak_disorder, semicircle, stieltjes_gaussian_series, stieltjes_jacobi_series,
                     weak_disorder_law)
from .pcf import gaussian_stieltjes, parabolic_cylinder_Dix
from .quadrature import QuadResult, integrate
from .series import gauss_2f1, hyp_pfq, kummer_1f1

__all__ = [name for name in dir() if not name.startswith("_")]
