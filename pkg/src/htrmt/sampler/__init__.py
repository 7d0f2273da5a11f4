"""Random tridiagonal models, Sturm-sequence eigenvalue counts and Monte Carlo aggregation."""
from .compare import antisym_bin_masses, antisym_panel, l1_binned, l1_two_sample
from .gamma import gamma_variates, sample_gamma
from .rng import trial_stream
from .sturm import bin_spectrum, gershgorin_bound, spectrum, sturm_counts, sturm_histogram
from .trials import Histogram, MomentEstimate, default_edges, empirical_moments, jackknife, run_trials
from .tridiag import ModelKind, TridiagModel, build_batch, build_tridiag

__all__ = [name for name in dir() if not name.startswith("_")]
