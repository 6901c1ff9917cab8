"""Numerical laboratory for eigenfunction concentration on model surfaces.

The library computes Kakeya-Nikodym tube masses, geodesic restriction
norms, spectral-window operator norms, and nodal-set lengths for explicit
Laplace eigenfunctions on four model surfaces, and numerically certifies
the comparison-geometry facts (cone-into-tube containment, deck counting,
escape times) that drive the corresponding concentration estimates.
"""

__version__ = "0.1.0"

from .deckgroup import (annulus_counts, ball_count, bolza_generators,
                        displacement, enumerate_group)
from .eigenbasis import (highest_weight, make_quasimode, parse_mode,
                         serialize_mode, sphere_harmonic, torus_wave, zonal)
from .experiments import ExperimentConfig, fit_scaling, load_config, run_experiment
from .manifolds import ManifoldModel, distance, distance_to_geodesic, segment
from .norms_nodal import (hezari_sogge_ratio, holder_chain, lp_norm,
                          nodal_length, norm_report)
from .spectral import (spectral_filter, window_gram, window_gram_norm,
                       window_spectrum)
from .toponogov import (cone_half_angle, cone_spec, hinge_comparison,
                        verify_cone_containment)
from .tubes import (default_family, escape_time, kn_norm, restriction_mass,
                    tube, tube_mass)

__all__ = [
    "ManifoldModel", "annulus_counts", "ball_count", "bolza_generators",
    "cone_half_angle", "cone_spec", "default_family", "displacement",
    "distance", "distance_to_geodesic", "enumerate_group", "escape_time",
    "ExperimentConfig", "fit_scaling", "hezari_sogge_ratio", "highest_weight",
    "hinge_comparison", "holder_chain", "kn_norm", "load_config", "lp_norm",
    "make_quasimode", "nodal_length", "norm_report", "parse_mode",
    "restriction_mass", "run_experiment", "segment", "serialize_mode",
    "spectral_filter", "sphere_harmonic", "torus_wave", "tube", "tube_mass",
    "verify_cone_containment", "window_gram", "window_gram_norm",
    "window_spectrum", "zonal",
]
