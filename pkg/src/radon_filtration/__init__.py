"""Exact spectral decomposition of subset and subspace lattices under Radon-type operators."""
from .closed_forms import (
    alpha_ladder,
    beta_ladder,
    dual_spherical,
    eigenvalue_closed_form,
    spherical_closed_form,
    spherical_table,
    theorem5_pairing,
)
from .counting import count_configurations, oracle_count
from .errors import InconsistencyError, LevelTooLargeError, ParameterError
from .operators import SubsetGeometry, SubspaceGeometry, make_geometry
from .qcombinatorics import binomial, gaussian_binomial, q_factorial, q_int
from .spectral_oracle import decompose_dual_level, decompose_level, spherical_from_projector
from .verify import run_suite

__all__ = [
    "InconsistencyError",
    "LevelTooLargeError",
    "ParameterError",
    "SubsetGeometry",
    "SubspaceGeometry",
    "alpha_ladder",
    "beta_ladder",
    "binomial",
    "count_configurations",
    "decompose_dual_level",
    "decompose_level",
    "dual_spherical",
    "eigenvalue_closed_form",
    "gaussian_binomial",
    "make_geometry",
    "oracle_count",
    "q_factorial",
    "q_int",
    "run_suite",
    "spherical_closed_form",
    "spherical_from_projector",
    "spherical_table",
    "theorem5_pairing",
]
