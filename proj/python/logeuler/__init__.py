"""Pseudospectral toolkit for the log-regularized 2D Euler system.

The heavy lifting lives in the C++ extension ``logeuler._core``; this package
re-exports its API.
"""

from ._core import (  # noqa: F401
    FlowState,
    __version__,
    apply_multiplier,
    biot_savart_ratio,
    bump_blob_pair,
    dealias,
    dealias_cutoff,
    hm_exact_state,
    hm_separation_closed_form,
    integrate,
    lp_norm,
    multiplier_distance,
    multiplier_eval,
    random_band_field,
    rhs_tendency,
    run_experiment,
    sobolev_norm,
    spectral_derivative,
    step_rk4,
    to_physical,
    to_spectrum,
    velocity_from_vorticity,
    velocity_separation_hs,
)
