"""Biphoton SPDC state synthesis, chronocyclic Wigner functions and
pump-displacement HOM tomography."""

from ._core import (
    ConfigError,
    NumericError,
    arcmin_to_rad,
    canonical,
    component_overlap,
    f_minus,
    hom_coincidence,
    run_cli,
    tomography,
    validate,
    wigner,
    wigner_oracle,
)

__all__ = [
    "ConfigError",
    "NumericError",
    "arcmin_to_rad",
    "canonical",
    "component_overlap",
    "f_minus",
    "hom_coincidence",
    "run_cli",
    "tomography",
    "validate",
    "wigner",
    "wigner_oracle",
]
