"""Rotation-boost and polar decompositions of Lorentz matrices."""

from .core import (
    ETA,
    MAX_SPEED,
    TOL_GROUP,
    TOL_RESIDUAL,
    BoostParameters,
    Classification,
    LorentzClass,
    as_rotation,
    boost_matrix,
    four_vector,
    frame_covector,
    hilbert_metric,
    lorentz_inverse,
    quadratic_form,
    rotation_embedding,
    validate_lorentz,
)
from .decompose import (
    CartanFactors,
    CartanOrder,
    VerificationReport,
    boost_rotation_decompose,
    extract_velocity,
    positive_definiteness_identity_check,
    random_lorentz,
    random_rotation,
    random_velocity,
    rotation_boost_decompose,
    verify_moretti,
)
from .errors import *  # noqa: F401,F403
from .polar import PolarFactors, PolarOrder, SymEig4, newton_polar, polar_decompose, sym_eig4

__version__ = "0.1.0"
