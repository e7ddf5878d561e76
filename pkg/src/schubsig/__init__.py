"""Schubert calculus for middle-cohomology signatures of G/P and Picard-rank bounds."""

from .cohomology import SpaceModel, build_space, middle_analysis, sets_T_U
from .errors import (
    ApplicabilityError,
    ConfigurationError,
    ParityError,
    ResourceError,
    SchubsigError,
    ValidationError,
)
from .rootsys import build_root_system, coset_reps, is_cominuscule

__all__ = [
    "ApplicabilityError",
    "ConfigurationError",
    "ParityError",
    "ResourceError",
    "SchubsigError",
    "SpaceModel",
    "ValidationError",
    "build_root_system",
    "build_space",
    "coset_reps",
    "is_cominuscule",
    "middle_analysis",
    "sets_T_U",
]
