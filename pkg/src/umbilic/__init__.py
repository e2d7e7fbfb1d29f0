"""Umbilical-type points of spacelike surfaces in 4-dimensional Lorentzian manifolds."""

from .catalog import catalog, get_entry, synthetic_weingarten
from .classify import (
    PointClassification,
    UmbilicalResult,
    classify_pair,
    classify_point,
    commutator,
    ortho_kappa,
    pseudo_ortho_joint_check,
    scan_normal_circle,
    umbilical_direction,
)
from .extrinsic import ExtrinsicState, WeingartenPair, extrinsic_state
from .frames import SurfaceModel, normal_frame_at, tangent_frame_at
from .geometry import SpacetimeModel, curvature_at, metric_at
from .pipeline import RunConfig, run

__all__ = [
    "ExtrinsicState", "PointClassification", "RunConfig", "SpacetimeModel", "SurfaceModel",
    "UmbilicalResult", "WeingartenPair", "catalog", "classify_pair", "classify_point",
    "commutator", "curvature_at", "extrinsic_state", "get_entry", "metric_at",
    "normal_frame_at", "ortho_kappa", "pseudo_ortho_joint_check", "run", "scan_normal_circle",
    "synthetic_weingarten", "tangent_frame_at", "umbilical_direction",
]
