"""Exact reconstruction of orbifold atlases of R^2/G from quotient models."""

__version__ = "0.1.0"

from .atlas import (
    AtlasDescriptor,
    Chart,
    OrbifoldInputModel,
    classify_isotropy,
    reconstruct_atlas,
    recover_order,
    round_trip,
)
from .grouprec import (
    GroupPresentation,
    LocalSingularityDescriptor,
    classify_finite_group,
    hnd_general,
    hnd_local_presentation,
    todd_coxeter,
)
from .localalg import INFINITE, milnor_codimension, quotient_dimension_truncated
from .poly import Poly, Ring, compose_truncate, parse_poly
from .quotients import IsotropyGroupKind, invariant_generators, make_group, semialgebraic_model, stratify
from .strata import StratifiedModel, Stratum, point_class, validate
