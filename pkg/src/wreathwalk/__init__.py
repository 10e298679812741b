"""Random walks on wreath products with exact word lengths."""

from ._kernel import BACKEND
from .base import FreeGroup, IntegerLattice, parse_base
from .errors import (
    ConfigError,
    DegenerateSampleError,
    InsufficientSamplesError,
    LemmaHypothesisError,
    ResourceGuardError,
    WreathWalkError,
)
from .lamps import FiniteLampGroup, FreeAbelianLamps, parse_lamp_group
from .walk import JobSpec, StepDistribution, batch, run_trajectory, sample_defect, sample_step, sample_tracking
from .wreath import WreathElement, WreathProduct, default_group

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConfigError",
    "DegenerateSampleError",
    "FiniteLampGroup",
    "FreeAbelianLamps",
    "FreeGroup",
    "InsufficientSamplesError",
    "IntegerLattice",
    "JobSpec",
    "LemmaHypothesisError",
    "ResourceGuardError",
    "StepDistribution",
    "WreathElement",
    "WreathProduct",
    "WreathWalkError",
    "batch",
    "default_group",
    "parse_base",
    "parse_lamp_group",
    "run_trajectory",
    "sample_defect",
    "sample_step",
    "sample_tracking",
]
