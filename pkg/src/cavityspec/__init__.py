"""Eigenvalue problems for oscillators and free particles behind Robin walls."""

from .errors import (
    AccuracyError,
    BranchLostError,
    CavitySpecError,
    ConfigError,
    DataError,
    DomainError,
    RangeError,
)
from .models import EigenState, RobinParam, Spectrum, spectrum, wavefunction
from .observables import uncertainty_check

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BranchLostError",
    "CavitySpecError",
    "ConfigError",
    "DataError",
    "DomainError",
    "EigenState",
    "RangeError",
    "RobinParam",
    "Spectrum",
    "spectrum",
    "uncertainty_check",
    "wavefunction",
    "__version__",
]
