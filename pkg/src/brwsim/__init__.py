"""Simulation of type-II SPDC in AlGaAs Bragg reflection waveguides.

Pipeline: material dispersion -> guided-mode solving (transfer matrix +
effective-index method) -> propagation-constant tables -> joint spectral
amplitude -> per-WDM-channel polarization-entanglement metrics, plus a
genetic-algorithm design search and a CLI front end.
"""

from .errors import (BrwsimError, ModeNotFoundError, NoBandgapModeError,
                     SolverError, ValidationError)

__version__ = "0.1.0"

__all__ = [
    "BrwsimError",
    "ValidationError",
    "SolverError",
    "ModeNotFoundError",
    "NoBandgapModeError",
    "__version__",
]
