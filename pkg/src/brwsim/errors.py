"""Exception hierarchy shared across the package.

The CLI maps ValidationError to exit code 1 and SolverError to exit code 2.
"""


class BrwsimError(Exception):
    """Base class for package errors."""


class ValidationError(BrwsimError, ValueError):
    """Bad user input: config values, out-of-window wavelengths, malformed grids."""


class SolverError(BrwsimError, RuntimeError):
    """Numerical failure: missing modes, clipped spectra, non-converged searches."""


class ModeNotFoundError(SolverError):
    """No guided mode of the requested class exists at the requested point."""


class NoBandgapModeError(ModeNotFoundError):
    """The cladding has no bandgap-confined solution in the searched interval."""
