"""Refractive-index model for Al(x)Ga(1-x)As layers and the fiber mode.

The ternary index follows the Gehrsitz parametrization (a modified
Sellmeier form in reciprocal wavelength with a temperature-dependent
band-edge oscillator, an effective UV oscillator and two phonon terms).
Wavelengths are in micrometres throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import tanh

import numpy as np

from .errors import ValidationError

#: Supported vacuum-wavelength window (um).  Wide enough to cover the pump
#: and the full down-conversion band sampled by the default joint-spectrum grid.
WAVELENGTH_WINDOW_UM = (0.75, 1.85)

_EV_PER_INV_UM = 1.239841984  # photon energy (eV) at 1 um


@dataclass(frozen=True)
class MaterialModel:
    """AlGaAs dispersion model evaluated at a fixed temperature."""

    name: str = "gehrsitz-algaas"
    temperature_k: float = 295.0

    def _band_edge_inv_um(self, x: float) -> float:
        """Direct-gap oscillator energy E1 in reciprocal micrometres."""
        T = self.temperature_k
        return (1.225316977778989
                + 0.023083578135884 * (1.0 - 1.0 / tanh(92.255357763322920 / T))
                + 0.029810239269821 * (1.0 - 1.0 / tanh(194.9547182923050 / T))
                + 1.1308 * x + 0.1436 * x * x)

    def is_transparent(self, x: float, wavelength_um) -> np.ndarray | bool:
        """True where the photon energy lies below the band-edge oscillator."""
        return 1.0 / np.asarray(wavelength_um, dtype=float) < self._band_edge_inv_um(x)

    def refractive_index(self, x: float, wavelength_um):
        """Real refractive index of Al(x)Ga(1-x)As.

        Parameters
        ----------
        x : Al mole fraction, 0 <= x <= 1.
        wavelength_um : scalar or array, inside `WAVELENGTH_WINDOW_UM`.
        """
        if not 0.0 <= x <= 1.0:
            raise ValidationError(f"Al fraction x={x} outside [0, 1]")
        lam = np.asarray(wavelength_um, dtype=float)
        lo, hi = WAVELENGTH_WINDOW_UM
        if np.any(lam < lo) or np.any(lam > hi):
            bad = lam[(lam < lo) | (lam > hi)]
            raise ValidationError(
                f"wavelength {np.atleast_1d(bad)[0]:.6g} um outside supported window "
                f"[{lo}, {hi}] um")
        T = self.temperature_k
        E2 = (1.0 / lam) ** 2
        A = (5.9613 + 7.178e-4 * T - 0.953e-6 * T * T
             - 16.159 * x + 43.511 * x**2 - 71.317 * x**3
             + 57.535 * x**4 - 17.451 * x**5)
        C1 = 1.0 / (50.535 - 150.7 * x - 62.209 * x**2 + 797.16 * x**3
                    - 1125.0 * x**4 + 503.79 * x**5)
        E1 = self._band_edge_inv_um(x)
        C0 = 21.5647 + 113.74 * x - 122.5 * x**2 + 108.401 * x**3 - 47.318 * x**4
        E0sq = 4.7171 - 3.237e-4 * T - 1.358e-6 * T * T + 11.006 * x - 3.08 * x**2
        n2 = (A + C1 / (E1 * E1 - E2) + C0 / (E0sq - E2)
              + (1.0 - x) * 1.55e-3 / (0.724e-3 - E2)
              + x * 2.61e-3 / (1.331e-3 - E2))
        n = np.sqrt(n2)
        return float(n) if np.isscalar(wavelength_um) else n


DEFAULT_MODEL = MaterialModel()


def refractive_index(x: float, wavelength_um, temperature_k: float = 295.0):
    """Al(x)Ga(1-x)As refractive index; convenience wrapper around MaterialModel."""
    if temperature_k == DEFAULT_MODEL.temperature_k:
        return DEFAULT_MODEL.refractive_index(x, wavelength_um)
    return MaterialModel(temperature_k=temperature_k).refractive_index(x, wavelength_um)


@dataclass(frozen=True)
class FiberMode:
    """Fundamental fiber mode approximated as a circular Gaussian.

    `mfd_um` is the mode-field diameter (1/e^2 intensity); `wavelength_um`
    is the design wavelength of that MFD and is carried for bookkeeping only.
    """

    mfd_um: float = 10.4
    wavelength_um: float = 1.55

    def __post_init__(self):
        if self.mfd_um <= 0:
            raise ValidationError(f"fiber mode-field diameter {self.mfd_um} um must be > 0")

    @property
    def waist_um(self) -> float:
        return 0.5 * self.mfd_um

    def profile_1d(self, grid_um: np.ndarray) -> np.ndarray:
        """1-D Gaussian factor, unit-normalized in the continuum limit.

        The 2-D mode is the product of the two 1-D factors, so
        integral(|U0|^2) = 1 over the transverse plane.
        """
        w = self.waist_um
        return (2.0 / (np.pi * w * w)) ** 0.25 * np.exp(-(grid_um / w) ** 2)


def fiber_fundamental_profile(fiber: FiberMode, x_um: np.ndarray, y_um: np.ndarray) -> np.ndarray:
    """Sampled 2-D fiber mode U0(x, y) on the tensor grid, renormalized to the grid."""
    gx = fiber.profile_1d(np.asarray(x_um, dtype=float))
    gy = fiber.profile_1d(np.asarray(y_um, dtype=float))
    u = np.outer(gy, gx)
    norm = np.trapezoid(np.trapezoid(u * u, x_um, axis=1), y_um)
    return u / np.sqrt(norm)


def gaussian_overlap_efficiency(mfd1_um: float, mfd2_um: float) -> float:
    """Closed-form power coupling between two aligned circular Gaussians."""
    w1, w2 = 0.5 * mfd1_um, 0.5 * mfd2_um
    return (2.0 * w1 * w2 / (w1 * w1 + w2 * w2)) ** 2
