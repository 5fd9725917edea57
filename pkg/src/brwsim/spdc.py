"""Joint spectral amplitude, nonlinear coupling and emission figures.

Conventions: sinc(x) = sin(x)/x; the joint amplitude is
Phi(Omega) = sinc(dk(Omega) L/2) exp(i s_k(Omega) L/2) on a uniform detuning
grid symmetric about zero.  SI units internally (rad/s, rad/m, m); spatial
profiles live on micrometre grids and overlaps are converted at the sigma
boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .dispersion import PhaseMismatch
from .errors import SolverError, ValidationError
from .materials import FiberMode
from .modesolver import ModeProfile2D

C_M_PER_S = 299792458.0
HBAR_J_S = 1.054571817e-34
EPS0_F_PER_M = 8.8541878128e-12
TWO_PI = 2.0 * np.pi

#: default detuning grid: 2^12 + 1 symmetric samples over +-(2 pi 25 THz)
DEFAULT_SPAN_RAD_S = TWO_PI * 25e12
DEFAULT_SAMPLES = 2 ** 12 + 1
#: GaAs-like effective second-order coefficient, chi2 = 2 d_eff
DEFAULT_CHI2_PM_PER_V = 2.0 * 119.0


def symmetric_grid(span_rad_s: float = DEFAULT_SPAN_RAD_S,
                   samples: int = DEFAULT_SAMPLES) -> np.ndarray:
    """Uniform detuning grid symmetric about zero (odd sample count)."""
    if samples < 3 or samples % 2 == 0:
        raise ValidationError("grid needs an odd sample count >= 3")
    return np.linspace(-span_rad_s, span_rad_s, samples)


def _check_symmetric(grid: np.ndarray) -> None:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size < 3:
        raise ValidationError("detuning grid must be 1-D with >= 3 samples")
    d = np.diff(g)
    if np.any(d <= 0) or not np.allclose(d, d[0], rtol=1e-9, atol=0.0):
        raise ValidationError("detuning grid must be uniform and increasing")
    if np.max(np.abs(g + g[::-1])) > 1e-6 * np.max(np.abs(g)):
        raise ValidationError("detuning grid must be symmetric about zero")


@dataclass(frozen=True)
class Jsa:
    """Sampled joint spectral amplitude on a symmetric detuning grid."""

    omega: np.ndarray            # detuning Omega, rad/s
    phi: np.ndarray              # complex Phi(Omega)
    delta_k: np.ndarray          # rad/m
    s_k: np.ndarray              # rad/m
    length_m: float
    omega_degenerate: float      # rad/s

    def jsi(self) -> np.ndarray:
        return np.abs(self.phi) ** 2

    def signal_wavelength_nm(self) -> np.ndarray:
        return TWO_PI * C_M_PER_S / (self.omega_degenerate + self.omega) * 1e9

    def mirrored(self) -> np.ndarray:
        """Phi(-Omega) on the same grid (exact on the symmetric grid)."""
        return self.phi[::-1]

    def dump_csv(self, path) -> None:
        lam = self.signal_wavelength_nm()
        jsi = self.jsi()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("lambda_signal_nm,re_phi,im_phi,jsi\n")
            for L, p, j in zip(lam, self.phi, jsi):
                fh.write(f"{L:.9g},{p.real:.9g},{p.imag:.9g},{j:.9g}\n")


def compute_jsa(pm: PhaseMismatch, length_mm: float,
                grid: Optional[np.ndarray] = None) -> Jsa:
    """Phi(Omega) = sinc(dk L/2) exp(i s_k L/2) on the given symmetric grid."""
    if grid is None:
        grid = symmetric_grid()
    _check_symmetric(grid)
    L = 1e-3 * length_mm
    dk = pm.delta_k(grid)
    sk = pm.s_k(grid)
    phi = np.sinc(dk * L / 2.0 / np.pi) * np.exp(1j * sk * L / 2.0)
    return Jsa(omega=np.asarray(grid, float), phi=phi, delta_k=dk, s_k=sk,
               length_m=L, omega_degenerate=pm.omega_degenerate)


def jsi_fwhm(jsa: Jsa) -> float:
    """Full width at half maximum of |Phi(lambda)|^2, in nm.

    Walks outward from the peak to the first half-power crossings with
    linear interpolation; raises if the grid clips the peak or the crossings.
    """
    jsi = jsa.jsi()
    lam = jsa.signal_wavelength_nm()
    k = int(np.argmax(jsi))
    if k == 0 or k == jsi.size - 1:
        raise SolverError("joint-spectrum peak sits on the grid edge; widen the grid")
    half = 0.5 * jsi[k]
    right = None
    for i in range(k + 1, jsi.size):
        if jsi[i] < half:
            right = np.interp(half, [jsi[i], jsi[i - 1]], [lam[i], lam[i - 1]])
            break
    left = None
    for i in range(k - 1, -1, -1):
        if jsi[i] < half:
            left = np.interp(half, [jsi[i], jsi[i + 1]], [lam[i], lam[i + 1]])
            break
    if left is None or right is None:
        raise SolverError("half-power crossing is outside the grid; widen the grid")
    return float(abs(left - right))


# ---------------------------------------------------------------------------
# spatial overlap, coupling strength, rate

def _resample(grid_um: np.ndarray, field: np.ndarray, target: np.ndarray) -> np.ndarray:
    return np.interp(target, grid_um, field, left=0.0, right=0.0)


def _common_grid(grids: Sequence[np.ndarray]) -> np.ndarray:
    span = max(float(g[-1]) for g in grids)
    step = min(float(g[1] - g[0]) for g in grids)
    n = int(np.ceil(span / step))
    return np.linspace(-n * step, n * step, 2 * n + 1)


def triple_overlap_1d(grids: Sequence[np.ndarray], fields: Sequence[np.ndarray]) -> float:
    """integral of the product of three 1-D profiles, on a shared fine grid (1/um)."""
    target = _common_grid(grids)
    prod = np.ones_like(target)
    for g, f in zip(grids, fields):
        prod = prod * _resample(g, f, target)
    return float(np.trapezoid(prod, target))


def overlap_gamma(pump: ModeProfile2D, signal: ModeProfile2D,
                  idler: ModeProfile2D) -> tuple[float, float]:
    """Spatial overlap Gamma = integral(Up Us Ui) and A_eff = 1/Gamma^2.

    Returns (Gamma in 1/m, A_eff in um^2).  Profiles are separable, so the
    2-D integral factorizes into the lateral and vertical 1-D products.
    """
    gx = triple_overlap_1d([pump.x_um, signal.x_um, idler.x_um],
                           [pump.x_field, signal.x_field, idler.x_field])
    gy = triple_overlap_1d([pump.y_um, signal.y_um, idler.y_um],
                           [pump.y_field, signal.y_field, idler.y_field])
    gamma_per_um = gx * gy
    a_eff_um2 = np.inf if gamma_per_um == 0.0 else 1.0 / gamma_per_um ** 2
    return gamma_per_um * 1e6, float(a_eff_um2)


@dataclass(frozen=True)
class NonlinearCoupling:
    """Everything entering the coupling strength sigma."""

    sigma: float                 # sqrt(s)/m
    chi2_pm_per_v: float
    gamma_per_m: float
    a_eff_um2: float
    pump_flux_per_s_mw: float    # photons/s at 1 mW


def sigma(chi2_pm_per_v: float, gamma_per_m: float, n_signal: float, n_idler: float,
          n_pump: float, omega_degenerate: float, omega_pump: float) -> float:
    """Nonlinear coupling strength in SI units (sqrt(seconds)/metre)."""
    chi2 = chi2_pm_per_v * 1e-12
    num = HBAR_J_S * omega_degenerate ** 2 * omega_pump * chi2 ** 2 * gamma_per_m ** 2
    den = 16.0 * np.pi * EPS0_F_PER_M * C_M_PER_S ** 3 * n_signal * n_idler * n_pump
    return float(np.sqrt(num / den))


def pump_flux(omega_pump: float, power_mw: float = 1.0) -> float:
    """Photon flux of the CW pump, photons/s."""
    return 1e-3 * power_mw / (HBAR_J_S * omega_pump)


def emission_rate(jsa: Jsa, sigma_value: float, power_mw: float = 1.0,
                  edge_fraction: float = 0.01) -> float:
    """Total pair rate R = sigma^2 L^2 F_p * integral(|Phi|^2 dOmega), photons/s.

    Requires the grid to contain the emission band: |Phi|^2 at the grid edges
    must stay below `edge_fraction` of the peak.
    """
    jsi = jsa.jsi()
    peak = float(np.max(jsi))
    if peak > 0 and max(jsi[0], jsi[-1]) > edge_fraction * peak:
        raise SolverError("joint spectrum is clipped by the grid edges; widen the span")
    integral = float(np.trapezoid(jsi, jsa.omega))
    fp = pump_flux(2.0 * jsa.omega_degenerate, power_mw)
    return sigma_value ** 2 * jsa.length_m ** 2 * fp * integral


def fiber_coupling(profile: ModeProfile2D, fiber: FiberMode) -> float:
    """|integral(U U0*)|^2 of a separable mode with the circular fiber Gaussian."""
    gx = fiber.profile_1d(profile.x_um)
    gy = fiber.profile_1d(profile.y_um)
    ox = np.trapezoid(profile.x_field * gx, profile.x_um)
    oy = np.trapezoid(profile.y_field * gy, profile.y_um)
    eta = float((ox * oy) ** 2)
    return eta


# ---------------------------------------------------------------------------
# fabrication sensitivity

@dataclass(frozen=True)
class SensitivityRow:
    delta: float                     # relative perturbation applied
    value: float                     # perturbed parameter value
    delta_k0_rad_m: float            # mismatch at the unshifted pump
    center_shift_nm: float           # shift of the phase-matched degenerate wavelength
    fwhm_nm: float
    channels_c90: int


def sensitivity_scan(stack, parameter: str, deltas: Sequence[float],
                     settings=None, config=None) -> list[SensitivityRow]:
    """Re-run the pipeline for relative perturbations of one stack parameter.

    Each perturbed structure is re-phase-matched by retuning the pump
    wavelength (the perturbation shifts the phase-matched point; evaluating
    at the original pump would leave no phase-matched spectrum at all), and
    the reported center shift is the resulting move of the degenerate
    wavelength.  delta_k0 is quoted at the *unshifted* pump.
    """
    from .pipeline import evaluate_design  # local import: pipeline builds on spdc

    rows = []
    base = evaluate_design(stack, settings=settings, config=config)
    for d in deltas:
        value = stack.parameter(parameter) * (1.0 + d)
        perturbed = stack.with_parameter(parameter, value)
        ev = evaluate_design(perturbed, settings=settings, config=config,
                             retune_pump=True)
        rows.append(SensitivityRow(
            delta=float(d), value=float(value),
            delta_k0_rad_m=float(ev.delta_k0_at_nominal_pump),
            center_shift_nm=float(ev.degenerate_wavelength_nm
                                  - base.degenerate_wavelength_nm),
            fwhm_nm=float(ev.fwhm_nm),
            channels_c90=int(ev.channels_above_090)))
    return rows


def dump_sensitivity_csv(path, parameter: str, rows: Sequence[SensitivityRow]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("parameter,delta,value,delta_k0_rad_per_m,center_shift_nm,"
                 "fwhm_nm,channels_c90\n")
        for r in rows:
            fh.write(f"{parameter},{r.delta:.9g},{r.value:.9g},{r.delta_k0_rad_m:.9g},"
                     f"{r.center_shift_nm:.9g},{r.fwhm_nm:.9g},{r.channels_c90}\n")
