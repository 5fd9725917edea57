"""Propagation-constant tables, group-velocity slopes and phase mismatch.

Tables store beta(omega) = n_eff(omega) * omega / c sampled from verified
mode solves and interpolate with a cubic spline; derivatives are taken on
the interpolant to suppress root-finder noise.  The pump is treated as
strictly monochromatic, so its beta enters as a scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ModeNotFoundError, ValidationError
from .materials import DEFAULT_MODEL, MaterialModel
from .modesolver import (DEFAULT_LATERAL_CONTRAST, LayerStack, effective_index_2d,
                         find_bragg_mode, find_tir_modes)

C_M_PER_S = 299792458.0
TWO_PI = 2.0 * np.pi

#: central-difference step for group-slope evaluation on the interpolant
GROUP_SLOPE_STEP_RAD_S = TWO_PI * 10e9
#: default signal/idler sampling band (um), covering the joint-spectrum span
DEFAULT_BAND_UM = (1.36, 1.81)
#: interpolation-accuracy budget checked on held-out midpoint solves
MIDPOINT_NEFF_TOL = 1e-7


@dataclass(frozen=True)
class ModeSpec:
    """Which guided branch a table follows."""

    polarization: str
    mode_class: str = "tir"   # 'tir' | 'bragg'
    order: int = 0            # index into the descending-n_eff list at the first sample


@dataclass(frozen=True)
class SolverSettings:
    """Knobs shared by every mode solve in a run."""

    lateral_contrast: float = DEFAULT_LATERAL_CONTRAST
    use_ridge: bool = True
    temperature_k: float = 295.0

    def material(self) -> MaterialModel:
        if self.temperature_k == DEFAULT_MODEL.temperature_k:
            return DEFAULT_MODEL
        return MaterialModel(temperature_k=self.temperature_k)


@dataclass(frozen=True)
class DispersionTable:
    """Sampled beta(omega) for one guided branch with spline accessors."""

    polarization: str
    mode_class: str
    omega: np.ndarray          # rad/s, ascending
    beta: np.ndarray           # rad/m
    _spline: CubicSpline = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=float)
        be = np.asarray(self.beta, dtype=float)
        if om.ndim != 1 or om.size < 4 or om.size != be.size:
            raise ValidationError("dispersion table needs >= 4 matching samples")
        if np.any(np.diff(om) <= 0):
            raise ValidationError("omega samples must be strictly increasing")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "beta", be)
        object.__setattr__(self, "_spline", CubicSpline(om, be))

    @classmethod
    def from_samples(cls, polarization: str, mode_class: str, omega, beta):
        return cls(polarization=polarization, mode_class=mode_class,
                   omega=np.asarray(omega, float), beta=np.asarray(beta, float))

    def _check_inside(self, omega):
        om = np.asarray(omega, dtype=float)
        if np.any(om < self.omega[0]) or np.any(om > self.omega[-1]):
            raise ValidationError(
                f"omega outside table range [{self.omega[0]:.6g}, {self.omega[-1]:.6g}] rad/s")

    def beta_at(self, omega):
        self._check_inside(omega)
        out = self._spline(omega)
        return float(out) if np.isscalar(omega) else out

    def n_eff_at(self, omega):
        return self.beta_at(omega) * C_M_PER_S / np.asarray(omega, dtype=float)

    def inverse_group_velocity(self, omega, step: float = GROUP_SLOPE_STEP_RAD_S):
        """d(beta)/d(Omega) by central difference on the interpolant, in ns/m."""
        om = np.asarray(omega, dtype=float)
        self._check_inside(om - step)
        self._check_inside(om + step)
        slope = (self._spline(om + step) - self._spline(om - step)) / (2.0 * step)
        out = slope * 1e9
        return float(out) if np.isscalar(omega) else out

    def wavelength_range_um(self) -> tuple[float, float]:
        return (TWO_PI * C_M_PER_S / self.omega[-1] * 1e6,
                TWO_PI * C_M_PER_S / self.omega[0] * 1e6)

    def dump_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("lambda_nm,n_eff,beta_rad_per_m,inv_vg_ns_per_m\n")
            lo, hi = self.omega[0], self.omega[-1]
            step = GROUP_SLOPE_STEP_RAD_S
            for om, be in zip(self.omega[::-1], self.beta[::-1]):
                lam_nm = TWO_PI * C_M_PER_S / om * 1e9
                omc = min(max(om, lo + step), hi - step)
                ivg = self.inverse_group_velocity(omc)
                fh.write(f"{lam_nm:.9g},{be * C_M_PER_S / om:.9g},{be:.9g},{ivg:.9g}\n")


def _solve_n_eff(stack: LayerStack, lam_um: float, spec: ModeSpec,
                 settings: SolverSettings, previous: Optional[float]) -> float:
    """Full (vertical + optional lateral) effective index at one wavelength."""
    model = settings.material()
    if spec.mode_class == "bragg":
        vertical = find_bragg_mode(stack, lam_um, spec.polarization, model,
                                   render_profiles=False).n_eff
    else:
        modes = find_tir_modes(stack, lam_um, spec.polarization, model,
                               render_profiles=False)
        if not modes:
            raise ModeNotFoundError(
                f"no TIR mode (pol={spec.polarization}) at {lam_um:.6g} um")
        if previous is None:
            if spec.order >= len(modes):
                raise ModeNotFoundError(
                    f"mode order {spec.order} not available at {lam_um:.6g} um "
                    f"({len(modes)} modes found)")
            vertical = modes[spec.order].n_eff
        else:
            vertical = min((m.n_eff for m in modes), key=lambda v: abs(v - previous))
    if not settings.use_ridge:
        return vertical
    lat = effective_index_2d(stack, lam_um, spec.polarization, spec.mode_class,
                             lateral_contrast=settings.lateral_contrast, model=model,
                             n_vertical=vertical, render_profile=False)
    return lat.n_eff


def build_table(stack: LayerStack, spec: ModeSpec,
                band_um: tuple[float, float] = DEFAULT_BAND_UM,
                samples: int = 121,
                settings: SolverSettings = SolverSettings(),
                verify_midpoints: bool = True) -> DispersionTable:
    """Sample beta(omega) across a wavelength band with branch tracking.

    Samples run from short to long wavelength; after the first sample the
    branch is followed by nearest-neighbour continuation of the *vertical*
    index, which keeps the table on one physical mode through crossings.
    A held-out subset of interval midpoints is re-solved to confirm the
    spline interpolates n_eff to better than `MIDPOINT_NEFF_TOL`.
    """
    if samples < 50:
        raise ValidationError("dispersion tables need at least 50 samples")
    lo, hi = band_um
    if not lo < hi:
        raise ValidationError("band must satisfy lo < hi")
    lams = np.linspace(lo, hi, samples)
    n_eff = np.empty(samples)
    previous = None
    for i, lam in enumerate(lams):
        n_eff[i] = _solve_n_eff(stack, float(lam), spec, settings, previous)
        previous = n_eff[i]
    omega = TWO_PI * C_M_PER_S / (lams[::-1] * 1e-6)
    beta = n_eff[::-1] * omega / C_M_PER_S
    table = DispersionTable(polarization=spec.polarization.upper(),
                            mode_class=spec.mode_class, omega=omega, beta=beta)
    if verify_midpoints:
        stride = max(1, (samples - 1) // 16)
        for i in range(0, samples - 1, stride):
            lam_mid = float(0.5 * (lams[i] + lams[i + 1]))
            om_mid = TWO_PI * C_M_PER_S / (lam_mid * 1e-6)
            solved = _solve_n_eff(stack, lam_mid, spec, settings, float(n_eff[i]))
            interp = table.n_eff_at(om_mid)
            if abs(interp - solved) > MIDPOINT_NEFF_TOL:
                raise ModeNotFoundError(
                    f"interpolation error {abs(interp - solved):.3g} at "
                    f"{lam_mid:.6g} um exceeds {MIDPOINT_NEFF_TOL}")
    return table


def pump_beta(stack: LayerStack, pump_wavelength_um: float,
              settings: SolverSettings = SolverSettings(),
              polarization: str = "TM") -> tuple[float, float]:
    """(beta_p rad/m, n_eff) of the CW Bragg pump at its wavelength."""
    n = _solve_n_eff(stack, pump_wavelength_um, ModeSpec(polarization, "bragg"),
                     settings, None)
    omega_p = TWO_PI * C_M_PER_S / (pump_wavelength_um * 1e-6)
    return n * omega_p / C_M_PER_S, n


@dataclass(frozen=True)
class PhaseMismatch:
    """CW-pump phase functions built from scalar beta_p and daughter tables."""

    beta_pump: float           # rad/m
    omega_pump: float          # rad/s
    signal: DispersionTable    # TE daughter, evaluated at omega0 + Omega
    idler: DispersionTable     # TM daughter, evaluated at omega0 - Omega

    @property
    def omega_degenerate(self) -> float:
        return 0.5 * self.omega_pump

    def delta_k(self, detuning):
        """beta_p - beta_s(omega0+Omega) - beta_i(omega0-Omega), rad/m."""
        w0 = self.omega_degenerate
        om = np.asarray(detuning, dtype=float)
        out = self.beta_pump - self.signal.beta_at(w0 + om) - self.idler.beta_at(w0 - om)
        return float(out) if np.isscalar(detuning) else out

    def s_k(self, detuning):
        """beta_p + beta_s(omega0+Omega) + beta_i(omega0-Omega), rad/m."""
        w0 = self.omega_degenerate
        om = np.asarray(detuning, dtype=float)
        out = self.beta_pump + self.signal.beta_at(w0 + om) + self.idler.beta_at(w0 - om)
        return float(out) if np.isscalar(detuning) else out

    def group_slope_mismatch(self) -> float:
        """|d(beta_s)/dOmega - d(beta_i)/dOmega| at degeneracy, ns/m."""
        w0 = self.omega_degenerate
        return abs(self.signal.inverse_group_velocity(w0)
                   - self.idler.inverse_group_velocity(w0))


def phase_mismatch(pm: PhaseMismatch, detuning):
    return pm.delta_k(detuning)


def phase_sum(pm: PhaseMismatch, detuning):
    return pm.s_k(detuning)


def inverse_group_velocity(table: DispersionTable, omega,
                           step: float = GROUP_SLOPE_STEP_RAD_S):
    return table.inverse_group_velocity(omega, step)
