"""End-to-end evaluation of one waveguide design.

Glue used by the CLI, the fabrication-sensitivity scan and the acceptance
suite: solve the pump and daughter modes, build dispersion tables, form the
joint spectral amplitude on the headline grid and on a channel-aligned grid,
and reduce to bandwidth / channel / rate figures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from . import spdc, wdm
from .dispersion import (DispersionTable, ModeSpec, PhaseMismatch, SolverSettings,
                         _solve_n_eff, build_table, pump_beta)
from .errors import SolverError
from .materials import FiberMode
from .modesolver import (LayerStack, effective_index_2d, find_bragg_mode,
                         find_tir_modes, mode_profile_2d)

C_M_PER_S = 299792458.0
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SimulationParams:
    """Numerical and physical knobs of one pipeline run."""

    pump_wavelength_nm: float = 775.1
    pump_polarization: str = "TM"
    jsa_span_thz: float = 25.0
    jsa_samples: int = 2 ** 12 + 1
    channel_spacing_ghz: float = 50.0
    channel_width_ghz: float = 50.0
    n_max: int = 220
    channel_substeps: int = 8          # JSA samples per channel width
    chi2_pm_per_v: float = spdc.DEFAULT_CHI2_PM_PER_V
    fiber_mfd_um: float = 10.4
    dispersion_samples: int = 121
    dispersion_band_um: tuple[float, float] = (1.36, 1.81)
    grid_refinement: int = 1           # multiply grid densities (stability checks)


@dataclass(frozen=True)
class CouplingFigures:
    gamma_per_m: float
    a_eff_um2: float
    sigma: float
    emission_rate_per_s_mw: float
    eta_signal: float
    eta_idler: float
    n_pump: float
    n_signal: float
    n_idler: float


@dataclass(frozen=True)
class DesignEvaluation:
    stack: LayerStack
    settings: SolverSettings
    params: SimulationParams
    pump_wavelength_nm: float          # after any retuning
    degenerate_wavelength_nm: float
    delta_k0: float                    # at the (possibly retuned) pump
    delta_k0_at_nominal_pump: float
    slope_signal_ns_m: float
    slope_idler_ns_m: float
    jsa: spdc.Jsa
    fwhm_nm: float
    channel_jsa: spdc.Jsa
    channel_grid: wdm.ChannelGrid
    report: wdm.ChannelReport
    channels_above_090: int
    channels_above_095: int
    channels_above_099: int
    pump_table_beta: float
    signal_table: DispersionTable
    idler_table: DispersionTable
    coupling: Optional[CouplingFigures] = None

    @property
    def walkoff_ns_m(self) -> float:
        return abs(self.slope_signal_ns_m - self.slope_idler_ns_m)


def delta_k_degenerate(stack: LayerStack, pump_wavelength_um: float,
                       settings: SolverSettings) -> float:
    """Collinear mismatch at degeneracy from three single-point solves."""
    lam0 = 2.0 * pump_wavelength_um
    bp, _ = pump_beta(stack, pump_wavelength_um, settings)
    ns = _solve_n_eff(stack, lam0, ModeSpec("TE", "tir"), settings, None)
    ni = _solve_n_eff(stack, lam0, ModeSpec("TM", "tir"), settings, None)
    k0 = TWO_PI / (lam0 * 1e-6)
    return bp - k0 * (ns + ni)


def phase_matched_pump(stack: LayerStack, nominal_pump_um: float,
                       settings: SolverSettings,
                       search_halfwidth_um: float = 0.02) -> float:
    """Pump wavelength at which the design is phase-matched at degeneracy."""
    def f(lam):
        return delta_k_degenerate(stack, lam, settings)

    lo = nominal_pump_um - search_halfwidth_um
    hi = nominal_pump_um + search_halfwidth_um
    if f(lo) * f(hi) > 0:
        raise SolverError("no phase-matched pump wavelength within "
                          f"{1e3 * search_halfwidth_um:.0f} nm of the nominal pump")
    return float(brentq(f, lo, hi, xtol=1e-9))


def _channel_grid_omega(params: SimulationParams) -> np.ndarray:
    """Detuning grid whose samples align with every channel band edge."""
    sub = params.channel_substeps * params.grid_refinement
    step = TWO_PI * params.channel_spacing_ghz * 1e9 / sub
    n_half = round((params.n_max + 1) * sub)  # half a channel of padding
    return np.linspace(-n_half * step, n_half * step, 2 * n_half + 1)


def ridge_mode_profiles(stack: LayerStack, lam_p_um: float, lam0_um: float,
                        settings: SolverSettings) -> dict:
    """Vertical modes and 2-D separable profiles for pump, signal, idler."""
    model = settings.material()
    out = {}
    for tag, lam, pol, cls in (("pump", lam_p_um, "TM", "bragg"),
                               ("signal", lam0_um, "TE", "tir"),
                               ("idler", lam0_um, "TM", "tir")):
        if cls == "bragg":
            mode = find_bragg_mode(stack, lam, pol, model)
        else:
            mode = find_tir_modes(stack, lam, pol, model)[0]
        lat = effective_index_2d(stack, lam, pol, cls,
                                 lateral_contrast=settings.lateral_contrast,
                                 model=model, n_vertical=mode.n_eff)
        out[tag] = (mode, mode_profile_2d(mode, lat))
    return out


def _coupling_figures(stack, lam_p, pm, jsa, settings, params) -> CouplingFigures:
    profiles = ridge_mode_profiles(stack, lam_p, 2.0 * lam_p, settings)
    pump_profile = profiles["pump"][1]
    sig_profile = profiles["signal"][1]
    idl_profile = profiles["idler"][1]
    gamma_m, a_eff = spdc.overlap_gamma(pump_profile, sig_profile, idl_profile)
    sig = spdc.sigma(params.chi2_pm_per_v, gamma_m,
                     n_signal=sig_profile.n_eff, n_idler=idl_profile.n_eff,
                     n_pump=pump_profile.n_eff,
                     omega_degenerate=pm.omega_degenerate, omega_pump=pm.omega_pump)
    rate = spdc.emission_rate(jsa, sig)
    fiber = FiberMode(mfd_um=params.fiber_mfd_um, wavelength_um=2.0 * lam_p)
    return CouplingFigures(
        gamma_per_m=gamma_m, a_eff_um2=a_eff, sigma=sig,
        emission_rate_per_s_mw=rate,
        eta_signal=spdc.fiber_coupling(sig_profile, fiber),
        eta_idler=spdc.fiber_coupling(idl_profile, fiber),
        n_pump=pump_profile.n_eff, n_signal=sig_profile.n_eff,
        n_idler=idl_profile.n_eff)


def evaluate_design(stack: LayerStack, settings: Optional[SolverSettings] = None,
                    config: Optional[SimulationParams] = None,
                    retune_pump: bool = False,
                    with_coupling: bool = False) -> DesignEvaluation:
    """Full pipeline for one stack; see DesignEvaluation for the outputs."""
    settings = settings or SolverSettings()
    params = config or SimulationParams()

    lam_p_nominal = 1e-3 * params.pump_wavelength_nm
    dk0_nominal = delta_k_degenerate(stack, lam_p_nominal, settings)
    lam_p = lam_p_nominal
    if retune_pump:
        lam_p = phase_matched_pump(stack, lam_p_nominal, settings)
    lam0_um = 2.0 * lam_p

    # the configured band belongs to the nominal degenerate point; follow any retune
    scale = lam0_um / (2.0 * lam_p_nominal)
    band = (params.dispersion_band_um[0] * scale, params.dispersion_band_um[1] * scale)
    samples = params.dispersion_samples * params.grid_refinement
    signal = build_table(stack, ModeSpec("TE", "tir"), band, samples, settings)
    idler = build_table(stack, ModeSpec("TM", "tir"), band, samples, settings)
    bp, _ = pump_beta(stack, lam_p, settings, params.pump_polarization)
    omega_p = TWO_PI * C_M_PER_S / (lam_p * 1e-6)
    pm = PhaseMismatch(beta_pump=bp, omega_pump=omega_p, signal=signal, idler=idler)

    main_grid = spdc.symmetric_grid(TWO_PI * params.jsa_span_thz * 1e12,
                                    (params.jsa_samples - 1) * params.grid_refinement + 1)
    jsa = spdc.compute_jsa(pm, stack.length_mm, main_grid)
    fwhm = spdc.jsi_fwhm(jsa)

    channel_jsa = spdc.compute_jsa(pm, stack.length_mm, _channel_grid_omega(params))
    grid = wdm.ChannelGrid(omega_degenerate=pm.omega_degenerate,
                           spacing_ghz=params.channel_spacing_ghz,
                           width_ghz=params.channel_width_ghz, n_max=params.n_max)

    coupling = None
    rate_prefactor = 0.0
    if with_coupling:
        coupling = _coupling_figures(stack, lam_p, pm, jsa, settings, params)
        rate_prefactor = (coupling.sigma ** 2 * jsa.length_m ** 2
                          * spdc.pump_flux(omega_p)
                          * coupling.eta_signal * coupling.eta_idler)
    report = wdm.channel_report(channel_jsa, grid, rate_prefactor)

    w0 = pm.omega_degenerate
    return DesignEvaluation(
        stack=stack, settings=settings, params=params,
        pump_wavelength_nm=1e3 * lam_p,
        degenerate_wavelength_nm=TWO_PI * C_M_PER_S / w0 * 1e9,
        delta_k0=float(pm.delta_k(0.0)),
        delta_k0_at_nominal_pump=float(dk0_nominal),
        slope_signal_ns_m=float(signal.inverse_group_velocity(w0)),
        slope_idler_ns_m=float(idler.inverse_group_velocity(w0)),
        jsa=jsa, fwhm_nm=fwhm,
        channel_jsa=channel_jsa, channel_grid=grid, report=report,
        channels_above_090=wdm.channels_above(report, 0.90).total,
        channels_above_095=wdm.channels_above(report, 0.95).total,
        channels_above_099=wdm.channels_above(report, 0.99).total,
        pump_table_beta=bp, signal_table=signal, idler_table=idler,
        coupling=coupling)
