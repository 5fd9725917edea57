import numpy as np
import pytest

from brwsim.cli import RunConfig
from brwsim.dispersion import DispersionTable
from brwsim.pipeline import evaluate_design

C = 299792458.0
TWO_PI = 2.0 * np.pi
OMEGA_0 = TWO_PI * C / 1.5502e-6


@pytest.fixture(scope="session")
def reference_config() -> RunConfig:
    return RunConfig.load("reference")


@pytest.fixture(scope="session")
def reference_run(reference_config):
    """One full pipeline evaluation shared by every test that needs it."""
    return evaluate_design(reference_config.stack, reference_config.settings,
                           reference_config.params, with_coupling=True)


def linear_tables(beta0=7.9e6, slope_s=1.05e-8, slope_i=1.05e-8,
                  curv_s=0.0, curv_i=0.0, span=TWO_PI * 30e12, samples=201):
    """Polynomial daughter tables around OMEGA_0 for closed-form checks."""
    om = np.linspace(OMEGA_0 - span, OMEGA_0 + span, samples)
    bs = beta0 + slope_s * (om - OMEGA_0) + curv_s * (om - OMEGA_0) ** 2
    bi = beta0 + slope_i * (om - OMEGA_0) + curv_i * (om - OMEGA_0) ** 2
    signal = DispersionTable.from_samples("TE", "tir", om, bs)
    idler = DispersionTable.from_samples("TM", "tir", om, bi)
    return signal, idler
