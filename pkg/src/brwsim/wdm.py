"""WDM channel grid and per-channel polarization-entanglement metrics.

Each channel pair (omega0 + n Delta in the upper path, omega0 - n Delta in
the lower path) carries a two-qubit polarization state whose density matrix
is determined by band integrals of the joint spectral amplitude:

    alpha_n ~ int_Bn |Phi(Omega)|^2,  beta_n ~ int_Bn |Phi(-Omega)|^2,
    gamma_n ~ int_Bn Phi(Omega) Phi*(-Omega),

normalized per channel so alpha_n + beta_n = 1.  The concurrence of the
resulting X-shaped state is C_n = 2 |gamma_n|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import SolverError, ValidationError

C_M_PER_S = 299792458.0
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ChannelGrid:
    """Uniform frequency grid of demultiplexer channels around degeneracy."""

    omega_degenerate: float      # rad/s
    spacing_ghz: float = 50.0
    width_ghz: float = 50.0
    n_max: int = 220

    def __post_init__(self):
        if self.spacing_ghz <= 0 or self.width_ghz <= 0:
            raise ValidationError("channel spacing and width must be > 0")
        if self.width_ghz > self.spacing_ghz:
            raise ValidationError("channel bands overlap: width exceeds spacing")
        if self.n_max < 0:
            raise ValidationError("n_max must be >= 0")

    def band(self, n: int) -> tuple[float, float]:
        """Detuning interval of upper-path channel n, rad/s."""
        if n < 1:
            raise ValidationError("channel index starts at 1")
        center = n * TWO_PI * self.spacing_ghz * 1e9
        half = 0.5 * TWO_PI * self.width_ghz * 1e9
        return (center - half, center + half)

    def center_wavelengths_nm(self, n: int) -> tuple[float, float]:
        """(upper, lower) path channel-center wavelengths."""
        d = n * TWO_PI * self.spacing_ghz * 1e9
        up = TWO_PI * C_M_PER_S / (self.omega_degenerate + d) * 1e9
        lo = TWO_PI * C_M_PER_S / (self.omega_degenerate - d) * 1e9
        return (up, lo)


def channel_coefficients(jsa, grid: ChannelGrid, n: int) -> tuple[float, float, complex]:
    """(alpha_n, beta_n, gamma_n) of channel n, normalized to alpha+beta=1.

    Trapezoidal quadrature on the slice of the symmetric JSA grid that falls
    inside the band; Phi(-Omega) comes from the mirrored samples.
    """
    lo, hi = grid.band(n)
    om = jsa.omega
    tol = 1e-6 * (om[1] - om[0])
    if lo < om[0] - tol or hi > om[-1] + tol:
        raise ValidationError(f"channel {n} band lies outside the JSA grid")
    sel = (om >= lo - tol) & (om <= hi + tol)
    if np.count_nonzero(sel) < 3:
        raise ValidationError(f"channel {n} band holds fewer than 3 grid samples; "
                              "refine the JSA grid")
    x = om[sel]
    phi_p = jsa.phi[sel]
    phi_m = jsa.mirrored()[sel]
    a = float(np.trapezoid(np.abs(phi_p) ** 2, x))
    b = float(np.trapezoid(np.abs(phi_m) ** 2, x))
    g = complex(np.trapezoid(phi_p * np.conj(phi_m), x))
    norm = a + b
    if norm <= 0.0:
        raise SolverError(f"channel {n} holds no spectral weight")
    return a / norm, b / norm, g / norm


def concurrence(gamma_n: complex) -> float:
    """Concurrence of the per-channel state, C_n = 2 |gamma_n|."""
    return 2.0 * abs(gamma_n)


def density_matrix(alpha: float, beta: float, gamma: complex) -> np.ndarray:
    """4x4 two-qubit density matrix in the {TE TE, TE TM, TM TE, TM TM} basis."""
    if abs(alpha + beta - 1.0) > 1e-9:
        raise ValidationError("alpha + beta must equal 1")
    if min(alpha, beta) < -1e-12:
        raise ValidationError("alpha and beta must be non-negative")
    if abs(gamma) > np.sqrt(max(alpha * beta, 0.0)) + 1e-12:
        raise ValidationError("|gamma| exceeds sqrt(alpha beta); state not positive")
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = alpha
    rho[2, 2] = beta
    rho[1, 2] = gamma
    rho[2, 1] = np.conj(gamma)
    return rho


@dataclass(frozen=True)
class ChannelRecord:
    n: int
    lambda_upper_nm: float
    lambda_lower_nm: float
    alpha: float
    beta: float
    gamma: complex
    concurrence: float
    pair_rate_per_s: float


@dataclass(frozen=True)
class ChannelReport:
    """Per-channel records, ordered by channel index."""

    records: tuple[ChannelRecord, ...]

    def concurrences(self) -> np.ndarray:
        return np.array([r.concurrence for r in self.records])

    def dump_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("n,lambda_upper_nm,lambda_lower_nm,alpha,beta,re_gamma,"
                     "im_gamma,concurrence,pair_rate_in_channel\n")
            for r in self.records:
                fh.write(f"{r.n},{r.lambda_upper_nm:.9g},{r.lambda_lower_nm:.9g},"
                         f"{r.alpha:.9g},{r.beta:.9g},{r.gamma.real:.9g},"
                         f"{r.gamma.imag:.9g},{r.concurrence:.9g},"
                         f"{r.pair_rate_per_s:.9g}\n")


def channel_report(jsa, grid: ChannelGrid, pair_rate_prefactor: float = 0.0) -> ChannelReport:
    """Coefficients, concurrence and in-band pair rate for channels 1..n_max.

    `pair_rate_prefactor` multiplies the raw band integral
    int_Bn (|Phi(Omega)|^2 + |Phi(-Omega)|^2) dOmega into a delivered rate
    (sigma^2 L^2 F_p times fiber-coupling factors); leave 0 to skip rates.
    """
    records = []
    for n in range(1, grid.n_max + 1):
        alpha, beta, gamma = channel_coefficients(jsa, grid, n)
        lo, hi = grid.band(n)
        tol = 1e-6 * (jsa.omega[1] - jsa.omega[0])
        sel = (jsa.omega >= lo - tol) & (jsa.omega <= hi + tol)
        x = jsa.omega[sel]
        raw = (np.trapezoid(np.abs(jsa.phi[sel]) ** 2, x)
               + np.trapezoid(np.abs(jsa.mirrored()[sel]) ** 2, x))
        up, lo_nm = grid.center_wavelengths_nm(n)
        records.append(ChannelRecord(
            n=n, lambda_upper_nm=up, lambda_lower_nm=lo_nm,
            alpha=alpha, beta=beta, gamma=gamma,
            concurrence=concurrence(gamma),
            pair_rate_per_s=float(pair_rate_prefactor * raw)))
    return ChannelReport(records=tuple(records))


class ChannelCounts(NamedTuple):
    total: int
    contiguous: int


def channels_above(report: ChannelReport, c_min: float) -> ChannelCounts:
    """Number of channels with C_n > c_min: total, and contiguous from n=1."""
    c = report.concurrences()
    above = c > c_min
    total = int(np.count_nonzero(above))
    contiguous = int(np.argmin(above)) if not above.all() else int(above.size)
    return ChannelCounts(total=total, contiguous=contiguous)
