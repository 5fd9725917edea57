"""Guided modes of the symmetric Bragg reflection waveguide.

Vertical (epitaxy) direction: transfer matrices through the half stack from
the symmetry plane, matched to the decaying Bloch eigenvector of the
semi-infinite periodic cladding.  Both conventional quasi-TIR daughter modes
(evanescent in at least one cladding layer) and bandgap-confined Bragg modes
(oscillatory in every layer) are zeros of the same residual, restricted to
|trace| > 2 of the per-period matrix.

Lateral (ridge) direction: standard effective-index reduction.  The vertical
effective index becomes the core of a symmetric lateral slab whose cladding
sits `lateral_contrast` below it (configurable etch model), with TE/TM
boundary conditions swapped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import ModeNotFoundError, NoBandgapModeError, ValidationError
from .materials import DEFAULT_MODEL, MaterialModel

TWO_PI = 2.0 * np.pi

#: design-decision constants: scan resolution and bisection tolerance
NEFF_SCAN_POINTS = 2000
NEFF_TOL = 1e-12
#: field sampling (nm) for vertical and lateral profiles
VERTICAL_SAMPLE_NM = 1.0
LATERAL_SAMPLE_NM = 10.0
#: default lateral index step of the etch model
DEFAULT_LATERAL_CONTRAST = 0.05


@dataclass(frozen=True)
class Layer:
    x: float
    thickness_nm: float


@dataclass(frozen=True)
class LayerStack:
    """Symmetric planar geometry: core flanked by periodic reflectors.

    `layers` is the full ordered list from bottom to top; `core_index` points
    at the core entry.  The reflector on each side must consist of
    `bilayers_per_side` repetitions of the same two-layer period, mirrored
    about the core, and is continued as a semi-infinite periodic cladding by
    the mode solver.
    """

    layers: tuple[Layer, ...]
    core_index: int
    bilayers_per_side: int
    ridge_width_nm: float
    length_mm: float

    def __post_init__(self):
        if self.bilayers_per_side < 1:
            raise ValidationError("bilayers_per_side must be >= 1")
        if self.ridge_width_nm <= 0:
            raise ValidationError("ridge width must be > 0")
        if self.length_mm <= 0:
            raise ValidationError("waveguide length must be > 0")
        if not self.layers:
            raise ValidationError("layer stack is empty")
        for ly in self.layers:
            if ly.thickness_nm <= 0:
                raise ValidationError(f"layer thickness {ly.thickness_nm} nm must be > 0")
            if not 0.0 <= ly.x <= 1.0:
                raise ValidationError(f"layer Al fraction {ly.x} outside [0, 1]")
        n = len(self.layers)
        k = self.core_index
        if not 0 <= k < n:
            raise ValidationError("core_index outside the layer list")
        if k != n - 1 - k:
            raise ValidationError("stack must be symmetric about the core")
        above = self.layers[k + 1:]
        below = self.layers[:k]
        if list(above) != list(reversed(below)):
            raise ValidationError("stack must be symmetric about the core")
        if len(above) != 2 * self.bilayers_per_side:
            raise ValidationError("reflector must hold bilayers_per_side two-layer periods")
        for i, ly in enumerate(above):
            ref = above[i % 2]
            if (ly.x, ly.thickness_nm) != (ref.x, ref.thickness_nm):
                raise ValidationError("reflector layers must repeat a single bilayer")

    @classmethod
    def symmetric(cls, core: tuple[float, float], bilayer: Sequence[tuple[float, float]],
                  bilayers_per_side: int = 8, ridge_width_nm: float = 1770.0,
                  length_mm: float = 1.0) -> "LayerStack":
        """Build core | b1 | b2 | b1 | ... mirrored below, from (x, thickness_nm) pairs."""
        (x1, t1), (x2, t2) = bilayer
        up = [Layer(x1, t1), Layer(x2, t2)] * bilayers_per_side
        layers = tuple(reversed(up)) + (Layer(*core),) + tuple(up)
        return cls(layers=layers, core_index=2 * bilayers_per_side,
                   bilayers_per_side=bilayers_per_side,
                   ridge_width_nm=ridge_width_nm, length_mm=length_mm)

    @classmethod
    def reference_design(cls) -> "LayerStack":
        """The published broadband type-II design this package reproduces."""
        return cls.symmetric(core=(0.7, 370.0), bilayer=((0.4, 127.0), (0.9, 309.0)),
                             bilayers_per_side=8, ridge_width_nm=1770.0, length_mm=1.0)

    @property
    def core(self) -> Layer:
        return self.layers[self.core_index]

    @property
    def bilayer(self) -> tuple[Layer, Layer]:
        return (self.layers[self.core_index + 1], self.layers[self.core_index + 2])

    def with_parameter(self, name: str, value: float) -> "LayerStack":
        """Return a copy with one named scalar replaced (x_c, t_c, x_1, t_1, x_2, t_2,
        ridge_width, length)."""
        core, (b1, b2) = self.core, self.bilayer
        table = {
            "x_c": lambda v: (Layer(v, core.thickness_nm), b1, b2, self.ridge_width_nm, self.length_mm),
            "t_c": lambda v: (Layer(core.x, v), b1, b2, self.ridge_width_nm, self.length_mm),
            "x_1": lambda v: (core, Layer(v, b1.thickness_nm), b2, self.ridge_width_nm, self.length_mm),
            "t_1": lambda v: (core, Layer(b1.x, v), b2, self.ridge_width_nm, self.length_mm),
            "x_2": lambda v: (core, b1, Layer(v, b2.thickness_nm), self.ridge_width_nm, self.length_mm),
            "t_2": lambda v: (core, b1, Layer(b2.x, v), self.ridge_width_nm, self.length_mm),
            "ridge_width": lambda v: (core, b1, b2, v, self.length_mm),
            "length": lambda v: (core, b1, b2, self.ridge_width_nm, v),
        }
        if name not in table:
            raise ValidationError(f"unknown stack parameter {name!r}")
        c, l1, l2, w, L = table[name](value)
        return LayerStack.symmetric(core=(c.x, c.thickness_nm),
                                    bilayer=((l1.x, l1.thickness_nm), (l2.x, l2.thickness_nm)),
                                    bilayers_per_side=self.bilayers_per_side,
                                    ridge_width_nm=w, length_mm=L)

    def parameter(self, name: str) -> float:
        core, (b1, b2) = self.core, self.bilayer
        return {
            "x_c": core.x, "t_c": core.thickness_nm,
            "x_1": b1.x, "t_1": b1.thickness_nm,
            "x_2": b2.x, "t_2": b2.thickness_nm,
            "ridge_width": self.ridge_width_nm, "length": self.length_mm,
        }[name]


@dataclass(frozen=True)
class GuidedMode:
    """One vertical slab solution with its sampled principal-field profile."""

    polarization: str        # 'TE' | 'TM'
    mode_class: str          # 'tir' | 'bragg'
    n_eff: float
    wavelength_um: float
    parity: str              # 'even' | 'odd'
    grid_um: np.ndarray      # vertical positions, symmetric about 0
    field: np.ndarray        # normalized principal E-field samples
    sample_spacing_nm: float = VERTICAL_SAMPLE_NM

    def power_fraction(self, half_width_um: float) -> float:
        """Fraction of mode power within |y| <= half_width_um."""
        m = np.abs(self.grid_um) <= half_width_um
        return float(np.trapezoid(self.field[m] ** 2, self.grid_um[m]))


@dataclass(frozen=True)
class LateralSolution:
    """Fundamental solution of the effective-index lateral slab."""

    n_eff: float
    n_core: float
    n_clad: float
    width_um: float
    lateral_tm: bool
    cutoff_fallback: bool
    grid_um: np.ndarray
    field: np.ndarray


# ---------------------------------------------------------------------------
# geometry helpers

def _indices(stack: LayerStack, lam_um: float, model: MaterialModel):
    core, (b1, b2) = stack.core, stack.bilayer
    nc = model.refractive_index(core.x, lam_um)
    n1 = model.refractive_index(b1.x, lam_um)
    n2 = model.refractive_index(b2.x, lam_um)
    return nc, n1, n2


def _geometry(stack: LayerStack, lam_um: float, model: MaterialModel):
    """(pre_n2, pre_t, per_n2, per_t) in um for the half-stack kernel."""
    nc, n1, n2 = _indices(stack, lam_um, model)
    core, (b1, b2) = stack.core, stack.bilayer
    pre_n2 = np.array([nc * nc])
    pre_t = np.array([0.5e-3 * core.thickness_nm])
    per_n2 = np.array([n1 * n1, n2 * n2])
    per_t = np.array([1e-3 * b1.thickness_nm, 1e-3 * b2.thickness_nm])
    return pre_n2, pre_t, per_n2, per_t


# ---------------------------------------------------------------------------
# public single-layer operations

def layer_matrix(n: float, thickness_nm: float, n_eff: float, lam_um: float,
                 pol: str) -> np.ndarray:
    """2x2 transfer matrix of one uniform layer acting on (U, V).

    U is the principal field; V = U' for TE and V = U'/n^2 for TM (both
    continuous).  Lossless layers give a real unimodular matrix; it is
    returned as complex for interface stability.
    """
    tm = _is_tm(pol)
    k0 = TWO_PI / lam_um
    t = 1e-3 * thickness_nm
    c, b, g = _layer_entries_scalar(n * n, t, k0, n_eff * n_eff, tm)
    return np.array([[c, b], [g, c]], dtype=np.complex128)


def period_trace(bilayer: Sequence[tuple[float, float]], n_eff: float, lam_um: float,
                 pol: str) -> float:
    """Trace of the per-period transfer matrix of the cladding bilayer.

    `bilayer` is ((n1, t1_nm), (n2, t2_nm)) ordered outward from the core.
    |trace| > 2 marks a photonic bandgap at (n_eff, lam).
    """
    (n1, t1), (n2, t2) = bilayer
    m1 = layer_matrix(n1, t1, n_eff, lam_um, pol)
    m2 = layer_matrix(n2, t2, n_eff, lam_um, pol)
    return float(np.real(np.trace(m2 @ m1)))


def _is_tm(pol: str) -> bool:
    p = pol.upper()
    if p not in ("TE", "TM"):
        raise ValidationError(f"polarization must be TE or TM, got {pol!r}")
    return p == "TM"


# ---------------------------------------------------------------------------
# root finding

def _scan_roots(stack: LayerStack, lam_um: float, pol: str, bracket: tuple[float, float],
                model: MaterialModel, parities=("even", "odd")) -> list[tuple[float, str]]:
    pre_n2, pre_t, per_n2, per_t = _geometry(stack, lam_um, model)
    k0 = TWO_PI / lam_um
    tm = _is_tm(pol)
    lo, hi = bracket
    if hi <= lo:
        return []
    grid = np.linspace(lo, hi, NEFF_SCAN_POINTS)
    roots: list[tuple[float, str]] = []
    for parity in parities:
        odd = parity == "odd"
        f, tr = kernels.residual_scan(grid, k0, pre_n2, pre_t, per_n2, per_t, tm, odd)
        ok = (np.abs(tr) > 2.0) & np.isfinite(f)
        sign_change = ok[:-1] & ok[1:] & (f[:-1] * f[1:] < 0.0)
        for i in np.flatnonzero(sign_change):
            r = kernels.bisect_root(grid[i], grid[i + 1], k0, pre_n2, pre_t,
                                    per_n2, per_t, tm, odd, NEFF_TOL)
            roots.append((float(r), parity))
    roots.sort(key=lambda item: -item[0])
    return roots


def dispersion_residual(stack: LayerStack, lam_um: float, pol: str, parity: str,
                        n_eff: float, model: Optional[MaterialModel] = None) -> float:
    """Normalized dispersion-relation residual; ~0 for a true guided mode."""
    model = model or DEFAULT_MODEL
    pre_n2, pre_t, per_n2, per_t = _geometry(stack, lam_um, model)
    f, _ = kernels.residual_scan(np.array([n_eff]), TWO_PI / lam_um, pre_n2, pre_t,
                                 per_n2, per_t, _is_tm(pol), parity == "odd")
    return float(f[0])


def _tir_bracket(stack: LayerStack, lam_um: float, model: MaterialModel):
    nc, n1, n2 = _indices(stack, lam_um, model)
    lo = min(nc, n1, n2) + 1e-9
    hi = max(nc, n1, n2) - 1e-9
    return lo, hi


def _bragg_bracket(stack: LayerStack, lam_um: float, model: MaterialModel,
                   depth: float = 0.8):
    nc, n1, n2 = _indices(stack, lam_um, model)
    hi = min(nc, n1, n2) - 1e-9
    return max(hi - depth, 1.0), hi


def find_tir_modes(stack: LayerStack, lam_um: float, pol: str,
                   model: Optional[MaterialModel] = None,
                   render_profiles: bool = True) -> list[GuidedMode]:
    """All quasi-TIR guided modes at one wavelength, descending in n_eff.

    The search bracket spans the layer-index range; confinement requires the
    cladding period to sit in a bandgap (decaying Bloch envelope), which also
    covers the strict everywhere-evanescent TIR case.  Empty list if no mode.
    """
    model = model or DEFAULT_MODEL
    roots = _scan_roots(stack, lam_um, pol, _tir_bracket(stack, lam_um, model), model)
    return [_make_mode(stack, lam_um, pol, r, par, "tir", model, render_profiles)
            for r, par in roots]


def find_bragg_mode(stack: LayerStack, lam_um: float, pol: str,
                    model: Optional[MaterialModel] = None,
                    render_profiles: bool = True) -> GuidedMode:
    """Lowest-order bandgap-confined mode below all layer indices."""
    model = model or DEFAULT_MODEL
    roots = _scan_roots(stack, lam_um, pol, _bragg_bracket(stack, lam_um, model), model)
    if not roots:
        raise NoBandgapModeError(
            f"no bandgap-confined mode for pol={pol} at {lam_um:.6g} um")
    r, parity = roots[0]
    return _make_mode(stack, lam_um, pol, r, parity, "bragg", model, render_profiles)


# ---------------------------------------------------------------------------
# field profiles

def _layer_entries_scalar(n2, t, k0, neff2, tm):
    q2 = k0 * k0 * (n2 - neff2)
    phi2 = q2 * t * t
    if abs(phi2) < 1e-9:
        c = 1.0 - phi2 / 2.0 + phi2 * phi2 / 24.0
        s = t * (1.0 - phi2 / 6.0)
        qs = -q2 * t * (1.0 - phi2 / 6.0)
    elif q2 > 0:
        q = np.sqrt(q2)
        c, s, qs = np.cos(q * t), np.sin(q * t) / q, -q * np.sin(q * t)
    else:
        q = np.sqrt(-q2)
        c, s, qs = np.cosh(q * t), np.sinh(q * t) / q, q * np.sinh(q * t)
    fac = n2 if tm else 1.0
    return c, fac * s, qs / fac


def _field_in_layer(U0, V0, n2, k0, neff2, tm, offsets):
    """Principal field and reduced slope at positions `offsets` inside one layer."""
    q2 = k0 * k0 * (n2 - neff2)
    fac = n2 if tm else 1.0
    q = np.sqrt(abs(q2))
    if q2 > 1e-18:
        c, s = np.cos(q * offsets), np.sin(q * offsets) / q
        qs = -q * np.sin(q * offsets)
    elif q2 < -1e-18:
        c, s = np.cosh(q * offsets), np.sinh(q * offsets) / q
        qs = q * np.sinh(q * offsets)
    else:
        c, s, qs = np.ones_like(offsets), offsets, q2 * offsets
    U = c * U0 + fac * s * V0
    V = (qs / fac) * U0 + c * V0
    return U, V


def _render_vertical(stack: LayerStack, lam_um: float, pol: str, parity: str,
                     n_eff: float, model: MaterialModel,
                     dy_um: float = VERTICAL_SAMPLE_NM * 1e-3,
                     tail_tol: float = 1e-10, max_periods: int = 64):
    """Sampled principal E-field over the full (mirrored) stack.

    The state is propagated from the symmetry plane through the half core and
    the first cladding period; further periods are exact Bloch copies scaled
    by the decaying eigenvalue, so truncation error is controlled by
    `tail_tol` on the remaining power.
    """
    nc, n1, n2 = _indices(stack, lam_um, model)
    core, (b1, b2) = stack.core, stack.bilayer
    k0 = TWO_PI / lam_um
    tm = _is_tm(pol)
    neff2 = n_eff * n_eff

    segs = [(nc * nc, 0.5e-3 * core.thickness_nm),
            (n1 * n1, 1e-3 * b1.thickness_nm),
            (n2 * n2, 1e-3 * b2.thickness_nm)]
    U, V = (0.0, 1.0) if parity == "odd" else (1.0, 0.0)
    y0 = 0.0
    ys, us, n2s = [], [], []
    for n2l, t in segs:
        off = np.arange(0.0, t, dy_um)
        useg, _ = _field_in_layer(U, V, n2l, k0, neff2, tm, off)
        ys.append(y0 + off)
        us.append(useg)
        n2s.append(np.full(off.size, n2l))
        c, b, g = _layer_entries_scalar(n2l, t, k0, neff2, tm)
        U, V = c * U + b * V, g * U + c * V
        y0 += t

    t_period = 1e-3 * (b1.thickness_nm + b2.thickness_nm)
    y_half = np.concatenate(ys)
    u_half = np.concatenate(us)
    n2_half = np.concatenate(n2s)
    in_period = y_half >= 0.5e-3 * core.thickness_nm
    yp, up, n2p = y_half[in_period], u_half[in_period], n2_half[in_period]

    tr = period_trace(((np.sqrt(segs[1][0]), b1.thickness_nm),
                       (np.sqrt(segs[2][0]), b2.thickness_nm)), n_eff, lam_um, pol)
    disc = np.sqrt(max(tr * tr - 4.0, 0.0))
    lam_dec = (tr - disc) / 2.0 if tr >= 0 else (tr + disc) / 2.0

    power_period = np.sum(up * up) * dy_um
    total = [y_half.copy()], [u_half.copy()], [n2_half.copy()]
    scale = 1.0
    shift = 0.0
    for _ in range(1, max_periods):
        scale *= lam_dec
        shift += t_period
        if power_period * scale * scale < tail_tol * max(power_period, 1e-300):
            break
        total[0].append(yp + shift)
        total[1].append(up * scale)
        total[2].append(n2p)

    y = np.concatenate(total[0])
    u = np.concatenate(total[1])
    nn2 = np.concatenate(total[2])
    field = u / nn2 if tm else u  # principal E field; H/n^2 for TM
    sign = -1.0 if parity == "odd" else 1.0
    y_full = np.concatenate([-y[:0:-1], y])
    f_full = np.concatenate([sign * field[:0:-1], field])
    norm = np.trapezoid(f_full * f_full, y_full)
    return y_full, f_full / np.sqrt(norm)


def _make_mode(stack, lam_um, pol, n_eff, parity, mode_class, model,
               render_profiles=True) -> GuidedMode:
    if render_profiles:
        y, f = _render_vertical(stack, lam_um, pol, parity, n_eff, model)
    else:
        y = np.zeros(0)
        f = np.zeros(0)
    return GuidedMode(polarization=pol.upper(), mode_class=mode_class, n_eff=n_eff,
                      wavelength_um=lam_um, parity=parity, grid_um=y, field=f)


# ---------------------------------------------------------------------------
# effective-index (ridge) reduction

def effective_index_2d(stack: LayerStack, lam_um: float, pol: str, mode_class: str,
                       lateral_contrast: float = DEFAULT_LATERAL_CONTRAST,
                       model: Optional[MaterialModel] = None,
                       n_vertical: Optional[float] = None,
                       render_profile: bool = True) -> LateralSolution:
    """Fundamental lateral solution for the ridge of the given mode.

    The vertical n_eff becomes the lateral core index; the lateral cladding
    sits `lateral_contrast` below it (etch model).  Boundary conditions are
    swapped: a vertically-TE mode is solved with TM conditions laterally and
    vice versa.  At lateral cutoff the vertical index is returned with
    `cutoff_fallback=True`.
    """
    model = model or DEFAULT_MODEL
    if n_vertical is None:
        if mode_class == "bragg":
            n_vertical = find_bragg_mode(stack, lam_um, pol, model, render_profiles=False).n_eff
        else:
            modes = find_tir_modes(stack, lam_um, pol, model, render_profiles=False)
            if not modes:
                raise ModeNotFoundError(f"no TIR mode for pol={pol} at {lam_um:.6g} um")
            n_vertical = modes[0].n_eff
    n_co = float(n_vertical)
    n_cl = n_co - lateral_contrast
    lateral_tm = not _is_tm(pol)  # boundary-condition swap
    w = 1e-3 * stack.ridge_width_nm
    k0 = TWO_PI / lam_um
    if n_cl <= 0 or n_cl >= n_co:
        raise ValidationError(f"lateral contrast {lateral_contrast} leaves no guiding step")
    V = 0.5 * w * k0 * np.sqrt(n_co * n_co - n_cl * n_cl)
    ratio = (n_co / n_cl) ** 2 if lateral_tm else 1.0

    def g(u):
        return ratio * u * np.tan(u) - np.sqrt(max(V * V - u * u, 0.0))

    a, b = 1e-12, min(V, np.pi / 2.0) - 1e-12
    if b <= a or g(a) * g(b) > 0:
        x, X = _render_lateral_fallback(w) if render_profile else (np.zeros(0), np.zeros(0))
        return LateralSolution(n_eff=n_co, n_core=n_co, n_clad=n_cl, width_um=w,
                               lateral_tm=lateral_tm, cutoff_fallback=True,
                               grid_um=x, field=X)
    fa = g(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = g(m)
        if fa * fm <= 0:
            b = m
        else:
            a = m
            fa = fm
        if b - a < NEFF_TOL:
            break
    u = 0.5 * (a + b)
    s = u / (0.5 * w * k0)
    n_lat = float(np.sqrt(n_co * n_co - s * s))
    if render_profile:
        x, X = _render_lateral(n_co, n_cl, n_lat, w, k0, lateral_tm)
    else:
        x, X = np.zeros(0), np.zeros(0)
    return LateralSolution(n_eff=n_lat, n_core=n_co, n_clad=n_cl, width_um=w,
                           lateral_tm=lateral_tm, cutoff_fallback=False,
                           grid_um=x, field=X)


def _render_lateral(n_co, n_cl, n_lat, w, k0, lateral_tm,
                    dx_um: float = LATERAL_SAMPLE_NM * 1e-3, span_factor: float = 6.0):
    kx = np.sqrt(max(n_co * n_co - n_lat * n_lat, 0.0)) * k0
    gam = np.sqrt(max(n_lat * n_lat - n_cl * n_cl, 0.0)) * k0
    half = 0.5 * w
    xmax = half + max(span_factor / max(gam, 1e-6), 2.0 * w)
    x = np.arange(0.0, xmax, dx_um)
    inside = x <= half
    edge = np.cos(kx * half)
    jump = (n_co / n_cl) ** 2 if lateral_tm else 1.0  # E-field step at the wall
    X = np.where(inside, np.cos(kx * x), edge * jump * np.exp(-gam * (x - half)))
    xf = np.concatenate([-x[:0:-1], x])
    Xf = np.concatenate([X[:0:-1], X])
    norm = np.trapezoid(Xf * Xf, xf)
    return xf, Xf / np.sqrt(norm)


def _render_lateral_fallback(w, dx_um: float = LATERAL_SAMPLE_NM * 1e-3):
    # below lateral cutoff: represent the unconfined field as a wide Gaussian
    waist = 2.0 * w
    x = np.arange(0.0, 5.0 * waist, dx_um)
    X = np.exp(-(x / waist) ** 2)
    xf = np.concatenate([-x[:0:-1], x])
    Xf = np.concatenate([X[:0:-1], X])
    return xf, Xf / np.sqrt(np.trapezoid(Xf * Xf, xf))


@dataclass(frozen=True)
class ModeProfile2D:
    """Separable normalized ridge-mode profile U(x, y) = X(x) Y(y)."""

    x_um: np.ndarray
    x_field: np.ndarray
    y_um: np.ndarray
    y_field: np.ndarray
    n_eff: float

    def samples(self) -> np.ndarray:
        return np.outer(self.y_field, self.x_field)


def mode_profile_2d(mode: GuidedMode, ridge: LateralSolution) -> ModeProfile2D:
    """Combine a vertical mode and its lateral solution into a 2-D profile."""
    if mode.grid_um.size == 0 or ridge.grid_um.size == 0:
        raise ValidationError("profiles were not rendered for this mode")
    return ModeProfile2D(x_um=ridge.grid_um, x_field=ridge.field,
                         y_um=mode.grid_um, y_field=mode.field,
                         n_eff=ridge.n_eff)


def dump_profile_csv(path, grid_um: np.ndarray, field: np.ndarray) -> None:
    """Write a 1-D profile as CSV with columns position_nm, re_u, im_u."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("position_nm,re_u,im_u\n")
        for y, u in zip(grid_um, field):
            fh.write(f"{1e3 * y:.9g},{np.real(u):.9g},{np.imag(u):.9g}\n")
