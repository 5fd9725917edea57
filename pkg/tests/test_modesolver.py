"""Mode-solver checks against independent analytic oracles."""

import numpy as np
import pytest
from scipy.optimize import brentq

from brwsim.errors import NoBandgapModeError, ValidationError
from brwsim.materials import MaterialModel
from brwsim.modesolver import (LayerStack, dispersion_residual, effective_index_2d,
                               find_bragg_mode, find_tir_modes, layer_matrix,
                               mode_profile_2d, period_trace)

TWO_PI = 2.0 * np.pi


# --- independent oracle: symmetric three-layer slab -------------------------

def slab_neff_oracle(n_core, n_clad, thickness_um, lam_um, pol, parity="even"):
    """Fundamental symmetric-slab index from the standard transcendental form."""
    k0 = TWO_PI / lam_um
    half = 0.5 * thickness_um
    V = half * k0 * np.sqrt(n_core ** 2 - n_clad ** 2)
    fac = (n_core / n_clad) ** 2 if pol == "TM" else 1.0

    if parity == "even":
        def g(u):
            return fac * u * np.tan(u) - np.sqrt(max(V * V - u * u, 0.0))
        lo, hi = 1e-12, min(V, np.pi / 2) - 1e-12
    else:
        def g(u):
            return -fac * u / np.tan(u) - np.sqrt(max(V * V - u * u, 0.0))
        lo, hi = np.pi / 2 + 1e-12, min(V, np.pi) - 1e-12
    if hi <= lo or g(lo) * g(hi) > 0:
        return None
    u = brentq(g, lo, hi, xtol=1e-14)
    return float(np.sqrt(n_core ** 2 - (u / (half * k0)) ** 2))


def three_layer_stack(x_core, t_core_nm, x_clad):
    """Uniform-cladding limit: both reflector layers identical."""
    return LayerStack.symmetric(core=(x_core, t_core_nm),
                                bilayer=((x_clad, 200.0), (x_clad, 200.0)))


def test_symmetric_slab_oracle_reference_case():
    model = MaterialModel()
    x_core, x_clad = 0.55, 0.9
    stack = three_layer_stack(x_core, 370.0, x_clad)
    lam = 1.55
    nc = model.refractive_index(x_core, lam)
    ncl = model.refractive_index(x_clad, lam)
    expected = slab_neff_oracle(nc, ncl, 0.370, lam, "TE")
    modes = find_tir_modes(stack, lam, "TE", render_profiles=False)
    assert modes, "fundamental slab mode missing"
    assert modes[0].n_eff == pytest.approx(expected, abs=1e-6)


def test_symmetric_slab_oracle_randomized_20_slabs():
    model = MaterialModel()
    rng = np.random.default_rng(20240917)
    checked = 0
    while checked < 20:
        x_core = rng.uniform(0.0, 0.5)
        x_clad = x_core + rng.uniform(0.15, 0.45)
        if x_clad > 1.0:
            continue
        t_nm = rng.uniform(150.0, 700.0)
        lam = rng.uniform(1.2, 1.7)
        pol = "TE" if rng.random() < 0.5 else "TM"
        nc = model.refractive_index(x_core, lam)
        ncl = model.refractive_index(x_clad, lam)
        expected = slab_neff_oracle(nc, ncl, 1e-3 * t_nm, lam, pol)
        if expected is None:
            continue
        stack = three_layer_stack(x_core, t_nm, x_clad)
        modes = find_tir_modes(stack, lam, pol, render_profiles=False)
        assert modes, f"slab {checked}: no mode found"
        assert modes[0].n_eff == pytest.approx(expected, abs=1e-6), f"slab {checked}"
        checked += 1


def test_te_fundamental_not_below_tm():
    stack = three_layer_stack(0.4, 370.0, 0.9)
    te = find_tir_modes(stack, 1.55, "TE", render_profiles=False)[0].n_eff
    tm = find_tir_modes(stack, 1.55, "TM", render_profiles=False)[0].n_eff
    assert te >= tm


def test_thin_core_has_no_higher_modes_and_monotone_count():
    counts = []
    for t_nm in (2000.0, 800.0, 300.0, 60.0):
        stack = three_layer_stack(0.3, t_nm, 0.9)
        counts.append(len(find_tir_modes(stack, 1.55, "TE", render_profiles=False)))
    assert counts == sorted(counts, reverse=True)
    assert counts[-1] <= 1  # symmetric slab: fundamental survives, others cut off


# --- single-layer matrix algebra --------------------------------------------

def test_zero_thickness_layer_is_identity():
    m = layer_matrix(3.2, 0.0, 3.0, 1.55, "TE")
    np.testing.assert_allclose(m, np.eye(2), atol=1e-15)


@pytest.mark.parametrize("pol", ["TE", "TM"])
@pytest.mark.parametrize("n,neff", [(3.4, 3.0), (3.0, 3.2)])
def test_layer_matrix_unimodular(pol, n, neff):
    m = layer_matrix(n, 250.0, neff, 1.55, pol)
    assert abs(np.linalg.det(m) - 1.0) < 1e-12


@pytest.mark.parametrize("pol", ["TE", "TM"])
def test_two_half_layers_compose_to_one(pol):
    full = layer_matrix(3.35, 308.0, 3.05, 1.55, pol)
    half = layer_matrix(3.35, 154.0, 3.05, 1.55, pol)
    np.testing.assert_allclose(half @ half, full, rtol=0, atol=1e-12)


def test_quarter_wave_trace_matches_impedance_formula():
    lam, neff = 0.7751, 3.0
    n1, n2 = 3.37, 3.06
    q1 = TWO_PI / lam * np.sqrt(n1 ** 2 - neff ** 2)
    q2 = TWO_PI / lam * np.sqrt(n2 ** 2 - neff ** 2)
    t1, t2 = 1e3 * np.pi / (2 * q1), 1e3 * np.pi / (2 * q2)  # quarter waves, nm
    for pol in ("TE", "TM"):
        r = (q1 / q2) if pol == "TE" else (q1 * n2 ** 2) / (q2 * n1 ** 2)
        expected = -(r + 1.0 / r)
        tr = period_trace(((n1, t1), (n2, t2)), neff, lam, pol)
        assert tr == pytest.approx(expected, abs=1e-9)
        assert abs(tr) > 2.0


def test_identical_layers_have_no_gap_for_propagating_field():
    tr = period_trace(((3.2, 180.0), (3.2, 240.0)), 3.0, 1.55, "TE")
    assert abs(tr) <= 2.0


def test_trace_continuous_across_gap_edge():
    neff = np.linspace(2.95, 3.2, 4001)
    tr = np.array([period_trace(((3.37, 127.0), (3.06, 309.0)), v, 0.7751, "TM")
                   for v in neff])
    assert np.max(np.abs(np.diff(tr))) < 0.05


# --- reference structure ----------------------------------------------------

@pytest.fixture(scope="module")
def reference_stack():
    return LayerStack.reference_design()


def test_reference_constructor_values(reference_stack):
    st = reference_stack
    assert st.core.thickness_nm == 370.0
    assert st.core.x == 0.7
    b1, b2 = st.bilayer
    assert (b1.x, b1.thickness_nm) == (0.4, 127.0)
    assert (b2.x, b2.thickness_nm) == (0.9, 309.0)
    assert st.ridge_width_nm == 1770.0
    assert st.length_mm == 1.0
    assert st.bilayers_per_side == 8
    assert len(st.layers) == 33


def test_pump_bragg_mode_exists(reference_stack):
    mode = find_bragg_mode(reference_stack, 0.7751, "TM")
    assert mode.mode_class == "bragg"
    nc = MaterialModel().refractive_index(0.7, 0.7751)
    n2 = MaterialModel().refractive_index(0.9, 0.7751)
    assert mode.n_eff < min(nc, n2)
    assert mode.n_eff == pytest.approx(3.0, abs=0.01)


def test_no_gap_stack_raises(reference_stack):
    uniform = LayerStack.symmetric(core=(0.7, 370.0),
                                   bilayer=((0.4, 127.0), (0.4, 127.0)))
    with pytest.raises(NoBandgapModeError):
        find_bragg_mode(uniform, 0.7751, "TM", render_profiles=False)


def test_bragg_envelope_decay_matches_bloch_eigenvalue(reference_stack):
    mode = find_bragg_mode(reference_stack, 0.7751, "TM")
    b1, b2 = reference_stack.bilayer
    model = MaterialModel()
    n1 = model.refractive_index(b1.x, 0.7751)
    n2 = model.refractive_index(b2.x, 0.7751)
    tr = period_trace(((n1, b1.thickness_nm), (n2, b2.thickness_nm)),
                      mode.n_eff, 0.7751, "TM")
    lam_dec = (tr - np.sign(tr) * np.sqrt(tr * tr - 4.0)) / 2.0
    # sample the rendered field one period apart, inside the periodic region
    period_um = 1e-3 * (b1.thickness_nm + b2.thickness_nm)
    y0 = 0.5e-3 * reference_stack.core.thickness_nm + 0.25 * period_um
    u1 = np.interp(y0, mode.grid_um, mode.field)
    u2 = np.interp(y0 + period_um, mode.grid_um, mode.field)
    assert u2 / u1 == pytest.approx(lam_dec, abs=1e-6)


def test_mode_profiles_normalized(reference_stack):
    for mode in (find_bragg_mode(reference_stack, 0.7751, "TM"),
                 find_tir_modes(reference_stack, 1.5502, "TE")[0]):
        power = np.trapezoid(mode.field ** 2, mode.grid_um)
        assert power == pytest.approx(1.0, abs=1e-9)


def test_residual_verification_below_1e9(reference_stack):
    mode = find_tir_modes(reference_stack, 1.5502, "TE", render_profiles=False)[0]
    res = dispersion_residual(reference_stack, 1.5502, "TE", mode.parity, mode.n_eff)
    assert abs(res) < 1e-9


def test_root_is_deterministic(reference_stack):
    a = find_tir_modes(reference_stack, 1.5502, "TM", render_profiles=False)[0].n_eff
    b = find_tir_modes(reference_stack, 1.5502, "TM", render_profiles=False)[0].n_eff
    assert a == b


def test_tir_confinement_core_plus_first_bilayer(reference_stack):
    mode = find_tir_modes(reference_stack, 1.5502, "TE")[0]
    half = 0.5e-3 * 370.0 + 1e-3 * (127.0 + 309.0)
    assert mode.power_fraction(half) > 0.5


# --- effective-index reduction ----------------------------------------------

def test_wide_ridge_approaches_vertical_index(reference_stack):
    wide = reference_stack.with_parameter("ridge_width", 1e9)
    lat = effective_index_2d(wide, 1.5502, "TE", "tir", lateral_contrast=0.05,
                             render_profile=False)
    vertical = find_tir_modes(wide, 1.5502, "TE", render_profiles=False)[0].n_eff
    assert lat.n_eff == pytest.approx(vertical, abs=1e-9)


def test_finite_ridge_lowers_index(reference_stack):
    lat = effective_index_2d(reference_stack, 1.5502, "TE", "tir",
                             lateral_contrast=0.05, render_profile=False)
    vertical = find_tir_modes(reference_stack, 1.5502, "TE",
                              render_profiles=False)[0].n_eff
    assert lat.n_eff < vertical
    assert not lat.cutoff_fallback


def test_lateral_profiles_separable_fubini(reference_stack):
    mode = find_tir_modes(reference_stack, 1.5502, "TE")[0]
    lat = effective_index_2d(reference_stack, 1.5502, "TE", "tir",
                             lateral_contrast=0.3, n_vertical=mode.n_eff)
    prof = mode_profile_2d(mode, lat)
    u = prof.samples()
    power_2d = np.trapezoid(np.trapezoid(u * u, prof.x_um, axis=1), prof.y_um)
    assert power_2d == pytest.approx(1.0, abs=1e-9)
    # 2-D overlap of two separable modes factorizes
    mode_tm = find_tir_modes(reference_stack, 1.5502, "TM")[0]
    lat_tm = effective_index_2d(reference_stack, 1.5502, "TM", "tir",
                                lateral_contrast=0.3, n_vertical=mode_tm.n_eff)
    prof_tm = mode_profile_2d(mode_tm, lat_tm)
    grid_x = np.linspace(-4, 4, 3201)
    grid_y = np.linspace(-6, 6, 4801)
    f1x = np.interp(grid_x, prof.x_um, prof.x_field, left=0, right=0)
    f2x = np.interp(grid_x, prof_tm.x_um, prof_tm.x_field, left=0, right=0)
    f1y = np.interp(grid_y, prof.y_um, prof.y_field, left=0, right=0)
    f2y = np.interp(grid_y, prof_tm.y_um, prof_tm.y_field, left=0, right=0)
    overlap_2d = np.trapezoid(f1y * f2y, grid_y) * np.trapezoid(f1x * f2x, grid_x)
    product_1d = (np.trapezoid(f1x * f2x, grid_x) * np.trapezoid(f1y * f2y, grid_y))
    assert overlap_2d == pytest.approx(product_1d, abs=1e-12)


# --- validation --------------------------------------------------------------

def test_asymmetric_stack_rejected():
    layers = [(0.4, 127.0), (0.9, 309.0)]
    with pytest.raises(ValidationError):
        LayerStack.symmetric(core=(0.7, -370.0), bilayer=layers)
    with pytest.raises(ValidationError):
        LayerStack.symmetric(core=(1.4, 370.0), bilayer=layers)
