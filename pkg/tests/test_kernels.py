"""Backend parity and basic algebra of the transfer-matrix kernels."""

import numpy as np
import pytest

from brwsim import kernels
from brwsim.kernels import _residual_scan_numpy

PRE_N2 = np.array([3.18 ** 2])
PRE_T = np.array([0.185])
PER_N2 = np.array([3.37 ** 2, 3.06 ** 2])
PER_T = np.array([0.127, 0.309])
K0 = 2.0 * np.pi / 0.7751


@pytest.mark.parametrize("tm", [False, True])
@pytest.mark.parametrize("odd", [False, True])
def test_numba_and_numpy_paths_agree(tm, odd):
    grid = np.linspace(2.2, 3.05, 501)
    f_active, tr_active = kernels.residual_scan(grid, K0, PRE_N2, PRE_T,
                                                PER_N2, PER_T, tm, odd)
    f_ref, tr_ref = _residual_scan_numpy(grid, K0, PRE_N2, PRE_T, PER_N2, PER_T,
                                         tm, odd)
    np.testing.assert_allclose(f_active, f_ref, rtol=0, atol=1e-13)
    np.testing.assert_allclose(tr_active, tr_ref, rtol=0, atol=1e-10)


def test_bisect_root_matches_scan_sign_change():
    grid = np.linspace(2.5, 3.05, 2000)
    f, tr = kernels.residual_scan(grid, K0, PRE_N2, PRE_T, PER_N2, PER_T, True, False)
    ok = np.abs(tr) > 2.0
    idx = np.flatnonzero(ok[:-1] & ok[1:] & (f[:-1] * f[1:] < 0))
    assert idx.size >= 1
    i = idx[-1]
    root = kernels.bisect_root(grid[i], grid[i + 1], K0, PRE_N2, PRE_T,
                               PER_N2, PER_T, True, False)
    fr, _ = kernels.residual_scan(np.array([root]), K0, PRE_N2, PRE_T,
                                  PER_N2, PER_T, True, False)
    assert abs(fr[0]) < 1e-9


def test_near_zero_transverse_wavevector_is_smooth():
    # scan straight through n_eff = layer index; series branch must bridge it
    n_layer = np.sqrt(PER_N2[1])
    grid = np.linspace(n_layer - 1e-7, n_layer + 1e-7, 101)
    f, tr = kernels.residual_scan(grid, K0, PRE_N2, PRE_T, PER_N2, PER_T, False, False)
    assert np.all(np.isfinite(f)) and np.all(np.isfinite(tr))
    assert np.max(np.abs(np.diff(tr))) < 1e-6
