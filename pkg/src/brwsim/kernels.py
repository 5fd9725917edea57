"""Hot numeric kernels for the multilayer mode solver.

Everything here operates on a symmetric stack described from its symmetry
plane outward: a list of "pre" layers (the first entry is the half core,
optionally followed by extra inner layers) and a two-layer period that
repeats to infinity (semi-infinite periodic cladding, handled through the
decaying Bloch eigenvector of the per-period transfer matrix).

The transverse state vector is (U, V) with U the principal field and
V = U' for TE or V = U'/n^2 for TM, so both components are continuous
across interfaces.

Two interchangeable backends are provided: numba-compiled kernels (default)
and pure numpy.  Set the environment variable ``BRWSIM_DISABLE_NUMBA=1``
before import to force the numpy path.  ``benchmarks/bench_kernels.py``
compares the two.
"""

from __future__ import annotations

import os

import numpy as np

USING_NUMBA = os.environ.get("BRWSIM_DISABLE_NUMBA", "").strip() not in ("1", "true", "yes")
if USING_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - exercised via the env flag instead
        USING_NUMBA = False

# |q^2| t^2 below this uses the series forms (q -> 0 limit of a layer)
_SMALL_PHASE2 = 1e-9


def _residual_scan_numpy(neff, k0, pre_n2, pre_t, per_n2, per_t, tm, odd):
    """Dispersion-relation residual and cladding Bloch trace on an n_eff grid.

    Returns (f, trace): f is the normalized cross product between the state
    propagated from the symmetry plane and the decaying Bloch eigenvector of
    the period matrix; a guided mode is a zero of f inside a bandgap
    (|trace| > 2).
    """
    neff2 = np.asarray(neff, dtype=np.float64) ** 2
    if odd:
        U = np.zeros_like(neff2)
        V = np.ones_like(neff2)
    else:
        U = np.ones_like(neff2)
        V = np.zeros_like(neff2)

    def entries(n2, t):
        q2 = k0 * k0 * (n2 - neff2)
        phi2 = q2 * t * t
        small = np.abs(phi2) < _SMALL_PHASE2
        q = np.sqrt(np.abs(q2))
        phi = q * t
        prop = q2 > 0.0
        c = np.where(prop, np.cos(phi), np.cosh(phi))
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(prop, np.sin(phi), np.sinh(phi)) / q
        qs = -q2 * t * (1.0 - phi2 / 6.0)  # -q*sin / +kappa*sinh share this series
        qs = np.where(small, qs, np.where(prop, -q * np.sin(phi), q * np.sinh(phi)))
        c = np.where(small, 1.0 - phi2 / 2.0 + phi2 * phi2 / 24.0, c)
        s = np.where(small, t * (1.0 - phi2 / 6.0), s)
        fac = n2 if tm else 1.0
        return c, fac * s, qs / fac

    for n2, t in zip(pre_n2, pre_t):
        c, b, g = entries(n2, t)
        U, V = c * U + b * V, g * U + c * V

    c1, b1, g1 = entries(per_n2[0], per_t[0])
    c2, b2, g2 = entries(per_n2[1], per_t[1])
    # period matrix M2 @ M1 (inner layer traversed first)
    A = c2 * c1 + b2 * g1
    B = c2 * b1 + b2 * c1
    Cm = g2 * c1 + c2 * g1
    D = g2 * b1 + c2 * c1
    tr = A + D
    disc = np.sqrt(np.maximum(tr * tr - 4.0, 0.0))
    lam = np.where(tr >= 0.0, tr - disc, tr + disc) / 2.0
    ev_u = B
    ev_v = lam - A
    alt = np.abs(B) < 1e-300
    ev_u = np.where(alt, lam - D, ev_u)
    ev_v = np.where(alt, Cm, ev_v)
    norm = np.hypot(U, V) * np.hypot(ev_u, ev_v)
    f = (U * ev_v - V * ev_u) / np.where(norm == 0.0, 1.0, norm)
    return f, tr


def _bisect_root_numpy(a, b, k0, pre_n2, pre_t, per_n2, per_t, tm, odd, tol=1e-12):
    fa, _ = _residual_scan_numpy(np.array([a]), k0, pre_n2, pre_t, per_n2, per_t, tm, odd)
    fa = fa[0]
    for _ in range(200):
        m = 0.5 * (a + b)
        fm, _ = _residual_scan_numpy(np.array([m]), k0, pre_n2, pre_t, per_n2, per_t, tm, odd)
        fm = fm[0]
        if fa * fm <= 0.0:
            b = m
        else:
            a = m
            fa = fm
        if b - a < tol:
            break
    return 0.5 * (a + b)


if USING_NUMBA:

    @njit(cache=True)
    def _state_through_layer(U, V, n2, t, k0, neff2, tm):
        q2 = k0 * k0 * (n2 - neff2)
        phi2 = q2 * t * t
        if abs(phi2) < _SMALL_PHASE2:
            c = 1.0 - phi2 / 2.0 + phi2 * phi2 / 24.0
            s = t * (1.0 - phi2 / 6.0)
            qs = -q2 * t * (1.0 - phi2 / 6.0)
        elif q2 > 0.0:
            q = np.sqrt(q2)
            c = np.cos(q * t)
            s = np.sin(q * t) / q
            qs = -q * np.sin(q * t)
        else:
            q = np.sqrt(-q2)
            c = np.cosh(q * t)
            s = np.sinh(q * t) / q
            qs = q * np.sinh(q * t)
        fac = n2 if tm else 1.0
        return c * U + fac * s * V, (qs / fac) * U + c * V

    @njit(cache=True)
    def _layer_entries(n2, t, k0, neff2, tm):
        q2 = k0 * k0 * (n2 - neff2)
        phi2 = q2 * t * t
        if abs(phi2) < _SMALL_PHASE2:
            c = 1.0 - phi2 / 2.0 + phi2 * phi2 / 24.0
            s = t * (1.0 - phi2 / 6.0)
            qs = -q2 * t * (1.0 - phi2 / 6.0)
        elif q2 > 0.0:
            q = np.sqrt(q2)
            c = np.cos(q * t)
            s = np.sin(q * t) / q
            qs = -q * np.sin(q * t)
        else:
            q = np.sqrt(-q2)
            c = np.cosh(q * t)
            s = np.sinh(q * t) / q
            qs = q * np.sinh(q * t)
        fac = n2 if tm else 1.0
        return c, fac * s, qs / fac

    @njit(cache=True)
    def _residual_scalar(neff, k0, pre_n2, pre_t, per_n2, per_t, tm, odd):
        neff2 = neff * neff
        if odd:
            U, V = 0.0, 1.0
        else:
            U, V = 1.0, 0.0
        for i in range(pre_n2.shape[0]):
            U, V = _state_through_layer(U, V, pre_n2[i], pre_t[i], k0, neff2, tm)
        c1, b1, g1 = _layer_entries(per_n2[0], per_t[0], k0, neff2, tm)
        c2, b2, g2 = _layer_entries(per_n2[1], per_t[1], k0, neff2, tm)
        A = c2 * c1 + b2 * g1
        B = c2 * b1 + b2 * c1
        Cm = g2 * c1 + c2 * g1
        D = g2 * b1 + c2 * c1
        tr = A + D
        d2 = tr * tr - 4.0
        disc = np.sqrt(d2) if d2 > 0.0 else 0.0
        lam = (tr - disc) / 2.0 if tr >= 0.0 else (tr + disc) / 2.0
        ev_u = B
        ev_v = lam - A
        if abs(B) < 1e-300:
            ev_u = lam - D
            ev_v = Cm
        norm = np.hypot(U, V) * np.hypot(ev_u, ev_v)
        if norm == 0.0:
            norm = 1.0
        return (U * ev_v - V * ev_u) / norm, tr

    @njit(cache=True)
    def _residual_scan_numba(neff, k0, pre_n2, pre_t, per_n2, per_t, tm, odd):
        n = neff.shape[0]
        f = np.empty(n)
        tr = np.empty(n)
        for i in range(n):
            f[i], tr[i] = _residual_scalar(neff[i], k0, pre_n2, pre_t, per_n2, per_t, tm, odd)
        return f, tr

    @njit(cache=True)
    def _bisect_root_numba(a, b, k0, pre_n2, pre_t, per_n2, per_t, tm, odd, tol=1e-12):
        fa, _ = _residual_scalar(a, k0, pre_n2, pre_t, per_n2, per_t, tm, odd)
        for _ in range(200):
            m = 0.5 * (a + b)
            fm, _ = _residual_scalar(m, k0, pre_n2, pre_t, per_n2, per_t, tm, odd)
            if fa * fm <= 0.0:
                b = m
            else:
                a = m
                fa = fm
            if b - a < tol:
                break
        return 0.5 * (a + b)


def residual_scan(neff, k0, pre_n2, pre_t, per_n2, per_t, tm, odd):
    """Residual f and Bloch trace over an array of trial effective indices."""
    neff = np.ascontiguousarray(neff, dtype=np.float64)
    pre_n2 = np.ascontiguousarray(pre_n2, dtype=np.float64)
    pre_t = np.ascontiguousarray(pre_t, dtype=np.float64)
    per_n2 = np.ascontiguousarray(per_n2, dtype=np.float64)
    per_t = np.ascontiguousarray(per_t, dtype=np.float64)
    if USING_NUMBA:
        return _residual_scan_numba(neff, float(k0), pre_n2, pre_t, per_n2, per_t, bool(tm), bool(odd))
    return _residual_scan_numpy(neff, float(k0), pre_n2, pre_t, per_n2, per_t, bool(tm), bool(odd))


def bisect_root(a, b, k0, pre_n2, pre_t, per_n2, per_t, tm, odd, tol=1e-12):
    """Bisect a bracketed sign change of the residual down to ``tol`` in n_eff."""
    pre_n2 = np.ascontiguousarray(pre_n2, dtype=np.float64)
    pre_t = np.ascontiguousarray(pre_t, dtype=np.float64)
    per_n2 = np.ascontiguousarray(per_n2, dtype=np.float64)
    per_t = np.ascontiguousarray(per_t, dtype=np.float64)
    if USING_NUMBA:
        return _bisect_root_numba(float(a), float(b), float(k0), pre_n2, pre_t,
                                  per_n2, per_t, bool(tm), bool(odd), float(tol))
    return _bisect_root_numpy(float(a), float(b), float(k0), pre_n2, pre_t,
                              per_n2, per_t, bool(tm), bool(odd), float(tol))
