"""Numba-JIT event-evaluation kernels (default backend).

The scalar geometry helpers are JIT-wrapped straight from kernels_numpy so
both backends execute the same source.  The grid scan is a plain loop here
(numba's sweet spot); the reductions are exact mins, so the outputs match
the numpy backend bit for bit.
"""

import numpy as np
from numba import njit

from . import kernels_numpy as _ref

_walk = njit(cache=True, nogil=True)(_ref.walk_blocked)
_idx_below = njit(cache=True, nogil=True)(_ref.index_below_d2)
_region = njit(cache=True, nogil=True)(_ref.region_code)

# re-exported so callers can force compilation up front
walk_blocked = _walk
index_below_d2 = _idx_below
region_code = _region

_BIG = 10 ** 9


@njit(cache=True, nogil=True)
def _scan_minima(marks, H, lo_mark, hi_mark, ux, uy, d2reg):
    """Min Chebyshev index / min squared site distance (overall and per
    region) over sites with mark in [lo_mark, hi_mark].  d2reg is updated in
    place (length 8, pre-filled by the caller)."""
    side = 2 * H + 1
    min_cheb = _BIG
    d2all = np.inf
    for ia in range(side):
        a = ia - H
        for ib in range(side):
            m = marks[ia, ib]
            if m < lo_mark or m > hi_mark:
                continue
            b = ib - H
            dxx = abs(ux - a) - 0.5
            if dxx < 0.0:
                dxx = 0.0
            dyy = abs(uy - b) - 0.5
            if dyy < 0.0:
                dyy = 0.0
            d2 = dxx * dxx + dyy * dyy
            if d2 < d2all:
                d2all = d2
            c = abs(a)
            if abs(b) > c:
                c = abs(b)
            if c < min_cheb:
                min_cheb = c
            r = _region(a, b)
            if d2 < d2reg[r]:
                d2reg[r] = d2
    return min_cheb, d2all


@njit(cache=True, nogil=True)
def _radii(min_cheb, d2all, d2reg, cap_n, block_rule, ell):
    if block_rule:
        ridx = min_cheb - 1
    elif np.isfinite(d2all):
        ridx = _idx_below(d2all)
    else:
        ridx = cap_n
    if ridx > cap_n:
        ridx = cap_n
    for r in range(8):
        if np.isfinite(d2reg[r]):
            e = _idx_below(d2reg[r])
        else:
            e = cap_n
        ell[r] = cap_n if e > cap_n else e
    return ridx


@njit(cache=True, nogil=True)
def _point_events(marks, H, kthr, px, py, lo, hi, rho_b, ridx, ell, ux, uy):
    rb2 = rho_b * rho_b
    rmin = -1.0
    if ridx >= 0:
        rmin = ridx + 0.5
        if rmin > rho_b:
            rmin = rho_b
    rmin2 = rmin * rmin
    exact = False
    mbfc = False
    multi = False
    for i in range(lo, hi):
        x = px[i]
        y = py[i]
        ddx = x - ux
        ddy = y - uy
        d2 = ddx * ddx + ddy * ddy
        if d2 > rb2:
            continue
        if (not mbfc) and rmin >= 0.0 and d2 <= rmin2:
            mbfc = True
        if exact and multi and mbfc:
            break
        if exact and multi:
            continue
        if _walk(marks, H, kthr, ux, uy, x, y):
            continue
        exact = True
        a = int(np.floor(x + 0.5))
        b = int(np.floor(y + 0.5))
        if a == 0 and b == 0:
            multi = True
        else:
            e = ell[_region(a, b)]
            if e >= 0:
                rr = e + 0.5
                if rr > rho_b:
                    rr = rho_b
                if d2 <= rr * rr:
                    multi = True
    return exact, mbfc, multi


@njit(cache=True, nogil=True)
def eval_single(occ, H, px, py, rho_b, cap_n, ux, uy, block_rule):
    d2reg = np.full(8, np.inf)
    ell = np.empty(8, dtype=np.int64)
    min_cheb, d2all = _scan_minima(occ, H, 1, 1, ux, uy, d2reg)
    ridx = _radii(min_cheb, d2all, d2reg, cap_n, block_rule, ell)
    exact, mbfc, multi = _point_events(occ, H, 1, px, py, 0, len(px),
                                       rho_b, ridx, ell, ux, uy)
    return ridx, mbfc, multi, exact


@njit(cache=True, nogil=True)
def eval_hetnet(marks, H, px, py, offsets, rhos, caps, ux, uy, block_rule):
    n_tiers = len(rhos)
    out = np.zeros((n_tiers, 3), dtype=np.uint8)
    d2reg = np.full(8, np.inf)
    ell = np.empty(8, dtype=np.int64)
    min_cheb = _BIG
    d2all = np.inf
    for k in range(1, n_tiers + 1):
        # incorporate mark class k: the prefix 1..k blocks tier k
        ch, da = _scan_minima(marks, H, k, k, ux, uy, d2reg)
        if ch < min_cheb:
            min_cheb = ch
        if da < d2all:
            d2all = da
        ridx = _radii(min_cheb, d2all, d2reg, int(caps[k - 1]), block_rule, ell)
        exact, mbfc, multi = _point_events(marks, H, k, px, py,
                                           int(offsets[k - 1]), int(offsets[k]),
                                           float(rhos[k - 1]), ridx, ell, ux, uy)
        out[k - 1, 0] = exact
        out[k - 1, 1] = mbfc
        out[k - 1, 2] = multi
    return out
