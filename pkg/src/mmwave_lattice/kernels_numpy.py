"""Pure numpy/Python event-evaluation kernels (fallback backend).

The scalar helpers (walk_blocked, index_below_d2, region_code) are the single
source of truth for the per-point geometry; the numba backend JIT-compiles
these same functions, so the two backends cannot drift apart semantically.
The grid-scan part is vectorized here and written as loops there; both reduce
with exact min/max so results are bit-identical.

Kernel coordinate conventions: lengths in site units (√s = 1), lattice frame
(site (a,b) covers [a-1/2, a+1/2) x [b-1/2, b+1/2)), marks array indexed
[a + H, b + H].  The user sits at (ux, uy) with |ux|,|uy| < 1/2 (origin
placement: (0, 0)).
"""

import math

import numpy as np

# Keep in sync with geometry._D2_EPS / numutil.SNAP_EPS (duplicated as
# literals so the numba backend can compile these functions standalone).
_D2_EPS = 1e-9
_SNAP = 1e-9


def walk_blocked(marks, H, kthr, x0, y0, x1, y1):
    """True iff the segment (site units, lattice frame) enters the open
    interior of a cell with mark in {1..kthr}.

    Steps through the grid-line crossing parameters and tests the cell at the
    midpoint of each crossing-free sub-interval; midpoints lie strictly inside
    their cell, which realizes the open-interior blockage rule exactly (edge
    grazing and corner cutting never block).
    """
    X0 = x0 + 0.5 + H
    Y0 = y0 + 0.5 + H
    X1 = x1 + 0.5 + H
    Y1 = y1 + 0.5 + H
    dx = X1 - X0
    dy = Y1 - Y0
    # running exactly along a grid line: no open interior is ever entered
    if dx == 0.0 and X0 == math.floor(X0):
        return False
    if dy == 0.0 and Y0 == math.floor(Y0):
        return False

    if dx > 0.0:
        kx = math.floor(X0) + 1.0
        tx = (kx - X0) / dx
        sx = 1.0
    elif dx < 0.0:
        kx = math.ceil(X0) - 1.0
        tx = (kx - X0) / dx
        sx = -1.0
    else:
        tx = 2.0
        kx = 0.0
        sx = 0.0
    if dy > 0.0:
        ky = math.floor(Y0) + 1.0
        ty = (ky - Y0) / dy
        sy = 1.0
    elif dy < 0.0:
        ky = math.ceil(Y0) - 1.0
        ty = (ky - Y0) / dy
        sy = -1.0
    else:
        ty = 2.0
        ky = 0.0
        sy = 0.0

    t_prev = 0.0
    while True:
        t = tx if tx < ty else ty
        if t > 1.0:
            t = 1.0
        if t > t_prev:
            tm = 0.5 * (t_prev + t)
            ia = int(math.floor(X0 + tm * dx))
            ib = int(math.floor(Y0 + tm * dy))
            m = marks[ia, ib]
            if m > 0 and m <= kthr:
                return True
        if t >= 1.0:
            return False
        t_prev = t
        if tx <= ty:
            kx += sx
            tx = (kx - X0) / dx
        else:
            ky += sy
            ty = (ky - Y0) / dy


def index_below_d2(d2):
    """Largest n >= 0 with (n + 1/2)^2 <= d2 (snap-guarded), else -1."""
    if d2 < 0.25 - _D2_EPS:
        return -1
    n = int(math.floor(math.sqrt(d2) - 0.5 + _SNAP))
    eps = _D2_EPS * (d2 if d2 > 1.0 else 1.0)
    while (n + 1.5) * (n + 1.5) <= d2 + eps:
        n += 1
    while n >= 0 and (n + 0.5) * (n + 0.5) > d2 + eps:
        n -= 1
    return n


def region_code(a, b):
    """Internal region code for a non-origin site: 0..3 = axis strips
    (+x, +y, -x, -y), 4..7 = quadrants (+,+), (-,+), (-,-), (+,-)."""
    if b == 0:
        return 0 if a > 0 else 2
    if a == 0:
        return 1 if b > 0 else 3
    if a > 0:
        return 4 if b > 0 else 7
    return 5 if b > 0 else 6


# --- static per-window grids (trial-independent, cached) ----------------------

_GRIDS = {}


def _grids(H):
    g = _GRIDS.get(H)
    if g is None:
        side = 2 * H + 1
        idx = np.arange(-H, H + 1, dtype=np.float64)
        A = np.broadcast_to(idx[:, None], (side, side)).copy()
        B = np.broadcast_to(idx[None, :], (side, side)).copy()
        cheb = np.maximum(np.abs(A), np.abs(B))
        reg = np.empty((side, side), dtype=np.int64)
        for i, a in enumerate(range(-H, H + 1)):
            for j, b in enumerate(range(-H, H + 1)):
                reg[i, j] = -1 if (a == 0 and b == 0) else region_code(a, b)
        g = (A, B, cheb, reg)
        _GRIDS[H] = g
    return g


def _site_distance2_grid(A, B, ux, uy):
    dxx = np.maximum(np.abs(ux - A) - 0.5, 0.0)
    dyy = np.maximum(np.abs(uy - B) - 0.5, 0.0)
    return dxx * dxx + dyy * dyy


def _minima(mask, cheb, d2, reg):
    """(min_cheb, d2_all, d2_per_region[8]) over the masked sites."""
    if not mask.any():
        return 10 ** 9, math.inf, np.full(8, math.inf)
    ch = int(cheb[mask].min())
    vals = d2[mask]
    d2all = float(vals.min())
    d2reg = np.full(8, math.inf)
    regs = reg[mask]
    for r in range(8):
        sel = regs == r
        if sel.any():
            d2reg[r] = float(vals[sel].min())
    return ch, d2all, d2reg


def _radii_from_minima(min_cheb, d2all, d2reg, cap_n, block_rule):
    if block_rule:
        ridx = min_cheb - 1
    elif math.isfinite(d2all):
        ridx = index_below_d2(d2all)
    else:
        ridx = cap_n
    if ridx > cap_n:
        ridx = cap_n
    ell = np.empty(8, dtype=np.int64)
    for r in range(8):
        e = index_below_d2(d2reg[r]) if math.isfinite(d2reg[r]) else cap_n
        ell[r] = cap_n if e > cap_n else e
    return ridx, ell


def _point_events(marks, H, kthr, px, py, rho_b, ridx, ell, ux, uy):
    """Evaluate (exact, mbfc, multi) for one tier's point set."""
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
    for i in range(len(px)):
        x = float(px[i])
        y = float(py[i])
        ddx = x - ux
        ddy = y - uy
        d2 = ddx * ddx + ddy * ddy
        if d2 > rb2:
            continue
        if not mbfc and rmin >= 0.0 and d2 <= rmin2:
            mbfc = True
        if exact and multi and mbfc:
            break
        if exact and multi:
            continue
        los = not walk_blocked(marks, H, kthr, ux, uy, x, y)
        if not los:
            continue
        exact = True
        a = int(math.floor(x + 0.5))
        b = int(math.floor(y + 0.5))
        if a == 0 and b == 0:
            multi = True
        else:
            e = ell[region_code(a, b)]
            if e >= 0:
                rr = e + 0.5
                if rr > rho_b:
                    rr = rho_b
                if d2 <= rr * rr:
                    multi = True
    return exact, mbfc, multi


def eval_single(occ, H, px, py, rho_b, cap_n, ux, uy, block_rule):
    """One uniform-lattice trial. Returns (ridx, mbfc, multi, exact)."""
    A, B, cheb, reg = _grids(H)
    mask = occ != 0
    d2 = _site_distance2_grid(A, B, ux, uy)
    min_cheb, d2all, d2reg = _minima(mask, cheb, d2, reg)
    ridx, ell = _radii_from_minima(min_cheb, d2all, d2reg, cap_n, block_rule)
    exact, mbfc, multi = _point_events(occ, H, 1, px, py, rho_b, ridx, ell, ux, uy)
    return ridx, mbfc, multi, exact


def eval_hetnet(marks, H, px, py, offsets, rhos, caps, ux, uy, block_rule):
    """One multi-height trial over K tiers.

    offsets[k]..offsets[k+1] slices tier k+1's points out of px/py.
    Returns uint8 array (K, 3): columns exact, mbfc, multi per tier.
    """
    A, B, cheb, reg = _grids(H)
    n_tiers = len(rhos)
    d2 = _site_distance2_grid(A, B, ux, uy)
    out = np.zeros((n_tiers, 3), dtype=np.uint8)
    # per-mark minima, then prefix over marks 1..k = what blocks tier k
    min_cheb = 10 ** 9
    d2all = math.inf
    d2reg = np.full(8, math.inf)
    for k in range(1, n_tiers + 1):
        mask = marks == k
        ch, da, dr = _minima(mask, cheb, d2, reg)
        if ch < min_cheb:
            min_cheb = ch
        if da < d2all:
            d2all = da
        d2reg = np.minimum(d2reg, dr)
        ridx, ell = _radii_from_minima(min_cheb, d2all, d2reg, int(caps[k - 1]),
                                       block_rule)
        lo, hi = int(offsets[k - 1]), int(offsets[k])
        exact, mbfc, multi = _point_events(marks, H, k, px[lo:hi], py[lo:hi],
                                           float(rhos[k - 1]), ridx, ell, ux, uy)
        out[k - 1, 0] = exact
        out[k - 1, 1] = mbfc
        out[k - 1, 2] = multi
    return out
