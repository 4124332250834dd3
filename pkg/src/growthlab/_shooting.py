"""Batched geodesic integration on rotationally invariant conformal metrics.

Two charts are used:

* Polar (rho, theta), metric lam(rho)^2 (drho^2 + rho^2 dtheta^2).  With
  J = lam rho and launch angle psi measured from the outward radial
  direction, unit-speed geodesics conserve the Clairaut constant
  c = J(rho_0) sin(psi), and theta is strictly increasing whenever c > 0.
  The two-point problem "sweep bearing dtheta, arrive at radius rho_q"
  is therefore solved with theta as the independent variable and
  bisection on psi.  The radial state is compactified, x = rho/(1+rho).
  Launch angles whose arc escapes past a radius cap are stopped at the
  cap and kept as valid scan points (their arrival mismatch is positive
  by construction); without the stop, escaping arcs on complete disk
  metrics run into the chart-edge blowup of lam and stall the batch.

* Cartesian z, metric lam(|z|)^2 |dz|^2, geodesic equation
  z'' = -F(|z|) conj(z) z'^2 with F = (log lam)'(rho)/rho.  F has a
  finite limit at rho = 0 because lam is even, so this form is regular
  through the origin; it drives exponential-map circles about
  off-center points.


All trajectories march through one vectorized Cash-Karp RKF45 stepper
with per-member adaptive steps: a batch of launch angles or pairs costs
one pass regardless of how stiff its slowest member is.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import ShootingError

# Cash-Karp tableau
_A = [
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
]
_B5 = (37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771)
_B4 = (2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4)
_BE = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


def integrate_batch(rhs: Callable, y0: np.ndarray, t_end,
                    rtol: float = 1e-10, atol: float = 1e-12,
                    h0: float | None = None, max_sweeps: int = 20000,
                    stop_above=None):
    """March y' = rhs(y) from t = 0 to per-member t_end.

    y0 has shape (k, N): k state components for N independent members.
    rhs must be autonomous and vectorized over the member axis.  Returns
    (y_final, ok_mask).  Members whose step size underflows are flagged
    and left frozen.  stop_above = (component, threshold) halts a member
    once that state component reaches the (per-member) threshold; such
    members stay ok.
    """
    y = np.array(y0, copy=True)
    k, n = y.shape
    t_end = np.broadcast_to(np.asarray(t_end, dtype=float), (n,)).copy()
    t = np.zeros(n)
    h = np.full(n, h0 if h0 is not None else 1e-3 * np.max(t_end))
    h = np.minimum(h, t_end)
    ok = np.ones(n, dtype=bool)
    stopped = np.zeros(n, dtype=bool)
    if stop_above is not None:
        sidx, sval = stop_above
        sval = np.broadcast_to(np.asarray(sval, dtype=float), (n,))
        stopped = np.real(y[sidx]) >= sval
    active = (t < t_end) & ~stopped
    sweeps = 0
    while np.any(active):
        sweeps += 1
        if sweeps > max_sweeps:
            ok &= ~active
            break
        ha = np.where(active, h, 0.0)
        ks = []
        for stage in range(6):
            yst = y.copy()
            for j, a in enumerate(_A[stage]):
                yst += (a * ha) * ks[j]
            ks.append(rhs(yst))
        ynew = y.copy()
        err = np.zeros_like(y)
        for j in range(6):
            ynew += (_B5[j] * ha) * ks[j]
            if _BE[j] != 0.0:
                err += (_BE[j] * ha) * ks[j]
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(ynew))
        enorm = np.max(np.abs(err) / scale, axis=0)
        enorm = np.where(np.isfinite(enorm), enorm, np.inf)
        accept = active & (enorm <= 1.0)
        y = np.where(accept, ynew, y)
        t = np.where(accept, t + ha, t)
        grow = 0.9 * np.power(np.maximum(enorm, 1e-16), -0.2)
        shrink = 0.9 * np.power(np.maximum(enorm, 1e-16), -0.25)
        fac = np.where(enorm <= 1.0, np.minimum(grow, 5.0),
                       np.maximum(shrink, 0.2))
        h = np.where(active, h * fac, h)
        if stop_above is not None:
            stopped |= accept & (np.real(y[sidx]) >= sval)
        dead = active & (h < 1e-14) & (enorm > 1.0)
        ok &= ~dead
        active = (t < t_end * (1 - 1e-15)) & ~dead & ok & ~stopped
        h = np.where(active, np.minimum(h, t_end - t), h)
    return y, ok


def _d1_vec(profile, rho):
    """lam'(rho) vectorized; Richardson differences when no closed form."""
    if profile.d_lam is not None:
        return np.asarray(profile.d_lam(rho), dtype=float)
    h = np.maximum(1e-5, 1e-4 * rho)
    lam = profile.lam

    def ctr(step):
        return (lam(np.abs(rho + step)) - lam(np.abs(rho - step))) / (2 * step)

    return (4.0 * ctr(0.5 * h) - ctr(h)) / 3.0


# ---------------------------------------------------------------------------
# polar two-point problem

def _polar_rhs(profile, c, dtheta, x_clip, with_length):
    # rho is evaluated no further out than x_clip: trial stages that
    # overshoot the stopping cap must not touch the chart-edge blowup
    lam_f = profile.lam

    def rhs(y):
        x = np.clip(y[0], 0.0, x_clip)
        w = y[1]
        rho = np.maximum(x / (1.0 - x), 1e-300)
        lam = np.asarray(lam_f(rho), dtype=float)
        d1 = _d1_vec(profile, rho)
        dx = dtheta * w * lam * rho ** 2 / (c * (1.0 + rho) ** 2)
        dw = dtheta * c * (d1 * rho + lam) / (lam ** 2 * rho)
        if not with_length:
            return np.stack([dx, dw])
        ds = dtheta * (lam * rho) ** 2 / c
        return np.stack([dx, dw, ds])

    return rhs


def _terminal_x(profile, rho_p, psi, c_base, dtheta, x_cap, x_clip,
                rtol, with_length=False):
    """Integrate the polar system over tau in [0, 1]; returns terminal state.

    Members are stopped (still ok) once x reaches x_cap; their terminal
    x sits in [x_cap, x_clip] and reads as an overshoot.
    """
    n = psi.size
    c = c_base * np.sin(psi)
    x0 = rho_p / (1.0 + rho_p)
    comps = [np.full(n, x0) if np.ndim(rho_p) == 0 else x0.copy(),
             np.cos(psi)]
    if with_length:
        comps.append(np.zeros(n))
    y0 = np.stack([np.broadcast_to(cmp, (n,)).astype(float) for cmp in comps])
    rhs = _polar_rhs(profile, c, dtheta, x_clip, with_length)
    y, ok = integrate_batch(rhs, y0, 1.0, rtol=rtol, atol=1e-12, h0=1e-4,
                            stop_above=(0, x_cap))
    return y, ok


def connect_lengths(profile, rho_p, rho_q, dtheta, r_p, r_q, r_cap,
                    rho_of_r, angle_tol: float = 1e-10,
                    rtol: float = 1e-11) -> np.ndarray:
    """Distances for pairs ((rho_p, 0) -> (rho_q, dtheta)), dtheta in (0, pi].

    Shooting: scan launch angles for sign changes of the arrival-radius
    mismatch, bisect each bracket to angle_tol, then integrate the winners
    once more carrying arc length.  For dtheta = pi the broken radial path
    through the origin (length r_p + r_q) competes as a candidate; on
    asymptotically conical or cylindrical metrics the swept geodesic can
    undercut it, so the minimum over all candidates is returned.
    """
    rho_p = np.asarray(rho_p, dtype=float)
    rho_q = np.asarray(rho_q, dtype=float)
    dtheta = np.asarray(dtheta, dtype=float)
    r_p = np.asarray(r_p, dtype=float)
    r_q = np.asarray(r_q, dtype=float)
    npairs = rho_p.size
    rho_cap = rho_of_r(np.asarray(r_cap, dtype=float))
    x_cap = rho_cap / (1.0 + rho_cap)
    x_edge = (profile.rho_max / (1.0 + profile.rho_max)
              if math.isfinite(profile.rho_max) else 1.0)
    x_clip = x_cap + 0.5 * (x_edge - x_cap)
    c_base = np.asarray(profile.lam(rho_p), dtype=float) * rho_p
    x_q = rho_q / (1.0 + rho_q)

    scan = np.concatenate([
        np.geomspace(1e-4, 0.02, 4, endpoint=False),
        np.linspace(0.02, math.pi - 0.02, 21),
        math.pi - np.geomspace(1e-4, 0.02, 4, endpoint=False)[::-1],
    ])
    ns = scan.size
    psi_all = np.tile(scan, npairs)
    rep = np.repeat(np.arange(npairs), ns)
    y, ok = _terminal_x(profile, rho_p[rep], psi_all, c_base[rep],
                        dtheta[rep], x_cap[rep], x_clip[rep], rtol=1e-8)
    mism = np.where(ok, y[0] - x_q[rep], np.nan).reshape(npairs, ns)

    pair_idx, lo, hi, mlo = [], [], [], []
    for i in range(npairs):
        m = mism[i]
        found = 0
        for j in range(ns - 1):
            if not (np.isfinite(m[j]) and np.isfinite(m[j + 1])):
                continue
            if m[j] == 0.0 or (m[j] < 0) != (m[j + 1] < 0):
                pair_idx.append(i)
                lo.append(scan[j])
                hi.append(scan[j + 1])
                mlo.append(m[j])
                found += 1
                if found >= 4:
                    break
        if found == 0 and dtheta[i] < math.pi - 1e-9:
            raise ShootingError(
                f"no bracket for pair rho_p={rho_p[i]:g}, rho_q={rho_q[i]:g}, "
                f"dtheta={dtheta[i]:g}")

    best = np.full(npairs, np.inf)
    near_pi = dtheta >= math.pi - 1e-9
    best[near_pi] = (r_p + r_q)[near_pi]

    if pair_idx:
        pi_arr = np.asarray(pair_idx)
        lo = np.asarray(lo)
        hi = np.asarray(hi)
        mlo = np.asarray(mlo)
        iters = int(math.ceil(math.log2(float(np.max(hi - lo)) / angle_tol)))
        for it in range(max(iters, 1)):
            mid = 0.5 * (lo + hi)
            tol_here = rtol if np.max(hi - lo) < 1e-5 else 1e-8
            y, ok = _terminal_x(profile, rho_p[pi_arr], mid, c_base[pi_arr],
                                dtheta[pi_arr], x_cap[pi_arr], x_clip[pi_arr],
                                rtol=tol_here)
            mm = np.where(ok, y[0] - x_q[pi_arr], np.nan)
            bad = ~np.isfinite(mm)
            if np.any(bad):
                raise ShootingError("integration failed inside bisection")
            same = (mm < 0) == (mlo < 0)
            lo = np.where(same, mid, lo)
            mlo = np.where(same, mm, mlo)
            hi = np.where(same, hi, mid)
        psi_root = 0.5 * (lo + hi)
        y, ok = _terminal_x(profile, rho_p[pi_arr], psi_root, c_base[pi_arr],
                            dtheta[pi_arr], x_cap[pi_arr], x_clip[pi_arr],
                            rtol=rtol, with_length=True)
        if not np.all(ok):
            raise ShootingError("length integration failed")
        res = np.abs(y[0] - x_q[pi_arr])
        if np.any(res > 1e-5 * (1.0 + x_q[pi_arr])):
            worst = int(np.argmax(res))
            raise ShootingError(
                f"arrival radius off by {res[worst]:.2e} after bisection")
        for j, i in enumerate(pi_arr):
            best[i] = min(best[i], y[2][j])

    if np.any(~np.isfinite(best)):
        raise ShootingError("no connecting geodesic found for some pair")
    return best


# ---------------------------------------------------------------------------
# exponential-map circles (Cartesian chart)

def _cartesian_rhs(profile):
    logd = profile.log_deriv_over_rho

    def rhs(y):
        z, v = y[0], y[1]
        rho = np.abs(z)
        f = np.asarray(logd(rho), dtype=float)
        return np.stack([v, -f * np.conj(z) * v * v])

    return rhs


def exp_circle_points(profile, rho0: float, length: float,
                      phis: np.ndarray, rtol: float = 1e-11) -> np.ndarray:
    """Endpoints of geodesics from (rho0, 0) with launch angles phis."""
    lam0 = float(profile.lam(np.asarray(rho0)))
    n = phis.size
    z0 = np.full(n, rho0, dtype=complex)
    v0 = np.exp(1j * phis) / lam0
    y0 = np.stack([z0, v0])
    y, ok = integrate_batch(_cartesian_rhs(profile), y0, float(length),
                            rtol=rtol, atol=1e-13, h0=length * 1e-3)
    if not np.all(ok):
        raise ShootingError("exponential map integration failed")
    return y[0]


def circle_interpolator(profile, center: complex, r: float,
                        n_base: int = 1024) -> Callable:
    """phi -> z(phi) on the geodesic circle of radius r about center.

    One batched integration over n_base launch angles, then periodic cubic
    splines in phi.  phi = 0 launches away from the origin.
    """
    from scipy.interpolate import CubicSpline

    a = abs(center)
    rot = center / a
    phis = np.linspace(0.0, 2.0 * math.pi, n_base, endpoint=False)
    pts = exp_circle_points(profile, a, r, phis) * rot
    phi_ext = np.concatenate([phis, [2.0 * math.pi]])
    re = CubicSpline(phi_ext, np.concatenate([pts.real, [pts.real[0]]]),
                     bc_type="periodic")
    im = CubicSpline(phi_ext, np.concatenate([pts.imag, [pts.imag[0]]]),
                     bc_type="periodic")

    def at(phi):
        ph = np.mod(phi, 2.0 * math.pi)
        return re(ph) + 1j * im(ph)

    return at
