"""Max-modulus growth of holomorphic polynomials on radial model metrics.

Core predicate battery:

  * three_circle_check      log M_f convex against a convexifier h
  * monotonicity_check      M_f / e^{d h} one-sided monotone
  * order_at_infinity       limsup log M / log r
  * necessity_deficit       the r^2 coefficient of M_z(r)/(c r), which the
                            curvature at the origin predicts as H(0)/12
  * homogeneity_check       |f(y) r(x)^d - f(x) r(y)^d| smallness at scale
  * cone_exponent           alpha <-> alpha (m + alpha - 2) on metric cones

Maximal moduli over geodesic balls reduce to geodesic spheres (|f| is
plurisubharmonic, so the maximum sits on the boundary).  Monomials
centered at the origin have a closed form; everything else is dense
angular sampling plus a local refinement pass.  Off-center balls are
supported for n = 1 only, where the geodesic circle is available.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import optimize
from scipy.special import ndtri
from scipy.stats import qmc

from .comparison_ode import Convexifier
from .errors import DomainError, MaximizationError
from .radial_metric import RadialKahlerModel, geodesic_circle, rho_of_r

__all__ = [
    "HoloPoly",
    "GrowthCurve",
    "ConvexityReport",
    "MonotonicityReport",
    "max_modulus",
    "growth_curve",
    "three_circle_check",
    "monotonicity_check",
    "order_at_infinity",
    "necessity_deficit",
    "homogeneity_check",
    "cone_exponent",
    "separation_eigenvalue",
]

_COEF_TOL = 1e-12   # relative cutoff below which a coefficient counts as 0


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class HoloPoly:
    """Polynomial in n complex variables, exponent multi-index -> coefficient.

    n = 1 keys may be bare integers; they are normalized to 1-tuples.
    The zero polynomial is rejected (its log-max-modulus is undefined).
    """
    n: int
    coeffs: Mapping
    basepoint: complex = 0j
    degree: int = field(init=False)
    vanishing_order_at_basepoint: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("need n >= 1")
        clean = {}
        for key, c in dict(self.coeffs).items():
            alpha = (int(key),) if np.isscalar(key) else tuple(int(a) for a in key)
            if len(alpha) != self.n or any(a < 0 for a in alpha):
                raise DomainError(f"bad multi-index {key!r} for n={self.n}")
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0j) + c
        scale = max((abs(c) for c in clean.values()), default=0.0)
        clean = {a: c for a, c in clean.items()
                 if abs(c) > _COEF_TOL * scale}
        if not clean:
            raise DomainError("the zero polynomial has no growth curve")
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "degree", max(sum(a) for a in clean))
        bp = complex(self.basepoint)
        if bp != 0 and self.n != 1:
            raise DomainError("off-origin basepoints are supported for n=1 only")
        object.__setattr__(self, "basepoint", bp)
        object.__setattr__(self, "vanishing_order_at_basepoint",
                           self._vanishing_order(bp))

    def _coef_vec(self) -> np.ndarray:
        vec = np.zeros(self.degree + 1, dtype=complex)
        for (k,), c in self.coeffs.items():
            vec[k] = c
        return vec

    def _vanishing_order(self, at: complex) -> int:
        if self.n == 1:
            vec = self._coef_vec()
            if at != 0:
                vec = np.polynomial.polynomial.Polynomial(vec)(
                    np.polynomial.polynomial.Polynomial([at, 1.0])).coef
            scale = float(np.max(np.abs(vec)))
            nz = np.nonzero(np.abs(vec) > _COEF_TOL * scale)[0]
            return int(nz[0])
        return min(sum(a) for a in self.coeffs)

    def eval(self, z):
        """Evaluate at points: complex array for n=1, (..., n) for n >= 2."""
        z = np.asarray(z, dtype=complex)
        if self.n == 1:
            return np.polynomial.polynomial.polyval(z, self._coef_vec())
        if z.shape[-1] != self.n:
            raise DomainError(f"points must have {self.n} components")
        out = np.zeros(z.shape[:-1], dtype=complex)
        for alpha, c in self.coeffs.items():
            term = np.full(z.shape[:-1], c, dtype=complex)
            for i, a in enumerate(alpha):
                if a:
                    term = term * z[..., i] ** a
            out += term
        return out

    def __call__(self, z):
        return self.eval(z)


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class GrowthCurve:
    model: RadialKahlerModel
    f: HoloPoly
    basepoint: complex
    radii: np.ndarray
    values: np.ndarray
    exact: np.ndarray  # per-sample: closed form (True) vs numeric max

    @property
    def log_values(self) -> np.ndarray:
        return np.log(self.values)


@dataclass(frozen=True)
class ConvexityReport:
    h_values: np.ndarray
    second_differences: np.ndarray  # slope(r2,r3) - slope(r1,r2) per triple
    min_second_difference: float
    argmin_r: float
    verdict: str  # "pass" | "violation"
    tol: float

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass(frozen=True)
class MonotonicityReport:
    direction: str
    d: float
    worst: float        # most violating signed slack; <= 0 means pass
    argworst_r: float
    verdict: str
    tol: float

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


# ---------------------------------------------------------------------------
# max modulus

def _monomial_max(f: HoloPoly, rho: float) -> float:
    (alpha, c), = f.coeffs.items()
    total = sum(alpha)
    if total == 0:
        return abs(c)
    # max of prod |z_i|^{a_i} over the sphere |z| = rho sits at
    # |z_i|^2 = (a_i/|alpha|) rho^2
    factor = 1.0
    for a in alpha:
        if a:
            factor *= (a / total) ** (a / 2.0)
    return abs(c) * factor * rho ** total


def _refine_circle(fabs: Callable, lo: float, hi: float, best: float) -> float:
    res = optimize.minimize_scalar(lambda t: -fabs(t), bounds=(lo, hi),
                                   method="bounded",
                                   options={"xatol": 1e-10})
    if res.success:
        return max(best, -float(res.fun))
    return best


_DIRECTION_CACHE: dict = {}


def _directions(n: int, count: int) -> np.ndarray:
    """Deterministic quasi-uniform points on the unit sphere of C^n."""
    key = (n, count)
    if key not in _DIRECTION_CACHE:
        sampler = qmc.Halton(d=2 * n, scramble=False)
        sampler.fast_forward(1)  # skip the origin point
        x = ndtri(sampler.random(count))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        _DIRECTION_CACHE[key] = x[:, 0::2] + 1j * x[:, 1::2]
    return _DIRECTION_CACHE[key]


def _value_and_partials(f: HoloPoly, z: np.ndarray) -> tuple:
    """f(z) and its holomorphic partials at one point z of shape (n,)."""
    v = 0j
    g = np.zeros(f.n, dtype=complex)
    for alpha, c in f.coeffs.items():
        pw = [z[i] ** a for i, a in enumerate(alpha)]
        term = c
        for p in pw:
            term = term * p
        v += term
        for i, a in enumerate(alpha):
            if a:
                part = c * a * z[i] ** (a - 1)
                for j, p in enumerate(pw):
                    if j != i:
                        part = part * p
                g[i] += part
    return v, g


def _sphere_max(f: HoloPoly, rho: float, count: int,
                refine: bool = True) -> float:
    zeta = _directions(f.n, count)
    vals = np.abs(f.eval(rho * zeta))
    order = np.argsort(vals)[::-1]
    best = float(vals[order[0]])
    if not refine:
        return best
    scale = best if best > 0 else 1.0

    # maximize F(w) = |f(rho w_c / |w|)| over w in R^{2n}; F is smooth away
    # from zeros of f and scale invariant, with gradient
    #   rho/|w| u - rho (u.w)/|w|^3 w,   u interleaved from conj(f) grad f/|f|
    def neg(w):
        nrm = float(np.linalg.norm(w))
        wc = w[0::2] + 1j * w[1::2]
        v, gz = _value_and_partials(f, (rho / nrm) * wc)
        av = abs(v)
        if av == 0.0:
            return 0.0, np.zeros_like(w)
        q = (np.conj(v) / av) * gz
        u = np.empty_like(w)
        u[0::2] = q.real
        u[1::2] = -q.imag
        grad = (rho / nrm) * u - (rho * float(u @ w) / nrm ** 3) * w
        return -av / scale, -grad / scale

    for idx in order[:4]:
        w0 = np.empty(2 * f.n)
        w0[0::2] = zeta[idx].real
        w0[1::2] = zeta[idx].imag
        res = optimize.minimize(neg, w0, jac=True, method="L-BFGS-B",
                                options={"ftol": 1e-15, "gtol": 1e-11,
                                         "maxiter": 500})
        best = max(best, -float(res.fun) * scale)
    return best


def max_modulus(model: RadialKahlerModel, f: HoloPoly, center=None,
                r: float = None, samples: int = 720,
                refine: bool = True) -> float:
    """max |f| over the geodesic ball of radius r about center.

    Single monomials centered at the origin use the closed form;
    otherwise the geodesic sphere is sampled densely and the best
    bracket refined (relative accuracy well past 1e-7).  refine=False
    skips the local polish: with a fixed direction set the bias is
    nearly scale-independent, good enough for slope fits.
    """
    if r is None:
        raise DomainError("max_modulus needs a radius")
    center = f.basepoint if center is None else complex(center)
    if r <= 0:
        raise DomainError("radius must be positive")
    if f.n != model.n:
        raise DomainError("polynomial and model dimension differ")
    if center != 0 and f.n != 1:
        raise DomainError("off-center balls are supported for n=1 only")
    if center == 0:
        if r >= model.r_max:
            raise DomainError(f"r must stay below r_max = {model.r_max:g}")
        rho = float(rho_of_r(model, r))
        if len(f.coeffs) == 1:
            return _monomial_max(f, rho)
        if f.n == 1:
            circle = lambda phi: rho * np.exp(1j * np.asarray(phi))
        else:
            return _sphere_max(f, rho, max(samples, 240 * 2 * f.n), refine)
    else:
        circle = geodesic_circle(model, center, r)

    count = max(samples, 720, 16 * max(f.degree, 1))
    phis = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
    vals = np.abs(f.eval(circle(phis)))
    i = int(np.argmax(vals))
    step = 2.0 * math.pi / count
    fabs = lambda t: float(np.abs(f.eval(circle(np.asarray(t)))))
    out = float(vals[i])
    if refine:
        out = _refine_circle(fabs, phis[i] - step, phis[i] + step, out)
    if not math.isfinite(out) or out < 0:
        raise MaximizationError("maximum-modulus search failed")
    return out


def growth_curve(model: RadialKahlerModel, f: HoloPoly, center=None,
                 radii: Sequence[float] = (), *,
                 refine: bool = True) -> GrowthCurve:
    rs = np.asarray(radii, dtype=float)
    if rs.ndim != 1 or rs.size == 0:
        raise DomainError("radii must be a nonempty 1-d list")
    if np.any(rs <= 0) or np.any(np.diff(rs) <= 0):
        raise DomainError("radii must be positive and strictly increasing")
    center = f.basepoint if center is None else complex(center)
    exact = (center == 0) and len(f.coeffs) == 1
    vals = np.array([max_modulus(model, f, center, float(r), refine=refine)
                     for r in rs])
    drop = vals[1:] < vals[:-1] * (1.0 - 1e-9)
    if np.any(drop):
        raise MaximizationError(
            "growth curve decreased at r = "
            f"{rs[1:][drop][0]:g}; maximization did not converge")
    return GrowthCurve(model=model, f=f, basepoint=center, radii=rs,
                       values=vals, exact=np.full(rs.shape, exact, dtype=bool))


# ---------------------------------------------------------------------------
# predicates

def three_circle_check(curve: GrowthCurve, h: Convexifier,
                       tol: float = 1e-6) -> ConvexityReport:
    """Divided-difference convexity of log M_f against h over the radii."""
    if curve.radii.size < 3:
        raise DomainError("need at least three radii")
    if np.any(curve.values <= 0):
        raise DomainError("nonpositive max modulus in the curve")
    hv = np.asarray(h(curve.radii), dtype=float)
    dh = np.diff(hv)
    if np.any(dh <= 0):
        raise DomainError("h is not increasing on the sample radii")
    logm = curve.log_values
    slopes = np.diff(logm) / dh
    defects = np.diff(slopes)
    thresholds = tol * (1.0 + np.abs(logm[1:-1]))
    verdict = "pass" if np.all(defects >= -thresholds) else "violation"
    j = int(np.argmin(defects))
    return ConvexityReport(h_values=hv, second_differences=defects,
                           min_second_difference=float(defects[j]),
                           argmin_r=float(curve.radii[j + 1]),
                           verdict=verdict, tol=tol)


def monotonicity_check(curve: GrowthCurve, h: Convexifier, d: float,
                       direction: str, tol: float = 1e-7
                       ) -> MonotonicityReport:
    """Is log M_f - d h nonincreasing / nondecreasing along the radii?"""
    if direction not in ("nonincreasing", "nondecreasing"):
        raise DomainError(f"unknown direction {direction!r}")
    if d < 0:
        raise DomainError("d must be nonnegative")
    if curve.radii.size < 2:
        raise DomainError("need at least two radii")
    if np.any(curve.values <= 0):
        raise DomainError("nonpositive max modulus in the curve")
    logm = curve.log_values
    t = logm - d * np.asarray(h(curve.radii), dtype=float)
    diffs = np.diff(t)
    slack = tol * (1.0 + np.maximum(np.abs(logm[1:]), np.abs(logm[:-1])))
    signed = diffs - slack if direction == "nonincreasing" else -diffs - slack
    k = int(np.argmax(signed))
    verdict = "pass" if signed[k] <= 0 else "violation"
    return MonotonicityReport(direction=direction, d=d, worst=float(signed[k]),
                              argworst_r=float(curve.radii[k + 1]),
                              verdict=verdict, tol=tol)


def order_at_infinity(curve: GrowthCurve) -> float:
    """Least-squares slope of log M against log r over the last decade.

    math.inf when the local slope still grows by more than 10% from the
    previous decade (exponential growth).
    """
    if math.isfinite(curve.model.r_max):
        raise DomainError("order at infinity needs a noncompact model")
    rs, logm = curve.radii, curve.log_values
    if not np.all(np.isfinite(logm)):
        raise DomainError("growth curve overflowed; probe smaller radii")
    r_top = rs[-1]
    if r_top < 100.0:
        raise DomainError("curve must reach radius 100")
    outer = rs >= r_top / 10.0
    if np.count_nonzero(outer) < 10:
        raise DomainError("need at least 10 samples in the outermost decade")
    x, y = np.log(rs), logm
    s_outer = float(np.polyfit(x[outer], y[outer], 1)[0])
    prev = (rs >= r_top / 100.0) & ~outer
    if np.count_nonzero(prev) >= 4:
        s_prev = float(np.polyfit(x[prev], y[prev], 1)[0])
    else:  # fall back to half-decades of the outer window
        lohalf = outer & (rs < r_top / math.sqrt(10.0))
        s_prev = float(np.polyfit(x[lohalf], y[lohalf], 1)[0])
        s_outer = float(np.polyfit(x[outer & ~lohalf], y[outer & ~lohalf],
                                   1)[0])
    if s_outer > 1.1 * abs(s_prev) + 1e-12:
        return math.inf
    return s_outer


def necessity_deficit(model: RadialKahlerModel, r_grid) -> float:
    """Fit c2 in M_z(r)/(c r) = 1 + c2 r^2 + O(r^4) near the origin.

    For f = z the max modulus is rho(r) exactly, so the fit is noise-free;
    the curvature at the origin predicts c2 = H(0)/12, and c2 < 0 is the
    three-circle violation mechanism.
    """
    rs = np.asarray(r_grid, dtype=float)
    if rs.ndim != 1 or rs.size < 6:
        raise DomainError("need at least 6 radii")
    cap = 0.2 * min(1.0, model.r_max)
    if np.any(rs <= 0) or np.any(np.diff(rs) <= 0) or rs[-1] >= cap:
        raise DomainError(f"grid must increase inside (0, {cap:g})")
    y = np.asarray(rho_of_r(model, rs), dtype=float) / rs
    X = np.column_stack([np.ones_like(rs), rs ** 2, rs ** 4])
    cond = float(np.linalg.cond(X))
    if cond > 1e10:
        raise DomainError(
            f"grid too coarse for a stable fit (condition number {cond:.3g})")
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    return float(beta[1] / beta[0])


def homogeneity_check(model: RadialKahlerModel, f: HoloPoly, K: float,
                      r: float, ray_samples: int = 24,
                      d: float | None = None) -> float:
    """sup |f(y) r(x)^d - f(x) r(y)^d| / (M_f(r) r^d) over sample rays.

    x runs over the shell B(0, Kr) minus B(0, r) along rays, y over the
    radial segment from the origin to x.  Decays as r grows when f is
    asymptotically homogeneous of order d.
    """
    if math.isfinite(model.r_max):
        raise DomainError("homogeneity checks need a noncompact model")
    if K <= 1:
        raise DomainError("need K > 1")
    if r <= 0 or ray_samples < 1:
        raise DomainError("need r > 0 and at least one ray")
    if d is None:
        # moderate probe first (exponential growth overflows far out),
        # then push the window out so lower-order terms stop biasing it
        top = max(200.0, 1.2 * K * r)
        probe = growth_curve(model, f, 0,
                             np.geomspace(top / 100.0, top, 24), refine=False)
        d = order_at_infinity(probe)
        if math.isfinite(d) and top < 1e4:
            probe = growth_curve(model, f, 0, np.geomspace(100.0, 1e4, 24),
                                 refine=False)
            d = order_at_infinity(probe)
    if math.isinf(d):
        raise DomainError("order at infinity is infinite; f is not in O_d")
    if d <= 0:
        raise DomainError("order at infinity must be positive")

    if f.n == 1:
        dirs = np.exp(2j * math.pi * np.arange(ray_samples) / ray_samples)
    else:
        dirs = _directions(f.n, ray_samples)
    r_x = np.geomspace(r, K * r, 8)
    frac = np.linspace(0.0, 1.0, 10)
    denom = max_modulus(model, f, 0, r) * r ** d
    sup = 0.0
    for rx in r_x:
        rho_x = float(rho_of_r(model, rx))
        r_y = frac * rx
        rho_y = np.concatenate([[0.0], np.asarray(
            rho_of_r(model, r_y[1:]), dtype=float)])
        for dir_ in dirs:
            zx = rho_x * dir_
            zy = rho_y[:, np.newaxis] * dir_ if f.n > 1 else rho_y * dir_
            fx = f.eval(zx[np.newaxis] if f.n > 1 else zx).item()
            fy = f.eval(zy)
            gap = np.max(np.abs(fy * rx ** d - fx * r_y ** d))
            sup = max(sup, float(gap))
    return sup / denom


# ---------------------------------------------------------------------------
# cone exponents

def cone_exponent(lam: float, m: int) -> float:
    """Nonnegative root alpha of lam = alpha (m + alpha - 2)."""
    if lam < 0:
        raise DomainError("eigenvalue must be nonnegative")
    if int(m) != m or m < 2:
        raise DomainError("cone dimension m must be an integer >= 2")
    return 0.5 * ((2.0 - m) + math.sqrt((m - 2.0) ** 2 + 4.0 * lam))


def separation_eigenvalue(alpha: float, m: int) -> float:
    """Inverse of cone_exponent: alpha (m + alpha - 2)."""
    if alpha < 0:
        raise DomainError("exponent must be nonnegative")
    if int(m) != m or m < 2:
        raise DomainError("cone dimension m must be an integer >= 2")
    return alpha * (m + alpha - 2.0)
