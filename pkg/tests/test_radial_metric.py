"""Radial model geometry: coordinates, curvature, model Hessian."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthlab import (
    ConjugatePointError,
    DomainError,
    RadialProfile,
    builtin_model,
    curvature_at_origin,
    distance_from_origin,
    load_profile_table,
    model_from_profile,
    model_hessian,
    radial_curvature,
    rho_of_r,
)
from growthlab import _numdiff


def all_models():
    return [
        ("flat", builtin_model("flat")),
        ("cigar", builtin_model("cigar")),
        ("hyperbolic", builtin_model("hyperbolic", kappa=1.0)),
        ("sphere", builtin_model("sphere", kappa=1.0)),
        ("conformal_poly", builtin_model("conformal_poly", coeffs=[1.0, 1.0])),
    ]


def r_grid(model, lo=0.05, hi=5.0, k=40):
    top = min(hi, model.r_max - 0.05) if math.isfinite(model.r_max) else hi
    return np.linspace(lo, top, k)


# ---------------------------------------------------------------------------
# construction and coordinates

def test_unknown_tag_rejected():
    with pytest.raises(DomainError):
        builtin_model("torus")


def test_conformal_poly_needs_coeffs():
    with pytest.raises(DomainError):
        builtin_model("conformal_poly")
    with pytest.raises(DomainError):
        builtin_model("conformal_poly", coeffs=[-1.0, 2.0])  # lam(0) <= 0


def test_dimension_validation():
    with pytest.raises(DomainError):
        builtin_model("flat", n=0)


@pytest.mark.parametrize("name,model", all_models())
def test_round_trip_r_rho(name, model):
    rs = r_grid(model, lo=0.0, k=60)
    rho = rho_of_r(model, rs)
    back = distance_from_origin(model, rho)
    assert np.max(np.abs(back - rs)) <= 1e-10 * (1 + np.max(rho))


def test_distance_closed_forms():
    # frozen coordinate maps: r(rho) for each built-in profile
    rho = np.linspace(0.0, 0.9, 20)
    assert np.allclose(distance_from_origin(builtin_model("flat"), rho), rho,
                       rtol=0, atol=1e-14)
    assert np.allclose(distance_from_origin(builtin_model("cigar"), rho),
                       np.arcsinh(rho), rtol=0, atol=1e-13)
    assert np.allclose(distance_from_origin(builtin_model("hyperbolic"), rho),
                       np.log((1 + rho) / (1 - rho)), rtol=0, atol=1e-12)
    assert np.allclose(distance_from_origin(builtin_model("sphere"), rho),
                       2 * np.arctan(rho), rtol=0, atol=1e-13)
    assert np.allclose(
        distance_from_origin(builtin_model("conformal_poly",
                                           coeffs=[1.0, 1.0]), rho),
        rho + rho ** 3 / 3, rtol=0, atol=1e-13)


def test_kappa_rescaling():
    # lam scales as 1/sqrt(kappa); distances too
    m1 = builtin_model("hyperbolic", kappa=1.0)
    m4 = builtin_model("hyperbolic", kappa=4.0)
    assert math.isclose(distance_from_origin(m4, 0.5),
                        0.5 * distance_from_origin(m1, 0.5), rel_tol=1e-14)
    m4s = builtin_model("sphere", kappa=4.0)
    assert math.isclose(m4s.r_max, math.pi / 2, rel_tol=1e-15)


def test_rho_of_r_domain():
    m = builtin_model("sphere")
    with pytest.raises(DomainError):
        rho_of_r(m, math.pi)
    with pytest.raises(DomainError):
        rho_of_r(m, -0.1)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-6, max_value=20.0))
def test_round_trip_cigar_property(rho):
    m = builtin_model("cigar")
    r = distance_from_origin(m, rho)
    assert math.isclose(rho_of_r(m, r), rho, rel_tol=1e-10, abs_tol=1e-12)


# ---------------------------------------------------------------------------
# curvature

def test_curvature_closed_forms():
    rs = np.linspace(0.05, 3.0, 30)
    assert np.allclose(radial_curvature(builtin_model("flat"), rs), 0.0,
                       atol=1e-15)
    assert np.allclose(radial_curvature(builtin_model("cigar"), rs),
                       2.0 / np.cosh(rs) ** 2, rtol=1e-13)
    assert np.allclose(radial_curvature(builtin_model("hyperbolic"), rs),
                       -1.0, rtol=1e-13)
    k = 2.7
    assert np.allclose(
        radial_curvature(builtin_model("hyperbolic", kappa=k), rs), -k,
        rtol=1e-13)
    rs_s = np.linspace(0.05, 3.0, 30)
    assert np.allclose(radial_curvature(builtin_model("sphere"), rs_s), 1.0,
                       rtol=1e-13)


def test_curvature_at_origin_values():
    assert math.isclose(curvature_at_origin(builtin_model("flat")), 0.0,
                        abs_tol=1e-15)
    assert math.isclose(curvature_at_origin(builtin_model("cigar")), 2.0,
                        rel_tol=1e-12)
    assert math.isclose(curvature_at_origin(builtin_model("hyperbolic")),
                        -1.0, rel_tol=1e-12)
    assert math.isclose(curvature_at_origin(builtin_model("sphere")), 1.0,
                        rel_tol=1e-12)
    # lam = 1 + rho^2: H(0) = -2 (log lam)''(0) / lam(0)^2 = -4
    assert math.isclose(
        curvature_at_origin(builtin_model("conformal_poly",
                                          coeffs=[1.0, 1.0])),
        -4.0, rel_tol=1e-12)


@pytest.mark.parametrize("name,exact", [
    ("flat", lambda r: 0.0 * r),
    ("cigar", lambda r: 2.0 / np.cosh(r) ** 2),
    ("hyperbolic", lambda r: -1.0 + 0.0 * r),
    ("sphere", lambda r: 1.0 + 0.0 * r),
])
def test_curvature_numeric_profile_oracle(name, exact):
    # strip the closed forms: everything must come out of lam alone
    full = builtin_model(name)
    prof = full.profile
    bare = RadialProfile(lam=prof.lam, rho_max=prof.rho_max, name="bare")
    m = model_from_profile(bare)
    rs = r_grid(full)
    err = np.abs(radial_curvature(m, rs) - exact(rs))
    assert np.max(err) <= 1e-6


def test_conformal_poly_curvature_consistency():
    # analytic-derivative route vs bare-profile numeric route
    full = builtin_model("conformal_poly", coeffs=[1.0, 0.5, 0.25])
    prof = full.profile
    bare = RadialProfile(lam=prof.lam, rho_max=prof.rho_max, name="bare")
    m = model_from_profile(bare)
    rs = np.linspace(0.05, 2.0, 25)
    assert np.max(np.abs(radial_curvature(full, rs)
                         - radial_curvature(m, rs))) <= 1e-6


def test_curvature_domain():
    with pytest.raises(DomainError):
        radial_curvature(builtin_model("flat"), 0.0)
    with pytest.raises(DomainError):
        radial_curvature(builtin_model("sphere"), 4.0)


# ---------------------------------------------------------------------------
# model Hessian

def test_model_hessian_closed_forms():
    rs = np.linspace(0.05, 4.0, 30)
    assert np.allclose(model_hessian(builtin_model("flat"), rs), 0.5 / rs,
                       rtol=1e-14)
    assert np.allclose(model_hessian(builtin_model("cigar"), rs),
                       1.0 / np.sinh(2 * rs), rtol=1e-13)
    assert np.allclose(model_hessian(builtin_model("hyperbolic"), rs),
                       0.5 / np.tanh(rs), rtol=1e-13)
    rs_s = np.linspace(0.05, 3.0, 30)
    assert np.allclose(model_hessian(builtin_model("sphere"), rs_s),
                       0.5 / np.tan(rs_s), rtol=1e-12, atol=1e-13)
    k = 2.0
    assert np.allclose(model_hessian(builtin_model("hyperbolic", kappa=k), rs),
                       0.5 * math.sqrt(k) / np.tanh(math.sqrt(k) * rs),
                       rtol=1e-13)


def test_model_hessian_generic_route():
    # poly model has no closed-form hessian: u = J'(r) / (2 J)
    m = builtin_model("conformal_poly", coeffs=[1.0, 1.0])
    rs = np.linspace(0.1, 2.0, 15)
    rho = rho_of_r(m, rs)
    lam = 1.0 + rho ** 2
    jprime = 1.0 + rho ** 2 * (2.0 / (1.0 + rho ** 2))  # 1 + rho (log lam)'
    assert np.allclose(model_hessian(m, rs), jprime / (2 * lam * rho),
                       rtol=1e-10)


def test_model_hessian_normalization():
    # 2 u(r) r -> 1 as r -> 0 on every model
    for _, m in all_models():
        r = 1e-5
        assert abs(2 * model_hessian(m, r) * r - 1.0) < 1e-8


def test_conjugate_point_error():
    m = builtin_model("sphere")
    with pytest.raises(ConjugatePointError):
        model_hessian(m, math.pi)
    m2 = builtin_model("sphere", kappa=4.0)
    with pytest.raises(ConjugatePointError):
        model_hessian(m2, math.pi / 2 + 0.2)


@pytest.mark.parametrize("name,model", all_models())
def test_jacobi_consistency(name, model):
    # u' + 2 u^2 + H/2 = 0 along the radial direction
    rs = r_grid(model, lo=0.2, hi=3.0, k=12)
    H = radial_curvature(model, rs)
    for r, h in zip(rs, H):
        du = _numdiff.first_derivative(lambda t: model_hessian(model, t), r)
        u = model_hessian(model, r)
        assert abs(du + 2 * u * u + 0.5 * h) <= 1e-7 * (1 + abs(h))


# ---------------------------------------------------------------------------
# profiles from tables / bare callables

def test_profile_table_round_trip(tmp_path):
    rho = np.linspace(0.0, 6.0, 400)
    lam = 1.0 / np.sqrt(1.0 + rho ** 2)
    path = tmp_path / "cigar.txt"
    np.savetxt(path, np.column_stack([rho, lam]), header="rho lambda")
    m = model_from_profile(load_profile_table(str(path)))
    rs = np.linspace(0.3, 1.5, 7)
    # spline-grade accuracy only
    assert np.max(np.abs(radial_curvature(m, rs)
                         - 2.0 / np.cosh(rs) ** 2)) < 2e-4
    r = distance_from_origin(m, 1.0)
    assert abs(r - math.asinh(1.0)) < 1e-6


def test_profile_table_validation(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("# x y\n0 1\n1 1\n2 1\n3 1\n")
    with pytest.raises(DomainError):
        load_profile_table(str(bad))
    bad2 = tmp_path / "bad2.txt"
    bad2.write_text("# rho lambda\n0 1\n1 -1\n2 1\n3 1\n")
    with pytest.raises(DomainError):
        load_profile_table(str(bad2))
    bad3 = tmp_path / "bad3.txt"
    bad3.write_text("# rho lambda\n0.5 1\n1 1\n2 1\n3 1\n")
    with pytest.raises(DomainError):
        load_profile_table(str(bad3))


def test_complete_disk_profile_has_infinite_radius():
    prof = builtin_model("hyperbolic").profile
    bare = RadialProfile(lam=prof.lam, rho_max=prof.rho_max, name="bare")
    assert model_from_profile(bare).r_max == math.inf


def test_truncated_profile_has_finite_radius():
    bare = RadialProfile(lam=lambda x: np.ones_like(np.asarray(x, dtype=float)),
                         rho_max=2.0, name="bare")
    m = model_from_profile(bare)
    assert math.isfinite(m.r_max)
    assert abs(m.r_max - 2.0) < 1e-7
