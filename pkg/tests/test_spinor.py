"""Bispinor construction tests.

The independent route for the whole construction is test_cone_superposition
_oracle: each family is by definition a uniform cone superposition of Dirac
plane waves, so brute-force trapezoid integration over the cone azimuth must
reproduce the closed-form Bessel expressions the library evaluates. The
oracle never touches library internals beyond the kinematic container.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistbeam import (
    BasisError,
    DomainError,
    Family,
    SolutionSpec,
    SpacetimePoint,
    ZeroDensityError,
    derive_kinematics,
    dirac_matrices,
    evaluate,
)
from twistbeam.spinor import (
    WEYL_MAP,
    analytic_gradient,
    dirac_residual,
    helicity_solution,
    mixed_helicity_solution,
    scalar_mode,
    to_weyl,
    uniform_orbital_near_axis,
    uniform_orbital_solution,
)

REF = derive_kinematics(kappa=0.3, k_z=0.4)
REF_POINT = SpacetimePoint(rho=2.0, phi=0.7, z=-0.2, t=0.35)


# ----------------------------------------------------------------------
# oracle: brute-force cone superposition
# ----------------------------------------------------------------------

def cone_superposition(params, j_z, lam, point, npts=512):
    """Trapezoid cone integral of helicity plane waves; independent of the
    library's term tables (only kinematics and numpy are used)."""
    ell = int(round(j_z - lam))
    half = 0.5 * params.theta_k
    c, s = math.cos(half), math.sin(half)
    phik = np.arange(npts) * (2.0 * math.pi / npts)
    if lam > 0:
        chi = np.array([c * np.ones(npts), s * np.exp(1j * phik)])
    else:
        chi = np.array([-s * np.exp(-1j * phik), c * np.ones(npts)])
    upper = math.sqrt(params.energy + params.mass) * chi
    lower = (2.0 * lam) * math.sqrt(params.energy - params.mass) * chi
    u = np.vstack([upper, lower])
    weight = np.exp(1j * ell * phik + 1j * params.kappa * point.rho * np.cos(phik - point.phi))
    pref = cmath.exp(1j * (params.k_z * point.z - params.energy * point.t)) * (-1j) ** ell / npts
    return pref * (u * weight).sum(axis=1)


def test_cone_superposition_oracle():
    rng = np.random.default_rng(7)
    worst = 0.0
    for j_z, lam in [(0.5, 0.5), (2.5, 0.5), (1.5, -0.5), (3.5, -0.5)]:
        for _ in range(8):
            # stay in the Bessel bulk: near the axis the 512-point trapezoid's
            # ~1e-14 absolute roundoff would dominate a relative comparison
            x = 10.0 ** rng.uniform(math.log10(0.5), math.log10(25.0))
            point = SpacetimePoint(
                rho=x / REF.kappa,
                phi=rng.uniform(0.0, 2.0 * math.pi),
                z=rng.uniform(-2.0, 2.0),
                t=rng.uniform(-2.0, 2.0),
            )
            psi = helicity_solution(REF, j_z=j_z, helicity=lam, point=point)
            ref = cone_superposition(REF, j_z, lam, point)
            worst = max(worst, np.linalg.norm(psi.components - ref) / psi.norm())
    assert worst < 1e-10


# ----------------------------------------------------------------------
# frozen regression values
# ----------------------------------------------------------------------

def test_helicity_plus_frozen_components():
    psi = helicity_solution(REF, j_z=2.5, helicity=0.5, point=REF_POINT)
    expected = np.array(
        [
            0.03610485945828851 + 4.8279766930315181e-02j,
            -0.00202142246074391 - 1.1715464748176045e-04j,
            0.00852320115023232 + 1.1397306933400736e-02j,
            -0.00047719311198046 - 2.7656460685720004e-05j,
        ]
    )
    np.testing.assert_allclose(psi.components, expected, rtol=0.0, atol=1e-16)
    assert psi.norm() == pytest.approx(0.06197877609837058, abs=1e-16)
    assert psi.basis == "dirac"


def test_scalar_mode_matches_bessel():
    from twistbeam import bessel_j

    val = scalar_mode(REF, ell=2, point=REF_POINT)
    expected = (
        cmath.exp(1j * (REF.k_z * REF_POINT.z - REF.energy * REF_POINT.t))
        * cmath.exp(2j * REF_POINT.phi)
        * bessel_j(2, REF.kappa * REF_POINT.rho)
    )
    assert val == pytest.approx(expected, abs=1e-16)


# ----------------------------------------------------------------------
# algebraic identities between families
# ----------------------------------------------------------------------

def test_mixed_reduces_to_helicity():
    # a = cos(theta_k/2), b = -i sin(theta_k/2) is exactly the + helicity state
    half = 0.5 * REF.theta_k
    a, b = math.cos(half), -1j * math.sin(half)
    for rho in (0.05, 1.3, 9.0):
        point = SpacetimePoint(rho, 1.1, 0.4, -0.6)
        mixed = mixed_helicity_solution(REF, j_z=1.5, a=a, b=b, point=point)
        plus = helicity_solution(REF, j_z=1.5, helicity=0.5, point=point)
        np.testing.assert_allclose(mixed.components, plus.components, rtol=0.0, atol=1e-15)


def test_mixed_is_helicity_combination():
    # psi_mixed(a, b) = (a c + i b s) psi_+  -  (i a s + b c) psi_-
    half = 0.5 * REF.theta_k
    c, s = math.cos(half), math.sin(half)
    a, b = 0.8 - 0.3j, -0.4 + 1.1j
    point = SpacetimePoint(3.7, -0.8, 0.25, 1.4)
    mixed = mixed_helicity_solution(REF, j_z=2.5, a=a, b=b, point=point)
    plus = helicity_solution(REF, j_z=2.5, helicity=0.5, point=point).components
    minus = helicity_solution(REF, j_z=2.5, helicity=-0.5, point=point).components
    combo = (a * c + 1j * b * s) * plus - (1j * a * s + b * c) * minus
    np.testing.assert_allclose(mixed.components, combo, rtol=0.0, atol=1e-15)


def test_uniform_orbital_is_mixed_pair():
    # uniform(ell, a, b) = mixed(j_z = ell + 1/2, a, 0) + mixed(j_z = ell - 1/2, 0, b)
    a, b = 1.2 + 0.1j, -0.7 + 0.4j
    for rho in (0.3, 5.5):
        point = SpacetimePoint(rho, 0.45, -1.0, 0.8)
        uniform = uniform_orbital_solution(REF, ell=2, a=a, b=b, point=point)
        upper = mixed_helicity_solution(REF, j_z=2.5, a=a, b=0.0, point=point).components
        lower = mixed_helicity_solution(REF, j_z=1.5, a=0.0, b=b, point=point).components
        np.testing.assert_allclose(uniform.components, upper + lower, rtol=0.0, atol=1e-16)


def test_near_axis_tracks_uniform():
    # approximant agrees with the full solution to O((kappa rho)^2 / ell)
    # relative in the dominated components at small radius
    params = derive_kinematics(kappa=0.01, k_z=0.5)
    ell = 2
    point = SpacetimePoint(rho=0.1 * ell / params.kappa, phi=0.3)
    full = uniform_orbital_solution(params, ell=ell, a=1.0, b=1.0, point=point)
    approx = uniform_orbital_near_axis(params, ell=ell, a=1.0, b=1.0, point=point)
    dev = np.abs(full.components - approx.components) / np.abs(full.components).max()
    assert dev.max() < 5e-2
    np.testing.assert_allclose(
        approx.components[:2], full.components[:2], rtol=0.0, atol=1e-18
    )


# ----------------------------------------------------------------------
# Weyl basis
# ----------------------------------------------------------------------

def test_weyl_map_is_involutory_and_unitary():
    np.testing.assert_allclose(WEYL_MAP @ WEYL_MAP, np.eye(4), rtol=0.0, atol=1e-15)
    np.testing.assert_allclose(
        WEYL_MAP @ WEYL_MAP.conj().T, np.eye(4), rtol=0.0, atol=1e-15
    )


def test_weyl_basis_chirality_block():
    # gamma^5 = i g0 g1 g2 g3 must be diag(+1, +1, -1, -1) in the Weyl basis
    g = dirac_matrices("weyl")
    gamma5 = 1j * g.gamma0 @ g.gamma1 @ g.gamma2 @ g.gamma3
    np.testing.assert_allclose(gamma5, np.diag([1, 1, -1, -1]), rtol=0.0, atol=1e-15)


def test_plane_wave_weyl_components():
    # at kappa = 0, k_z = 0.75: upper/lower Weyl amplitudes in ratio
    # sqrt((E+k)/(E-k)) = 2 exactly for this kinematic choice
    params = derive_kinematics(kappa=0.0, k_z=0.75)
    w = to_weyl(helicity_solution(params, j_z=0.5, helicity=0.5, point=SpacetimePoint(0.0)))
    expected = np.array([math.sqrt(2.0), 0.0, math.sqrt(2.0) / 2.0, 0.0], dtype=complex)
    np.testing.assert_allclose(w.components, expected, rtol=0.0, atol=1e-15)
    assert abs(w.components[0]) / abs(w.components[2]) == pytest.approx(2.0, abs=1e-14)


def test_weyl_null_mixing():
    # b (E + m - k_z) = i a kappa kills the second Weyl component identically
    a = 1.0
    b = 1j * a * REF.kappa / (REF.energy + REF.mass - REF.k_z)
    worst = 0.0
    for rho in (0.01, 0.7, 4.0, 18.0):
        point = SpacetimePoint(rho, 0.9, 0.1, -0.2)
        psi = mixed_helicity_solution(REF, j_z=1.5, a=a, b=b, point=point)
        worst = max(worst, abs(to_weyl(psi).components[1]) / psi.norm())
    assert worst < 1e-15


def test_to_weyl_rejects_weyl_input():
    psi = helicity_solution(REF, j_z=0.5, helicity=0.5, point=REF_POINT)
    with pytest.raises(BasisError):
        to_weyl(to_weyl(psi))


# ----------------------------------------------------------------------
# residual and gradient
# ----------------------------------------------------------------------

EXACT_SPECS = [
    SolutionSpec(family=Family.HELICITY_PLUS, j_z=0.5),
    SolutionSpec(family=Family.HELICITY_MINUS, j_z=2.5),
    SolutionSpec(family=Family.MIXED_HELICITY, j_z=1.5, a=0.6, b=0.3 - 0.2j),
    SolutionSpec(family=Family.UNIFORM_ORBITAL, ell=3, a=1.0, b=0.5j),
]


@pytest.mark.parametrize("spec", EXACT_SPECS, ids=lambda s: s.family.value)
def test_residual_vanishes_for_exact_families(spec):
    rng = np.random.default_rng(11)
    for _ in range(25):
        point = SpacetimePoint(
            rho=10.0 ** rng.uniform(-3.0, math.log10(50.0)),
            phi=rng.uniform(0.0, 2.0 * math.pi),
            z=rng.uniform(-3.0, 3.0),
            t=rng.uniform(-3.0, 3.0),
        )
        assert dirac_residual(spec, REF, point) < 1e-12


def test_residual_nonzero_for_near_axis_family():
    # the approximant is *not* a solution; the residual is O(paraxial), and
    # must not be silently reported as zero
    params = derive_kinematics(kappa=0.01, k_z=0.5)
    spec = SolutionSpec(family=Family.UNIFORM_ORBITAL_NEAR_AXIS, ell=2, a=1.0, b=1.0)
    res = dirac_residual(spec, params, SpacetimePoint(rho=5.0, phi=0.2))
    assert res > 1e-8


def test_residual_detects_corruption():
    spec = EXACT_SPECS[0]
    point = SpacetimePoint(rho=1.7, phi=0.4, z=0.1, t=0.9)
    clean = dirac_residual(spec, REF, point)
    corrupted = dirac_residual(spec, REF, point, scale_component=2, scale_factor=1.01)
    assert clean < 1e-13
    assert corrupted > 1e-4


def test_residual_raises_on_vanishing_field():
    # at rho = 0 every component of this spec carries J_2 or J_3 -> psi = 0
    spec = SolutionSpec(family=Family.HELICITY_PLUS, j_z=2.5)
    with pytest.raises(ZeroDensityError):
        dirac_residual(spec, REF, SpacetimePoint(0.0))


def test_gradient_matches_finite_differences():
    spec = SolutionSpec(family=Family.MIXED_HELICITY, j_z=1.5, a=0.9, b=0.2j)
    point = SpacetimePoint(rho=2.4, phi=0.8, z=-0.5, t=0.3)
    grad = analytic_gradient(spec, REF, point)
    h = 1e-6

    def psi_at(**kw):
        merged = {"rho": point.rho, "phi": point.phi, "z": point.z, "t": point.t, **kw}
        return evaluate(spec, REF, SpacetimePoint(**merged)).components

    fd_rho = (psi_at(rho=point.rho + h) - psi_at(rho=point.rho - h)) / (2.0 * h)
    fd_phi = (psi_at(phi=point.phi + h) - psi_at(phi=point.phi - h)) / (2.0 * h)
    fd_z = (psi_at(z=point.z + h) - psi_at(z=point.z - h)) / (2.0 * h)
    fd_t = (psi_at(t=point.t + h) - psi_at(t=point.t - h)) / (2.0 * h)
    np.testing.assert_allclose(grad.d_rho, fd_rho, rtol=0.0, atol=1e-9)
    np.testing.assert_allclose(grad.d_phi_over_rho * point.rho, fd_phi, rtol=0.0, atol=1e-9)
    np.testing.assert_allclose(grad.d_z, fd_z, rtol=0.0, atol=1e-9)
    np.testing.assert_allclose(grad.d_t, fd_t, rtol=0.0, atol=1e-9)
    np.testing.assert_allclose(grad.psi, psi_at(), rtol=0.0, atol=1e-16)


def test_gradient_finite_on_axis():
    spec = SolutionSpec(family=Family.HELICITY_PLUS, j_z=0.5)
    grad = analytic_gradient(spec, REF, SpacetimePoint(0.0))
    for arr in (grad.psi, grad.d_rho, grad.d_phi_over_rho, grad.d_t, grad.d_z):
        assert np.all(np.isfinite(arr.view(float)))


# ----------------------------------------------------------------------
# symmetry properties
# ----------------------------------------------------------------------

@given(
    delta=st.floats(min_value=-math.pi, max_value=math.pi),
    rho=st.floats(min_value=1e-3, max_value=30.0),
    phi=st.floats(min_value=0.0, max_value=2.0 * math.pi),
)
@settings(max_examples=60, deadline=None)
def test_rotation_covariance(delta, rho, phi):
    # rotating the point by delta multiplies component c by e^{i m_c delta}
    # with m_c = j_z -+ 1/2; equivalently a total-angular-momentum phase
    # e^{i j_z delta} times the spin-1/2 phase diag(e^{-i delta/2}, ...)
    j_z = 1.5
    spec = SolutionSpec(family=Family.MIXED_HELICITY, j_z=j_z, a=0.7, b=0.4j)
    base = evaluate(spec, REF, SpacetimePoint(rho, phi)).components
    rotated = evaluate(spec, REF, SpacetimePoint(rho, phi + delta)).components
    spin = np.exp(-0.5j * delta * np.array([1.0, -1.0, 1.0, -1.0]))
    predicted = cmath.exp(1j * j_z * delta) * spin * base
    np.testing.assert_allclose(rotated, predicted, rtol=0.0, atol=1e-14)


@given(
    tau=st.floats(min_value=-5.0, max_value=5.0),
    zeta=st.floats(min_value=-5.0, max_value=5.0),
)
@settings(max_examples=60, deadline=None)
def test_translation_phases(tau, zeta):
    spec = SolutionSpec(family=Family.UNIFORM_ORBITAL, ell=1, a=0.5, b=1.0)
    point = SpacetimePoint(rho=1.8, phi=0.6, z=0.0, t=0.0)
    shifted = SpacetimePoint(rho=1.8, phi=0.6, z=zeta, t=tau)
    base = evaluate(spec, REF, point).components
    moved = evaluate(spec, REF, shifted).components
    phase = cmath.exp(1j * (REF.k_z * zeta - REF.energy * tau))
    np.testing.assert_allclose(moved, phase * base, rtol=0.0, atol=1e-14)


@given(
    rho=st.floats(min_value=0.0, max_value=40.0),
    phi=st.floats(min_value=-math.pi, max_value=math.pi),
)
@settings(max_examples=60, deadline=None)
def test_to_weyl_preserves_norm(rho, phi):
    psi = helicity_solution(REF, j_z=1.5, helicity=-0.5, point=SpacetimePoint(rho, phi))
    assert to_weyl(psi).norm() == pytest.approx(psi.norm(), rel=1e-14, abs=1e-300)


# ----------------------------------------------------------------------
# validation and bookkeeping
# ----------------------------------------------------------------------

def test_spec_validation():
    with pytest.raises(DomainError):
        SolutionSpec(family=Family.HELICITY_PLUS, j_z=1.0)  # not half-odd
    with pytest.raises(DomainError):
        SolutionSpec(family=Family.HELICITY_PLUS, j_z=0.5, helicity=-0.5)
    with pytest.raises(DomainError):
        SolutionSpec(family=Family.MIXED_HELICITY, j_z=0.5, a=0.0, b=0.0)
    with pytest.raises(DomainError):
        SolutionSpec(family=Family.UNIFORM_ORBITAL)  # ell missing
    with pytest.raises(DomainError):
        SpacetimePoint(rho=-0.1)
    with pytest.raises(DomainError):
        helicity_solution(REF, j_z=0.5, helicity=1.0)


def test_orbital_index():
    assert SolutionSpec(family=Family.HELICITY_PLUS, j_z=2.5).orbital_index == 2
    assert SolutionSpec(family=Family.HELICITY_MINUS, j_z=2.5).orbital_index == 3
    assert SolutionSpec(family=Family.MIXED_HELICITY, j_z=2.5, a=1, b=1).orbital_index == 2
    assert SolutionSpec(family=Family.UNIFORM_ORBITAL, ell=4, b=1).orbital_index == 4


def test_near_axis_rejects_axis_point():
    with pytest.raises(DomainError):
        uniform_orbital_near_axis(REF, ell=2, a=1.0, b=1.0, point=SpacetimePoint(0.0))


def test_family_accepts_string_value():
    spec = SolutionSpec(family="helicity_plus", j_z=0.5)
    assert spec.family is Family.HELICITY_PLUS
