"""Scenario pipelines: the four runs the service and CLI expose.

Each run takes a validated Scenario and returns a pydantic result model
whose floats are already snapped to 12 significant digits, so any faithful
serialization of the result is deterministic byte-for-byte.

profile    radial table of v_phi and v_z for all three definitions + density
vorticity  radial table of circulation, flux density and finite-difference
           curl per requested definition
validate   the built-in physics checks with pass/fail against the package
           tolerances (exit-status material for the CLI)
classify   regime fits, slope-turnover radius, characteristic radii and
           the small-radius vortex-line verdicts
"""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel

from ._serialize import round12
from .bilinear import densities
from .errors import NoCrossoverError, ScenarioError, ZeroDensityError
from .kinematics import BeamParameters, characteristic_radii, derive_kinematics
from .scenario import Scenario, beam_parameters, radii_grid, solution_spec
from .spinor import (
    Family,
    SolutionSpec,
    SpacetimePoint,
    dirac_residual,
    evaluate,
    to_weyl,
)
from .vortex import (
    circulation,
    classify_profile,
    curl_fd,
    transition_radius_measured,
    velocity_phi_sampler,
    velocity_plane_sampler,
    vortex_line_verdict,
)

__all__ = [
    "PROFILE_COLUMNS",
    "ProfileRow",
    "ProfileResult",
    "VorticityResult",
    "CheckResult",
    "ValidateResult",
    "RegimeEntry",
    "TransitionReport",
    "VerdictEntry",
    "ClassifyResult",
    "run_profile",
    "run_vorticity",
    "run_validate",
    "run_classify",
]

#: relative radial nudge applied when a grid radius lands on a density zero
_ZERO_JITTER = 1e-6

PROFILE_COLUMNS = [
    "rho",
    "v_phi_dirac",
    "v_phi_canonical",
    "v_phi_belinfante",
    "v_z_dirac",
    "v_z_canonical",
    "v_z_belinfante",
    "density",
    "undefined_flag",
]


class ProfileRow(BaseModel):
    rho: float
    v_phi_dirac: float | None
    v_phi_canonical: float | None
    v_phi_belinfante: float | None
    v_z_dirac: float | None
    v_z_canonical: float | None
    v_z_belinfante: float | None
    density: float
    undefined_flag: int


class ProfileResult(BaseModel):
    columns: list[str]
    rows: list[ProfileRow]


class VorticityResult(BaseModel):
    columns: list[str]
    rows: list[dict[str, float | None]]
    step: float


class CheckResult(BaseModel):
    max: float
    threshold: float
    passed: bool
    informational: bool = False
    n_points: int


class ValidateResult(BaseModel):
    checks: dict[str, CheckResult]
    all_pass: bool
    seed: int


class RegimeEntry(BaseModel):
    window: tuple[float, float]
    fitted_slope: float
    r2: float
    regime: str
    n_samples: int


class TransitionReport(BaseModel):
    measured: float | None
    reason: str | None
    analytic: dict[str, float]


class VerdictEntry(BaseModel):
    verdict: str
    limiting_circulation: float | None
    fitted_power: float | None
    spread: float
    radii_window: tuple[float, float]


class ClassifyResult(BaseModel):
    windows: dict[str, tuple[float, float]]
    regimes: dict[str, list[RegimeEntry]]
    transition: TransitionReport
    verdicts: dict[str, VerdictEntry]


# ----------------------------------------------------------------------
# profile
# ----------------------------------------------------------------------


def run_profile(scenario: Scenario) -> ProfileResult:
    """Velocity and density profile over the scenario's radial grid.

    All three definitions are always reported (the column set is pinned).
    A radius that lands on an exact density zero is nudged off it by a
    relative 1e-6; if the density still vanishes the velocities are
    undefined there: empty cells plus undefined_flag = 1.
    """
    params = beam_parameters(scenario)
    spec = solution_spec(scenario)
    rows: list[ProfileRow] = []
    for rho in radii_grid(scenario):
        rho_eval = float(rho)
        dens = densities(spec, params, SpacetimePoint(rho_eval))
        if dens.scalar == 0.0:
            rho_eval *= 1.0 + _ZERO_JITTER
            dens = densities(spec, params, SpacetimePoint(rho_eval))
        if dens.scalar == 0.0:
            rows.append(
                ProfileRow(
                    rho=round12(rho_eval),
                    v_phi_dirac=None,
                    v_phi_canonical=None,
                    v_phi_belinfante=None,
                    v_z_dirac=None,
                    v_z_canonical=None,
                    v_z_belinfante=None,
                    density=0.0,
                    undefined_flag=1,
                )
            )
            continue
        j0 = dens.current[0]
        p0 = dens.p_canonical[0]
        rows.append(
            ProfileRow(
                rho=round12(rho_eval),
                v_phi_dirac=round12(dens.current[2] / j0),
                v_phi_canonical=round12(dens.p_canonical[2] / p0),
                v_phi_belinfante=round12(dens.p_belinfante[2] / p0),
                v_z_dirac=round12(dens.current[3] / j0),
                v_z_canonical=round12(dens.p_canonical[3] / p0),
                v_z_belinfante=round12(dens.p_belinfante[3] / p0),
                density=round12(dens.scalar),
                undefined_flag=0,
            )
        )
    return ProfileResult(columns=list(PROFILE_COLUMNS), rows=rows)


# ----------------------------------------------------------------------
# vorticity
# ----------------------------------------------------------------------


def run_vorticity(scenario: Scenario) -> VorticityResult:
    """Circulation, flux density and FD curl per requested definition.

    The finite-difference step is tied to the grid: the larger of half the
    innermost radius and 1/2000 of the outermost, so the stencil resolves
    the inner grid without becoming noise-limited at the outer edge. Radii
    closer to the axis than 4*step leave the curl cells blank.
    """
    params = beam_parameters(scenario)
    spec = solution_spec(scenario)
    step = max(scenario.radii.min / 2.0, scenario.radii.max / 2000.0)
    defs = [d for d in ("dirac", "canonical", "belinfante") if d in scenario.definitions]
    columns = ["rho"]
    for d in defs:
        columns += [f"circulation_{d}", f"flux_density_{d}", f"curl_{d}"]
    phi_samplers = {d: velocity_phi_sampler(spec, params, d) for d in defs}
    plane_samplers = {d: velocity_plane_sampler(spec, params, d) for d in defs}
    rows: list[dict[str, float | None]] = []
    for rho in radii_grid(scenario):
        rho_f = float(rho)
        row: dict[str, float | None] = {"rho": round12(rho_f)}
        for d in defs:
            try:
                sample = circulation(phi_samplers[d], rho_f)
                row[f"circulation_{d}"] = round12(sample.circulation)
                row[f"flux_density_{d}"] = round12(sample.flux_density)
            except ZeroDensityError:
                row[f"circulation_{d}"] = None
                row[f"flux_density_{d}"] = None
            if rho_f < 4.0 * step:
                row[f"curl_{d}"] = None
            else:
                try:
                    row[f"curl_{d}"] = round12(curl_fd(plane_samplers[d], SpacetimePoint(rho_f), step))
                except ZeroDensityError:
                    row[f"curl_{d}"] = None
        rows.append(row)
    return VorticityResult(columns=columns, rows=rows, step=round12(step))


# ----------------------------------------------------------------------
# validate
# ----------------------------------------------------------------------

_RESIDUAL_THRESHOLD = 1e-12
_CONSERVATION_THRESHOLD = 1e-8
_MIDPOINT_THRESHOLD = 1e-12
_WEYL_THRESHOLD = 1e-13
_DEGENERACY_THRESHOLD = 1e-13


def _sample_points(
    rng: np.random.Generator, n: int, rho_lo: float, rho_hi: float
) -> list[SpacetimePoint]:
    pts = []
    for _ in range(n):
        rho = 10.0 ** rng.uniform(math.log10(rho_lo), math.log10(rho_hi))
        pts.append(
            SpacetimePoint(
                rho=float(rho),
                phi=float(rng.uniform(0.0, 2.0 * math.pi)),
                z=float(rng.uniform(-5.0, 5.0)),
                t=float(rng.uniform(-5.0, 5.0)),
            )
        )
    return pts


def _rho_ceiling(params: BeamParameters, cap: float) -> float:
    """Largest radius sampled: keeps the Bessel argument within the cap."""
    if params.kappa == 0.0:
        return cap
    return min(cap, cap / params.kappa)


def _conservation_residual(
    spec: SolutionSpec, params: BeamParameters, point: SpacetimePoint, h: float
) -> float:
    """|div j| / (scale * j0) by centered differences in rho and phi.

    The time and z derivatives of every bilinear vanish identically for
    these stationary z-uniform modes, so only the transverse divergence
    d_rho j_rho + j_rho/rho + (1/rho) d_phi j_phi is probed: radial step h
    (a fixed fraction of the transverse wavelength), azimuthal step 0.01
    rad (the harmonics are low). The normalizing scale is kappa, or the
    mass when kappa = 0.
    """
    rho, phi = point.rho, point.phi
    dphi = 1e-2
    d_hi = densities(spec, params, SpacetimePoint(rho + h, phi, point.z, point.t))
    d_lo = densities(spec, params, SpacetimePoint(rho - h, phi, point.z, point.t))
    d_pp = densities(spec, params, SpacetimePoint(rho, phi + dphi, point.z, point.t))
    d_pm = densities(spec, params, SpacetimePoint(rho, phi - dphi, point.z, point.t))
    d_00 = densities(spec, params, point)
    div = (d_hi.current[1] - d_lo.current[1]) / (2.0 * h)
    div += d_00.current[1] / rho
    div += (d_pp.current[2] - d_pm.current[2]) / (2.0 * dphi * rho)
    scale = params.kappa if params.kappa > 0.0 else params.mass
    return abs(div) / (scale * d_00.scalar)


def run_validate(
    scenario: Scenario, seed: int = 0, corrupt_component: int | None = None
) -> ValidateResult:
    """The five built-in physics checks on the scenario's own solution.

    corrupt_component is a test hook: scaling one bispinor component by
    1.01 inside the residual check must make that check fail (negative
    control for the whole validation path).

    The residual check is informational (reported, excluded from all_pass)
    for the near-axis family, which is an approximant by construction.
    """
    params = beam_parameters(scenario)
    spec = solution_spec(scenario)
    rng = np.random.default_rng(seed)
    checks: dict[str, CheckResult] = {}

    # free-equation residual on the scenario's own family
    informational = spec.family is Family.UNIFORM_ORBITAL_NEAR_AXIS
    pts = _sample_points(rng, 200, 1e-3, _rho_ceiling(params, 50.0))
    worst = 0.0
    for pt in pts:
        try:
            worst = max(
                worst,
                dirac_residual(spec, params, pt, scale_component=corrupt_component),
            )
        except ZeroDensityError:
            continue
    checks["dirac_residual"] = CheckResult(
        max=round12(worst),
        threshold=_RESIDUAL_THRESHOLD,
        passed=worst <= _RESIDUAL_THRESHOLD,
        informational=informational,
        n_points=len(pts),
    )

    # transverse current conservation by finite differences; the near-axis
    # approximant does not solve the field equation, so its current is not
    # conserved either — informational there for the same reason
    h = 1e-2 / params.kappa if params.kappa > 0.0 else 1e-2
    lo = 1.25 * h
    # stay inside the first Bessel lobe: past it the density has zeros and
    # the per-point normalization below would divide by locally tiny values
    x_cap = max(1.0, 0.8 * spec.orbital_index)
    hi = min(30.0, x_cap / params.kappa) if params.kappa > 0.0 else 30.0
    hi = max(hi, 2.0 * lo)
    worst = 0.0
    pts = _sample_points(rng, 60, lo, hi)
    for pt in pts:
        worst = max(worst, _conservation_residual(spec, params, pt, h))
    checks["current_conservation"] = CheckResult(
        max=round12(worst),
        threshold=_CONSERVATION_THRESHOLD,
        passed=worst <= _CONSERVATION_THRESHOLD,
        informational=informational,
        n_points=len(pts),
    )

    # belinfante midpoint identity
    worst = 0.0
    pts = _sample_points(rng, 60, 1e-3, _rho_ceiling(params, 30.0))
    for pt in pts:
        d = densities(spec, params, pt)
        if d.scalar == 0.0:
            continue
        scale = params.energy * d.scalar
        for i in (1, 2, 3):
            mid = 0.5 * (d.p_canonical[i] + params.energy * d.current[i])
            worst = max(worst, abs(d.p_belinfante[i] - mid) / scale)
    checks["belinfante_midpoint"] = CheckResult(
        max=round12(worst),
        threshold=_MIDPOINT_THRESHOLD,
        passed=worst <= _MIDPOINT_THRESHOLD,
        n_points=len(pts),
    )

    # the amplitude lock b (E + m - k_z) = i a kappa zeroes the second
    # right-handed component on the scenario's beam
    a = complex(1.0, 0.0)
    b = 1j * a * params.kappa / (params.energy + params.mass - params.k_z)
    weyl_spec = SolutionSpec(family=Family.MIXED_HELICITY, j_z=1.5, a=a, b=b)
    worst = 0.0
    pts = _sample_points(rng, 40, 1e-2, _rho_ceiling(params, 20.0))
    for pt in pts:
        psi = evaluate(weyl_spec, params, pt)
        norm = psi.norm()
        if norm == 0.0:
            continue
        worst = max(worst, float(abs(to_weyl(psi).components[1])) / norm)
    checks["weyl_zero_component"] = CheckResult(
        max=round12(worst),
        threshold=_WEYL_THRESHOLD,
        passed=worst <= _WEYL_THRESHOLD,
        n_points=len(pts),
    )

    # plane-wave degeneracy of the three definitions (fixed reference beam)
    pw_params = derive_kinematics(0.0, 0.75, params.mass)
    pw_spec = SolutionSpec(family=Family.HELICITY_PLUS, j_z=0.5)
    v_z_expect = pw_params.k / pw_params.energy
    worst = 0.0
    pts = _sample_points(rng, 20, 1e-2, 5.0)
    for pt in pts:
        d = densities(pw_spec, pw_params, pt)
        for num, denom in (
            (d.current, d.current[0]),
            (d.p_canonical, d.p_canonical[0]),
            (d.p_belinfante, d.p_belinfante[0]),
        ):
            worst = max(
                worst,
                abs(num[1] / denom),
                abs(num[2] / denom),
                abs(num[3] / denom - v_z_expect),
            )
    checks["plane_wave_degeneracy"] = CheckResult(
        max=round12(worst),
        threshold=_DEGENERACY_THRESHOLD,
        passed=worst <= _DEGENERACY_THRESHOLD,
        n_points=len(pts),
    )

    all_pass = all(c.passed for c in checks.values() if not c.informational)
    return ValidateResult(checks=checks, all_pass=all_pass, seed=seed)


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------


def run_classify(scenario: Scenario) -> ClassifyResult:
    """Regime table, turnover radius and vortex-line verdicts.

    The slope windows sit at [0.02, 0.1] and [4, 10] times the reference
    radius (the rigid-rotation boundary for the helicity/mixed families,
    the piecewise-crossing estimate for the uniform-orbital ones), away
    from the transitional band between them.
    """
    params = beam_parameters(scenario)
    spec = solution_spec(scenario)
    if params.kappa == 0.0:
        raise ScenarioError("classify needs a beam with transverse structure (kappa > 0)")
    ell = spec.orbital_index
    radii_char = characteristic_radii(params, ell, spec.a, spec.b)
    if spec.family in (Family.UNIFORM_ORBITAL, Family.UNIFORM_ORBITAL_NEAR_AXIS) and radii_char.r_crossing > 0.0:
        r_ref = radii_char.r_crossing
    else:
        r_ref = radii_char.r_bucket
    windows = {
        "bucket": (0.02 * r_ref, 0.1 * r_ref),
        "whirlpool": (4.0 * r_ref, 10.0 * r_ref),
    }

    grid = radii_grid(scenario)
    regimes: dict[str, list[RegimeEntry]] = {}
    for d in [d for d in ("dirac", "canonical", "belinfante") if d in scenario.definitions]:
        sampler = velocity_phi_sampler(spec, params, d)
        vals = np.empty(grid.shape)
        for i, rho in enumerate(grid):
            try:
                vals[i] = sampler(float(rho), 0.0)
            except ZeroDensityError:
                vals[i] = sampler(float(rho) * (1.0 + _ZERO_JITTER), 0.0)
        reports = classify_profile(grid, vals, [windows["bucket"], windows["whirlpool"]])
        regimes[d] = [
            RegimeEntry(
                window=(round12(r.window[0]), round12(r.window[1])),
                fitted_slope=round12(r.fitted_slope),
                r2=round12(r.r2),
                regime=r.regime.value,
                n_samples=r.n_samples,
            )
            for r in reports
        ]

    try:
        measured: float | None = round12(transition_radius_measured(spec, params))
        reason: str | None = None
    except NoCrossoverError as err:
        measured = None
        reason = str(err)
    transition = TransitionReport(
        measured=measured,
        reason=reason,
        analytic={
            "r_bucket": round12(radii_char.r_bucket),
            "r_bessel": round12(radii_char.r_bessel),
            "r_compton_scale": round12(radii_char.r_compton_scale),
            "r_crossing": round12(radii_char.r_crossing),
        },
    )

    verdicts = {}
    for d in [d for d in ("dirac", "canonical", "belinfante") if d in scenario.definitions]:
        v = vortex_line_verdict(spec, params, d)
        verdicts[d] = VerdictEntry(
            verdict=v.verdict,
            limiting_circulation=None if v.limiting_circulation is None else round12(v.limiting_circulation),
            fitted_power=None if v.fitted_power is None else round12(v.fitted_power),
            spread=round12(v.spread),
            radii_window=(round12(v.radii_window[0]), round12(v.radii_window[1])),
        )

    return ClassifyResult(
        windows={k: (round12(v[0]), round12(v[1])) for k, v in windows.items()},
        regimes=regimes,
        transition=transition,
        verdicts=verdicts,
    )
