"""Pipeline runs: profile, vorticity, validate, classify.

These drive the same entry points the service exposes, on small scenarios
tuned to run in well under a second each (classify excepted — it owns the
slope scans).
"""

from __future__ import annotations

import math

import pytest

from twistbeam import InsufficientSamplesError, ScenarioError
from twistbeam._serialize import round12
from twistbeam.pipelines import (
    PROFILE_COLUMNS,
    run_classify,
    run_profile,
    run_validate,
    run_vorticity,
)
from twistbeam.scenario import scenario_from_dict

PLANE_WAVE = {
    "beam": {"kappa": 0.0, "k_z": 0.75},
    "solution": {"family": "helicity_plus", "j_z": 0.5},
    "radii": {"min": 0.1, "max": 10.0, "points_per_decade": 12},
}

ANTIPARALLEL = {
    "beam": {"kappa": 0.05, "k_z": 1.0},
    "solution": {"family": "helicity_minus", "j_z": 2.5},
    "radii": {"min": 0.06, "max": 30.0, "points_per_decade": 16},
}

NEAR_AXIS = {
    "beam": {"kappa": 0.5 * math.sin(0.02), "k_z": 0.5 * math.cos(0.02)},
    "solution": {"family": "uniform_orbital_near_axis", "ell": 2, "a": [1, 0], "b": [1, 0]},
    "radii": {"min": 0.1, "max": 10.0, "points_per_decade": 12},
}


# ----------------------------------------------------------------------
# profile
# ----------------------------------------------------------------------

def test_profile_plane_wave_rows():
    result = run_profile(scenario_from_dict(PLANE_WAVE))
    assert result.columns == PROFILE_COLUMNS
    assert len(result.rows) == 25
    for row in result.rows:
        assert row.undefined_flag == 0
        assert row.v_phi_dirac == 0.0
        assert row.v_phi_canonical == 0.0
        assert row.v_phi_belinfante == 0.0
        assert row.v_z_dirac == 0.6
        assert row.v_z_canonical == 0.6
        assert row.v_z_belinfante == 0.6
        assert row.density == 2.5


def test_profile_columns_pinned_regardless_of_definitions():
    # the profile table always reports all three definitions, even when the
    # scenario restricts the vorticity/classify definitions
    scenario = scenario_from_dict(dict(ANTIPARALLEL, definitions=["dirac"]))
    result = run_profile(scenario)
    assert result.columns == PROFILE_COLUMNS
    first = result.rows[0]
    assert first.v_phi_canonical is not None
    assert first.v_phi_belinfante is not None


def test_profile_values_are_round12_stable():
    result = run_profile(scenario_from_dict(ANTIPARALLEL))
    for row in result.rows:
        for name in PROFILE_COLUMNS[:-1]:
            value = getattr(row, name)
            if value is not None:
                assert value == round12(value)


def test_profile_antiparallel_structure():
    # the table that motivates three definitions at all: the canonical swirl
    # blows through the light speed near the axis, the Dirac-current one
    # stays causal everywhere, and belinfante rides their midpoint row by row
    result = run_profile(scenario_from_dict(ANTIPARALLEL))
    rows = result.rows
    assert rows[0].v_phi_canonical > 1.0
    for row in rows:
        speed = math.sqrt(row.v_phi_dirac**2 + row.v_z_dirac**2)
        assert speed <= 1.0 + 1e-12
        midpoint = 0.5 * (row.v_phi_canonical + row.v_phi_dirac)
        assert row.v_phi_belinfante == pytest.approx(midpoint, rel=1e-9)


# ----------------------------------------------------------------------
# vorticity
# ----------------------------------------------------------------------

def test_vorticity_columns_follow_definitions():
    scenario = scenario_from_dict(dict(ANTIPARALLEL, definitions=["belinfante"]))
    result = run_vorticity(scenario)
    assert result.columns == [
        "rho",
        "circulation_belinfante",
        "flux_density_belinfante",
        "curl_belinfante",
    ]


def test_vorticity_definition_order_is_canonicalized():
    scenario = scenario_from_dict(dict(ANTIPARALLEL, definitions=["belinfante", "dirac"]))
    result = run_vorticity(scenario)
    assert result.columns[1] == "circulation_dirac"
    assert result.columns[4] == "circulation_belinfante"


def test_vorticity_step_and_axis_guard():
    scenario = scenario_from_dict(dict(ANTIPARALLEL, definitions=["dirac"]))
    result = run_vorticity(scenario)
    assert result.step == round12(max(0.06 / 2.0, 30.0 / 2000.0))
    for row in result.rows:
        if row["rho"] < 4.0 * result.step:
            assert row["curl_dirac"] is None
        else:
            assert row["curl_dirac"] is not None
    # both branches must actually occur on this grid
    assert any(row["curl_dirac"] is None for row in result.rows)
    assert any(row["curl_dirac"] is not None for row in result.rows)


def test_vorticity_canonical_circulation_plateau():
    # canonical circulation tends to 2 pi ell / E axis-ward (ell = 3 here)
    scenario = scenario_from_dict(dict(ANTIPARALLEL, definitions=["canonical"]))
    result = run_vorticity(scenario)
    params_energy = math.sqrt(1.0 + 0.05**2 + 1.0)
    # near the axis the dominant harmonic is the *lower* Bessel order
    # (j_z - 1/2 = 2) despite its small amplitude
    expected = 2.0 * math.pi * 2.0 / params_energy
    assert result.rows[0]["circulation_canonical"] == pytest.approx(expected, rel=1e-3)


# ----------------------------------------------------------------------
# validate
# ----------------------------------------------------------------------

def test_validate_passes_antiparallel():
    result = run_validate(scenario_from_dict(ANTIPARALLEL), seed=0)
    assert result.all_pass
    assert result.seed == 0
    assert set(result.checks) == {
        "dirac_residual",
        "current_conservation",
        "belinfante_midpoint",
        "weyl_zero_component",
        "plane_wave_degeneracy",
    }
    for check in result.checks.values():
        assert check.passed
        assert not check.informational
        assert check.max <= check.threshold


def test_validate_corruption_negative_control():
    # scaling one bispinor component by 1% must blow the residual check;
    # this is the proof the validation would actually catch a broken field
    result = run_validate(scenario_from_dict(ANTIPARALLEL), seed=0, corrupt_component=2)
    assert not result.all_pass
    assert not result.checks["dirac_residual"].passed
    assert result.checks["dirac_residual"].max > 1e-4
    # the other checks are untouched by the hook
    assert result.checks["belinfante_midpoint"].passed
    assert result.checks["plane_wave_degeneracy"].passed


def test_validate_near_axis_family_informational():
    result = run_validate(scenario_from_dict(NEAR_AXIS), seed=0)
    residual = result.checks["dirac_residual"]
    conservation = result.checks["current_conservation"]
    assert residual.informational
    assert conservation.informational
    # the approximant genuinely fails the residual...
    assert not residual.passed
    assert residual.max > 1e-6
    # ...but informational checks must not gate the overall verdict
    assert result.all_pass


def test_validate_deterministic_per_seed():
    first = run_validate(scenario_from_dict(ANTIPARALLEL), seed=3)
    second = run_validate(scenario_from_dict(ANTIPARALLEL), seed=3)
    assert first == second
    other = run_validate(scenario_from_dict(ANTIPARALLEL), seed=4)
    assert other.checks["dirac_residual"].max != first.checks["dirac_residual"].max


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------

def test_classify_antiparallel():
    result = run_classify(scenario_from_dict(ANTIPARALLEL))
    assert set(result.windows) == {"bucket", "whirlpool"}
    # r_ref = r_bucket = ell / k_z = 3
    assert result.windows["bucket"] == (round12(0.06), round12(0.3))
    assert result.windows["whirlpool"] == (round12(12.0), round12(30.0))

    dirac_reports = result.regimes["dirac"]
    assert dirac_reports[0].regime == "Bucket"
    assert dirac_reports[1].regime == "Whirlpool"
    for reports in (result.regimes["canonical"], result.regimes["belinfante"]):
        assert reports[0].regime == "Whirlpool"
        assert reports[1].regime == "Whirlpool"

    assert result.transition.reason is None
    assert result.transition.measured == pytest.approx(3.0, rel=2e-3)
    assert result.transition.analytic["r_bucket"] == pytest.approx(3.0, rel=1e-12)
    assert result.transition.analytic["r_bessel"] == pytest.approx(60.0, rel=1e-12)

    assert result.verdicts["dirac"].verdict == "Regular"
    assert result.verdicts["dirac"].fitted_power == pytest.approx(2.0, abs=1e-3)
    assert result.verdicts["canonical"].verdict == "Singular"
    assert result.verdicts["belinfante"].verdict == "Singular"
    # canonical limit: lowest surviving harmonic is j_z - 1/2 = 2
    energy = math.sqrt(1.0 + 0.05**2 + 1.0)
    assert result.verdicts["canonical"].limiting_circulation == pytest.approx(
        2.0 * math.pi * 2.0 / energy, rel=1e-3
    )


def test_classify_respects_definition_subset():
    scenario = scenario_from_dict(dict(ANTIPARALLEL, definitions=["dirac"]))
    result = run_classify(scenario)
    assert list(result.regimes) == ["dirac"]
    assert list(result.verdicts) == ["dirac"]


def test_classify_plane_wave_rejected():
    with pytest.raises(ScenarioError, match="transverse structure"):
        run_classify(scenario_from_dict(PLANE_WAVE))


def test_classify_insufficient_coverage():
    # a grid that misses the bucket window entirely cannot be classified
    scenario = scenario_from_dict(
        dict(ANTIPARALLEL, radii={"min": 1.0, "max": 10.0, "points_per_decade": 12})
    )
    with pytest.raises(InsufficientSamplesError):
        run_classify(scenario)
