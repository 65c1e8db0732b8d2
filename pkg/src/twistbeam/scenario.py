"""Scenario files: one JSON document drives every pipeline run.

A scenario fixes the beam kinematics, the solution family with its quantum
numbers, the radial grid (log-spaced, at least 12 points per decade) and
which velocity definitions to report. Complex amplitudes are written as
[re, im] pairs; bare numbers are accepted and read as real. Bundled
scenarios covering each beam regime live in the top-level scenarios/
directory.
"""

from __future__ import annotations

import json
import math
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    ValidationError,
    field_validator,
    model_validator,
)

from .errors import DomainError, ScenarioError
from .kinematics import BeamParameters, derive_kinematics
from .spinor import Family, SolutionSpec

__all__ = [
    "BeamConfig",
    "SolutionConfig",
    "RadiiConfig",
    "OutputConfig",
    "Scenario",
    "load_scenario",
    "scenario_from_dict",
    "beam_parameters",
    "solution_spec",
    "radii_grid",
]


def _as_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex amplitude needs [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, complex):
        return value
    raise ValueError(f"cannot read {value!r} as a complex amplitude")


#: complex number that round-trips through JSON as an [re, im] pair
ComplexPair = Annotated[
    complex,
    BeforeValidator(_as_complex),
    PlainSerializer(lambda c: [c.real, c.imag], return_type=list),
]


class BeamConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kappa: float = Field(ge=0.0, description="transverse wave number (units of mass)")
    k_z: float = Field(description="longitudinal wave number")
    mass: float = Field(default=1.0, gt=0.0)


class SolutionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Family
    j_z: float | None = None
    ell: int | None = None
    a: ComplexPair = complex(1.0, 0.0)
    b: ComplexPair = complex(0.0, 0.0)
    a0: ComplexPair = complex(1.0, 0.0)


class RadiiConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    min: float = Field(gt=0.0)
    max: float
    points_per_decade: int = Field(ge=12)

    @model_validator(mode="after")
    def _ordered(self) -> "RadiiConfig":
        if self.max <= self.min:
            raise ValueError(f"radii.max must exceed radii.min, got [{self.min}, {self.max}]")
        return self


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["csv", "json"]
    path: str


class Scenario(BaseModel):
    model_config = ConfigDict(extra="forbid")

    beam: BeamConfig
    solution: SolutionConfig
    radii: RadiiConfig
    definitions: list[Literal["dirac", "canonical", "belinfante"]] = Field(
        default_factory=lambda: ["dirac", "canonical", "belinfante"]
    )
    outputs: OutputConfig | None = None

    @field_validator("definitions")
    @classmethod
    def _nonempty_unique(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("definitions cannot be empty")
        if len(set(v)) != len(v):
            raise ValueError(f"definitions contains duplicates: {v}")
        return v


def scenario_from_dict(data: dict) -> Scenario:
    """Validate a parsed scenario document; ScenarioError on any problem."""
    try:
        return Scenario.model_validate(data)
    except ValidationError as err:
        raise ScenarioError(f"invalid scenario: {err}") from err


def load_scenario(path: str) -> Scenario:
    """Read and validate a scenario JSON file."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise ScenarioError(f"cannot read scenario file {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {err}") from err
    return scenario_from_dict(data)


def beam_parameters(scenario: Scenario) -> BeamParameters:
    """Derived kinematics of the scenario's beam."""
    beam = scenario.beam
    try:
        return derive_kinematics(beam.kappa, beam.k_z, beam.mass)
    except DomainError as err:
        raise ScenarioError(f"invalid beam: {err}") from err


def solution_spec(scenario: Scenario) -> SolutionSpec:
    """The scenario's solution family as a SolutionSpec."""
    sol = scenario.solution
    try:
        return SolutionSpec(
            family=sol.family, j_z=sol.j_z, ell=sol.ell, a=sol.a, b=sol.b, a0=sol.a0
        )
    except DomainError as err:
        raise ScenarioError(f"invalid solution: {err}") from err


def radii_grid(scenario: Scenario) -> np.ndarray:
    """Log-spaced radial grid honoring the points-per-decade floor."""
    cfg = scenario.radii
    decades = math.log10(cfg.max / cfg.min)
    n = int(math.ceil(cfg.points_per_decade * decades)) + 1
    return np.geomspace(cfg.min, cfg.max, max(n, 2))
