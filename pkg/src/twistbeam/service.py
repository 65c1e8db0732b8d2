"""HTTP service exposing the scenario pipelines.

One POST endpoint per pipeline, each taking the same request body: the
scenario document plus a seed (used only by /validate's random sampling).
Configuration problems surface as 400 (semantic) or 422 (schema); a
validation run whose physics checks fail still returns 200 — the verdict
lives in the payload's all_pass field and it is the caller's job to turn
that into an exit status.

The CLI talks to this app in-process through an ASGI transport; `uvicorn
twistbeam.service:app` serves the same thing over a real socket.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__
from .errors import ScenarioError, TwistbeamError
from .pipelines import (
    ClassifyResult,
    ProfileResult,
    ValidateResult,
    VorticityResult,
    run_classify,
    run_profile,
    run_validate,
    run_vorticity,
)
from .scenario import Scenario

app = FastAPI(
    title="twistbeam",
    version=__version__,
    description="Velocity-field and vorticity analysis of relativistic vortex beams",
)


class RunRequest(BaseModel):
    scenario: Scenario
    seed: int = 0


@app.get("/")
def info() -> dict:
    return {
        "name": "twistbeam",
        "version": __version__,
        "endpoints": ["/profile", "/vorticity", "/validate", "/classify"],
    }


def _run(fn, *args):
    try:
        return fn(*args)
    except ScenarioError as err:
        raise HTTPException(status_code=400, detail=str(err)) from err
    except TwistbeamError as err:
        raise HTTPException(status_code=400, detail=f"{type(err).__name__}: {err}") from err


@app.post("/profile", response_model=ProfileResult)
def profile(request: RunRequest) -> ProfileResult:
    return _run(run_profile, request.scenario)


@app.post("/vorticity", response_model=VorticityResult)
def vorticity(request: RunRequest) -> VorticityResult:
    return _run(run_vorticity, request.scenario)


@app.post("/validate", response_model=ValidateResult)
def validate(request: RunRequest) -> ValidateResult:
    return _run(run_validate, request.scenario, request.seed)


@app.post("/classify", response_model=ClassifyResult)
def classify(request: RunRequest) -> ClassifyResult:
    return _run(run_classify, request.scenario)
