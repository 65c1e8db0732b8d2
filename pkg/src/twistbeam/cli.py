"""Command-line front end: a thin client of the in-process service.

Every subcommand loads one scenario file, posts it to the service app over
an in-memory ASGI transport (no socket, same request/response models as a
deployed server) and renders the typed payload:

    twistbeam profile   --scenario s.json --out profile.csv
    twistbeam vorticity --scenario s.json --format json
    twistbeam validate  --scenario s.json --seed 7
    twistbeam classify  --scenario s.json

profile and vorticity emit CSV by default and JSON on request; validate
and classify are JSON reports. Exit codes: 0 success, 1 a validation check
failed (or the service errored), 2 configuration problems. All numbers are
in natural units (hbar = c = 1, lengths in 1/mass); the conversion line
printed to stderr gives the electron-scale factors.
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

from ._serialize import canonical_json, render_csv
from .errors import ScenarioError
from .scenario import Scenario, load_scenario
from .service import app

__all__ = ["main"]

#: electron rest energy in keV and reduced Compton wavelength in pm:
#: multiply natural-unit energies / lengths by these for display.
ELECTRON_MASS_KEV = 510.99895
ELECTRON_LENGTH_PM = 0.38615926796

_COMMANDS = {
    "profile": "radial velocity/density table",
    "vorticity": "circulation, flux density and FD curl table",
    "validate": "built-in physics checks (exit 1 when any fails)",
    "classify": "regime fits, turnover radius and vortex-line verdicts",
}
_REPORT_COMMANDS = ("validate", "classify")


async def _post(path: str, payload: dict) -> httpx.Response:
    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(transport=transport, base_url="http://service.internal") as client:
        return await client.post(path, json=payload, timeout=None)


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="twistbeam",
        description="Velocity-field and vorticity analysis of relativistic vortex beams",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in _COMMANDS.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--scenario", required=True, help="path to a scenario JSON file")
        cmd.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
        cmd.add_argument(
            "--format", choices=("csv", "json"), default=None, help="output format (tables only)"
        )
        cmd.add_argument(
            "--seed", type=int, default=0, help="seed for the validation sampling points"
        )
    args = parser.parse_args(argv)

    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as err:
        print(f"twistbeam: {err}", file=sys.stderr)
        return 2

    if args.command in _REPORT_COMMANDS:
        if args.format == "csv":
            print(
                f"twistbeam: {args.command} emits a JSON report; csv is not available",
                file=sys.stderr,
            )
            return 2
        fmt, out = "json", args.out
    else:
        fmt, out = _resolve_output(args, scenario)

    payload = {"scenario": scenario.model_dump(mode="json"), "seed": args.seed}
    response = asyncio.run(_post(f"/{args.command}", payload))
    if response.status_code in (400, 422):
        print(f"twistbeam: {_detail(response)}", file=sys.stderr)
        return 2
    if response.status_code != 200:
        print(f"twistbeam: service error {response.status_code}: {_detail(response)}", file=sys.stderr)
        return 1
    result = response.json()

    exit_code = 0
    if args.command == "validate" and not result["all_pass"]:
        exit_code = 1
        for name, check in sorted(result["checks"].items()):
            if not check["passed"] and not check["informational"]:
                print(
                    f"twistbeam: check failed: {name} max {check['max']:g} "
                    f"> threshold {check['threshold']:g}",
                    file=sys.stderr,
                )

    if args.command in _REPORT_COMMANDS or fmt == "json":
        text = canonical_json(result)
    else:
        text = render_csv(result["columns"], result["rows"])
    _write(text, out)
    print(
        f"twistbeam: natural units; 1 mass = {ELECTRON_MASS_KEV} keV, "
        f"1 length = {ELECTRON_LENGTH_PM} pm at the electron scale",
        file=sys.stderr,
    )
    return exit_code


def _resolve_output(args: argparse.Namespace, scenario: Scenario) -> tuple[str, str | None]:
    """Table commands: CLI flags win, the scenario's outputs block fills
    the gaps, CSV to stdout is the fallback."""
    fmt = args.format
    out = args.out
    if scenario.outputs is not None:
        if fmt is None:
            fmt = scenario.outputs.format
        if out is None:
            out = scenario.outputs.path
    return fmt or "csv", out


def _detail(response: httpx.Response) -> str:
    try:
        detail = response.json().get("detail")
    except ValueError:
        return response.text.strip() or "no detail"
    if isinstance(detail, str):
        return detail
    return canonical_json(detail).strip() if detail is not None else "no detail"


if __name__ == "__main__":
    raise SystemExit(main())
