"""Shared fixtures and the acceptance-criteria summary hook.

The acceptance tests in test_acceptance.py are named ``test_c01_*`` through
``test_c10_*``, one per criterion.  After the run we print a compact
PASS/FAIL table for just those tests so the criteria can be read off at a
glance without scanning the full pytest output.
"""

from __future__ import annotations

import re

import pytest

from twistbeam import derive_kinematics

_CRITERION = re.compile(r"test_acceptance\.py::test_(c\d{2})_([a-z0-9_]+)")


@pytest.fixture(scope="session")
def reference_beam():
    """Mildly relativistic beam used across the bilinear/vortex tests."""
    return derive_kinematics(kappa=0.3, k_z=0.4)


@pytest.fixture(scope="session")
def paraxial_beam():
    """Small-cone-angle beam (theta_k ~ 0.01) for near-axis behavior."""
    return derive_kinematics(kappa=0.01, k_z=1.0)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _CRITERION.search(report.nodeid)
            if not match:
                continue
            tag = "PASS" if outcome == "passed" else "FAIL"
            label = match.group(2).replace("_", " ")
            lines.append((match.group(1), f"[{tag}] criterion {match.group(1)[1:]}: {label}"))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
