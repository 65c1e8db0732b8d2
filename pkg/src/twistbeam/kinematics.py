"""Beam kinematics and characteristic radii.

Natural units throughout: hbar = c = 1 and the electron mass m is the one
internal scale (m = 1 by default), so momenta are in units of m and lengths
in units of 1/m. Any conversion to laboratory units happens at the CLI
boundary, never here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["BeamParameters", "CharacteristicRadii", "derive_kinematics", "characteristic_radii"]


@dataclass(frozen=True)
class BeamParameters:
    """Kinematic inputs and the derived on-shell quantities.

    kappa is the transverse wave number, k_z the longitudinal one,
    k = sqrt(kappa^2 + k_z^2), energy = sqrt(k^2 + mass^2) and theta_k the
    cone pitch angle atan2(kappa, k_z).
    """

    kappa: float
    k_z: float
    mass: float
    k: float
    energy: float
    theta_k: float


@dataclass(frozen=True)
class CharacteristicRadii:
    """Radii separating the radial regimes of a beam with orbital index ell.

    r_bucket = ell*tan(theta_k)/kappa — below it the transverse flow is
    rigid-rotation-like; r_bessel = ell/kappa — the first Bessel lobe;
    r_compton_scale = ell/energy; r_crossing — analytic estimate of the
    slope-crossover radius of the uniform-orbital family,
    ell*sqrt(2|b|^2 / ((|a|^2+|b|^2) E (E+m))).
    """

    r_bucket: float
    r_bessel: float
    r_compton_scale: float
    r_crossing: float


def derive_kinematics(kappa: float, k_z: float, mass: float = 1.0) -> BeamParameters:
    """Build BeamParameters from (kappa, k_z, mass), validating the domain.

    Rejects kappa < 0, mass <= 0 and the degenerate kappa = k_z = 0 case.
    """
    if mass <= 0.0:
        raise DomainError(f"mass must be positive, got {mass}")
    if kappa < 0.0:
        raise DomainError(f"kappa must be non-negative, got {kappa}")
    if kappa == 0.0 and k_z == 0.0:
        raise DomainError("kappa and k_z cannot both vanish")
    k = math.hypot(kappa, k_z)
    energy = math.hypot(k, mass)
    theta_k = math.atan2(kappa, k_z)
    return BeamParameters(kappa=kappa, k_z=k_z, mass=mass, k=k, energy=energy, theta_k=theta_k)


def characteristic_radii(
    params: BeamParameters,
    ell: int,
    a: complex = 1.0,
    b: complex = 1.0,
) -> CharacteristicRadii:
    """Characteristic radii for orbital index ell >= 1.

    The mixing amplitudes (a, b) only enter r_crossing; the defaults give
    the equal-weight estimate.
    """
    if ell < 1:
        raise DomainError(f"characteristic radii need ell >= 1, got {ell}")
    if params.kappa == 0.0:
        raise DomainError("characteristic radii are undefined for a plane wave (kappa = 0)")
    weight = abs(b) ** 2 / (abs(a) ** 2 + abs(b) ** 2)
    e, m = params.energy, params.mass
    return CharacteristicRadii(
        r_bucket=ell * math.tan(params.theta_k) / params.kappa,
        r_bessel=ell / params.kappa,
        r_compton_scale=ell / e,
        r_crossing=ell * math.sqrt(2.0 * weight / (e * (e + m))),
    )
