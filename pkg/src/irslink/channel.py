"""Per-path channel coefficients and coherent combining.

A coefficient is an (amplitude, phase) pair.  Amplitudes are in sqrt-milliwatt:
link budgets are assembled in dBm and converted to the linear domain before
taking the square root, so |h|^2 is the received power in mW.  Propagation
over a distance d contributes phase -2*pi*d/lambda; only phase differences
matter for the combined magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, InvalidParameterError
from .geometry import Position3D, ScenarioGeometry, depression_angle, distance
from .propagation import AntennaParams, PathlossParams, effective_tx_power, pl_bs_to_element, pl_element_to_uav, pl_los

SPEED_OF_LIGHT = 3.0e8  # m/s; matches the 40*pi*f/3 constant of the path-loss model

TWO_PI = 2.0 * math.pi

PHASE_ALIGNED = "aligned"
PHASE_GEOMETRIC = "geometric"


@dataclass(frozen=True)
class ChannelCoefficient:
    """One propagation path: amplitude in sqrt-mW, phase in [0, 2*pi) radians."""

    amplitude: float
    phase: float

    def __post_init__(self):
        if self.amplitude < 0:
            raise InvalidParameterError(f"amplitude must be non-negative, got {self.amplitude}")
        if not 0.0 <= self.phase < TWO_PI:
            raise InvalidParameterError(f"phase must lie in [0, 2*pi), got {self.phase}")


@dataclass(frozen=True)
class ReflectionParams:
    """Reflection power losses in dB: controllable surface vs. plain wall."""

    pl_irs_db: float = 1.0
    pl_wall_db: float = 10.0

    def __post_init__(self):
        if self.pl_irs_db < 0 or self.pl_wall_db < 0:
            raise InvalidParameterError("reflection losses must be non-negative")


def wavelength_m(f_ghz: float) -> float:
    return SPEED_OF_LIGHT / (f_ghz * 1e9)


def dbm_to_amplitude(p_dbm: float) -> float:
    """sqrt of the linear power: sqrt(10^(p/10)) mW^0.5."""
    return 10.0 ** (p_dbm / 20.0)


def propagation_phase(path_length_m: float, f_ghz: float) -> float:
    """(-2*pi*d/lambda) wrapped to [0, 2*pi)."""
    phase = (-TWO_PI * path_length_m / wavelength_m(f_ghz)) % TWO_PI
    # float modulo may round up to the divisor itself
    return 0.0 if phase >= TWO_PI else phase


def los_coefficient(
    geom: ScenarioGeometry,
    antenna: AntennaParams,
    pathloss: PathlossParams,
    p_t_dbm: float,
) -> ChannelCoefficient:
    """Direct BS-to-UAV path: down-tilt pattern at the LoS angle, LoS path loss."""
    if geom.bs == geom.uav:
        raise DegenerateGeometryError("BS and UAV coincide")
    d = distance(geom.bs, geom.uav)
    theta0 = depression_angle(geom.bs, geom.uav)
    p_rx = effective_tx_power(p_t_dbm, theta0, antenna) - pl_los(d, pathloss)
    return ChannelCoefficient(dbm_to_amplitude(p_rx), propagation_phase(d, pathloss.f_ghz))


def _reflected_power_dbm(
    point: Position3D,
    geom: ScenarioGeometry,
    antenna: AntennaParams,
    pathloss: PathlossParams,
    p_t_dbm: float,
    reflection_loss_db: float,
) -> tuple[float, float]:
    """Link budget of one reflected path; returns (power_dbm, path_length_m)."""
    d1 = distance(geom.bs, point)
    d2 = distance(point, geom.uav)
    if d1 == 0.0 or d2 == 0.0:
        raise DegenerateGeometryError("reflection point coincides with BS or UAV")
    theta_k = depression_angle(geom.bs, point)
    segment_loss = pl_bs_to_element(d1, geom.uav.z, pathloss) + pl_element_to_uav(d1, d2, geom.uav.z, pathloss)
    p_rx = effective_tx_power(p_t_dbm, theta_k, antenna) - segment_loss - reflection_loss_db
    return p_rx, d1 + d2


def element_coefficient(
    element_index: int,
    geom: ScenarioGeometry,
    antenna: AntennaParams,
    pathloss: PathlossParams,
    p_t_dbm: float,
    refl: ReflectionParams,
    phase_mode: str = PHASE_ALIGNED,
) -> ChannelCoefficient:
    """Path through one reflector element.

    "aligned" models ideal phase control: the arrival phase equals the LoS
    phase exactly.  "geometric" uses the raw propagation phase over d1 + d2.
    """
    element = geom.elements[element_index]
    p_rx, path_len = _reflected_power_dbm(element, geom, antenna, pathloss, p_t_dbm, refl.pl_irs_db)
    if phase_mode == PHASE_ALIGNED:
        phase = los_coefficient(geom, antenna, pathloss, p_t_dbm).phase
    elif phase_mode == PHASE_GEOMETRIC:
        phase = propagation_phase(path_len, pathloss.f_ghz)
    else:
        raise InvalidParameterError(f"unknown phase_mode {phase_mode!r}")
    return ChannelCoefficient(dbm_to_amplitude(p_rx), phase)


def wall_ray_coefficient(
    scatter_point: Position3D,
    geom: ScenarioGeometry,
    antenna: AntennaParams,
    pathloss: PathlossParams,
    p_t_dbm: float,
    refl: ReflectionParams,
) -> ChannelCoefficient:
    """Same link budget as a reflector element but with the wall loss and a
    phase fixed by the path length (a plain wall cannot steer it)."""
    p_rx, path_len = _reflected_power_dbm(scatter_point, geom, antenna, pathloss, p_t_dbm, refl.pl_wall_db)
    return ChannelCoefficient(dbm_to_amplitude(p_rx), propagation_phase(path_len, pathloss.f_ghz))


def combine(coeffs) -> float:
    """Magnitude of the phasor sum, |sum a_i exp(j phi_i)|, in sqrt-mW."""
    coeffs = list(coeffs)
    if not coeffs:
        raise InvalidParameterError("combine needs at least one coefficient")
    amps = np.array([c.amplitude for c in coeffs])
    phases = np.array([c.phase for c in coeffs])
    return float(np.abs(np.sum(amps * np.exp(1j * phases))))
