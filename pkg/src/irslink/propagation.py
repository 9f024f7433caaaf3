"""Down-tilted vertical antenna pattern and urban-macro air-to-ground path loss.

All functions accept scalars or numpy arrays for the distance/angle argument
and return dB values.  Frequencies are in GHz, distances in metres.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError


@dataclass(frozen=True)
class AntennaParams:
    """Vertical pattern of the BS antenna: boresight tilted below horizon."""

    downtilt_deg: float = 15.0
    theta3db_deg: float = 10.0
    sla_db: float = 20.0

    def __post_init__(self):
        if self.theta3db_deg <= 0:
            raise InvalidParameterError(f"theta3db_deg must be positive, got {self.theta3db_deg}")
        if self.sla_db <= 0:
            raise InvalidParameterError(f"sla_db must be positive, got {self.sla_db}")


@dataclass(frozen=True)
class PathlossParams:
    """Carrier frequency and the receiver-height threshold between NLoS branches."""

    f_ghz: float
    breakpoint_height_m: float = 22.5

    def __post_init__(self):
        if self.f_ghz <= 0:
            raise InvalidParameterError(f"f_ghz must be positive, got {self.f_ghz}")


def vertical_gain(theta_deg, params: AntennaParams):
    """Antenna gain -min[12*((theta - tilt)/theta3dB)^2, SLA] in dB, within [-SLA, 0]."""
    dev = (np.asarray(theta_deg, dtype=float) - params.downtilt_deg) / params.theta3db_deg
    g = -np.minimum(12.0 * dev * dev, params.sla_db)
    return float(g) if np.isscalar(theta_deg) else g


def effective_tx_power(p_t_dbm: float, theta_deg, params: AntennaParams):
    """Transmit power seen at vertical angle theta: P_T plus the pattern gain (dBm)."""
    return p_t_dbm + vertical_gain(theta_deg, params)


def _check_positive(value, name: str):
    arr = np.asarray(value, dtype=float)
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise InvalidParameterError(f"{name} must be positive and finite")


def pl_los(d_m, params: PathlossParams):
    """Line-of-sight path loss 28 + 22 log10(d) + 20 log10(f) in dB."""
    _check_positive(d_m, "d_m")
    d = np.asarray(d_m, dtype=float)
    pl = 28.0 + 22.0 * np.log10(d) + 20.0 * np.log10(params.f_ghz)
    return float(pl) if np.isscalar(d_m) else pl


def _pl_nlos_low(d, h, f_ghz):
    # below the breakpoint height: max(PL_LoS, PL_0)
    pl0 = 13.54 + 39.08 * np.log10(d) + 20.0 * np.log10(f_ghz) - 0.6 * (h - 1.5)
    pll = 28.0 + 22.0 * np.log10(d) + 20.0 * np.log10(f_ghz)
    return np.maximum(pll, pl0)


def _pl_nlos_high(d, h, f_ghz):
    # at or above the breakpoint height
    return -17.5 + (46.0 - 7.0 * np.log10(h)) * np.log10(d) + 20.0 * np.log10(40.0 * np.pi * f_ghz / 3.0)


def pl_nlos(d_m, receiver_height_m: float, params: PathlossParams):
    """Non-line-of-sight path loss in dB, branching on the receiver height.

    Heights >= the breakpoint (22.5 m) use the high-altitude expression; lower
    heights use max(PL_LoS, PL_0).  The boundary itself is assigned to the
    high branch.
    """
    _check_positive(d_m, "d_m")
    if receiver_height_m <= 0:
        raise InvalidParameterError(f"receiver_height_m must be positive, got {receiver_height_m}")
    d = np.asarray(d_m, dtype=float)
    if receiver_height_m >= params.breakpoint_height_m:
        pl = _pl_nlos_high(d, receiver_height_m, params.f_ghz)
    else:
        pl = _pl_nlos_low(d, receiver_height_m, params.f_ghz)
    return float(pl) if np.isscalar(d_m) else pl


def pl_bs_to_element(d1_m, receiver_height_m: float, params: PathlossParams):
    """First segment of a reflected path (BS to reflector element)."""
    return pl_nlos(d1_m, receiver_height_m, params)


def pl_element_to_uav(d1_m, d2_m, receiver_height_m: float, params: PathlossParams):
    """Second segment: distance-related loss only, so the two segments add up
    to the end-to-end PL_NLoS(d1 + d2) exactly."""
    _check_positive(d2_m, "d2_m")
    return pl_nlos(d1_m + d2_m, receiver_height_m, params) - pl_nlos(d1_m, receiver_height_m, params)
