"""Link-level simulator for reflector-assisted UAV downlink reception.

Quantifies how a wall-mounted reconfigurable reflector improves the signal a
UAV receives from a down-tilted cellular base-station antenna, and searches
for the gain-maximising reflector placement.
"""

__version__ = "0.1.0"

from .channel import ChannelCoefficient, ReflectionParams, combine, dbm_to_amplitude
from .errors import DegenerateGeometryError, InvalidParameterError
from .geometry import Position3D, ScenarioGeometry, build_geometry, depression_angle, distance, element_positions
from .propagation import AntennaParams, PathlossParams, pl_los, pl_nlos, vertical_gain
from .scenario import DEFAULT_MASTER_SEED, MonteCarloConfig, ScenarioConfig
from .simulator import GainResult, irs_amplitude, irs_gain, wall_power_estimate
from .experiments import SweepSpec, SweepResult, component_amplitudes, optimal_distance, run_sweep

__all__ = [
    "AntennaParams",
    "ChannelCoefficient",
    "DEFAULT_MASTER_SEED",
    "DegenerateGeometryError",
    "GainResult",
    "InvalidParameterError",
    "MonteCarloConfig",
    "PathlossParams",
    "Position3D",
    "ReflectionParams",
    "ScenarioConfig",
    "ScenarioGeometry",
    "SweepResult",
    "SweepSpec",
    "build_geometry",
    "combine",
    "component_amplitudes",
    "dbm_to_amplitude",
    "depression_angle",
    "distance",
    "element_positions",
    "irs_amplitude",
    "irs_gain",
    "optimal_distance",
    "pl_los",
    "pl_nlos",
    "run_sweep",
    "vertical_gain",
    "wall_power_estimate",
]
