"""Line-of-sight link budget for a single-LED indoor visible-light link."""

from .channel import (
    AngleConvention,
    ConventionMode,
    LambertianSource,
    OpticalFrontEnd,
    concentrator_gain,
    effective_area,
    incidence_factor,
    lambertian_order,
    los_gain,
    path_loss_db,
    radiant_intensity,
    received_power,
)
from .geometry import (
    LinkGeometry,
    LuminairePose,
    Point3,
    ReceiverPose,
    RoomModel,
    distance,
    floor_grid,
    half_diagonal_trajectory,
    link_geometry,
)
from .noise import NoiseBreakdown, NoiseModel, shot_noise_variance, snr_db, total_noise
from .scenario import (
    GridMetric,
    GridResult,
    LinkSample,
    Scenario,
    SweepAxis,
    SweepResult,
    SweepSpec,
    default_scenario,
    evaluate,
    run_grid,
    run_sweep,
    run_trajectory,
    summarize,
)
from .scenario_file import format_scenario, parse_scenario

__version__ = "0.1.0"
