"""Experiment runner: trajectories, one-axis parameter sweeps and floor maps."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from . import channel, noise
from .channel import AngleConvention, LambertianSource, OpticalFrontEnd
from .errors import InfiniteLoss, InvalidSweepValue, PositionOutOfRoom, ZeroSignal
from .geometry import (
    LinkGeometry,
    LuminairePose,
    Point3,
    ReceiverPose,
    RoomModel,
    floor_grid,
    grid_shape,
    half_diagonal_trajectory,
    link_geometry,
)
from .noise import NoiseModel

DEFAULT_GRID_RESOLUTION = 0.05  # m; 101 x 101 in the 5 m room
DEFAULT_TRAJECTORY_COUNT = 10


@dataclass(frozen=True)
class Scenario:
    room: RoomModel
    luminaire: LuminairePose
    source: LambertianSource
    frontend: OpticalFrontEnd
    noise: NoiseModel
    convention: AngleConvention = field(default_factory=AngleConvention.geometric)
    receiver_height: float = 0.0

    def __post_init__(self):
        if not self.room.contains(self.luminaire.position):
            raise ValueError(f"luminaire {self.luminaire.position} lies outside the room")
        if not 0 <= self.receiver_height < self.luminaire.position.z:
            raise ValueError("receiver plane must lie between the floor and the luminaire")

    def receiver_at(self, position: Point3) -> ReceiverPose:
        return ReceiverPose(Point3(position.x, position.y, self.receiver_height))


def default_scenario() -> Scenario:
    """5 x 5 x 3 m room, one ceiling-centre LED at 15 W, floor-level photodiode."""
    room = RoomModel(5.0, 5.0, 3.0)
    return Scenario(
        room=room,
        luminaire=LuminairePose(room.center_ceiling),
        source=LambertianSource(transmit_power=15.0, lambertian_order=1.3, half_power_angle=60.0),
        frontend=OpticalFrontEnd(
            area=2.25e-6,
            fov=90.0,
            filter_gain=1.0,
            refractive_index=1.5,
            responsivity=0.6,
        ),
        noise=NoiseModel(
            bandwidth=50e6,
            background_current=5.1e-3,
            noise_bandwidth_factor=0.562,
            electron_charge=1.6e-19,
            thermal_variance=0.0,
        ),
    )


@dataclass(frozen=True)
class LinkSample:
    """Link metrics at one receiver position.

    ``path_loss_db`` and ``snr_db`` are ``None`` when no signal reaches the
    detector (zero gain or zero received power).
    """

    position: Point3
    geometry: LinkGeometry
    theta_deg: float
    received_power: float
    gain: float
    path_loss_db: float | None
    shot_variance: float
    noise: noise.NoiseBreakdown
    snr_db: float | None

    @property
    def no_signal(self) -> bool:
        return self.snr_db is None


def evaluate(s: Scenario, position: Point3) -> LinkSample:
    geom = link_geometry(s.luminaire, s.receiver_at(position))
    _, theta = channel.incidence_factor(s.convention, geom)
    p_rx = channel.received_power(s.source, s.frontend, geom, s.convention)
    gain = channel.los_gain(
        s.source.lambertian_order, s.frontend.area, geom, s.convention, s.frontend.fov
    )
    try:
        ploss = channel.path_loss_db(gain)
    except InfiniteLoss:
        ploss = None
    rp = s.frontend.responsivity
    shot = noise.shot_noise_variance(s.noise, rp, p_rx)
    breakdown = noise.total_noise(shot, s.noise.thermal_variance)
    try:
        snr = noise.snr_db(p_rx, rp, breakdown.total)
    except ZeroSignal:
        snr = None
    return LinkSample(
        position=Point3(position.x, position.y, s.receiver_height),
        geometry=geom,
        theta_deg=theta,
        received_power=p_rx,
        gain=gain,
        path_loss_db=ploss,
        shot_variance=shot,
        noise=breakdown,
        snr_db=snr,
    )


def _evaluate_all(s: Scenario, positions, workers: int | None) -> list[LinkSample]:
    fn = partial(evaluate, s)
    if workers and workers > 1:
        # map() yields in submission order regardless of completion order
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, positions, chunksize=256))
    return [fn(p) for p in positions]


def run_trajectory(s: Scenario, positions, workers: int | None = None) -> list[LinkSample]:
    positions = list(positions)
    if not positions:
        raise ValueError("trajectory needs at least one position")
    for i, p in enumerate(positions):
        if not s.room.contains_footprint(p):
            raise PositionOutOfRoom(i, p)
    return _evaluate_all(s, positions, workers)


def default_trajectory(s: Scenario, count: int = DEFAULT_TRAJECTORY_COUNT) -> list[Point3]:
    return half_diagonal_trajectory(s.room, count)


class SweepAxis(enum.Enum):
    INCIDENCE_ANGLE = "angle"
    TRANSMIT_POWER = "power"
    LAMBERTIAN_ORDER = "m"


@dataclass(frozen=True)
class SweepSpec:
    axis: SweepAxis
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise InvalidSweepValue("sweep needs at least one value")
        for v in self.values:
            _check_sweep_value(self.axis, v)


def _check_sweep_value(axis: SweepAxis, v: float):
    if not math.isfinite(v):
        raise InvalidSweepValue(f"{axis.value} value {v!r} is not finite")
    if axis is SweepAxis.INCIDENCE_ANGLE and not 0 < v <= 90:
        raise InvalidSweepValue(f"incidence angle must be in (0, 90] deg, got {v:g}")
    if axis is SweepAxis.TRANSMIT_POWER and v < 0:
        raise InvalidSweepValue(f"transmit power must be >= 0 W, got {v:g}")
    if axis is SweepAxis.LAMBERTIAN_ORDER and v <= 0:
        raise InvalidSweepValue(f"Lambertian order must be > 0, got {v:g}")


def apply_sweep_value(s: Scenario, axis: SweepAxis, value: float) -> Scenario:
    """Copy of ``s`` with exactly one parameter overridden."""
    _check_sweep_value(axis, value)
    if axis is SweepAxis.INCIDENCE_ANGLE:
        return replace(s, convention=AngleConvention.fixed_elevation(value))
    if axis is SweepAxis.TRANSMIT_POWER:
        return replace(s, source=replace(s.source, transmit_power=value))
    return replace(s, source=replace(s.source, lambertian_order=value))


@dataclass(frozen=True)
class Curve:
    label: str
    value: float
    scenario: Scenario
    samples: list[LinkSample]


@dataclass(frozen=True)
class CurveSummary:
    label: str
    minimum: float | None
    maximum: float | None
    argmin: int | None
    argmax: int | None
    argmin_position: Point3 | None
    argmax_position: Point3 | None


@dataclass(frozen=True)
class SweepResult:
    axis: SweepAxis
    curves: list[Curve]

    @property
    def positions(self) -> list[Point3]:
        return [smp.position for smp in self.curves[0].samples]

    @property
    def summary(self) -> list[CurveSummary]:
        return summarize(self)


def curve_label(axis: SweepAxis, value: float) -> str:
    return f"{axis.value}={value:g}"


def run_sweep(
    s: Scenario, spec: SweepSpec, positions, workers: int | None = None
) -> SweepResult:
    positions = list(positions)
    curves = []
    for v in spec.values:
        cs = apply_sweep_value(s, spec.axis, v)
        curves.append(Curve(curve_label(spec.axis, v), v, cs, run_trajectory(cs, positions, workers)))
    return SweepResult(spec.axis, curves)


def summarize(result: SweepResult, metric: str = "snr_db") -> list[CurveSummary]:
    """Per-curve extrema of ``metric``; ties go to the lowest index.

    Samples whose metric is ``None`` (no signal) are skipped.
    """
    out = []
    for curve in result.curves:
        if not curve.samples:
            raise ValueError(f"curve {curve.label} has no samples")
        vals = [(i, getattr(smp, metric)) for i, smp in enumerate(curve.samples)]
        vals = [(i, v) for i, v in vals if v is not None]
        if not vals:
            out.append(CurveSummary(curve.label, None, None, None, None, None, None))
            continue
        imax, vmax = vals[0]
        imin, vmin = vals[0]
        for i, v in vals[1:]:
            if v > vmax:
                imax, vmax = i, v
            if v < vmin:
                imin, vmin = i, v
        out.append(
            CurveSummary(
                curve.label,
                vmin,
                vmax,
                imin,
                imax,
                curve.samples[imin].position,
                curve.samples[imax].position,
            )
        )
    return out


class GridMetric(enum.Enum):
    SNR_DB = "snr"
    RECEIVED_POWER = "power"
    GAIN = "gain"
    PATH_LOSS_DB = "ploss"


def _metric_value(sample: LinkSample, metric: GridMetric) -> float | None:
    if metric is GridMetric.SNR_DB:
        return sample.snr_db
    if metric is GridMetric.PATH_LOSS_DB:
        return sample.path_loss_db
    if metric is GridMetric.RECEIVED_POWER:
        return sample.received_power if sample.received_power > 0 else None
    return sample.gain if sample.gain > 0 else None


@dataclass(frozen=True)
class GridResult:
    """Floor map of one metric.

    ``values[j, i]`` belongs to ``(xs[i], ys[j])``. Cells with ``valid`` False
    carry no signal; their entry in ``values`` is NaN and must not be read.
    """

    metric: GridMetric
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray
    valid: np.ndarray

    def cells(self):
        """Row-major ``(x, y, value_or_None)`` triples."""
        for j, y in enumerate(self.ys):
            for i, x in enumerate(self.xs):
                yield float(x), float(y), (float(self.values[j, i]) if self.valid[j, i] else None)

    @property
    def argmax(self) -> tuple[int, int]:
        """``(j, i)`` of the largest valid value, first in row-major order."""
        masked = np.where(self.valid, self.values, -np.inf)
        return np.unravel_index(int(np.argmax(masked)), masked.shape)


def run_grid(
    s: Scenario,
    resolution: float = DEFAULT_GRID_RESOLUTION,
    metric: GridMetric = GridMetric.SNR_DB,
    workers: int | None = None,
) -> GridResult:
    nx, ny = grid_shape(s.room, resolution)
    points = floor_grid(s.room, resolution)
    samples = _evaluate_all(s, points, workers)
    values = np.full(nx * ny, np.nan)
    valid = np.zeros(nx * ny, dtype=bool)
    for k, smp in enumerate(samples):
        v = _metric_value(smp, metric)
        if v is not None:
            values[k] = v
            valid[k] = True
    xs = np.array([points[i].x for i in range(nx)])
    ys = np.array([points[j * nx].y for j in range(ny)])
    return GridResult(metric, xs, ys, values.reshape(ny, nx), valid.reshape(ny, nx))
