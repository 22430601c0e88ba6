"""Room, transmitter and receiver placement.

The LED always points straight down and the photodiode straight up, so the
irradiance and incidence angles of a line-of-sight link coincide and both are
carried as cosines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateLink, InvalidCount, InvalidResolution


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"coordinate {name}={value!r} is not finite")

    def __iter__(self):
        return iter((self.x, self.y, self.z))


@dataclass(frozen=True)
class RoomModel:
    length: float
    width: float
    height: float

    def __post_init__(self):
        for name in ("length", "width", "height"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"room {name} must be positive, got {value!r}")

    @property
    def center_floor(self) -> Point3:
        return Point3(self.length / 2, self.width / 2, 0.0)

    @property
    def center_ceiling(self) -> Point3:
        return Point3(self.length / 2, self.width / 2, self.height)

    def contains_footprint(self, p: Point3, tol: float = 1e-9) -> bool:
        return -tol <= p.x <= self.length + tol and -tol <= p.y <= self.width + tol

    def contains(self, p: Point3, tol: float = 1e-9) -> bool:
        return self.contains_footprint(p, tol) and -tol <= p.z <= self.height + tol


@dataclass(frozen=True)
class LuminairePose:
    """Ceiling LED, boresight along -z."""

    position: Point3


@dataclass(frozen=True)
class ReceiverPose:
    """Photodiode, normal along +z."""

    position: Point3


@dataclass(frozen=True)
class LinkGeometry:
    distance: float
    cos_irradiance: float
    cos_incidence_geometric: float

    @property
    def irradiance_deg(self) -> float:
        return _acos_deg(self.cos_irradiance)

    @property
    def incidence_deg(self) -> float:
        return _acos_deg(self.cos_incidence_geometric)


def _acos_deg(c: float) -> float:
    return math.degrees(math.acos(min(1.0, max(-1.0, c))))


def distance(a: Point3, b: Point3) -> float:
    """Euclidean distance between two points."""
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


def link_geometry(led: LuminairePose, pd: ReceiverPose) -> LinkGeometry:
    drop = led.position.z - pd.position.z
    if not drop > 0:
        raise DegenerateLink(
            f"LED height {led.position.z} must exceed receiver height {pd.position.z}"
        )
    d = distance(led.position, pd.position)
    c = drop / d
    return LinkGeometry(distance=d, cos_irradiance=c, cos_incidence_geometric=c)


def half_diagonal_trajectory(room: RoomModel, count: int = 10) -> list[Point3]:
    """Floor points from the footprint centre towards the (0, 0) corner.

    Both axes advance by the same step, which is the centre-to-corner extent
    divided by ``count - 1`` and truncated to whole centimetres. For the
    5 x 5 m room and ten points that gives 0.27 m and ends at (0.07, 0.07).
    """
    if count < 2:
        raise InvalidCount(f"trajectory needs at least 2 positions, got {count}")
    cx, cy = room.length / 2, room.width / 2
    extent = min(cx, cy)
    step = math.floor(extent / (count - 1) * 100 + 1e-9) / 100
    if step <= 0:
        raise InvalidCount(f"{count} positions do not fit a centimetre step in this room")
    return [
        Point3(round(cx - k * step, 12), round(cy - k * step, 12), 0.0)
        for k in range(count)
    ]


def grid_shape(room: RoomModel, resolution: float) -> tuple[int, int]:
    """(columns along x, rows along y) of the closed floor lattice."""
    if not (math.isfinite(resolution) and 0 < resolution <= min(room.length, room.width)):
        raise InvalidResolution(
            f"resolution must be in (0, {min(room.length, room.width)}], got {resolution!r}"
        )
    nx = math.floor(room.length / resolution + 1e-9) + 1
    ny = math.floor(room.width / resolution + 1e-9) + 1
    return nx, ny


def floor_grid(room: RoomModel, resolution: float) -> list[Point3]:
    """Closed lattice over the floor, row-major: y outer, x inner."""
    nx, ny = grid_shape(room, resolution)
    return [
        Point3(i * resolution, j * resolution, 0.0)
        for j in range(ny)
        for i in range(nx)
    ]
