"""Lambertian line-of-sight optical channel.

Angles enter and leave in degrees; internally the link carries cosines.
The receiver-side angle is resolved through an :class:`AngleConvention`:

* ``GEOMETRIC`` uses the true incidence angle of the LED-to-PD ray.
* ``FIXED_ELEVATION`` pins the receiver cosine to ``sin(theta_cfg)``, reading
  the configured angle as elevation above the receiver plane, so 90 degrees
  is boresight. The irradiance angle at the LED stays geometric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InfiniteLoss, InvalidAngle
from .geometry import LinkGeometry


@dataclass(frozen=True)
class LambertianSource:
    transmit_power: float  # W
    lambertian_order: float
    half_power_angle: float | None = None  # deg, informational only

    def __post_init__(self):
        if not (math.isfinite(self.transmit_power) and self.transmit_power >= 0):
            raise ValueError(f"transmit power must be >= 0 W, got {self.transmit_power!r}")
        if not (math.isfinite(self.lambertian_order) and self.lambertian_order > 0):
            raise ValueError(f"Lambertian order must be > 0, got {self.lambertian_order!r}")

    @classmethod
    def from_half_power_angle(cls, transmit_power: float, half_power_angle: float):
        return cls(transmit_power, lambertian_order(half_power_angle), half_power_angle)


@dataclass(frozen=True)
class OpticalFrontEnd:
    area: float  # m^2
    fov: float = 90.0  # half-angle, deg
    filter_gain: float = 1.0
    refractive_index: float = 1.5
    responsivity: float = 0.6  # A/W

    def __post_init__(self):
        if not self.area > 0:
            raise ValueError(f"detector area must be > 0, got {self.area!r}")
        if not 0 < self.fov <= 90:
            raise ValueError(f"FOV must be in (0, 90] deg, got {self.fov!r}")
        if not self.filter_gain >= 0:
            raise ValueError(f"filter gain must be >= 0, got {self.filter_gain!r}")
        if not self.refractive_index >= 1:
            raise ValueError(f"refractive index must be >= 1, got {self.refractive_index!r}")
        if not self.responsivity > 0:
            raise ValueError(f"responsivity must be > 0, got {self.responsivity!r}")


class ConventionMode(enum.Enum):
    GEOMETRIC = "geometric"
    FIXED_ELEVATION = "fixed_elevation"


@dataclass(frozen=True)
class AngleConvention:
    mode: ConventionMode = ConventionMode.GEOMETRIC
    theta_cfg: float | None = None  # deg, FIXED_ELEVATION only

    def __post_init__(self):
        if self.mode is ConventionMode.FIXED_ELEVATION:
            if self.theta_cfg is None or not 0 < self.theta_cfg <= 90:
                raise InvalidAngle(
                    f"fixed elevation must be in (0, 90] deg, got {self.theta_cfg!r}"
                )
        elif self.theta_cfg is not None:
            raise ValueError("theta_cfg only applies to FIXED_ELEVATION")

    @classmethod
    def geometric(cls):
        return cls(ConventionMode.GEOMETRIC)

    @classmethod
    def fixed_elevation(cls, theta_cfg: float):
        return cls(ConventionMode.FIXED_ELEVATION, float(theta_cfg))

    @property
    def label(self) -> str:
        if self.mode is ConventionMode.GEOMETRIC:
            return "geometric"
        return f"elevation={self.theta_cfg:g}"


def lambertian_order(half_power_angle: float) -> float:
    """Lambertian mode number for an LED half-power semi-angle in degrees."""
    if not 0 < half_power_angle < 90:
        raise InvalidAngle(f"half-power angle must be in (0, 90) deg, got {half_power_angle!r}")
    return -math.log(2) / math.log(math.cos(math.radians(half_power_angle)))


def radiant_intensity(m: float, cos_irr: float) -> float:
    """Normalised Lambertian intensity per steradian."""
    return (m + 1) / (2 * math.pi) * cos_irr**m


def concentrator_gain(n: float, fov: float, theta: float) -> float:
    if 0 <= theta <= fov:
        return n**2 / math.sin(math.radians(fov)) ** 2
    return 0.0


def effective_area(fe: OpticalFrontEnd, cos_theta: float, theta: float) -> float:
    if theta > fe.fov:
        return 0.0
    return fe.area * fe.filter_gain * concentrator_gain(fe.refractive_index, fe.fov, theta) * cos_theta


def incidence_factor(convention: AngleConvention, geom: LinkGeometry) -> tuple[float, float]:
    """Receiver-side ``(cos_theta, theta_deg)`` under ``convention``."""
    if convention.mode is ConventionMode.GEOMETRIC:
        c = geom.cos_incidence_geometric
        return c, geom.incidence_deg
    elevation = convention.theta_cfg
    if elevation == 90:
        return 1.0, 0.0
    return math.sin(math.radians(elevation)), 90.0 - elevation


def received_power(
    src: LambertianSource,
    fe: OpticalFrontEnd,
    geom: LinkGeometry,
    convention: AngleConvention,
) -> float:
    """Optical power at the detector in watts; zero outside the FOV."""
    cos_theta, theta = incidence_factor(convention, geom)
    a_eff = effective_area(fe, cos_theta, theta)
    if a_eff == 0.0:
        return 0.0
    return src.transmit_power / geom.distance**2 * radiant_intensity(
        src.lambertian_order, geom.cos_irradiance
    ) * a_eff


def los_gain(
    m: float,
    area: float,
    geom: LinkGeometry,
    convention: AngleConvention,
    fov: float = 90.0,
) -> float:
    """Dimensionless LOS channel gain without concentrator or filter.

    ``(m+1) A / (2 pi d^2) * cos^m(phi_irr) * cos(theta)``, zero outside the FOV.
    """
    cos_theta, theta = incidence_factor(convention, geom)
    if theta > fov:
        return 0.0
    return (m + 1) * area / (2 * math.pi * geom.distance**2) * geom.cos_irradiance**m * cos_theta


def path_loss_db(gain: float) -> float:
    if gain == 0:
        raise InfiniteLoss("zero channel gain")
    if gain < 0:
        raise ValueError(f"channel gain must be positive, got {gain!r}")
    return -10 * math.log10(gain)
