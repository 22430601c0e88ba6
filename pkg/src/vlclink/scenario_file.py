"""Line-based ``key = value`` scenario files.

Absent keys fall back to :func:`~vlclink.scenario.default_scenario`. Unknown
or repeated keys are errors. ``#`` starts a comment anywhere on a line. The
luminaire is always placed at the centre of the ceiling.
"""

from __future__ import annotations

import math
from dataclasses import replace

from .channel import AngleConvention, ConventionMode
from .errors import DomainError, DuplicateKey, ParseError, UnknownKey
from .geometry import LuminairePose, RoomModel
from .scenario import Scenario, default_scenario

_MM2 = 1e6  # mm^2 per m^2


def _positive(v):
    return v > 0


def _non_negative(v):
    return v >= 0


# key -> (domain check, human-readable domain)
NUMERIC_KEYS = {
    "room.length_m": (_positive, "> 0"),
    "room.width_m": (_positive, "> 0"),
    "room.height_m": (_positive, "> 0"),
    "led.tx_power_w": (_non_negative, ">= 0"),
    "led.m": (_positive, "> 0"),
    "led.half_power_deg": (lambda v: 0 < v < 90, "in (0, 90)"),
    "pd.area_mm2": (_positive, "> 0"),
    "pd.fov_deg": (lambda v: 0 < v <= 90, "in (0, 90]"),
    "pd.filter_gain": (_non_negative, ">= 0"),
    "pd.refractive_index": (lambda v: v >= 1, ">= 1"),
    "pd.responsivity_a_per_w": (_positive, "> 0"),
    "noise.bandwidth_hz": (_non_negative, ">= 0"),
    "noise.background_current_a": (_non_negative, ">= 0"),
    "noise.i2": (_non_negative, ">= 0"),
    "noise.q_c": (_non_negative, ">= 0"),
    "noise.thermal_var_a2": (_non_negative, ">= 0"),
    "convention.theta_deg": (lambda v: 0 < v <= 90, "in (0, 90]"),
}
MODES = {m.value: m for m in ConventionMode}
KEYS = (*NUMERIC_KEYS, "convention.mode")


def _parse_number(text: str, lineno: int, key: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParseError(lineno, f"{key}: {text!r} is not a number") from None
    if not math.isfinite(v):
        raise ParseError(lineno, f"{key}: {text!r} is not a finite number")
    return v


def _read_pairs(text: str) -> dict[str, tuple[str, int]]:
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, "expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParseError(lineno, "missing key")
        if not value:
            raise ParseError(lineno, f"{key}: missing value")
        if key not in KEYS:
            raise UnknownKey(lineno, key)
        if key in pairs:
            raise DuplicateKey(lineno, key)
        pairs[key] = (value, lineno)
    return pairs


def parse_scenario(text: str) -> Scenario:
    pairs = _read_pairs(text)
    num = {}
    for key, (value, lineno) in pairs.items():
        if key == "convention.mode":
            continue
        v = _parse_number(value, lineno, key)
        check, domain = NUMERIC_KEYS[key]
        if not check(v):
            raise DomainError(lineno, f"{key} = {value} must be {domain}")
        num[key] = v

    base = default_scenario()
    room = RoomModel(
        num.get("room.length_m", base.room.length),
        num.get("room.width_m", base.room.width),
        num.get("room.height_m", base.room.height),
    )
    source = replace(
        base.source,
        transmit_power=num.get("led.tx_power_w", base.source.transmit_power),
        lambertian_order=num.get("led.m", base.source.lambertian_order),
        half_power_angle=num.get("led.half_power_deg", base.source.half_power_angle),
    )
    frontend = replace(
        base.frontend,
        area=num["pd.area_mm2"] / _MM2 if "pd.area_mm2" in num else base.frontend.area,
        fov=num.get("pd.fov_deg", base.frontend.fov),
        filter_gain=num.get("pd.filter_gain", base.frontend.filter_gain),
        refractive_index=num.get("pd.refractive_index", base.frontend.refractive_index),
        responsivity=num.get("pd.responsivity_a_per_w", base.frontend.responsivity),
    )
    nm = replace(
        base.noise,
        bandwidth=num.get("noise.bandwidth_hz", base.noise.bandwidth),
        background_current=num.get("noise.background_current_a", base.noise.background_current),
        noise_bandwidth_factor=num.get("noise.i2", base.noise.noise_bandwidth_factor),
        electron_charge=num.get("noise.q_c", base.noise.electron_charge),
        thermal_variance=num.get("noise.thermal_var_a2", base.noise.thermal_variance),
    )
    convention = _parse_convention(pairs, num)
    return Scenario(
        room=room,
        luminaire=LuminairePose(room.center_ceiling),
        source=source,
        frontend=frontend,
        noise=nm,
        convention=convention,
        receiver_height=base.receiver_height,
    )


def _parse_convention(pairs, num) -> AngleConvention:
    mode = ConventionMode.GEOMETRIC
    mode_line = 0
    if "convention.mode" in pairs:
        text, mode_line = pairs["convention.mode"]
        if text not in MODES:
            raise DomainError(
                mode_line, f"convention.mode = {text} must be one of {', '.join(MODES)}"
            )
        mode = MODES[text]
    theta = num.get("convention.theta_deg")
    if mode is ConventionMode.GEOMETRIC:
        if theta is not None:
            raise DomainError(
                pairs["convention.theta_deg"][1],
                "convention.theta_deg requires convention.mode = fixed_elevation",
            )
        return AngleConvention.geometric()
    if theta is None:
        raise DomainError(mode_line, "fixed_elevation needs convention.theta_deg")
    return AngleConvention.fixed_elevation(theta)


def _area_mm2(area_m2: float) -> float:
    # pick the mm^2 value whose parse lands back on the exact m^2 double
    v = area_m2 * _MM2
    for candidate in (v, math.nextafter(v, math.inf), math.nextafter(v, -math.inf)):
        if candidate / _MM2 == area_m2:
            return candidate
    return v


def format_scenario(s: Scenario) -> str:
    """Render ``s`` so that :func:`parse_scenario` rebuilds it exactly.

    Only scenarios expressible in the file format round-trip: luminaire at the
    ceiling centre and receiver on the floor.
    """
    lines = [
        "# vlclink scenario",
        f"room.length_m = {s.room.length!r}",
        f"room.width_m = {s.room.width!r}",
        f"room.height_m = {s.room.height!r}",
        f"led.tx_power_w = {s.source.transmit_power!r}",
        f"led.m = {s.source.lambertian_order!r}",
    ]
    if s.source.half_power_angle is not None:
        lines.append(f"led.half_power_deg = {s.source.half_power_angle!r}")
    lines += [
        f"pd.area_mm2 = {_area_mm2(s.frontend.area)!r}",
        f"pd.fov_deg = {s.frontend.fov!r}",
        f"pd.filter_gain = {s.frontend.filter_gain!r}",
        f"pd.refractive_index = {s.frontend.refractive_index!r}",
        f"pd.responsivity_a_per_w = {s.frontend.responsivity!r}",
        f"noise.bandwidth_hz = {s.noise.bandwidth!r}",
        f"noise.background_current_a = {s.noise.background_current!r}",
        f"noise.i2 = {s.noise.noise_bandwidth_factor!r}",
        f"noise.q_c = {s.noise.electron_charge!r}",
        f"noise.thermal_var_a2 = {s.noise.thermal_variance!r}",
        f"convention.mode = {s.convention.mode.value}",
    ]
    if s.convention.mode is ConventionMode.FIXED_ELEVATION:
        lines.append(f"convention.theta_deg = {s.convention.theta_cfg!r}")
    return "\n".join(lines) + "\n"
