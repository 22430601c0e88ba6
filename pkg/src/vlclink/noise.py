"""Shot-noise variance, total noise and SNR."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroNoise, ZeroSignal

ELEMENTARY_CHARGE = 1.602176634e-19  # C, exact SI value


@dataclass(frozen=True)
class NoiseModel:
    bandwidth: float  # Hz
    background_current: float  # A
    noise_bandwidth_factor: float
    electron_charge: float = ELEMENTARY_CHARGE
    thermal_variance: float = 0.0  # A^2, no thermal model; plain constant

    def __post_init__(self):
        for name in (
            "bandwidth",
            "background_current",
            "noise_bandwidth_factor",
            "electron_charge",
            "thermal_variance",
        ):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class NoiseBreakdown:
    shot_variance: float
    thermal_variance: float
    total: float


def shot_noise_variance(nm: NoiseModel, rp: float, p_received: float) -> float:
    """Signal plus background shot-noise variance in A^2."""
    if p_received < 0:
        raise ValueError(f"received power must be >= 0, got {p_received!r}")
    q, b = nm.electron_charge, nm.bandwidth
    signal = 2 * q * rp * p_received * b
    background = 2 * q * nm.background_current * nm.noise_bandwidth_factor * b
    return signal + background


def total_noise(shot: float, thermal: float = 0.0) -> NoiseBreakdown:
    return NoiseBreakdown(shot, thermal, shot + thermal)


def snr_db(p_received: float, rp: float, noise_total: float) -> float:
    """Electrical SNR ``(R_p P)^2 / N`` in dB.

    Raises :class:`ZeroSignal` when no optical power arrives (SNR is -inf)
    and :class:`ZeroNoise` when the noise variance vanishes.
    """
    if p_received == 0:
        raise ZeroSignal("no received power")
    if noise_total <= 0:
        raise ZeroNoise(f"noise variance must be > 0, got {noise_total!r}")
    return 10 * math.log10((p_received * rp) ** 2 / noise_total)
