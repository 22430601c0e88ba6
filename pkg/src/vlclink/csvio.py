"""CSV serialisation of trajectory, sweep and grid results.

Floats are written in scientific notation with 9 significant digits, which
is locale-independent. Cells without signal are written as ``NOSIGNAL``.
"""

from __future__ import annotations

import csv
import io

from .scenario import GridResult, LinkSample, SweepResult

NO_SIGNAL = "NOSIGNAL"

SAMPLE_COLUMNS = (
    "curve_label",
    "index",
    "x_m",
    "y_m",
    "z_m",
    "d_m",
    "phi_irr_deg",
    "theta_deg",
    "p_received_w",
    "gain_eq10",
    "path_loss_db",
    "shot_var_a2",
    "snr_db",
)
GRID_COLUMNS = ("x_m", "y_m", "value")


def fmt(v: float | None) -> str:
    if v is None:
        return NO_SIGNAL
    return f"{v:.8e}"


def _sample_row(label: str, index: int, smp: LinkSample) -> list[str]:
    g = smp.geometry
    return [
        label,
        str(index),
        fmt(smp.position.x),
        fmt(smp.position.y),
        fmt(smp.position.z),
        fmt(g.distance),
        fmt(g.irradiance_deg),
        fmt(smp.theta_deg),
        fmt(smp.received_power),
        fmt(smp.gain),
        fmt(smp.path_loss_db),
        fmt(smp.shot_variance),
        fmt(smp.snr_db),
    ]


def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def samples_csv(curves) -> str:
    """``curves`` is an iterable of ``(label, samples)`` pairs."""
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(SAMPLE_COLUMNS)
    for label, samples in curves:
        for i, smp in enumerate(samples):
            w.writerow(_sample_row(label, i, smp))
    return buf.getvalue()


def trajectory_csv(samples, label: str = "trajectory") -> str:
    return samples_csv([(label, samples)])


def sweep_csv(result: SweepResult) -> str:
    return samples_csv((c.label, c.samples) for c in result.curves)


def grid_csv(grid: GridResult) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(GRID_COLUMNS)
    for x, y, v in grid.cells():
        w.writerow([fmt(x), fmt(y), fmt(v)])
    return buf.getvalue()


def write_csv(result, label: str = "trajectory") -> bytes:
    """Serialise a sample list, :class:`SweepResult` or :class:`GridResult`."""
    if isinstance(result, GridResult):
        text = grid_csv(result)
    elif isinstance(result, SweepResult):
        text = sweep_csv(result)
    else:
        text = trajectory_csv(list(result), label)
    return text.encode("utf-8")
