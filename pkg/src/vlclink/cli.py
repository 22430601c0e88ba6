"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 scenario file error, 3 numeric or
domain error. Each failure prints one line on stderr.
"""

from __future__ import annotations

import argparse
import io
import sys

from . import csvio
from .errors import ComputationError, ScenarioError
from .geometry import half_diagonal_trajectory, link_geometry
from .scenario import (
    DEFAULT_GRID_RESOLUTION,
    DEFAULT_TRAJECTORY_COUNT,
    GridMetric,
    SweepAxis,
    SweepSpec,
    run_grid,
    run_sweep,
    run_trajectory,
)
from .scenario_file import format_scenario, parse_scenario

EXIT_OK, EXIT_USAGE, EXIT_SCENARIO, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vlclink", description="Indoor single-LED VLC link budget simulator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--scenario", metavar="F", help="scenario file (key = value)")
        sp.add_argument("--out", metavar="F", help="output file (default: stdout)")

    sp = sub.add_parser("trajectory", help="link metrics along the half-diagonal path")
    common(sp)
    sp.add_argument("--count", type=int, default=DEFAULT_TRAJECTORY_COUNT)

    sp = sub.add_parser("sweep", help="one-parameter sweep along the trajectory")
    common(sp)
    sp.add_argument("--axis", required=True, choices=[a.value for a in SweepAxis])
    sp.add_argument("--values", required=True, type=_float_list)
    sp.add_argument("--count", type=int, default=DEFAULT_TRAJECTORY_COUNT)

    sp = sub.add_parser("grid", help="floor map of one metric")
    common(sp)
    sp.add_argument("--resolution", type=float, default=DEFAULT_GRID_RESOLUTION)
    sp.add_argument("--metric", choices=[m.value for m in GridMetric], default="snr")
    sp.add_argument("--workers", type=int, default=None)

    sp = sub.add_parser("table2", help="LED-PD distances at the ten trajectory positions")
    common(sp)

    sp = sub.add_parser("defaults", help="print the effective scenario")
    common(sp)
    return p


def _load_scenario(path):
    if path is None:
        return parse_scenario("")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    return parse_scenario(text)


def table2_text(scenario) -> str:
    buf = io.StringIO()
    buf.write("position,x_m,y_m,z_m,d_m\n")
    for k, p in enumerate(half_diagonal_trajectory(scenario.room, 10), start=1):
        d = link_geometry(scenario.luminaire, scenario.receiver_at(p)).distance
        buf.write(f"{k},{p.x:.2f},{p.y:.2f},{p.z:.2f},{d:.6f}\n")
    return buf.getvalue()


def _run(args) -> str:
    s = _load_scenario(args.scenario)
    if args.command == "defaults":
        return format_scenario(s)
    if args.command == "table2":
        return table2_text(s)
    if args.command == "trajectory":
        samples = run_trajectory(s, half_diagonal_trajectory(s.room, args.count))
        return csvio.trajectory_csv(samples)
    if args.command == "sweep":
        spec = SweepSpec(SweepAxis(args.axis), tuple(args.values))
        result = run_sweep(s, spec, half_diagonal_trajectory(s.room, args.count))
        return csvio.sweep_csv(result)
    grid = run_grid(s, args.resolution, GridMetric(args.metric), args.workers)
    return csvio.grid_csv(grid)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"vlclink: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        text = _run(args)
    except ScenarioError as exc:
        print(f"vlclink: scenario error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO
    except ComputationError as exc:
        print(f"vlclink: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    data = text.encode("utf-8")
    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            print(f"vlclink: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
