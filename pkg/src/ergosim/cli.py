"""Command-line interface.

Verbs:
    run <config.ini>       run one configuration
    sweep <sweep.ini>      run a one-axis family of configurations
    repro <preset>         run a built-in experiment preset
    list-presets           show the available presets

Every run writes, inside its output directory:
    config.ini             echo of the effective configuration
    gain.csv               per-step accumulated flux and gain, one pair of
                           columns per probe
    energy.csv             sampled energy pieces (and zone gain where defined)
    snapshots/snap_*.csv   field snapshots (x, Re u, Im u, |u|)
    snapshots/index.csv    (t, filename) for the snapshots
    amplitude.csv          |Re u| matrix, rows = snapshot times, columns = x
                           (column-strided to at most 2000 columns)
    summary.txt            late-time gain per probe with stabilization flag

Floats are printed with 17 significant digits: rerunning the same
configuration reproduces the gain/energy/snapshot files byte for byte.
Sweep summaries additionally record wall time, which is not reproducible.

Exit codes: 0 success, 2 configuration/validation error, 3 numerical failure,
1 unexpected error.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import (
    ConfigError,
    SimConfig,
    load_config,
    load_sweep,
    serialize_config,
)
from .driver import RunResult, run
from .initial_data import SupportError
from .presets import get_preset, preset_names

_MATRIX_MAX_COLS = 2000


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


class _SnapshotWriter:
    """Streams snapshots to disk and keeps a strided |Re u| matrix in memory."""

    def __init__(self, outdir: Path, x: np.ndarray):
        self.dir = outdir / "snapshots"
        self.dir.mkdir(parents=True, exist_ok=True)
        self.x = x
        self.stride = max(1, int(np.ceil(x.size / _MATRIX_MAX_COLS)))
        self.index: list[tuple[str, str]] = []
        self.matrix_rows: list[np.ndarray] = []
        self.times: list[float] = []

    def __call__(self, state) -> None:
        name = f"snap_{len(self.index):06d}.csv"
        _write_csv(
            self.dir / name,
            ["x", "re_u", "im_u", "abs_u"],
            (
                (_fmt(xi), _fmt(ui.real), _fmt(ui.imag), _fmt(abs(ui)))
                for xi, ui in zip(self.x, state.u)
            ),
        )
        self.index.append((_fmt(state.t), name))
        self.matrix_rows.append(np.abs(state.u.real[:: self.stride]))
        self.times.append(state.t)

    def finish(self, outdir: Path) -> None:
        _write_csv(self.dir / "index.csv", ["t", "filename"], self.index)
        with (outdir / "amplitude.csv").open("w", encoding="utf-8") as fh:
            for row in self.matrix_rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_run(result: RunResult, outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "config.ini").write_text(serialize_config(result.config), encoding="utf-8")

    probes = sorted(result.flux_series)
    if probes:
        series = [result.flux_series[p] for p in probes]
        header = ["t"]
        for p in probes:
            header += [f"flux_at_{p:g}", f"gain_at_{p:g}"]
        times = series[0].times
        cols = [times]
        for s in series:
            cols += [s.accumulated_flux, s.gain]
        _write_csv(
            outdir / "gain.csv",
            header,
            ((_fmt(v) for v in row) for row in zip(*cols)),
        )

    header = ["t", "kinetic", "gradient", "potential", "total"]
    cols = [
        result.energy_times,
        [e.kinetic for e in result.energies],
        [e.gradient for e in result.energies],
        [e.potential for e in result.energies],
        [e.total for e in result.energies],
    ]
    if result.zone_gain is not None and len(result.zone_gain) == len(result.energy_times):
        header.append("zone_gain")
        cols.append(result.zone_gain)
    _write_csv(outdir / "energy.csv", header, ((_fmt(v) for v in row) for row in zip(*cols)))

    lines = [
        f"label = {result.config.label}",
        f"steps = {result.steps}",
        f"initial_energy = {_fmt(result.initial_energy.total)}",
        f"flux_denominator = {_fmt(result.flux_denominator)}",
    ]
    for p in probes:
        s = result.flux_series[p].summary()
        lines.append(
            f"probe {p:g}: gain_inf = {_fmt(s.value)}, stabilized = {s.stabilized}, "
            f"drift = {_fmt(s.drift)}"
        )
    (outdir / "summary.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _execute(cfg: SimConfig, outdir: Path) -> tuple[str, float, bool, float]:
    """Run one configuration, write its outputs, return a summary row."""
    t0 = time.perf_counter()
    writer = _SnapshotWriter(outdir, cfg.grid.x)
    outdir.mkdir(parents=True, exist_ok=True)
    result = run(cfg, snapshot_callback=writer)
    writer.finish(outdir)
    _write_run(result, outdir)
    wall = time.perf_counter() - t0
    if result.flux_series:
        s = result.summary()
        return cfg.label, s.value, s.stabilized, wall
    return cfg.label, float("nan"), False, wall


def _execute_family(
    configs: list[SimConfig],
    outdir: Path,
    threads: int,
    quiet: bool,
    axis_values: list[tuple[str, str]] | None = None,
) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = [(cfg, outdir / (cfg.label or f"run-{i}")) for i, cfg in enumerate(configs)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_execute, *zip(*jobs)))
    else:
        rows = [_execute(cfg, sub) for cfg, sub in jobs]

    summary_rows = []
    for i, (label, ginf, stabilized, wall) in enumerate(rows):
        extra = list(axis_values[i]) if axis_values else []
        summary_rows.append(extra + [label, _fmt(ginf), str(stabilized), f"{wall:.3f}"])
        if not quiet:
            print(f"{label}: gain_inf = {ginf:.6g} stabilized = {stabilized} ({wall:.1f}s)")
    header = (["axis", "value"] if axis_values else []) + [
        "label", "gain_inf", "stabilized", "wall_time_s"
    ]
    _write_csv(outdir / "summary.csv", header, summary_rows)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ergosim",
        description="superradiant energy extraction by charged scalar waves in 1D",
    )
    parser.add_argument("--output-dir", type=Path, default=Path("ergosim-out"))
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--quiet", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("run").add_argument("config", type=Path)
    sub.add_parser("sweep").add_argument("config", type=Path)
    sub.add_parser("repro").add_argument("preset")
    sub.add_parser("list-presets")
    args = parser.parse_args(argv)

    try:
        if args.verb == "list-presets":
            for name in preset_names():
                preset = get_preset(name)
                print(f"{name}: {preset.description} ({len(preset.configs)} runs)")
            return 0
        if args.verb == "run":
            cfg = load_config(args.config)
            label, ginf, stabilized, wall = _execute(cfg, args.output_dir)
            if not args.quiet:
                if np.isnan(ginf):
                    print(f"done in {wall:.1f}s (no probes configured)")
                else:
                    print(f"gain_inf = {ginf:.6g} stabilized = {stabilized} ({wall:.1f}s)")
            return 0
        if args.verb == "sweep":
            spec = load_sweep(args.config)
            axis_values = [(spec.axis, _fmt(v)) for v in spec.values]
            _execute_family(spec.configs(), args.output_dir, args.threads,
                            args.quiet, axis_values)
            return 0
        # repro
        preset = get_preset(args.preset)
        _execute_family(
            list(preset.configs), args.output_dir / preset.name, args.threads, args.quiet
        )
        return 0
    except (ConfigError, SupportError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FloatingPointError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
