"""Command line interface: analyze, validate, serve, bundle."""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path

from .config import (
    difficulty_from,
    load_defaults,
    metric_from,
    noise_from,
    sampling_from,
)
from .datasets import demo_level, reconstructed_screens, table1_trial_log
from .model import LevelFormatError, parse_level, serialize_level, validate_level
from .paths import PathMetric
from .probability import NoiseKind
from .report import analyze_level
from .validation import (
    TrialFormatError,
    dump_trials_csv,
    load_trials,
    mae_grid,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2


def _comma_floats(raw: str) -> list[float]:
    return [float(v) for v in raw.split(",") if v.strip()]


def _add_engine_flags(p: argparse.ArgumentParser, grid: bool = False) -> None:
    noise_kinds = [k.value for k in NoiseKind]
    if grid:
        p.add_argument("--noise", default=",".join(noise_kinds),
                       help="comma-separated noise kinds "
                            f"({'|'.join(noise_kinds)}); default all")
        p.add_argument("--rt", default=None,
                       help="comma-separated reaction times in seconds")
        p.add_argument("--ps", default=None,
                       help="comma-separated player skill values")
    else:
        p.add_argument("--noise", choices=noise_kinds, default=None,
                       help="noise function")
        p.add_argument("--rt", type=float, default=None,
                       help="player reaction time in seconds [0.01, 1]")
        p.add_argument("--ps", type=float, default=None,
                       help="player skill [1, 50]")
    p.add_argument("--samples", type=int, default=None,
                   help="Monte Carlo samples per trajectory")
    p.add_argument("--seed", default=None,
                   help="RNG seed (an integer, or 'random')")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--no-figures", action="store_true",
                   help="skip rendering figures next to --out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="platlab",
        description="Jump feasibility, difficulty, and success-probability "
                    "analysis for 2D platformer levels.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a level document")
    p.add_argument("level", help="path to a level JSON document")
    _add_engine_flags(p)
    p.add_argument("--metric", choices=[m.value for m in PathMetric],
                   default=None, help="best-path metric")
    p.add_argument("--traj-points", type=int, default=None,
                   help="points per serialized trajectory polyline")

    p = sub.add_parser("validate",
                       help="compare engine estimates against trial logs")
    p.add_argument("suite", help="directory of screen level JSON files")
    p.add_argument("trials", help="trial log (CSV or JSON)")
    _add_engine_flags(p, grid=True)

    p = sub.add_parser("serve", help="run the HTTP analysis service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static-dir", default=None,
                   help="directory with the editor UI's static assets")

    p = sub.add_parser("bundle",
                       help="export the bundled screen suite, trial log, "
                            "and demo level")
    p.add_argument("--dest", required=True, help="destination directory")
    return parser


def _resolve_seed(raw, default: int) -> int:
    if raw is None:
        return default
    if raw == "random":
        return secrets.randbits(63)
    return int(raw)


def _sampling_config(args, defaults):
    sampling_cfg = dict(defaults["sampling"])
    if args.samples is not None:
        sampling_cfg["samples_per_trajectory"] = args.samples
    sampling_cfg["seed"] = _resolve_seed(args.seed, sampling_cfg["seed"])
    return sampling_from(sampling_cfg)


def _engine_configs(args, defaults):
    noise_cfg = dict(defaults["noise"])
    if getattr(args, "noise", None):
        noise_cfg["kind"] = args.noise
    if args.rt is not None:
        noise_cfg["reaction_time"] = args.rt
    if args.ps is not None:
        noise_cfg["player_skill"] = args.ps
    return (noise_from(noise_cfg), _sampling_config(args, defaults),
            difficulty_from(defaults["difficulty"]))


def _emit(text: str, out: str | None) -> Path | None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return None
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def cmd_analyze(args) -> int:
    defaults = load_defaults()
    try:
        document = Path(args.level).read_bytes()
    except OSError as exc:
        print(f"cannot read level: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        level = parse_level(document)
    except LevelFormatError as exc:
        print(f"invalid level document: {exc}", file=sys.stderr)
        return EXIT_INVALID
    diagnostics = validate_level(level)
    if diagnostics:
        for d in diagnostics:
            where = f" [{d.platform_id}]" if d.platform_id else ""
            print(f"{d.code}{where}: {d.message}", file=sys.stderr)
        return EXIT_INVALID
    noise, sampling, difficulty = _engine_configs(args, defaults)
    metric = (PathMetric(args.metric) if args.metric
              else metric_from(defaults))
    points = args.traj_points or defaults["trajectory_points"]
    report = analyze_level(level, noise, sampling, difficulty, metric, points)
    if report.paths is not None and not report.paths.completable:
        print("level is not completable: no start-to-exit path", file=sys.stderr)
    written = _emit(report.to_json(), args.out)
    if written is not None and not args.no_figures:
        from .figures import save_report_figures

        for fig_path in save_report_figures(report, written):
            print(f"figure: {fig_path}", file=sys.stderr)
    return EXIT_OK


def _load_suite(suite_dir: str):
    root = Path(suite_dir)
    screens = {}
    for path in sorted(root.glob("*.json")):
        level = parse_level(path.read_bytes())
        problems = validate_level(level)
        if problems:
            raise LevelFormatError(
                f"screen {path.name}: {problems[0].code}: {problems[0].message}")
        screens[path.stem] = level
    return screens


def cmd_validate(args) -> int:
    defaults = load_defaults()
    try:
        screens = _load_suite(args.suite)
    except OSError as exc:
        print(f"cannot read suite: {exc}", file=sys.stderr)
        return EXIT_IO
    except LevelFormatError as exc:
        print(f"invalid screen: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not screens:
        print(f"no screen documents found in {args.suite}", file=sys.stderr)
        return EXIT_INVALID
    try:
        trials = load_trials(args.trials, screens)
    except OSError as exc:
        print(f"cannot read trials: {exc}", file=sys.stderr)
        return EXIT_IO
    except TrialFormatError as exc:
        print(f"invalid trial log: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not trials:
        print("trial log contains no trials", file=sys.stderr)
        return EXIT_INVALID

    kinds = [NoiseKind(k) for k in args.noise.split(",") if k.strip()]
    rts = _comma_floats(args.rt) if args.rt else [defaults["noise"]["reaction_time"]]
    pss = _comma_floats(args.ps) if args.ps else [defaults["noise"]["player_skill"]]
    sampling = _sampling_config(args, defaults)
    difficulty = difficulty_from(defaults["difficulty"])
    grid = mae_grid(screens, trials, kinds, rts, pss, sampling, difficulty)
    written = _emit(grid.to_csv(), args.out)
    if written is not None:
        written.with_suffix(".json").write_text(
            json.dumps(grid.to_dict(), indent=2, sort_keys=True),
            encoding="utf-8")
        if not args.no_figures:
            from .figures import save_grid_figures

            for fig_path in save_grid_figures(grid, written):
                print(f"figure: {fig_path}", file=sys.stderr)
    best = grid.best
    print(f"argmin: noise={best.noise_kind.value} rt={best.reaction_time:g} "
          f"ps={best.player_skill:g} mae={best.mae:.4f} "
          f"stderr={best.stderr:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import build_app

    app = build_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def cmd_bundle(args) -> int:
    dest = Path(args.dest)
    screens_dir = dest / "screens"
    screens_dir.mkdir(parents=True, exist_ok=True)
    for sid, level in reconstructed_screens().items():
        (screens_dir / f"{sid}.json").write_text(serialize_level(level),
                                                 encoding="utf-8")
    (dest / "trials_table1.csv").write_text(dump_trials_csv(table1_trial_log()),
                                            encoding="utf-8")
    (dest / "demo_level.json").write_text(serialize_level(demo_level()),
                                          encoding="utf-8")
    print(f"wrote {dest}/screens/*.json, {dest}/trials_table1.csv, "
          f"{dest}/demo_level.json", file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "validate": cmd_validate,
        "serve": cmd_serve,
        "bundle": cmd_bundle,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
