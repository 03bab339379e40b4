"""Command-line front end: config ingestion, experiment dispatch, artifacts.

Every subcommand writes CSV tables plus a JSON summary under
`<out>/<command>/` along with a manifest recording the command, resolved
configuration (with per-field provenance), seed, and library versions.
The process exits nonzero when a registered check fails or a solve does
not converge.  The default output directory comes from the FEFETSIM_OUT
environment variable, falling back to ./fefetsim-out.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import analytics, biasing, config, engine, experiments, output
from .biasing import Topology

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_MISSING_FILE = 3
EXIT_UNKNOWN_KEY = 4
EXIT_BAD_VALUE = 5

RUN_EXPERIMENTS = ("bitline", "disturb", "word-write", "disturb-accumulate")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fefetsim",
        description="Ferroelectric-FET memory array simulator")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="JSON config file (strict schema)")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", metavar="DIR",
                        default=os.environ.get("FEFETSIM_OUT", "fefetsim-out"))
    common.add_argument("--samples", type=int)
    common.add_argument("--rows", type=int)
    common.add_argument("--cols", type=int)
    common.add_argument("--topology", choices=["and", "cand"])
    common.add_argument("--plot", action="store_true",
                        help="also emit SVG line charts")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("device-sweep", parents=[common],
                   help="transfer curves and hysteresis loop")

    vs = sub.add_parser("verify-scheme", parents=[common],
                        help="audit write-voltage exposure of unselected cells")
    vs.add_argument("--vw0", type=float, help="erase voltage (negative), V")
    vs.add_argument("--vw1", type=float, help="program voltage (positive), V")
    vs.add_argument("--scheme", choices=[k.value for k in biasing.SchemeKind],
                    default=biasing.SchemeKind.MIXED.value)

    run = sub.add_parser("run", parents=[common], help="run one experiment")
    run.add_argument("experiment", choices=RUN_EXPERIMENTS)
    run.add_argument("--word", type=lambda s: int(s, 0),
                     help="single word to write (word-write only)")

    sub.add_parser("mc", parents=[common], help="process-variation Monte Carlo")
    sub.add_parser("power", parents=[common], help="read power vs array size")
    sub.add_parser("area", parents=[common], help="cell area comparison")
    sub.add_parser("all", parents=[common], help="every experiment in sequence")
    return parser


def _resolve_config(args) -> tuple[config.RunConfig, dict]:
    overrides = {k: getattr(args, k, None)
                 for k in ("seed", "samples", "rows", "cols", "topology")}
    return config.load_config(args.config, overrides)


def _out_dir(args, command: str) -> str:
    path = os.path.join(args.out, command)
    os.makedirs(path, exist_ok=True)
    return path


def _emit(args, command: str, cfg, provenance, tables: dict,
          summary: dict | None = None, plots: dict | None = None) -> list[str]:
    """Write tables/summary/plots plus the manifest; return artifact paths."""
    out = _out_dir(args, command)
    files = []
    for name, (header, rows) in tables.items():
        files.append(output.write_csv(os.path.join(out, f"{name}.csv"),
                                      header, rows))
    if summary is not None:
        files.append(output.write_json(os.path.join(out, "summary.json"),
                                       summary))
    if args.plot and plots:
        for name, (series, title, xl, yl, log_x, log_y) in plots.items():
            files.append(output.svg_line_plot(
                os.path.join(out, f"{name}.svg"), series, title, xl, yl,
                log_x=log_x, log_y=log_y))
    output.write_manifest(out, command, config.config_dict(cfg),
                          provenance, files)
    return files


def _summary_jsonable(summary: dict) -> dict:
    return {k: (v.item() if hasattr(v, "item") else v)
            for k, v in summary.items()}


# --------------------------------------------------------------------------
# Subcommands (each returns an exit status)


def cmd_device_sweep(args, cfg, prov) -> int:
    th, trows = experiments.device_transfer_sweep(cfg)
    hh, hrows = experiments.hysteresis_sweep(cfg)
    plots = {
        "transfer": ({"state 0": [(r[0], max(r[1], 1e-16)) for r in trows],
                      "state 1": [(r[0], max(r[2], 1e-16)) for r in trows]},
                     "Transfer curves", "Vgs (V)", "Ids (A)", False, True),
        "hysteresis": ({"loop": hrows},
                       "Polarization loop", "V (V)", "P (C/m^2)",
                       False, False),
    }
    _emit(args, "device-sweep", cfg, prov,
          {"transfer": (th, trows), "hysteresis": (hh, hrows)}, plots=plots)
    return EXIT_OK


def cmd_verify_scheme(args, cfg, prov) -> int:
    v_w0 = args.vw0 if args.vw0 is not None else cfg.v_w0
    v_w1 = args.vw1 if args.vw1 is not None else cfg.v_w1
    report = biasing.verify_scheme(v_w0, v_w1, biasing.SchemeKind(args.scheme))
    header = ["op", "group", "exposure_volts", "margin_volts", "flag"]
    rows = [(f.op, f.group.value, f.v_gb, f.margin, f.flag)
            for f in report.findings]
    print(f"{'op':8} {'group':10} {'exposure':>10} {'margin':>10} flag")
    for op, group, exposure, margin, flag in rows:
        print(f"{op:8} {group:10} {exposure:10.3f} {margin:10.3f} {flag}")
    summary = {"v_w0": v_w0, "v_w1": v_w1, "scheme": args.scheme,
               "any_disturb": report.any_disturb,
               "any_partial": report.any_partial}
    _emit(args, "verify-scheme", cfg, prov, {"findings": (header, rows)},
          summary)
    return EXIT_CHECK_FAILED if report.any_disturb else EXIT_OK


def cmd_run(args, cfg, prov) -> int:
    if args.experiment == "bitline":
        res = experiments.long_bitline_sweep(cfg)
        by_topo = {t: [(r.rows, r.window_ratio) for r in res.rows
                       if r.topology == t] for t in ("and", "cand")}
        plots = {"window": (by_topo, "Read window vs rows", "rows",
                            "on/off ratio", True, True)}
        _emit(args, "bitline", cfg, prov,
              {"bitline": (res.header, res.table())},
              _summary_jsonable(res.summary), plots)
        ok = all(r.window_ratio > 1.0 for r in res.rows)
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.experiment == "disturb":
        res = experiments.disturb_matrix(cfg)
        _emit(args, "disturb", cfg, prov,
              {"disturb": (res.header, res.table())},
              _summary_jsonable(res.summary))
        return EXIT_OK if res.summary["all_logic_preserved"] \
            else EXIT_CHECK_FAILED
    if args.experiment == "word-write":
        words = [args.word] if args.word is not None else None
        res = experiments.word_write_demo(cfg, words=words)
        for e in res.entries:
            print(f"word 0x{e.word:02X} row {e.row} -> readback "
                  f"0x{e.readback:02X} {'ok' if e.match else 'MISMATCH'}")
        _emit(args, "word-write", cfg, prov,
              {"word_write": (res.header, res.table())},
              _summary_jsonable(res.summary))
        return EXIT_OK if res.summary["all_match"] else EXIT_CHECK_FAILED
    res = experiments.accumulative_disturb_sweep(cfg)
    plots = {"drift": ({"vt drift": [(r[0], r[2] + 1e-12) for r in res.rows]},
                       "Half-select vt drift", "pulses", "delta vt (V)",
                       True, False)}
    _emit(args, "disturb-accumulate", cfg, prov,
          {"disturb_accumulate": (res.header, res.rows)},
          _summary_jsonable(res.summary), plots)
    return EXIT_OK


def cmd_mc(args, cfg, prov) -> int:
    res = experiments.monte_carlo(cfg)
    _emit(args, "mc", cfg, prov, {"mc": (res.header, res.rows)},
          _summary_jsonable(res.summary))
    ok = (not res.summary["band_overlap"]
          and res.summary["min_on_off_ratio"] >= 10.0)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_power(args, cfg, prov) -> int:
    res = experiments.power_sweep(cfg)
    plots = {"power": ({"total": [(r[0], r[4]) for r in res.rows]},
                       "Peak single-bit read power", "array size",
                       "power (W)", True, False)}
    _emit(args, "power", cfg, prov, {"power": (res.header, res.rows)},
          _summary_jsonable(res.summary), plots)
    ok = (res.summary["flatness"] <= 1.2
          and res.summary["max_leak_share"] < 0.1)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_area(args, cfg, prov) -> int:
    header = ["spacing", "and_lambda2", "cand_lambda2", "improvement"]
    rows = []
    for with_spacing, label in ((True, "with"), (False, "without")):
        a = analytics.cell_area(Topology.AND, with_spacing)
        c = analytics.cell_area(Topology.CAND, with_spacing)
        rows.append((label, a, c, a / c))
        print(f"{label:8} AND {a:8.2f} λ²   C-AND {c:8.2f} λ²   "
              f"{a / c:.2f}X")
    summary = {"improvement_with_spacing": rows[0][3],
               "improvement_without_spacing": rows[1][3]}
    _emit(args, "area", cfg, prov, {"area": (header, rows)}, summary)
    return EXIT_OK


def cmd_all(args, cfg, prov) -> int:
    status = EXIT_OK
    status = max(status, cmd_device_sweep(args, cfg, prov))
    args.vw0, args.vw1, args.scheme = None, None, "mixed"
    status = max(status, cmd_verify_scheme(args, cfg, prov))
    for exp in RUN_EXPERIMENTS:
        args.experiment, args.word = exp, None
        status = max(status, cmd_run(args, cfg, prov))
    status = max(status, cmd_mc(args, cfg, prov))
    status = max(status, cmd_power(args, cfg, prov))
    status = max(status, cmd_area(args, cfg, prov))
    return status


_COMMANDS = {
    "device-sweep": cmd_device_sweep,
    "verify-scheme": cmd_verify_scheme,
    "run": cmd_run,
    "mc": cmd_mc,
    "power": cmd_power,
    "area": cmd_area,
    "all": cmd_all,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg, prov = _resolve_config(args)
    except FileNotFoundError as exc:
        print(f"error: config file not found: {exc}", file=sys.stderr)
        return EXIT_MISSING_FILE
    except config.UnknownKeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_KEY
    except config.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_VALUE
    try:
        return _COMMANDS[args.command](args, cfg, prov)
    except engine.ConvergenceError as exc:
        print(f"error: solver did not converge: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
