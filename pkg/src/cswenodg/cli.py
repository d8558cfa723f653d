"""Command-line entry point: ``cswenodg {run,convergence,compare,list}``.

Exit status is 0 on success, 1 for usage errors (bad flags, unknown
problem, malformed config file) and 2 for runtime failures.
"""
import argparse
import logging
import sys
from pathlib import Path

from .errors import ErrorReport, convergence_study, error_norms
from .exceptions import CSWENOError, ConfigError, InvalidArgumentError
from .output import write_error_csv, write_metadata, write_outputs
from .problems import PROBLEMS, get_problem, list_problems, run_problem

log = logging.getLogger("cswenodg")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2

#: Problems whose variants are compared against the exact/reference solution.
COMPARISON_PROBLEMS = ("burgers1d-shock", "buckley", "sod", "lax", "shuosher", "blast")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_cells(text):
    """``"80"`` -> ``(80,)``; ``"480x120"`` -> ``(480, 120)``."""
    try:
        cells = tuple(int(p) for p in str(text).lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid cell count {text!r}") from None
    if not cells or len(cells) > 2 or min(cells) < 1:
        raise argparse.ArgumentTypeError(f"invalid cell count {text!r}")
    return cells


def parse_switch(text):
    t = str(text).lower()
    if t in ("on", "true", "1", "yes"):
        return True
    if t in ("off", "false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected on/off, got {text!r}")


def parse_resolutions(text):
    try:
        out = [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid resolution list {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"invalid resolution list {text!r}")
    return out


def read_config(path):
    """Plain ``key=value`` lines (``#`` comments); keys mirror the long flags."""
    conf = {}
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        conf[key.replace("-", "_")] = value
    return conf


def _common(p):
    p.add_argument("--problem", help="problem id (see `list`)")
    p.add_argument("--order", type=int, choices=(1, 2, 3), help="polynomial degree N")
    p.add_argument("--limiter", choices=("cswen", "weno", "none"))
    p.add_argument("--characteristic", type=parse_switch, metavar="{on,off}")
    p.add_argument("--mesh", choices=("uniform", "perturbed"))
    p.add_argument("--seed", type=int)
    p.add_argument("--cfl", type=float)
    p.add_argument("--tend", type=float)
    p.add_argument("--indicator-ck", type=float, dest="indicator_ck")
    p.add_argument("--out", help="output directory")
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    p.add_argument("-v", "--verbose", action="store_true")


DEFAULTS = {"order": 2, "limiter": "cswen", "characteristic": True, "seed": 0, "indicator_ck": 1.0,
            "cfl": None, "tend": None, "out": None, "format": None, "cells": None, "resolutions": None}

_CONVERTERS = {"order": int, "seed": int, "cfl": float, "tend": float, "indicator_ck": float,
               "characteristic": parse_switch, "cells": parse_cells, "resolutions": parse_resolutions}


def build_parser():
    parser = _Parser(prog="cswenodg", description="DG solver with compact subcell WENO limiting")
    parser.add_argument("--list", action="store_true", help="list the registered problems")
    sub = parser.add_subparsers(dest="command")
    run = sub.add_parser("run", help="run one problem and write its outputs")
    _common(run)
    run.add_argument("--cells", type=parse_cells, help="K or KxK")
    run.add_argument("--format", choices=("csv", "grid"))
    conv = sub.add_parser("convergence", help="error table over a ladder of resolutions")
    _common(conv)
    conv.add_argument("--resolutions", type=parse_resolutions, help="comma-separated K values")
    comp = sub.add_parser("compare", help="compact vs parent WENO errors on the shock problems")
    _common(comp)
    comp.add_argument("--cells", type=parse_cells)
    sub.add_parser("list", help="list the registered problems")
    return parser


def _settings(args, allow_all=False):
    """Merge defaults < config file < explicit flags."""
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        for key, value in read_config(args.config).items():
            if key not in DEFAULTS and key not in ("problem", "mesh", "limiter"):
                raise ConfigError(f"unknown config key {key!r}")
            conv = _CONVERTERS.get(key)
            try:
                merged[key] = conv(value) if conv else value
            except (ValueError, argparse.ArgumentTypeError) as err:
                raise ConfigError(f"bad value for {key}: {value!r}") from err
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "list", "config", "verbose"):
            merged[key] = value
    if not merged.get("problem"):
        raise UsageError("--problem is required")
    if not (allow_all and merged["problem"] == "all"):
        get_problem(merged["problem"])
    return merged


def _print_list(out):
    for spec in list_problems():
        print(f"{spec.id:20s} {spec.ndim}D  {spec.title}", file=out)


def _run(s, out):
    spec = get_problem(s["problem"])
    mesh = s.get("mesh") or "uniform"
    res = run_problem(spec, degree=s["order"], cells=s["cells"], limiter=s["limiter"],
                      characteristic=s["characteristic"], mesh=mesh, seed=s["seed"], cfl=s["cfl"],
                      t_end=s["tend"], indicator_ck=s["indicator_ck"])
    report = None
    if spec.oracle is not None:
        report = ErrorReport(meta={"problem": spec.id})
        l1, linf = error_norms(res.sol, spec.oracle, res.config.t_end, spec.error_var)
        report.add(res.config.cells if spec.ndim == 2 else res.config.cells[0], l1, linf)
    print(f"{spec.id}: t={res.state.t:g} steps={res.state.step} troubled={res.troubled} "
          f"time={res.elapsed:.1f}s", file=out)
    if report is not None:
        print(f"L1={report.l1[0]:.6e} Linf={report.linf[0]:.6e} ({spec.reference})", file=out)
    if s["out"]:
        for p in write_outputs(res, s["out"], s["format"], report):
            print(f"wrote {p}", file=out)
    return EXIT_OK


def _convergence(s, out):
    spec = get_problem(s["problem"])
    res = s["resolutions"] or ([20, 40, 80, 160, 320] if spec.ndim == 1 else [20, 40, 80])
    mesh = s.get("mesh") or "perturbed"
    report = convergence_study(spec, s["order"], s["limiter"], res, mesh, s["seed"], s["characteristic"],
                               s["cfl"], s["tend"], s["indicator_ck"])
    print(f"{spec.id}  P{s['order']}  limiter={s['limiter']}  mesh={mesh}", file=out)
    print(report.format_table(), file=out)
    if s["out"]:
        d = Path(s["out"])
        d.mkdir(parents=True, exist_ok=True)
        stem = f"{spec.id}_p{s['order']}_{s['limiter']}_convergence"
        write_error_csv(d / f"{stem}.csv", report)
        write_metadata(d / f"{stem}.meta", report.meta)
    return EXIT_OK


def compare_variants(problems=COMPARISON_PROBLEMS, degree=2, cells=None, characteristic=True, seed=0):
    """L1 errors against the exact/reference solution for both limiter variants.

    Returns a list of ``(problem, reference kind, L1 cswen, L1 weno)``.
    """
    rows = []
    for pid in problems:
        spec = PROBLEMS[pid]
        errs = []
        for variant in ("cswen", "weno"):
            res = run_problem(spec, degree=degree, cells=cells, limiter=variant, characteristic=characteristic,
                              seed=seed)
            errs.append(error_norms(res.sol, spec.oracle, res.config.t_end, spec.error_var)[0])
        rows.append((pid, spec.reference, errs[0], errs[1]))
    return rows


def _compare(s, out):
    pids = COMPARISON_PROBLEMS if s["problem"] == "all" else (s["problem"],)
    rows = compare_variants(pids, s["order"], s["cells"], s["characteristic"], s["seed"])
    print(f"{'problem':18s} {'vs':9s} {'L1 cswen':>12s} {'L1 weno':>12s}", file=out)
    for pid, ref, a, b in rows:
        print(f"{pid:18s} {ref:9s} {a:12.4e} {b:12.4e}", file=out)
    if s["out"]:
        d = Path(s["out"])
        d.mkdir(parents=True, exist_ok=True)
        with open(d / f"compare_p{s['order']}.csv", "w") as fh:
            fh.write("problem,reference,L1_cswen,L1_weno\n")
            for pid, ref, a, b in rows:
                fh.write(f"{pid},{ref},{a:.6e},{b:.6e}\n")
    return EXIT_OK


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "verbose", False):
            logging.basicConfig(level=logging.INFO)
        if args.list or args.command == "list":
            _print_list(out)
            return EXIT_OK
        if args.command is None:
            raise UsageError("a subcommand is required (run, convergence, compare, list)")
        if args.command == "compare" and args.problem is None:
            args.problem = "all"
        s = _settings(args, allow_all=args.command == "compare")
        return {"run": _run, "convergence": _convergence, "compare": _compare}[args.command](s, out)
    except (UsageError, InvalidArgumentError, ConfigError) as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (CSWENOError, ValueError, OSError, FloatingPointError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
