"""Writers for line data, 2D grids, error tables and run metadata.

All writers are deterministic: identical runs produce byte-identical files
(no timestamps, fixed float formatting).
"""
import csv
from pathlib import Path

import numpy as np

from .errors import ErrorReport


def _fmt(v):
    return f"{v:.12e}"


def point_variables(spec, flux, values):
    """Conserved values ``(m, ...)`` to the output variables of ``spec``."""
    if flux.is_system:
        return flux.primitive(values)
    return values


def write_line_csv(path, result):
    """CSV with ``x``, every output variable and the exact/reference first variable at cell centres."""
    spec, sol = result.spec, result.sol
    flux = spec.make_flux()
    x = sol.mesh.centers
    vals = point_variables(spec, flux, sol.evaluate([0.0])[..., 0])
    names = list(spec.variables)
    header = ["x"] + names
    cols = [x] + list(vals)
    if spec.oracle is not None:
        label = "exact" if spec.reference == "exact" else "reference"
        ref = point_variables(spec, flux, np.asarray(spec.oracle(x, result.config.t_end), dtype=float))
        header.append(f"{names[0]}_{label}")
        cols.append(ref[0])
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*cols):
            w.writerow([_fmt(v) for v in row])
    return Path(path)


def write_grid(path, result, var=0):
    """Structured-grid text: ``Kx Ky`` line, domain line, then ``Ky`` rows of ``Kx`` values.

    Values are cell-centre point values of output variable ``var``
    (density for Euler); row ``j`` holds the cells at ``y_j``.
    """
    spec, sol = result.spec, result.sol
    flux = spec.make_flux()
    centre = sol.evaluate([0.0])[..., 0, 0]
    field_ = point_variables(spec, flux, centre)[var]
    Kx, Ky = sol.mesh.shape
    (x0, x1), (y0, y1) = spec.domain
    with open(path, "w") as fh:
        fh.write(f"{Kx} {Ky}\n")
        fh.write(f"{x0!r} {x1!r} {y0!r} {y1!r}\n")
        for j in range(Ky):
            fh.write(" ".join(_fmt(v) for v in field_[:, j]) + "\n")
    return Path(path)


def write_error_csv(path, report=None):
    """Error table as CSV; a header-only file when ``report`` is empty or ``None``."""
    report = report or ErrorReport()
    Path(path).write_text(report.to_csv())
    return Path(path)


def write_metadata(path, meta):
    """``key=value`` lines in sorted key order."""
    lines = [f"{k}={_meta_value(v)}" for k, v in sorted(meta.items())]
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


def _meta_value(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (tuple, list)):
        return "x".join(str(i) for i in v)
    if isinstance(v, bool):
        return "on" if v else "off"
    return str(v)


def run_metadata(result):
    cfg = result.config
    return {
        "problem": result.spec.id,
        "order": cfg.degree,
        "cells": cfg.cells,
        "limiter": cfg.limiter,
        "characteristic": cfg.characteristic,
        "mesh": cfg.mesh,
        "seed": cfg.seed,
        "cfl": cfg.cfl,
        "tend": cfg.t_end,
        "indicator_ck": cfg.indicator_ck,
        "steps": result.state.step,
        "troubled_cells": result.troubled,
        "reference": result.spec.reference,
    }


def write_outputs(result, out_dir, fmt=None, report=None, stem=None):
    """Write every output of a run into ``out_dir``; returns the written paths.

    ``fmt`` defaults to ``csv`` for 1D and ``grid`` for 2D problems.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = stem or f"{result.spec.id}_p{result.config.degree}_{result.config.limiter}"
    fmt = fmt or ("csv" if result.spec.ndim == 1 else "grid")
    paths = []
    if fmt == "csv":
        if result.spec.ndim != 1:
            raise ValueError("csv line output is only available for 1D problems")
        paths.append(write_line_csv(out / f"{stem}.csv", result))
    elif fmt == "grid":
        if result.spec.ndim != 2:
            raise ValueError("grid output is only available for 2D problems")
        paths.append(write_grid(out / f"{stem}.grid", result))
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    meta = run_metadata(result)
    if report is not None:
        paths.append(write_error_csv(out / f"{stem}_errors.csv", report))
        meta["L1"] = report.l1[-1] if report.l1 else ""
        meta["Linf"] = report.linf[-1] if report.linf else ""
    paths.append(write_metadata(out / f"{stem}.meta", meta))
    return paths


__all__ = [
    "run_metadata",
    "write_error_csv",
    "write_grid",
    "write_line_csv",
    "write_metadata",
    "write_outputs",
]
