"""Record the 2D convergence ladders used by the acceptance suite.

The density-wave and vortex ladders take over an hour on a single slow core, so the
acceptance suite reads their errors from ``tests/data/ladder2d.json`` unless
``CSWENODG_FULL_ACCEPTANCE=1`` asks for live runs.  Regenerate with::

    python scripts/record_ladder2d.py [problem ...]
"""
import argparse
import json
import platform
import time
from pathlib import Path

from cswenodg.errors import convergence_study

LADDER = [20, 40, 80]
DEFAULT_PROBLEMS = ("burgers2d", "euler2d-densitywave", "vortex")
OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "ladder2d.json"


def record(problems, degrees=(1, 2, 3), out=OUT):
    data = json.loads(out.read_text()) if out.exists() else {"meta": {}, "runs": {}}
    data["meta"].update({"ladder": LADDER, "limiter": "cswen", "mesh": "perturbed", "seed": 0,
                         "machine": platform.machine(), "python": platform.python_version()})
    for pid in problems:
        for N in degrees:
            start = time.perf_counter()
            report = convergence_study(pid, N, "cswen", LADDER)
            data["runs"][f"{pid}/P{N}"] = {"l1": report.l1, "orders": report.l1_order,
                                           "seconds": round(time.perf_counter() - start, 1)}
            print(pid, N, report.l1, report.l1_order, flush=True)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(json.dumps(data, indent=1) + "\n")
    return data


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("problems", nargs="*", default=DEFAULT_PROBLEMS)
    args = parser.parse_args()
    record(args.problems)
