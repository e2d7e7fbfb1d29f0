"""Run every catalog fixture through the full pipeline and print a summary table.

    python3 scripts/run_catalog.py --grid 16x16 --out-dir reports/
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from umbilic.catalog import catalog
from umbilic.pipeline import RunConfig, run
from umbilic.report import to_json


def main() -> int:
    p = argparse.ArgumentParser()
    p.add_argument("--grid", default="16x16")
    p.add_argument("--mode", default="full")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=None)
    args = p.parse_args()
    n, m = (int(x) for x in args.grid.split("x"))
    out = Path(args.out_dir) if args.out_dir else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    failures = 0
    t_all = time.perf_counter()
    for entry in catalog():
        for name in entry.surfaces:
            t0 = time.perf_counter()
            rep = run(RunConfig(entry.name, name, (n, m), args.mode, seed=args.seed))
            s = rep["summary"]
            failures += not s["passed"]
            bad = [k for k, c in s["checks"].items() if not c["passed"]] + list(s["expectation_failures"])
            status = " ".join(f"{k}={v}" for k, v in s["status_counts"].items() if v)
            print(f"{entry.name:15s} {name:20s} {'ok  ' if s['passed'] else 'FAIL'} "
                  f"{status:40s} {time.perf_counter() - t0:6.2f}s {' '.join(bad)}", flush=True)
            if out:
                (out / f"{entry.name}__{name}.json").write_text(to_json(rep))
    print(f"total {time.perf_counter() - t_all:.1f}s, {failures} failing fixtures")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
