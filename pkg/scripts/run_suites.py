"""Run the invariant suites on a chosen grid and write a JSON report.

    python scripts/run_suites.py --suite theta --len 4 --entry 5 --out theta.json
"""
import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from complegs import verify


@dataclass
class Config:
    suite: str = "all"
    max_string_len: int = 3
    max_entry: int = 5
    jobs: int = 1
    out: str = ""


def parse(argv=None) -> Config:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", default=Config.suite)
    ap.add_argument("--len", dest="max_string_len", type=int, default=Config.max_string_len)
    ap.add_argument("--entry", dest="max_entry", type=int, default=Config.max_entry)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    ap.add_argument("--out", default="")
    return Config(**vars(ap.parse_args(argv)))


def main(argv=None) -> int:
    cfg = parse(argv)
    grid = verify.GridSpec(max_string_len=cfg.max_string_len, max_entry=cfg.max_entry)
    t0 = time.perf_counter()
    reports = verify.run_suites([cfg.suite], grid, jobs=cfg.jobs)
    for r in reports:
        print(r.summary())
    doc = {"config": asdict(cfg), "grid": grid.to_json(), "seconds": round(time.perf_counter() - t0, 2),
           "reports": [r.to_json() for r in reports]}
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(doc, fh, indent=2)
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
