"""Run the randomized property suites with a given seed and report pass counts and wall time.

Usage: python3 scripts/run_properties.py [--seed 0] [--only NAME ...] [--trials N]
"""

from __future__ import annotations

import argparse
import time

from dmanifold.testing import PROPERTIES, run_property

NAMES = sorted(PROPERTIES) + ["swap_sign"]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", nargs="*", choices=NAMES)
    ap.add_argument("--trials", type=int, default=None, help="override the default trial count")
    args = ap.parse_args()
    ok = True
    for name in args.only or NAMES:
        t0 = time.perf_counter()
        trials = None if name == "swap_sign" else args.trials
        res = run_property(name, seed=args.seed, trials=trials)
        dt = time.perf_counter() - t0
        ok &= res.ok
        extra = f" {res.counts}" if hasattr(res, "counts") else ""
        print(f"{'PASS' if res.ok else 'FAIL':4} {name:22} {res.passed}/{res.total} {dt:6.2f}s{extra}")
        for f in res.failures[:3]:
            print("     ", f)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
