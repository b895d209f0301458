"""Run the identity suite with timing, for a range of seeds."""

import argparse
import time

from genusone.verify import run_verify


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--range", type=int, default=5)
    args = p.parse_args()
    all_ok = True
    for seed in args.seeds:
        start = time.perf_counter()
        report = run_verify(seed, args.trials, args.degree, args.range)
        elapsed = time.perf_counter() - start
        checks = sum(r.checked for r in report.results.values())
        print(f"seed {seed}: {'PASS' if report.ok else 'FAIL'} {checks} checks in {elapsed:.1f}s")
        if not report.ok:
            print("\n".join(line for line in report.lines() if not line.startswith("ok")))
        all_ok &= report.ok
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
