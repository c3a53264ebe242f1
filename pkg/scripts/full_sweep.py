"""Run every verification suite at the acceptance scales and save a JSON summary.

    python scripts/full_sweep.py --out results/full_sweep.json --jobs 1
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from fibotomic import suites


@dataclass(frozen=True)
class SweepPlan:
    """Scale per suite; mirrors the ranges in the acceptance tests."""

    product: int = 300
    constant: int = 1000
    identities: int = 150
    disc: int = 120
    res: int = 80
    bridge: int = 80
    modp: int = 120
    homog: int = 40
    seed: int = 0
    jobs: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results/full_sweep.json"))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    plan = SweepPlan(seed=args.seed, jobs=args.jobs)

    report = {"plan": asdict(plan), "suites": {}}
    all_ok = True
    for name in suites.SUITE_NAMES:
        cfg = suites.SuiteConfig(max_n=getattr(plan, name), seed=plan.seed, jobs=plan.jobs)
        t0 = time.perf_counter()
        result = suites.run_suite(name, cfg)[name]
        elapsed = time.perf_counter() - t0
        all_ok &= result.ok
        report["suites"][name] = {
            "max_n": cfg.max_n,
            "seconds": round(elapsed, 3),
            "checks": [asdict(s) | {"failed": s.failed} for s in result.summaries],
        }
        runs = sum(s.run for s in result.summaries)
        print(f"{name:<11} N={cfg.max_n:<5} {runs:>7} checks  {'ok' if result.ok else 'FAIL'}  {elapsed:6.1f}s")

    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(report, indent=2))
    print(f"wrote {args.out}")
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
