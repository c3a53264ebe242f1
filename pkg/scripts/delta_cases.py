"""Tally which branch of the degree formula fires for Psi_m mod p, per prime.

For every m >= 3 coprime to p the formula's case label, the predicted degree
and the degrees actually observed in the factorization are recorded.
"""

import argparse
import collections
import csv
from dataclasses import dataclass, field
from pathlib import Path

from fibotomic import modfactor


@dataclass
class CaseConfig:
    primes: tuple[int, ...] = (2, 3, 5, 7, 11, 13, 101)
    max_m: int = 120
    seed: int = 0
    out: Path = Path("results/delta_cases.csv")
    tally: dict = field(default_factory=lambda: collections.defaultdict(collections.Counter))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=120)
    ap.add_argument("--primes", default="2,3,5,7,11,13,101")
    ap.add_argument("--out", type=Path, default=CaseConfig.out)
    a = ap.parse_args()
    cfg = CaseConfig(tuple(int(p) for p in a.primes.split(",")), a.max_m, out=a.out)

    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    mismatches = 0
    with cfg.out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "m", "delta", "case", "observed_degrees", "shape"])
        for p in cfg.primes:
            for m in range(3, cfg.max_m + 1):
                if m % p == 0:
                    continue
                rep = modfactor.reconcile(m, p, cfg.seed)
                d = rep.delta
                cfg.tally[p][d["case"]] += 1
                mismatches += not rep.ok
                w.writerow([p, m, d["formula"], d["case"], " ".join(map(str, d["observed"])), rep.observed])

    for p, counter in cfg.tally.items():
        print(f"p = {p}")
        for label, count in sorted(counter.items()):
            print(f"  {count:>4}  {label}")
    print(f"{mismatches} mismatches; wrote {cfg.out}")


if __name__ == "__main__":
    main()
