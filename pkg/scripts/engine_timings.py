"""Compare the two resultant engines on fibotomic discriminants.

Writes n, phi(n), discriminant bit length and the seconds taken by the
Sylvester/Bareiss and subresultant engines to a CSV file.
"""

import argparse
import csv
import time
from dataclasses import dataclass
from pathlib import Path

from fibotomic import numth, resdisc
from fibotomic.families import fibotomic


@dataclass(frozen=True)
class TimingConfig:
    max_n: int = 120
    step: int = 1
    out: Path = Path("results/engine_timings.csv")


def timed(fn, *args):
    t0 = time.perf_counter()
    value = fn(*args)
    return value, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=TimingConfig.max_n)
    ap.add_argument("--step", type=int, default=TimingConfig.step)
    ap.add_argument("--out", type=Path, default=TimingConfig.out)
    a = ap.parse_args()
    cfg = TimingConfig(a.max_n, a.step, a.out)

    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    with cfg.out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "phi", "bits", "sylvester_s", "subresultant_s", "agree"])
        for n in range(2, cfg.max_n + 1, cfg.step):
            psi = fibotomic(n)
            d_syl, t_syl = timed(resdisc.discriminant, psi, "sylvester")
            d_sub, t_sub = timed(resdisc.discriminant, psi, "subresultant")
            agree = d_syl == d_sub == resdisc.disc_formula_psi(n)
            w.writerow([n, numth.totient(n), abs(d_sub).bit_length(), f"{t_syl:.5f}", f"{t_sub:.5f}", agree])
            if not agree:
                print(f"disagreement at n={n}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
