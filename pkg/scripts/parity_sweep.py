"""Coefficient-parity sweep over primes, with a per-class tally.

    python3 scripts/parity_sweep.py --limit 100000
"""

import argparse
import time
from dataclasses import dataclass

from pi4congruent.theta import parity_sweep


@dataclass
class SweepConfig:
    limit: int = 10**5


def main(cfg: SweepConfig) -> int:
    t0 = time.perf_counter()
    sweep = parity_sweep(cfg.limit)
    for cls, count in sweep.checked.items():
        print(f"p = {cls:<9} primes checked: {count}")
    for form, p, why in sweep.failures:
        print(f"FAIL {form} at p = {p}: {why}")
    print(f"{'ok' if sweep.ok else 'FAILED'} in {time.perf_counter() - t0:.1f}s")
    return 0 if sweep.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=SweepConfig.limit)
    raise SystemExit(main(SweepConfig(ap.parse_args().limit)))
