"""Classify every n in a range for both angles and tally the outcomes.

    python3 scripts/classify_range.py --stop 1000 --bound 100
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from pi4congruent.arith import is_squarefree
from pi4congruent.classify import classify
from pi4congruent.curve import Angle


@dataclass
class RangeConfig:
    start: int = 1
    stop: int = 300
    bound: int = 100
    squarefree_only: bool = True
    verbose: bool = False


def main(cfg: RangeConfig) -> int:
    tally: dict[Angle, Counter] = {a: Counter() for a in Angle}
    for n in range(cfg.start, cfg.stop + 1):
        if cfg.squarefree_only and not is_squarefree(n):
            continue
        for angle in Angle:
            v = classify(n, angle, cfg.bound)
            tally[angle][v.outcome.value] += 1
            if cfg.verbose:
                extra = v.triangle.sides_text() if v.triangle else (v.rule or "")
                print(f"{n:>6} {angle!s:>6} {v.outcome.value:<24} {extra}")
    for angle, c in tally.items():
        print(f"{angle}: " + ", ".join(f"{k} {v}" for k, v in sorted(c.items())))
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=int, default=RangeConfig.start)
    ap.add_argument("--stop", type=int, default=RangeConfig.stop)
    ap.add_argument("--bound", type=int, default=RangeConfig.bound)
    ap.add_argument("--all", dest="squarefree_only", action="store_false")
    ap.add_argument("-v", "--verbose", action="store_true")
    raise SystemExit(main(RangeConfig(**vars(ap.parse_args()))))
