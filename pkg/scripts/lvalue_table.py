"""Table of L(E_n, 1) against the theta prediction for square-free n in a range.

    python3 scripts/lvalue_table.py --start 1 --stop 200 --csv lvalues.csv
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from pi4congruent.arith import is_squarefree
from pi4congruent.curve import Angle
from pi4congruent.lfunc import BudgetExceeded, verify_waldspurger


@dataclass
class TableConfig:
    start: int = 1
    stop: int = 100
    tol: float = 1e-5
    csv: str | None = None


FIELDS = ["n", "angle", "twist", "branch", "coefficient", "predicted", "computed", "ok"]


def main(cfg: TableConfig) -> int:
    out = open(cfg.csv, "w", newline="") if cfg.csv else sys.stdout
    writer = csv.writer(out)
    writer.writerow(FIELDS)
    failures = 0
    for n in range(cfg.start, cfg.stop + 1):
        if not is_squarefree(n):
            continue
        for angle in Angle:
            try:
                r = verify_waldspurger(n, angle, cfg.tol)
            except BudgetExceeded as exc:
                print(f"skip {n} {angle}: {exc}", file=sys.stderr)
                continue
            failures += not r.ok
            writer.writerow([n, angle, r.twist, r.branch, r.coefficient, f"{r.predicted:.12g}", f"{r.computed:.12g}", r.ok])
    if cfg.csv:
        out.close()
    print(f"{failures} rows outside tolerance {cfg.tol}", file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=int, default=TableConfig.start)
    ap.add_argument("--stop", type=int, default=TableConfig.stop)
    ap.add_argument("--tol", type=float, default=TableConfig.tol)
    ap.add_argument("--csv")
    raise SystemExit(main(TableConfig(**vars(ap.parse_args()))))
