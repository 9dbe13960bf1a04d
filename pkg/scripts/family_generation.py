"""Generate members of the explicit families in a finite box and check each witness.

    python3 scripts/family_generation.py --box 30 --residue 1 3 --count 5
"""

import argparse
import math
from dataclasses import dataclass

from pi4congruent.arith import DomainError
from pi4congruent.curve import Angle
from pi4congruent.families import (
    ParamPair,
    parametrized_value,
    rank2_family,
    residue_family,
    residue_family_witness,
    stewart_top_family,
    witness_triangle,
)


@dataclass
class FamilyConfig:
    box: int = 20
    residue: tuple[int, int] = (1, 3)
    count: int = 5
    trange: int = 10


def parametrized(cfg: FamilyConfig) -> None:
    for angle in Angle:
        seen = set()
        for r in range(1, cfg.box + 1):
            for s in range(1, cfg.box + 1):
                if math.gcd(r, s) != 1:
                    continue
                try:
                    value, n = parametrized_value(ParamPair(r, s), angle)
                except DomainError:
                    continue
                T = witness_triangle(r, s, angle)
                assert T.is_valid() and T.area == value
                seen.add(n)
        print(f"{angle}: {len(seen)} distinct square-free classes from r, s <= {cfg.box}; smallest {sorted(seen)[:12]}")


def residues(cfg: FamilyConfig) -> None:
    a, m = cfg.residue
    u = a % m or m
    for k, value in enumerate(residue_family(a, m, cfg.count)):
        T = residue_family_witness(u + k * m, m)
        assert T.area == value and value % m == a % m
        print(f"n = {value} = {a} mod {m}, witness {T.sides_text()}")


def rank_two(cfg: FamilyConfig) -> None:
    for t in range(-cfg.trange, cfg.trange + 1):
        try:
            M, N = stewart_top_family(t)
        except DomainError:
            continue
        assert M.verify() and N.verify()
    print(f"Stewart-Top points verified for |t| <= {cfg.trange}")
    for t in range(2, cfg.trange + 1):
        m = rank2_family(t, check_span=3)
        print(f"t = {t}: n_t = {m.n_t}, square-free part {m.squarefree_n}, weakly independent {m.weakly_independent}")


def main(cfg: FamilyConfig) -> int:
    parametrized(cfg)
    residues(cfg)
    rank_two(cfg)
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--box", type=int, default=FamilyConfig.box)
    ap.add_argument("--residue", type=int, nargs=2, default=FamilyConfig.residue)
    ap.add_argument("--count", type=int, default=FamilyConfig.count)
    ap.add_argument("--trange", type=int, default=FamilyConfig.trange)
    args = ap.parse_args()
    raise SystemExit(main(FamilyConfig(args.box, tuple(args.residue), args.count, args.trange)))
