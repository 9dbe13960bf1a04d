"""Dissecting the unit square into congruent almost rational right triangles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import DomainError, is_squarefree
from .curve import Angle, Triangle


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p == q.numerator and d * d == q.denominator:
        return Fraction(p, d)
    return None


def is_almost_rational(a, b) -> tuple[Fraction | None, Fraction | None]:
    """Rational square roots of a^2 + 2b^2 + 2ab and a^2 + 2b^2 - 2ab, when they exist."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise DomainError("legs must be positive")
    base = a * a + 2 * b * b
    return rational_sqrt(base + 2 * a * b), rational_sqrt(base - 2 * a * b)


@dataclass(frozen=True)
class TilingSpec:
    n: int
    angle: Angle
    legs: tuple[Fraction, Fraction]
    hypotenuse_like: Fraction
    t: int
    columns: int
    rows: int

    @property
    def piece_count(self) -> int:
        return 2 * self.columns * self.rows

    @property
    def k(self) -> int:
        return 2 * self.t

    @property
    def piece_legs(self) -> tuple[Fraction, Fraction]:
        return self.legs[0] / self.t, self.legs[1] / self.t

    def covers_unit_square(self) -> bool:
        w, h = self.piece_legs
        return self.columns * w == 1 and self.rows * h == 1

    def grid(self) -> dict:
        w, h = self.piece_legs
        return {
            "columns": self.columns,
            "rows": self.rows,
            "rectangle": [str(w), str(h)],
            "diagonal": "lower-left to upper-right in every rectangle",
            "pieces": self.piece_count,
        }


def tiling_from_witness(n: int, T: Triangle, angle: Angle | None = None) -> TilingSpec:
    """Tiling of the unit square into 8 n t^2 = 2 n (2t)^2 pieces from a triangle of area 2n."""
    if n < 1 or n % 2 == 0 or not is_squarefree(n):
        raise DomainError(f"{n} is not a positive square-free odd integer")
    angle = T.angle if angle is None else angle
    if T.angle is not angle or not T.is_valid() or T.area != 2 * n:
        raise DomainError(f"{T} is not a {angle} witness for {2 * n}")
    # (a, b, c) -> (1/b, 1/a, c/(ab)) gives legs with 4 a' b' n = 1
    a1, b1, c1 = 1 / T.b, 1 / T.a, T.c / (T.a * T.b)
    assert 4 * a1 * b1 * n == 1
    assert c1 * c1 == a1 * a1 + 2 * b1 * b1 - 2 * angle.sign * a1 * b1
    t = a1.numerator * b1.numerator
    cols, rows = t / a1, t / b1
    assert cols.denominator == 1 and rows.denominator == 1
    spec = TilingSpec(n, angle, (a1, b1), c1, t, int(cols), int(rows))
    assert spec.piece_count == 8 * n * t * t
    return spec


def verify_piece_count_form(count: int, n: int) -> int | None:
    """k with count = 2 n k^2, or None."""
    if count < 1 or n < 1:
        raise DomainError("count and n must be positive")
    if count % (2 * n):
        return None
    q = count // (2 * n)
    k = math.isqrt(q)
    return k if k * k == q else None
