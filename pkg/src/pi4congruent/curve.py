"""Exact arithmetic on the twists E_n: y^2 = x^3 + 2n x^2 - n^2 x.

Points are ``None`` (the point at infinity) or pairs of Fractions.  Positive
n is the pi/4 side, negative n the 3pi/4 side.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import DomainError, factorize, is_prime, is_squarefree

Point = tuple[Fraction, Fraction] | None
INF: Point = None


class Angle(enum.Enum):
    QUARTER_PI = "pi/4"
    THREE_QUARTER_PI = "3pi/4"

    @property
    def sign(self) -> int:
        return 1 if self is Angle.QUARTER_PI else -1

    @classmethod
    def parse(cls, text: str) -> "Angle":
        key = text.strip().lower().replace("π", "pi").replace(" ", "")
        for a in cls:
            if a.value == key:
                return a
        raise ValueError(f"angle must be 'pi/4' or '3pi/4', got {text!r}")

    def __str__(self):
        return self.value


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class Triangle:
    """Sides (a, b*sqrt(2), c); the angle between the first two is pi/4 or 3pi/4."""

    a: Fraction
    b: Fraction
    c: Fraction
    angle: Angle = Angle.QUARTER_PI

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @property
    def area(self) -> Fraction:
        return self.a * self.b / 2

    def is_valid(self) -> bool:
        a, b, c = self.a, self.b, self.c
        eps = self.angle.sign
        return a > 0 and b > 0 and c > 0 and c * c == a * a + 2 * b * b - 2 * eps * a * b

    def scaled(self, k) -> "Triangle":
        return Triangle(self.a * k, self.b * k, self.c * k, self.angle)

    def sides_text(self) -> str:
        return f"({self.a}, {self.b}*sqrt(2), {self.c})"


@dataclass(frozen=True)
class TorsionReport:
    structure: str
    order: int
    evidence: tuple[tuple[int, int], ...]

    @property
    def is_z2(self) -> bool:
        return self.structure == "Z/2Z"


def count_points(n: int, p: int) -> int:
    """#E_n(F_p) for an odd prime p, including infinity (valid at any odd p)."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    xs = np.arange(p, dtype=np.int64)
    A, B = (2 * n) % p, (-n * n) % p
    fx = (((xs * xs) % p + A * xs + B) % p) * xs % p
    is_sq = np.zeros(p, dtype=bool)
    is_sq[(xs * xs) % p] = True
    affine = int(np.count_nonzero(fx == 0)) + 2 * int(np.count_nonzero(is_sq[fx] & (fx != 0)))
    return affine + 1


@dataclass(frozen=True)
class TwistCurve:
    n: int
    _check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.n == 0:
            raise DomainError("twist parameter must be nonzero")
        if self._check and not is_squarefree(self.n):
            raise DomainError(f"{self.n} is not square-free; reduce it with squarefree_part first")

    @property
    def A(self) -> int:
        return 2 * self.n

    @property
    def B(self) -> int:
        return -self.n * self.n

    @property
    def angle(self) -> Angle:
        return Angle.QUARTER_PI if self.n > 0 else Angle.THREE_QUARTER_PI

    def rhs(self, x: Fraction) -> Fraction:
        return x * (x * x + self.A * x + self.B)

    def __str__(self):
        return f"E_{self.n}: y^2 = x^3 + {self.A}x^2 - {self.n * self.n}x"

    # group law ------------------------------------------------------------

    def on_curve(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == self.rhs(x)

    def _require(self, *pts: Point) -> None:
        for P in pts:
            if not self.on_curve(P):
                raise DomainError(f"{P} is not on {self}")

    def negate(self, P: Point) -> Point:
        return None if P is None else (P[0], -P[1])

    def add(self, P: Point, Q: Point) -> Point:
        self._require(P, Q)
        return self._add(P, Q)

    def _add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if y1 != y2 or y1 == 0:
                return None
            lam = (3 * x1 * x1 + 2 * self.A * x1 + self.B) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - self.A - x1 - x2
        y3 = -(y1 + lam * (x3 - x1))
        return (x3, y3)

    def multiply(self, k: int, P: Point) -> Point:
        self._require(P)
        if k < 0:
            return self.negate(self.multiply(-k, P))
        result, addend = None, P
        while k:
            if k & 1:
                result = self._add(result, addend)
            addend = self._add(addend, addend)
            k >>= 1
        return result

    def two_torsion(self) -> Point:
        return (Fraction(0), Fraction(0))

    # torsion --------------------------------------------------------------

    def good_primes(self, count: int):
        p = 3
        while count:
            if self.n % p and is_prime(p):
                yield p
                count -= 1
            p += 2

    def torsion(self, prime_budget: int = 10) -> TorsionReport:
        """Torsion subgroup from 2-descent facts plus reduction-order gcds.

        The 2-primary part is exactly Z/2Z: the only rational root of the
        cubic is 0, and (0, 0) is not a double because -n^2 is not a square.
        The odd part injects into every good reduction, so it is bounded by
        the odd part of the gcd of #E(F_p).
        """
        if prime_budget < 5:
            raise DomainError("prime_budget must be >= 5")
        evidence = []
        g = 0
        for p in self.good_primes(prime_budget):
            order = count_points(self.n, p)
            evidence.append((p, order))
            g = math.gcd(g, order)
        odd = g
        while odd % 2 == 0:
            odd //= 2
        assert rational_roots([1, self.A, self.B, 0]) == [0]
        if odd == 1:
            return TorsionReport("Z/2Z", 2, tuple(evidence))
        return TorsionReport(
            f"other: Z/2Z x (odd part dividing {odd})", 2 * odd, tuple(evidence)
        )


def _horner(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def rational_roots(poly: list[int]) -> list[Fraction]:
    """Distinct rational roots of an integer polynomial (coefficients highest first)."""
    coeffs = [int(c) for c in poly]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if not coeffs:
        raise DomainError("the zero polynomial has no finite root set")
    roots: set[Fraction] = set()
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        roots.add(Fraction(0))
    if len(coeffs) > 1:
        lead, const = coeffs[0], coeffs[-1]
        nums = factorize(const).divisors()
        dens = factorize(lead).divisors()
        for p in nums:
            for q in dens:
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _horner(coeffs, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


# triangles ----------------------------------------------------------------


def point_to_triangle(C: TwistCurve, P: Point) -> Triangle:
    if P is None or P[1] == 0:
        raise DomainError("2-torsion point carries no triangle")
    C._require(P)
    x, y = P
    n = C.n
    a = (x * x + 2 * n * x - n * n) / y
    if a < 0:
        y = -y
        a = -a
    b = 2 * n * x / y * C.angle.sign
    c = (x * x + n * n) / abs(y)
    T = Triangle(a, b, c, C.angle)
    if not T.is_valid() or T.area != abs(n):
        raise AssertionError(f"triangle construction failed for {P} on {C}")
    return T


def triangle_to_point(C: TwistCurve, T: Triangle) -> Point:
    if T.angle is not C.angle or not T.is_valid() or T.a * T.b != 2 * abs(C.n):
        raise DomainError(f"{T} is not a {C.angle} triangle of area {abs(C.n)}")
    a, c = T.a, T.c
    x = (a * c + a * a - 2 * C.n) / 2
    P = (x, a * x)
    if not C.on_curve(P) or P[1] == 0:
        raise AssertionError("triangle_to_point produced an invalid point")
    return P


# point search ---------------------------------------------------------------

_SQUARE_TESTS = tuple(
    (m, np.isin(np.arange(m), (np.arange(m) ** 2) % m)) for m in (64, 63, 65, 11, 17, 19, 23)
)


def _level_pairs(h: int) -> tuple[np.ndarray, np.ndarray]:
    """Coprime (u, v), v >= 1, with max(|u|, v) == h, in a fixed order."""
    us = np.arange(-h, h + 1, dtype=np.int64)
    vs_top = np.full(us.size, h, dtype=np.int64)
    side_v = np.arange(1, h, dtype=np.int64)
    u = np.concatenate([us, np.full(side_v.size, -h), np.full(side_v.size, h)])
    v = np.concatenate([vs_top, side_v, side_v])
    order = np.lexsort((u, v))
    u, v = u[order], v[order]
    keep = np.gcd(u, v) == 1
    return u[keep], v[keep]


def _square_candidates(C: TwistCurve, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Boolean mask of (U, V) for which V*(U^3 + A U^2 V + B U V^2) may be a square."""
    mask = np.ones(U.size, dtype=bool)
    for m, sq in _SQUARE_TESTS:
        u, v = U % m, V % m
        A, B = C.A % m, C.B % m
        g = (u * ((u * u) % m + A * u % m * v % m + B * v % m * v % m)) % m
        mask &= sq[(g * v) % m]
    return mask


def _exact_point(C: TwistCurve, U: int, V: int) -> Point:
    val = V * (U**3 + C.A * U * U * V + C.B * U * V * V)
    if val <= 0:
        return None
    r = math.isqrt(val)
    if r * r != val:
        return None
    P = (Fraction(U, V), Fraction(r, V * V))
    return P


def point_search(C: TwistCurve, height_bound: int) -> Point:
    """First point with y != 0 and x in {u/v, n*u/v : max(|u|, v) <= bound}.

    Levels are scanned by increasing max(|u|, v); within a level, x = n*u/v
    (the image of parametrised points (u/v, 1/v^2) on n y^2 = x^3 +- 2x^2 - x)
    comes before x = u/v.  Returns None when nothing is found; that is not a
    proof that no point exists.
    """
    if height_bound < 1:
        raise DomainError("height_bound must be >= 1")
    for h in range(1, height_bound + 1):
        u, v = _level_pairs(h)
        for U, V in ((C.n * u, v), (u, v)):
            mask = _square_candidates(C, U, V)
            for Ui, Vi in zip(U[mask].tolist(), V[mask].tolist()):
                P = _exact_point(C, Ui, Vi)
                if P is not None:
                    return P
    return None
