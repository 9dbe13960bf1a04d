"""Explicit families of pi/4- and 3pi/4-congruent numbers with witnesses."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import DomainError, is_prime, is_squarefree, squarefree_part
from .curve import Angle, Point, Triangle, TwistCurve, point_to_triangle


@dataclass(frozen=True)
class ParamPair:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise DomainError("r and s must be positive")
        if math.gcd(self.r, self.s) != 1:
            raise DomainError(f"r = {self.r} and s = {self.s} are not coprime")


@dataclass(frozen=True)
class FamilyPoint:
    """A point on d*y^2 = x^3 + a2 x^2 + a4 x + a6."""

    curve: tuple[int, int, int, int]  # (d, a2, a4, a6)
    x: Fraction
    y: Fraction
    provenance: str

    def verify(self) -> bool:
        d, a2, a4, a6 = self.curve
        x, y = self.x, self.y
        return d * y * y == x**3 + a2 * x * x + a4 * x + a6


def binary_value(r: int, s: int, angle: Angle) -> int:
    """rs(r^2 + 2rs - s^2) for pi/4, rs(r^2 - 2rs - s^2) for 3pi/4."""
    return r * s * (r * r + 2 * angle.sign * r * s - s * s)


def parametrized_value(pair: ParamPair, angle: Angle) -> tuple[int, int]:
    value = binary_value(pair.r, pair.s, angle)
    if value <= 0:
        raise DomainError(f"({pair.r}, {pair.s}) gives non-positive value {value} for {angle}")
    return value, squarefree_part(value)[0]


def witness_point(r: int, s: int, angle: Angle) -> tuple[int, Point]:
    """The point on E_{+-n} coming from (r/s, 1/s^2) on value*y^2 = x^3 +- 2x^2 - x.

    Returns (square-free n, point on E_{angle.sign * n}).
    """
    value = binary_value(r, s, angle)
    if value <= 0:
        raise DomainError(f"({r}, {s}) gives non-positive value for {angle}")
    n, k = squarefree_part(value)
    X, Y = Fraction(r, s), Fraction(k, s * s)
    return n, (n * X, n * n * Y)


def witness_triangle(r: int, s: int, angle: Angle) -> Triangle:
    """Triangle of area rs(r^2 +- 2rs - s^2) itself (not reduced mod squares)."""
    value = binary_value(r, s, angle)
    n, P = witness_point(r, s, angle)
    T = point_to_triangle(TwistCurve(angle.sign * n), P)
    return T.scaled(squarefree_part(value)[1])


def residue_family(a: int, m: int, count: int) -> list[int]:
    """n_u = u(u m^2 + 1)(2u^2 m^4 + 4u m^2 + 1) for the first `count` u = a mod m, u >= 1."""
    if m <= 1:
        raise DomainError("m must exceed 1")
    if a < 0 or count < 1:
        raise DomainError("need a >= 0 and count >= 1")
    u = a % m or m
    out = []
    while len(out) < count:
        m2 = m * m
        out.append(u * (u * m2 + 1) * (2 * u * u * m2 * m2 + 4 * u * m2 + 1))
        u += m
    return out


def residue_family_witness(u: int, m: int) -> Triangle:
    """Witness of area n_u, via (r, s) = (u m^2 + 1, u m^2) and scaling by 1/m."""
    r, s = u * m * m + 1, u * m * m
    return witness_triangle(r, s, Angle.QUARTER_PI).scaled(Fraction(1, m))


def squarefree_class_search(a: int, m: int, bound: int) -> list[tuple[int, int, int]]:
    """Square-free positive F(u, v) = uv(u^2 m^4 + 2uv m^2 - v^2) with u = a, v = -1 (mod m).

    Returns sorted (value, u, v) triples over 1 <= u, v <= bound, one per value.
    """
    if m <= 1:
        raise DomainError("m must exceed 1")
    if not is_squarefree(math.gcd(a, m)):
        raise DomainError(f"gcd({a}, {m}) is not square-free")
    found: dict[int, tuple[int, int]] = {}
    m2 = m * m
    for u in range(a % m or m, bound + 1, m):
        for v in range(m - 1, bound + 1, m):
            val = u * v * (u * u * m2 * m2 + 2 * u * v * m2 - v * v)
            if val > 0 and val not in found and is_squarefree(val):
                found[val] = (u, v)
    return sorted((val, u, v) for val, (u, v) in found.items())


@dataclass(frozen=True)
class ShuZhaiClaim:
    n: int
    angle: Angle
    congruent: bool
    rank: int
    item: int

    def __str__(self):
        neg = "" if self.congruent else "not "
        return f"{self.n} is {neg}{self.angle}-congruent (rank E_{self.angle.sign * self.n} = {self.rank})"


def shu_zhai(p: int, qs: list[int]) -> list[ShuZhaiClaim]:
    """Instantiate the rank-0 / rank-1 consequences for p = 7 mod 8 and q_i = 3 mod 8."""
    problems = []
    if not is_prime(p) or p % 8 != 7:
        problems.append(f"p = {p} must be a prime = 7 mod 8")
    for q in qs:
        if not is_prime(q) or q % 8 != 3:
            problems.append(f"q = {q} must be a prime = 3 mod 8")
        if q == p:
            problems.append(f"q = {q} equals p")
    if len(set(qs)) != len(qs):
        problems.append("the q_i must be distinct")
    if problems:
        raise DomainError("; ".join(problems))
    prod = math.prod(qs)
    r = len(qs)
    if r % 2 == 0:
        return [
            ShuZhaiClaim(prod, Angle.QUARTER_PI, False, 0, 1),
            ShuZhaiClaim(p * prod, Angle.THREE_QUARTER_PI, True, 1, 3),
        ]
    return [
        ShuZhaiClaim(prod, Angle.THREE_QUARTER_PI, False, 0, 2),
        ShuZhaiClaim(p * prod, Angle.QUARTER_PI, True, 1, 4),
    ]


# rank >= 2 families ---------------------------------------------------------

J_CURVE = (-3024, 58752)  # E_1 in short Weierstrass form y^2 = x^3 - 3024x + 58752


def stewart_top_d(t) -> Fraction:
    t = Fraction(t)
    return (
        2**6 * 3**3
        * (t * t - 8 * t - 2)
        * (t * t + t + 1)
        * (2 * t * t - 4 * t - 7)
        * (7 * t * t + 10 * t + 1)
    )


def stewart_top_family(t) -> tuple[FamilyPoint, FamilyPoint]:
    """Points M_t, N_t on d_t y^2 = x^3 - 3024x + 58752 (checked exactly)."""
    t = Fraction(t)
    d = stewart_top_d(t)
    if d == 0:
        raise DomainError(f"d_t vanishes at t = {t}")
    if d.denominator != 1:
        raise DomainError("stewart_top_family expects integer t")
    q = t * t + t + 1
    y = 1 / (q * q)
    curve = (int(d), 0, *J_CURVE)
    M = FamilyPoint(curve, (12 * t * t + 120 * t + 48) / q, y, "stewart_top")
    N = FamilyPoint(curve, (48 * t * t - 24 * t - 60) / q, y, "stewart_top")
    if not (M.verify() and N.verify()):
        raise AssertionError(f"Stewart-Top points fail to verify at t = {t}")
    return M, N


def eisenstein_witness() -> tuple[int, int]:
    """(a, c) with a^2 + ac + c^2 = 3024."""
    return 60, -12


@dataclass(frozen=True)
class Rank2Member:
    t: int
    n_t: int
    P: FamilyPoint
    Q: FamilyPoint
    squarefree_n: int
    P_on_E: Point
    Q_on_E: Point
    weakly_independent: bool


def rank2_value(t: int) -> int:
    return 2 * (t * t + 1) * (t**4 + 6 * t * t + 1)


def weak_independence(C: TwistCurve, P: Point, Q: Point, span: int = 5) -> bool:
    """i*P + j*Q != O for all (i, j) in [-span, span]^2 minus the origin.

    Only a small-combination check; true independence needs heights.
    """
    multP = {i: C.multiply(i, P) for i in range(-span, span + 1)}
    multQ = {j: C.multiply(j, Q) for j in range(-span, span + 1)}
    for i in range(-span, span + 1):
        for j in range(-span, span + 1):
            if (i, j) != (0, 0) and C.add(multP[i], multQ[j]) is None:
                return False
    return True


def rank2_family(t: int, check_span: int = 5) -> Rank2Member:
    """n_t = 2(t^2+1)(t^4+6t^2+1) with P_t, Q_t on n_t y^2 = x^3 + 2x^2 - x."""
    if t in (0, 1, -1):
        raise DomainError(f"t = {t} is degenerate")
    t = int(t)
    n = rank2_value(t)
    curve = (n, 2, -1, 0)
    P = FamilyPoint(curve, Fraction(t * t + 1, 2), Fraction(1, 4), "rank2")
    Q = FamilyPoint(curve, Fraction(t * t + 1, 2 * t * t), Fraction(1, 4 * t**3), "rank2")
    if not (P.verify() and Q.verify()):
        raise AssertionError(f"rank-2 family points fail to verify at t = {t}")
    s, k = squarefree_part(n)
    C = TwistCurve(s)

    def to_E(F: FamilyPoint) -> Point:
        # n y^2 = f(x)  ->  s (k y)^2 = f(x)  ->  (s x, s^2 k y) on E_s
        return (s * F.x, s * s * k * F.y)

    PE, QE = to_E(P), to_E(Q)
    assert C.on_curve(PE) and C.on_curve(QE)
    return Rank2Member(t, n, P, Q, s, PE, QE, weak_independence(C, PE, QE, check_span))
