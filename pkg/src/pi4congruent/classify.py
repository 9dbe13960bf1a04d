"""Verdicts: is n pi/4- or 3pi/4-congruent, and on what evidence."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from .arith import DomainError, factorize, is_prime, is_squarefree, squarefree_part
from .curve import Angle, Point, Triangle, TwistCurve, point_search, point_to_triangle
from .theta import basis_form

__all__ = [
    "Angle",
    "Outcome",
    "Verdict",
    "WaldspurgerCoefficient",
    "classify",
    "family_shortcuts",
    "root_number",
    "waldspurger_coefficient",
]


def root_number(n: int) -> int:
    """Root number of E_n, tabulated by the residue of the odd part mod 8."""
    if n == 0 or not is_squarefree(n):
        raise DomainError(f"{n} is not a nonzero square-free integer")
    m = abs(n) // 2 if n % 2 == 0 else abs(n)
    if n % 2:
        return 1 if m % 8 in (1, 3) else -1
    w_pos = 1 if m % 8 in (3, 5) else -1
    return w_pos if n > 0 else -w_pos


# (parity, angle) -> {residue of odd part mod 8: (basis form, multiplier_sq)}
DISPATCH: dict[tuple[str, Angle], dict[int, tuple[str, int]]] = {
    ("odd", Angle.THREE_QUARTER_PI): {1: ("f1", 1), 3: ("f2", 2)},
    ("odd", Angle.QUARTER_PI): {1: ("g1", 1), 3: ("g2", 2)},
    ("even", Angle.THREE_QUARTER_PI): {1: ("h1", 1), 7: ("h2", 8)},
    ("even", Angle.QUARTER_PI): {3: ("k1", 1), 5: ("k2", 2)},
}
FORCED_ZERO = "forced-zero"


@lru_cache(maxsize=32)
def _series(name: str, N: int):
    return basis_form(name, N).as_integers()


def basis_coefficient(name: str, k: int) -> int:
    """k-th coefficient of a basis form, from a cached sweep of size >= k."""
    N = 1024
    while N < k:
        N *= 2
    return int(_series(name, N)[k])


@dataclass(frozen=True)
class WaldspurgerCoefficient:
    n: int
    angle: Angle
    raw: int
    multiplier_sq: int
    branch: str

    @property
    def effective_sq(self) -> int:
        return self.raw * self.raw * self.multiplier_sq

    @property
    def forced_zero(self) -> bool:
        return self.branch == FORCED_ZERO


def waldspurger_coefficient(n: int, angle: Angle) -> WaldspurgerCoefficient:
    """The theta coefficient whose square governs L(E_{+-n}, 1)."""
    if n < 1 or not is_squarefree(n):
        raise DomainError(f"{n} is not a positive square-free integer")
    parity = "odd" if n % 2 else "even"
    m = n if n % 2 else n // 2
    hit = DISPATCH[(parity, angle)].get(m % 8)
    if hit is None:
        return WaldspurgerCoefficient(n, angle, 0, 0, FORCED_ZERO)
    name, mult = hit
    return WaldspurgerCoefficient(n, angle, basis_coefficient(name, m), mult, name)


class Outcome(enum.Enum):
    NOT_CONGRUENT = "NotCongruent"
    CONGRUENT = "Congruent"
    CONDITIONALLY_CONGRUENT = "ConditionallyCongruent"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    n: int
    angle: Angle
    outcome: Outcome
    squarefree_n: int
    root_number: int | None = None
    coefficient: WaldspurgerCoefficient | None = None
    triangle: Triangle | None = None
    point: Point = None
    rule: str | None = None
    hypothesis: str | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.outcome is Outcome.CONGRUENT:
            if self.triangle is None or not self.triangle.is_valid() or self.triangle.area != self.n:
                raise AssertionError("Congruent verdict without a valid witness triangle")
        if self.outcome is Outcome.NOT_CONGRUENT:
            has_coef = self.coefficient is not None and self.coefficient.raw != 0
            if not has_coef and self.rule is None:
                raise AssertionError("NotCongruent verdict without a certificate")


def _stroeker_top(n: int, angle: Angle) -> str | None:
    if angle is not Angle.QUARTER_PI or n % 2:
        return None
    p = n // 2
    if p % 8 in (3, 5) and is_prime(p):
        return f"Stroeker-Top: rank E_{n} = 0 for n = 2p with p = {p} = +-3 mod 8"
    return None


def shu_zhai_pattern(n: int) -> tuple[int | None, list[int]] | None:
    """Split odd n as p*q_1...q_r (p = 7 mod 8 optional, q_i = 3 mod 8), else None."""
    if n < 1 or n % 2 == 0:
        return None
    primes = factorize(n).primes if n > 1 else []
    sevens = [q for q in primes if q % 8 == 7]
    threes = [q for q in primes if q % 8 == 3]
    if len(sevens) + len(threes) != len(primes) or len(sevens) > 1:
        return None
    return (sevens[0] if sevens else None), threes


def family_shortcuts(n: int, angle: Angle) -> Verdict | None:
    """Unconditional non-congruence from the Stroeker-Top and Shu-Zhai theorems."""
    rule = _stroeker_top(n, angle)
    if rule is None:
        pat = shu_zhai_pattern(n)
        if pat is not None and pat[0] is None:
            r = len(pat[1])
            blocked = Angle.QUARTER_PI if r % 2 == 0 else Angle.THREE_QUARTER_PI
            if angle is blocked:
                rule = f"Shu-Zhai: rank E_{blocked.sign * n} = 0 for a product of {r} primes = 3 mod 8"
    if rule is None:
        return None
    return Verdict(n, angle, Outcome.NOT_CONGRUENT, n, root_number(angle.sign * n), rule=rule)


def shu_zhai_rank_one(n: int, angle: Angle) -> str | None:
    pat = shu_zhai_pattern(n)
    if pat is None or pat[0] is None:
        return None
    r = len(pat[1])
    target = Angle.THREE_QUARTER_PI if r % 2 == 0 else Angle.QUARTER_PI
    if angle is target:
        return f"Shu-Zhai: rank E_{angle.sign * n} = 1 unconditionally"
    return None


def classify(n: int, angle: Angle, search_bound: int = 100) -> Verdict:
    """Decision cascade: theta certificate, family rule, witness search, root number."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    s, k = squarefree_part(n)
    twist = angle.sign * s
    W = root_number(twist)
    coef = waldspurger_coefficient(s, angle)
    base = dict(n=n, angle=angle, squarefree_n=s, root_number=W, coefficient=coef)

    if not coef.forced_zero and coef.raw != 0:
        return Verdict(
            outcome=Outcome.NOT_CONGRUENT,
            rule=f"L(E_{twist}, 1) != 0 since coefficient {coef.branch}[{s if s % 2 else s // 2}] = {coef.raw}",
            **base,
        )
    short = family_shortcuts(s, angle)
    if short is not None:
        return Verdict(outcome=Outcome.NOT_CONGRUENT, rule=short.rule, **base)

    P = point_search(TwistCurve(twist), search_bound)
    if P is not None:
        T = point_to_triangle(TwistCurve(twist), P).scaled(k)
        return Verdict(outcome=Outcome.CONGRUENT, triangle=T, point=P, rule="explicit point on E_%d" % twist, **base)

    notes = []
    extra = shu_zhai_rank_one(s, angle)
    if extra:
        notes.append(extra + "; no explicit point within the search bound")
    if W == -1:
        return Verdict(
            outcome=Outcome.CONDITIONALLY_CONGRUENT,
            hypothesis="BSD",
            rule=f"root number of E_{twist} is -1",
            notes=tuple(notes),
            **base,
        )
    notes.append(f"coefficient vanishes with root number +1: rank E_{twist} is even, possibly >= 2")
    return Verdict(outcome=Outcome.UNKNOWN, notes=tuple(notes), **base)
