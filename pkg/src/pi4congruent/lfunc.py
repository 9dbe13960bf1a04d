"""Numeric checks: Frobenius traces, conductors, real periods, L(E_n, 1).

Floating point is confined to this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import DomainError, is_prime, is_squarefree, primes_up_to
from .classify import root_number, waldspurger_coefficient
from .curve import Angle, count_points

DEFAULT_TERM_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


def _check_twist(n: int) -> None:
    if n == 0 or not is_squarefree(n):
        raise DomainError(f"{n} is not a nonzero square-free integer")


def odd_part(n: int) -> int:
    n = abs(n)
    while n % 2 == 0:
        n //= 2
    return n


def ap(n: int, p: int) -> int:
    """Trace of Frobenius of E_n at a good odd prime p."""
    if p == 2 or not is_prime(p) or n % p == 0:
        raise DomainError(f"E_{n} has bad reduction at {p} (or {p} is not an odd prime)")
    a = p + 1 - count_points(n, p)
    assert a * a <= 4 * p, "Hasse bound violated"
    return a


def conductor(n: int) -> int:
    """2^7 times the square of the odd part of n."""
    _check_twist(n)
    return 128 * odd_part(n) ** 2


@lru_cache(maxsize=256)
def _coefficients(n: int, K: int) -> np.ndarray:
    coeffs = np.zeros(K + 1, dtype=np.int64)
    coeffs[1] = 1
    # smallest-prime-factor sieve
    spf = np.zeros(K + 1, dtype=np.int64)
    for p in primes_up_to(K).tolist():
        sl = spf[p::p]
        sl[sl == 0] = p
    prime_power: dict[int, int] = {}
    for p in primes_up_to(K).tolist():
        # p = 2 and p | n are additive places, where a_{p^r} = a_p^r = 0
        bad = p == 2 or n % p == 0
        a = 0 if bad else ap(n, p)
        prev, cur, q = 1, a, p
        while q <= K:
            prime_power[q] = cur
            prev, cur = cur, a * cur if bad else a * cur - p * prev
            q *= p
    for k in range(2, K + 1):
        p = int(spf[k])
        q, m = p, k // p
        while m % p == 0:
            q *= p
            m //= p
        coeffs[k] = prime_power[q] * coeffs[m]
    coeffs.setflags(write=False)
    return coeffs


def coefficient_table(n: int, K: int) -> list[int]:
    """a_1..a_K of L(E_n, s) (index 0 unused and set to 0)."""
    _check_twist(n)
    return [int(v) for v in _coefficients(n, K)]


@dataclass(frozen=True)
class LValueResult:
    n: int
    value: float
    truncation_bound: float
    terms_used: int
    conductor_used: int
    root_number_used: int
    note: str = ""


def _terms_needed(N: int, target_error: float) -> int:
    c = 2 * math.pi / math.sqrt(N)
    # 2 * sum_{k > K} e^{-ck} = 2 e^{-c(K+1)} / (1 - e^{-c})
    K = math.log(2 / (target_error * (1 - math.exp(-c)))) / c - 1
    return max(1, math.ceil(K))


def l_value_at_1(
    n: int,
    target_error: float = 1e-10,
    *,
    conductor_override: int | None = None,
    budget: int = DEFAULT_TERM_BUDGET,
) -> LValueResult:
    """L(E_n, 1) by the rapidly converging series (exactly 0 when W = -1)."""
    if target_error <= 0:
        raise DomainError("target_error must be positive")
    w = root_number(n)
    N = conductor(n) if conductor_override is None else conductor_override
    if w == -1:
        return LValueResult(n, 0.0, 0.0, 0, N, -1, "root number -1 forces L(E,1) = 0")
    K = _terms_needed(N, target_error)
    if K > budget:
        raise BudgetExceeded(f"L(E_{n}, 1) needs {K} terms, budget is {budget}")
    a = _coefficients(n, K)[1 : K + 1].astype(np.float64)
    k = np.arange(1, K + 1, dtype=np.float64)
    c = 2 * math.pi / math.sqrt(N)
    value = 2.0 * float(np.sum(a / k * np.exp(-c * k)))
    tail = 2 * math.exp(-c * (K + 1)) / (1 - math.exp(-c))
    return LValueResult(n, value, tail, K, N, w)


def functional_equation_defect(n: int, N: int | None = None, A: float = 1.2, K: int | None = None) -> float:
    """|L_A(1) - L_1(1)| for the one-parameter family of series for L(E, 1).

    sum a_k/k (e^{-2pi k A/sqrt N} + w e^{-2pi k/(A sqrt N)}) is independent of
    A only when N and w are the true conductor and root number.
    """
    N = conductor(n) if N is None else N
    w = root_number(n)
    if K is None:
        K = _terms_needed(N, 1e-13) * max(2, math.ceil(A)) * 2
    a = _coefficients(n, K)[1 : K + 1].astype(np.float64)
    k = np.arange(1, K + 1, dtype=np.float64)
    s = math.sqrt(N)

    def series(t):
        return float(np.sum(a / k * (np.exp(-2 * math.pi * k * t / s) + w * np.exp(-2 * math.pi * k / (t * s)))))

    return abs(series(A) - series(1.0))


def cubic_roots(n: int) -> tuple[float, float, float]:
    """Real roots e1 > e2 > e3 of x^3 + 2n x^2 - n^2 x."""
    r = math.sqrt(2)
    return tuple(sorted((0.0, n * (-1 + r), n * (-1 - r)), reverse=True))


def agm(a: float, b: float) -> float:
    while abs(a - b) > 1e-15 * abs(a):
        a, b = (a + b) / 2, math.sqrt(a * b)
    return (a + b) / 2


def real_period(n: int) -> float:
    """Least positive real period of E_n for the differential dx/(2y).

    Not multiplied by the number of real components; this is the
    normalisation under which L(E_-1, 1)/Omega = 1/2.
    """
    _check_twist(n)
    e1, e2, e3 = cubic_roots(n)
    return math.pi / agm(math.sqrt(e1 - e3), math.sqrt(e1 - e2))


# Waldspurger checks -----------------------------------------------------------

REFERENCE_TWIST = {
    ("odd", Angle.THREE_QUARTER_PI): -1,
    ("odd", Angle.QUARTER_PI): 1,
    ("even", Angle.THREE_QUARTER_PI): -2,
    ("even", Angle.QUARTER_PI): 6,
}


@dataclass(frozen=True)
class WaldspurgerCheck:
    n: int
    angle: Angle
    twist: int
    coefficient: int
    multiplier_sq: int
    branch: str
    predicted: float
    computed: float
    ok: bool


def predicted_l_value(n: int, angle: Angle, coefficient: int, multiplier_sq: int) -> float:
    """Reference constant times coefficient^2 / sqrt(odd part)."""
    m = odd_part(n)
    parity = "odd" if n % 2 else "even"
    ref = l_value_at_1(REFERENCE_TWIST[(parity, angle)], 1e-13).value
    if parity == "even" and angle is Angle.QUARTER_PI:
        ref *= math.sqrt(3)
    return ref * coefficient * coefficient * multiplier_sq / math.sqrt(m)


def verify_waldspurger(n: int, angle: Angle, tol: float = 1e-5) -> WaldspurgerCheck:
    """Compare L(E_{+-n}, 1) with the theta-coefficient prediction."""
    w = waldspurger_coefficient(n, angle)
    twist = angle.sign * n
    computed = l_value_at_1(twist, 1e-12).value
    predicted = predicted_l_value(n, angle, w.raw, w.multiplier_sq) if w.branch != "forced-zero" else 0.0
    return WaldspurgerCheck(
        n, angle, twist, w.raw, w.multiplier_sq, w.branch, predicted, computed,
        abs(predicted - computed) < tol,
    )
