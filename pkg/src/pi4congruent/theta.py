"""Positive-definite ternary quadratic forms and their theta series.

A form [a, b, c, r, s, t] is Q = a x^2 + b y^2 + c z^2 + r yz + s xz + t xy.
Lattice points with Q <= N are enumerated with exact integer bounds obtained
by completing the square twice, so no vector can be missed.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .arith import DomainError, class_number, is_prime


class ConsistencyError(RuntimeError):
    """A hard-coded identity failed to hold (signals an enumeration or table bug)."""


@dataclass(frozen=True)
class TernaryForm:
    coeffs: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != 6:
            raise DomainError("a ternary form needs six coefficients")
        G = self.gram
        m1 = G[0][0]
        m2 = G[0][0] * G[1][1] - G[0][1] ** 2
        if m1 <= 0 or m2 <= 0 or self.det_gram <= 0:
            raise DomainError(f"form {list(self.coeffs)} is not positive definite")

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        return cls(tuple(int(v) for v in text.replace("[", "").replace("]", "").split(",")))

    @property
    def gram(self) -> tuple[tuple[int, int, int], ...]:
        """2A, where Q(v) = v^T A v."""
        a, b, c, r, s, t = self.coeffs
        return ((2 * a, t, s), (t, 2 * b, r), (s, r, 2 * c))

    @property
    def det_gram(self) -> int:
        (g00, g01, g02), (_, g11, g12), (_, _, g22) = self.gram
        return (
            g00 * (g11 * g22 - g12 * g12)
            - g01 * (g01 * g22 - g12 * g02)
            + g02 * (g01 * g12 - g11 * g02)
        )

    def __call__(self, x, y, z):
        a, b, c, r, s, t = self.coeffs
        return a * x * x + b * y * y + c * z * z + r * y * z + s * x * z + t * x * y

    def __str__(self):
        return "[" + ", ".join(str(v) for v in self.coeffs) + "]"


def _isqrt_vec(v: np.ndarray) -> np.ndarray:
    """Exact floor(sqrt(v)) for a non-negative int64 array (v < 2**53)."""
    r = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    r = np.where(r * r > v, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= v, r + 1, r)
    return r


def _bounds(Q: TernaryForm):
    a, b, c, r, s, t = Q.coeffs
    B11 = 4 * a * b - t * t
    B12 = 2 * a * r - s * t
    B22 = 4 * a * c - s * s
    D3 = B11 * B22 - B12 * B12
    return B11, B12, B22, D3


def _z_range(Q: TernaryForm, N: int) -> range:
    a = Q.coeffs[0]
    B11, _, _, D3 = _bounds(Q)
    zmax = math.isqrt(4 * a * B11 * N // D3)
    return range(-zmax, zmax + 1)


def _slab(Q: TernaryForm, N: int, z: int):
    """All lattice vectors (x, y, z) with this z and Q <= N, plus their values."""
    a, b, c, r, s, t = Q.coeffs
    B11, B12, B22, D3 = _bounds(Q)
    R1 = B11 * 4 * a * N - D3 * z * z
    if R1 < 0:
        return None
    w = math.isqrt(R1)
    # B11*y + B12*z in [-w, w]
    ylo = -((w + B12 * z) // B11)
    yhi = (w - B12 * z) // B11
    if ylo > yhi:
        return None
    ys = np.arange(ylo, yhi + 1, dtype=np.int64)
    P2 = B11 * ys * ys + 2 * B12 * ys * z + B22 * z * z
    R2 = 4 * a * N - P2
    keep = R2 >= 0
    ys, R2 = ys[keep], R2[keep]
    u = _isqrt_vec(R2)
    lin = t * ys + s * z
    # 2a*x + lin in [-u, u]
    xlo = -((u + lin) // (2 * a))
    xhi = (u - lin) // (2 * a)
    cnt = np.maximum(xhi - xlo + 1, 0)
    total = int(cnt.sum())
    if total == 0:
        return None
    offs = np.repeat(np.cumsum(cnt) - cnt, cnt)
    xs = np.repeat(xlo, cnt) + np.arange(total, dtype=np.int64) - offs
    yy = np.repeat(ys, cnt)
    vals = a * xs * xs + b * yy * yy + c * z * z + r * yy * z + s * xs * z + t * xs * yy
    ok = vals <= N
    return xs[ok], yy[ok], vals[ok]


def _workers() -> int:
    return max(1, int(os.environ.get("PI4CONG_THREADS", "1")))


def _count_slabs(Q: TernaryForm, N: int, zs) -> np.ndarray:
    out = np.zeros(N + 1, dtype=np.int64)
    for z in zs:
        got = _slab(Q, N, z)
        if got is not None:
            out += np.bincount(got[2], minlength=N + 1)
    return out


def _check_bound(N: int) -> None:
    if N < 1:
        raise DomainError("theta precision N must be >= 1")


@lru_cache(maxsize=64)
def _raw_counts(Q: TernaryForm, N: int, workers: int) -> np.ndarray:
    zs = list(_z_range(Q, N))
    if workers <= 1 or len(zs) < 2 * workers:
        out = _count_slabs(Q, N, zs)
    else:
        chunks = [zs[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(workers) as pool:
            out = sum(pool.map(lambda ch: _count_slabs(Q, N, ch), chunks))
    out.setflags(write=False)
    return out


def lattice_vectors(Q: TernaryForm, N: int) -> np.ndarray:
    """All integer vectors v with Q(v) <= N, as an (k, 3) array."""
    rows = []
    for z in _z_range(Q, N):
        got = _slab(Q, N, z)
        if got is not None:
            xs, ys, _ = got
            rows.append(np.column_stack([xs, ys, np.full_like(xs, z)]))
    if not rows:
        return np.zeros((0, 3), dtype=np.int64)
    return np.concatenate(rows)


def vectors_of_norm(Q: TernaryForm, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 3), dtype=np.int64)
    v = lattice_vectors(Q, n)
    return v[Q(v[:, 0], v[:, 1], v[:, 2]) == n]


def representation_count(Q: TernaryForm, n: int) -> int:
    """r(Q, n): the number of integer triples with Q(x, y, z) = n."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return 1
    return int(_raw_counts(Q, n, 1)[n])


@dataclass(frozen=True)
class ThetaSeries:
    """Coefficients 0..N stored as integer numerators over a common denominator."""

    precision: int
    numerators: np.ndarray = field(repr=False)
    denominator: int = 1

    def __getitem__(self, n: int) -> Fraction | int:
        if self.denominator == 1:
            return int(self.numerators[n])
        return Fraction(int(self.numerators[n]), self.denominator)

    def __len__(self):
        return self.precision + 1

    @property
    def coefficients(self) -> list:
        return [self[n] for n in range(self.precision + 1)]

    def is_integral(self) -> bool:
        return self.denominator == 1 or not np.any(self.numerators % self.denominator)

    def as_integers(self) -> np.ndarray:
        if not self.is_integral():
            raise ConsistencyError("theta combination has non-integral coefficients")
        return self.numerators // self.denominator

    def support(self) -> list[int]:
        return [int(n) for n in np.flatnonzero(self.numerators)]


def theta_series(Q: TernaryForm, N: int) -> ThetaSeries:
    """Raw theta series sum r(Q, n) q^n through q^N, from one lattice sweep."""
    _check_bound(N)
    return ThetaSeries(N, _raw_counts(Q, N, _workers()))


FORM_TABLE: dict[str, tuple[int, tuple[int, ...], tuple[int, ...]]] = {
    "f1": (2, (1, 8, 128, 0, 0, 0), (4, 8, 33, 0, -4, 0)),
    "f2": (2, (3, 5, 19, -2, -2, -2), (5, 6, 10, -4, -4, 0)),
    "g1": (2, (1, 10, 26, -4, 0, 0), (4, 9, 10, -8, 0, -4)),
    "g2": (2, (3, 8, 43, 0, -2, 0), (8, 11, 12, -4, 0, 0)),
    "h1": (2, (128, 16, 1, 0, 0, 0), (33, 16, 4, 0, 4, 0)),
    "h2": (2, (47, 28, 7, 4, 6, 20), (28, 23, 15, 10, 12, 4)),
    "h2alt": (4, (7, 7, 44, -4, -4, -2), (12, 15, 15, 14, 4, 4)),
    "k1": (4, (3, 3, 128, 0, 0, -2), (4, 8, 35, -8, -4, 0)),
    "k2": (4, (5, 5, 44, 4, 4, 2), (8, 12, 13, -4, -8, 0)),
}
BASIS_IDS = tuple(FORM_TABLE)

# residue class mod 8 carrying each basis form's support
SUPPORT_RESIDUE = {
    "f1": 1, "f2": 3, "g1": 1, "g2": 3, "h1": 1, "h2": 7, "h2alt": 7, "k1": 3, "k2": 5,
}


def basis_form(name: str, N: int, table=None) -> ThetaSeries:
    """One of the named weight-3/2 forms as (theta_1 - theta_2)/d, integral."""
    _check_bound(N)
    table = FORM_TABLE if table is None else table
    if name not in table:
        raise DomainError(f"unknown basis form {name!r}; choose from {sorted(table)}")
    d, q1, q2 = table[name]
    diff = theta_series(TernaryForm(q1), N).numerators - theta_series(TernaryForm(q2), N).numerators
    series = ThetaSeries(N, diff, d)
    ints = series.as_integers()
    ints.setflags(write=False)
    return ThetaSeries(N, ints)


@dataclass(frozen=True)
class AutomorphGroup:
    form: TernaryForm
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def order(self) -> int:
        return len(self.matrices)

    def arrays(self) -> list[np.ndarray]:
        return [np.array(m, dtype=np.int64) for m in self.matrices]


def _key(M: np.ndarray):
    return tuple(tuple(int(v) for v in row) for row in M)


def automorphs(Q: TernaryForm) -> AutomorphGroup:
    """All integral U with U^T G U = G, found from equal-norm images of e1, e2, e3."""
    G = np.array(Q.gram, dtype=np.int64)
    a, b, c = Q.coeffs[:3]
    S = [vectors_of_norm(Q, k) for k in (a, b, c)]
    found = []
    for v1 in S[0]:
        B1 = S[1] @ G @ v1
        for v2 in S[1][B1 == G[0, 1]]:
            cand = S[2]
            ok = (cand @ G @ v1 == G[0, 2]) & (cand @ G @ v2 == G[1, 2])
            for v3 in cand[ok]:
                U = np.column_stack([v1, v2, v3])
                if np.array_equal(U.T @ G @ U, G):
                    found.append(U)
    keys = {_key(U) for U in found}
    I = np.eye(3, dtype=np.int64)
    if _key(I) not in keys or _key(-I) not in keys:
        raise ConsistencyError("automorph search lost +-identity")
    for U in found:
        for V in found:
            if _key(U @ V) not in keys:
                raise ConsistencyError("automorph set is not closed under products")
    if 48 % len(keys):
        raise ConsistencyError(f"automorph group order {len(keys)} does not divide 48")
    return AutomorphGroup(Q, tuple(sorted(keys)))


def orbits(group: AutomorphGroup, vectors: np.ndarray) -> list[list[tuple[int, int, int]]]:
    """Partition a set of vectors (assumed group-stable) into automorph orbits."""
    mats = group.arrays()
    left = {tuple(int(t) for t in v) for v in vectors}
    result = []
    while left:
        v = np.array(next(iter(left)), dtype=np.int64)
        orb = {tuple(int(t) for t in U @ v) for U in mats}
        left -= orb
        result.append(sorted(orb))
    return result


Q9 = TernaryForm((7, 7, 44, -4, -4, -2))
Q10 = TernaryForm((12, 15, 15, 14, 4, 4))


@dataclass(frozen=True)
class GenusCheck:
    p: int
    rQ9: int
    rQ10: int
    h: int
    holds: bool


def genus_identity_check(p: int) -> GenusCheck:
    """Test r(Q9, p) + r(Q10, p) = h(-8p) for a prime p = 7 (mod 16)."""
    if not is_prime(p) or p % 16 != 7:
        raise DomainError(f"{p} is not a prime congruent to 7 mod 16")
    r9 = representation_count(Q9, p)
    r10 = representation_count(Q10, p)
    h = class_number(-8 * p)
    return GenusCheck(p, r9, r10, h, r9 + r10 == h)


def naive_count(Q: TernaryForm, n: int) -> int:
    """Cube-scan oracle using a Gershgorin lower bound on the eigenvalues of A."""
    a, b, c, r, s, t = Q.coeffs
    rows = [(a, abs(t) / 2 + abs(s) / 2), (b, abs(t) / 2 + abs(r) / 2), (c, abs(s) / 2 + abs(r) / 2)]
    lam = min(d - off for d, off in rows)
    if lam <= 0:
        # Gershgorin is inconclusive; fall back to the smallest eigenvalue
        A = np.array(Q.gram, dtype=float) / 2
        lam = float(np.linalg.eigvalsh(A)[0]) * 0.99
    B = math.ceil(math.sqrt(n / lam)) + 1
    return sum(
        1 for x, y, z in product(range(-B, B + 1), repeat=3) if Q(x, y, z) == n
    )


@dataclass
class ParitySweep:
    """Outcome of the coefficient-parity sweep over primes up to `limit`."""

    limit: int
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[tuple[str, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def parity_sweep(limit: int) -> ParitySweep:
    """Exact parity facts for basis coefficients at primes p <= limit.

    p = 1 (8), p = a^2 + 8b^2 with b odd: f1, g1, h1 coefficients are 2 mod 4.
    p = 3 (8): g2 coefficient odd.
    p = 7 (16): h2 coefficient odd, r(Q9, p) + r(Q10, p) = h(-8p) = 4 (mod 8).
    """
    from .arith import primes_up_to, represent_a2_8b2

    out = ParitySweep(limit, {"1 mod 8": 0, "3 mod 8": 0, "7 mod 16": 0})
    forms = {nm: basis_form(nm, limit).as_integers() for nm in ("f1", "g1", "h1", "g2", "h2")}
    r9, r10 = theta_series(Q9, limit).numerators, theta_series(Q10, limit).numerators
    for p in map(int, primes_up_to(limit)):
        if p % 8 == 1:
            a, b = represent_a2_8b2(p)
            if b % 2 == 0:
                continue
            out.checked["1 mod 8"] += 1
            for nm in ("f1", "g1", "h1"):
                if forms[nm][p] % 4 != 2:
                    out.failures.append((nm, p, f"coefficient {forms[nm][p]} is not 2 mod 4"))
        elif p % 8 == 3:
            out.checked["3 mod 8"] += 1
            if forms["g2"][p] % 2 == 0:
                out.failures.append(("g2", p, f"coefficient {forms['g2'][p]} is even"))
        elif p % 16 == 7:
            out.checked["7 mod 16"] += 1
            if forms["h2"][p] % 2 == 0:
                out.failures.append(("h2", p, f"coefficient {forms['h2'][p]} is even"))
            h = class_number(-8 * p)
            if r9[p] + r10[p] != h or h % 8 != 4:
                out.failures.append(("genus", p, f"r9 + r10 = {r9[p] + r10[p]}, h(-8p) = {h}"))
    return out
