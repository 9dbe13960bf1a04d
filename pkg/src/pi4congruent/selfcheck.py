"""Regression manifest over every published value the package reproduces."""

from __future__ import annotations

import importlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import golden, lfunc, theta
from .arith import class_number, is_squarefree
from .curve import Angle, Triangle, TwistCurve, point_search, point_to_triangle, rational_roots
from .families import eisenstein_witness, rank2_family, shu_zhai, stewart_top_d, stewart_top_family
from .tiling import tiling_from_witness, verify_piece_count_form

# the package re-exports a function named classify, so fetch the module itself
_classify = importlib.import_module(".classify", __package__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _expansion(name: str) -> tuple[bool, str]:
    N, printed = golden.EXPANSIONS[name]
    got = theta.basis_form(name, N - 1)
    bad = [n for n in range(N) if int(got[n]) != printed.get(n, 0)]
    return not bad, f"mismatch at {bad[:5]}" if bad else f"through O(q^{N})"


def _h2_dual() -> tuple[bool, str]:
    a = theta.basis_form("h2", 512).as_integers()
    b = theta.basis_form("h2alt", 512).as_integers()
    return bool((a == b).all()), "N = 512"


def _newform(n: int) -> tuple[bool, str]:
    return lfunc.coefficient_table(n, 19) == golden.NEWFORMS[n], f"E_{n} through q^19"


def _period_anchors() -> tuple[bool, str]:
    L1 = lfunc.l_value_at_1(-1, 1e-13).value
    L3 = lfunc.l_value_at_1(-3, 1e-13).value
    O1, O3 = lfunc.real_period(-1), lfunc.real_period(-3)
    errs = [abs(L1 / O1 - 0.5), abs(L3 / O3 - 1.0), abs(2 * L1 - math.sqrt(3) * L3), abs(O1 / O3 - math.sqrt(3))]
    return max(errs) < 1e-6, f"max error {max(errs):.2e}"


def _root_number_coherence() -> tuple[bool, str]:
    bad = []
    for m in range(1, 200, 2):
        if not is_squarefree(m):
            continue
        for n in (m, 2 * m):
            for angle in Angle:
                forced = m % 8 not in _classify.DISPATCH[("odd" if n % 2 else "even", angle)]
                if forced != (_classify.root_number(angle.sign * n) == -1):
                    bad.append((n, str(angle)))
    return not bad, f"conflicts {bad[:4]}" if bad else "odd parts < 200"


def _triangle(n: int) -> tuple[bool, str]:
    (x, y), (a, b, c) = golden.EXAMPLE_TRIANGLES[n]
    C = TwistCurve(n)
    T = point_to_triangle(C, (Fraction(x), Fraction(y)))
    ok = T == Triangle(Fraction(a), Fraction(b), Fraction(c))
    v = _classify.classify(n, Angle.QUARTER_PI, 100)
    ok = ok and v.outcome is _classify.Outcome.CONGRUENT
    return ok, T.sides_text()


def _torsion() -> tuple[bool, str]:
    bad = [n for n in range(-50, 51) if n and is_squarefree(n) and not TwistCurve(n).torsion(10).is_z2]
    roots = {k: rational_roots(golden.division_polynomial(k)) for k in (3, 4, 5)}
    ok = not bad and roots[3] == [] and roots[4] == [0] and roots[5] == []
    return ok, f"non-Z/2Z: {bad[:4]}" if bad else "1 <= |n| <= 50"


def _automorphs() -> tuple[bool, str]:
    got = {q: theta.automorphs(theta.TernaryForm(q)).order for q in golden.AUTOMORPH_ORDERS}
    return got == golden.AUTOMORPH_ORDERS, str(sorted(got.values()))


def _rank2() -> tuple[bool, str]:
    n, P, Q = golden.RANK2_T2
    m = rank2_family(2)
    ok = m.n_t == n and m.P_on_E == tuple(map(Fraction, P)) and m.Q_on_E == tuple(map(Fraction, Q))
    return ok and m.weakly_independent, f"n_2 = {m.n_t}"


def _stewart_top() -> tuple[bool, str]:
    a, c = eisenstein_witness()
    ok = stewart_top_d(0) == golden.STEWART_TOP_T0 and a * a + a * c + c * c == 3024
    for t in range(-10, 11):
        stewart_top_family(t)
    return ok, "t in [-10, 10]"


def _shu_zhai() -> tuple[bool, str]:
    claims = shu_zhai(7, [])
    P = point_search(TwistCurve(-7), 500)
    return claims[1].congruent and P is not None, f"point {P}"


def _tiling() -> tuple[bool, str]:
    spec = tiling_from_witness(1, Triangle(1, 4, 5))
    return spec.piece_count == 8 and verify_piece_count_form(8, 1) == 2 and spec.covers_unit_square(), "8 = 2*1*2^2"


def _class_numbers() -> tuple[bool, str]:
    g = theta.genus_identity_check(71)
    ok = class_number(-56) == 4 and g.holds and (g.rQ9 - g.rQ10) % 8 == 4
    return ok, f"h(-56) = {class_number(-56)}, p = 71: {g}"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    *[(f"theta expansion {name}", (lambda nm=name: _expansion(nm))) for name in golden.EXPANSIONS],
    ("h2 dual theta identity", _h2_dual),
    *[(f"newform traces E_{n}", (lambda k=n: _newform(k))) for n in golden.NEWFORMS],
    ("period and L-value anchors", _period_anchors),
    ("root number / forced-zero coherence", _root_number_coherence),
    ("example triangle n=2", lambda: _triangle(2)),
    ("example triangle n=5", lambda: _triangle(5)),
    ("torsion and division polynomials", _torsion),
    ("automorph group orders", _automorphs),
    ("rank-2 family at t=2", _rank2),
    ("Stewart-Top family", _stewart_top),
    ("Shu-Zhai r=0 witness on E_-7", _shu_zhai),
    ("unit square tiling n=1", _tiling),
    ("class numbers and genus identity", _class_numbers),
]


def run() -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
