from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pi4congruent.arith import DomainError, is_squarefree, squarefree_part
from pi4congruent.classify import Outcome, classify
from pi4congruent.curve import Angle, Triangle
from pi4congruent.families import binary_value, witness_triangle
from pi4congruent.tiling import is_almost_rational, rational_sqrt, tiling_from_witness, verify_piece_count_form


def test_n1():
    spec = tiling_from_witness(1, Triangle(1, 4, 5))
    assert spec.piece_count == 8 == 2 * 1 * 2**2
    assert spec.k == 2 and verify_piece_count_form(spec.piece_count, 1) == 2
    assert spec.covers_unit_square()
    g = spec.grid()
    assert g["columns"] * Fraction(g["rectangle"][0]) == 1
    assert g["rows"] * Fraction(g["rectangle"][1]) == 1


def test_almost_rational():
    plus, minus = is_almost_rational(1, 2)
    # 1 + 8 + 4 = 13, 1 + 8 - 4 = 5
    assert plus is None and minus is None
    assert is_almost_rational(1, 4) == (None, 5)
    assert is_almost_rational(2, 6) == (10, None)
    with pytest.raises(DomainError):
        is_almost_rational(0, 1)


@pytest.mark.parametrize("n", [n for n in range(1, 60, 2) if is_squarefree(n)])
def test_tilings_from_search(n):
    for angle in Angle:
        v = classify(2 * n, angle, 40)
        if v.outcome is not Outcome.CONGRUENT:
            continue
        spec = tiling_from_witness(n, v.triangle)
        assert spec.covers_unit_square()
        k = verify_piece_count_form(spec.piece_count, n)
        assert k == spec.k
        w, h = spec.piece_legs
        assert 4 * w * h * n * spec.k**2 == 4  # piece area is 1/(2 n k^2)


@given(st.integers(1, 40), st.integers(1, 40), st.sampled_from(list(Angle)))
def test_tilings_from_parametrized_triangles(r, s, angle):
    assume(gcd(r, s) == 1 and binary_value(r, s, angle) > 0)
    T = witness_triangle(r, s, angle)
    sf, _ = squarefree_part(int(T.area))
    n = sf // 2 if sf % 2 == 0 else sf
    assume(n % 2 == 1)
    # rescale to area 2n
    k = rational_sqrt(Fraction(2 * n) / T.area)
    assume(k is not None)
    spec = tiling_from_witness(n, T.scaled(k))
    assert spec.covers_unit_square()
    assert verify_piece_count_form(spec.piece_count, n) == spec.k


def test_rejections():
    with pytest.raises(DomainError):
        tiling_from_witness(2, Triangle(1, 4, 5))
    with pytest.raises(DomainError):
        tiling_from_witness(3, Triangle(1, 4, 5))
    with pytest.raises(DomainError):
        verify_piece_count_form(0, 1)
    assert verify_piece_count_form(12, 1) is None
    assert verify_piece_count_form(7, 2) is None
