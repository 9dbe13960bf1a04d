import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pi4congruent import golden
from pi4congruent.arith import DomainError, is_squarefree
from pi4congruent.classify import Outcome, classify, root_number
from pi4congruent.curve import Angle, TwistCurve, point_search
from pi4congruent.families import (
    ParamPair,
    binary_value,
    eisenstein_witness,
    parametrized_value,
    rank2_family,
    rank2_value,
    residue_family,
    residue_family_witness,
    shu_zhai,
    squarefree_class_search,
    stewart_top_d,
    stewart_top_family,
    witness_point,
    witness_triangle,
)


@given(st.integers(1, 300), st.integers(1, 300), st.sampled_from(list(Angle)))
def test_parametrized_witnesses(r, s, angle):
    assume(math.gcd(r, s) == 1 and binary_value(r, s, angle) > 0)
    value, n = parametrized_value(ParamPair(r, s), angle)
    T = witness_triangle(r, s, angle)
    assert T.is_valid() and T.area == value and T.angle is angle
    m, P = witness_point(r, s, angle)
    assert m == n and TwistCurve(angle.sign * n).on_curve(P)


def test_param_pair_validation():
    with pytest.raises(DomainError):
        ParamPair(2, 4)
    with pytest.raises(DomainError):
        ParamPair(0, 1)
    with pytest.raises(DomainError):
        parametrized_value(ParamPair(1, 3), Angle.QUARTER_PI)


def test_residue_family_first_value():
    assert residue_family(1, 3, 1) == [1990]


@given(st.integers(0, 30), st.integers(2, 9), st.integers(1, 4))
def test_residue_family_invariants(a, m, count):
    vals = residue_family(a, m, count)
    assert len(vals) == count and vals == sorted(vals)
    u = a % m or m
    for k, v in enumerate(vals):
        assert v % m == a % m
        T = residue_family_witness(u + k * m, m)
        assert T.is_valid() and T.area == v


@given(st.integers(1, 12), st.integers(2, 6))
def test_squarefree_class_search(a, m):
    assume(is_squarefree(math.gcd(a, m)))
    found = squarefree_class_search(a, m, 25)
    for value, u, v in found:
        assert is_squarefree(value) and value % m == a % m
        assert u % m == a % m and v % m == m - 1
        if math.gcd(u * m * m, v) == 1:
            T = witness_triangle(u * m * m, v, Angle.QUARTER_PI).scaled(Fraction(1, m))
            assert T.area == value


def test_squarefree_class_search_rejects_square_gcd():
    with pytest.raises(DomainError):
        squarefree_class_search(4, 8, 10)


QS = [3, 11, 19]


@pytest.mark.parametrize("qs", [list(c) for r in range(4) for c in combinations(QS, r)], ids=str)
def test_shu_zhai_consistent_with_certificates(qs):
    for claim in shu_zhai(7, qs):
        v = classify(claim.n, claim.angle, search_bound=60)
        if claim.congruent:
            assert v.outcome in (Outcome.CONGRUENT, Outcome.CONDITIONALLY_CONGRUENT)
            assert root_number(claim.angle.sign * claim.n) == -1
        else:
            assert v.outcome is Outcome.NOT_CONGRUENT
            assert root_number(claim.angle.sign * claim.n) == 1


def test_shu_zhai_r0_witness():
    claims = shu_zhai(7, [])
    assert claims[1].n == 7 and claims[1].congruent
    assert point_search(TwistCurve(-7), 500) is not None


def test_shu_zhai_validation():
    for p, qs in ((5, []), (7, [5]), (7, [3, 3]), (15, [3])):
        with pytest.raises(DomainError):
            shu_zhai(p, qs)


@pytest.mark.parametrize("t", range(-10, 11))
def test_stewart_top_points(t):
    M, N = stewart_top_family(t)
    assert M.verify() and N.verify()
    assert M.curve == (int(stewart_top_d(t)), 0, -3024, 58752)


def test_stewart_top_constants():
    assert stewart_top_d(0) == golden.STEWART_TOP_T0
    a, c = eisenstein_witness()
    assert a * a + a * c + c * c == 3024


def test_rank2_t2():
    n, P, Q = golden.RANK2_T2
    m = rank2_family(2)
    assert m.n_t == n == m.squarefree_n
    assert m.P_on_E == tuple(map(Fraction, P)) and m.Q_on_E == tuple(map(Fraction, Q))
    assert m.weakly_independent


@pytest.mark.parametrize("t", [t for t in range(-10, 11) if t not in (0, 1, -1)])
def test_rank2_family_points(t):
    m = rank2_family(t, check_span=3)
    assert m.n_t == rank2_value(t)
    C = TwistCurve(m.squarefree_n)
    assert C.on_curve(m.P_on_E) and C.on_curve(m.Q_on_E)
    assert m.weakly_independent


def test_rank2_degenerate():
    for t in (0, 1, -1):
        with pytest.raises(DomainError):
            rank2_family(t)
