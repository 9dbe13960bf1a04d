import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pi4congruent import golden, theta
from pi4congruent.arith import DomainError
from pi4congruent.theta import (
    FORM_TABLE,
    SUPPORT_RESIDUE,
    ConsistencyError,
    TernaryForm,
    automorphs,
    basis_form,
    naive_count,
    orbits,
    representation_count,
    theta_series,
    vectors_of_norm,
)

ALL_FORMS = sorted({q for _, q1, q2 in FORM_TABLE.values() for q in (q1, q2)} | {theta.Q9.coeffs, theta.Q10.coeffs})


def cube_histogram(Q: TernaryForm, N: int) -> np.ndarray:
    """Counts of Q <= N over a box sized from the smallest eigenvalue; independent of the sweep."""
    lam = float(np.linalg.eigvalsh(np.array(Q.gram, dtype=float) / 2)[0])
    B = math.isqrt(int(N / lam)) + 2
    r = np.arange(-B, B + 1)
    x, y, z = np.meshgrid(r, r, r, indexing="ij")
    vals = Q(x, y, z).ravel()
    return np.bincount(vals[vals <= N], minlength=N + 1)


@pytest.mark.parametrize("coeffs", ALL_FORMS, ids=str)
def test_sweep_matches_box_scan_to_200(coeffs):
    Q = TernaryForm(coeffs)
    assert np.array_equal(theta_series(Q, 200).numerators, cube_histogram(Q, 200))


@given(st.sampled_from(ALL_FORMS), st.integers(0, 200))
def test_representation_count_matches_naive_oracle(coeffs, n):
    Q = TernaryForm(coeffs)
    assert representation_count(Q, n) == naive_count(Q, n)


@pytest.mark.parametrize("name", sorted(golden.EXPANSIONS))
def test_printed_expansions(name):
    N, printed = golden.EXPANSIONS[name]
    got = basis_form(name, N - 1)
    assert [int(got[n]) for n in range(N)] == [printed.get(n, 0) for n in range(N)]


@pytest.mark.parametrize("name", sorted(SUPPORT_RESIDUE))
def test_support_lies_in_one_class_mod_8(name):
    support = basis_form(name, 512).support()
    assert support and all(n % 8 == SUPPORT_RESIDUE[name] for n in support)


def test_h2_two_expressions_agree():
    assert np.array_equal(basis_form("h2", 2048).as_integers(), basis_form("h2alt", 2048).as_integers())


def test_theta_precision_is_prefix_stable():
    Q = TernaryForm((3, 5, 19, -2, -2, -2))
    assert np.array_equal(theta_series(Q, 300).numerators, theta_series(Q, 1000).numerators[:301])


def test_non_integral_combination_is_detected():
    # counts are always even (v and -v), so only a wrong divisor can break integrality
    table = dict(FORM_TABLE)
    _, q1, q2 = table["f1"]
    table["f1"] = (4, q1, q2)
    with pytest.raises(ConsistencyError):
        basis_form("f1", 200, table=table).as_integers()


def test_rejects_indefinite_and_bad_input():
    with pytest.raises(DomainError):
        TernaryForm((1, 1, -1, 0, 0, 0))
    with pytest.raises(DomainError):
        TernaryForm((1, 1, 1, 4, 0, 0))
    with pytest.raises(DomainError):
        theta_series(TernaryForm((1, 1, 1, 0, 0, 0)), 0)
    with pytest.raises(DomainError):
        basis_form("nope", 10)


def test_parse():
    assert TernaryForm.parse("[1, 8, 128, 0, 0, 0]").coeffs == (1, 8, 128, 0, 0, 0)


def test_sum_of_three_squares():
    # r_3(n) for small n
    got = theta_series(TernaryForm((1, 1, 1, 0, 0, 0)), 10).coefficients
    assert got == [1, 6, 12, 8, 6, 24, 24, 0, 12, 30, 24]


@pytest.mark.parametrize("coeffs", sorted(golden.AUTOMORPH_ORDERS), ids=str)
def test_automorph_orders(coeffs):
    assert automorphs(TernaryForm(coeffs)).order == golden.AUTOMORPH_ORDERS[coeffs]


@pytest.mark.parametrize("coeffs", ALL_FORMS, ids=str)
def test_automorphs_preserve_form_and_orbits_divide_order(coeffs):
    Q = TernaryForm(coeffs)
    grp = automorphs(Q)
    G = np.array(Q.gram)
    assert all(np.array_equal(U.T @ G @ U, G) for U in grp.arrays())
    assert all(abs(round(np.linalg.det(U))) == 1 for U in grp.arrays())
    for n in range(1, 120):
        vecs = vectors_of_norm(Q, n)
        if len(vecs):
            orbs = orbits(grp, vecs)
            assert sum(map(len, orbs)) == len(vecs)
            assert all(grp.order % len(o) == 0 for o in orbs)


def test_automorphs_of_the_cube():
    assert automorphs(TernaryForm((1, 1, 1, 0, 0, 0))).order == 48


def test_genus_identity_small_primes():
    for p in (7, 23, 71, 103, 167, 199, 263):
        g = theta.genus_identity_check(p)
        assert g.holds and g.h % 8 == 4, g
    with pytest.raises(DomainError):
        theta.genus_identity_check(31)


def test_parity_sweep_small():
    sweep = theta.parity_sweep(5000)
    assert sweep.ok, sweep.failures[:5]
    assert all(v > 0 for v in sweep.checked.values())


def test_thread_count_does_not_change_counts():
    Q = TernaryForm((47, 28, 7, 4, 6, 20))
    one = theta._raw_counts(Q, 20000, 1)
    four = theta._raw_counts(Q, 20000, 4)
    assert np.array_equal(one, four)
