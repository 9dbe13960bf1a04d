"""Published reference values, kept in one place for tests and ``selfcheck``."""

# q-expansions of the weight-3/2 basis forms: {exponent: coefficient}, with
# the precision they were printed to
EXPANSIONS = {
    "f1": (80, {1: 1, 9: 3, 17: 2, 25: 1, 33: 2, 41: -4, 49: -3, 57: 2, 65: -8, 73: -2}),
    "f2": (80, {3: 1, 11: -3, 19: 1, 27: 2, 35: 2, 43: -1, 51: -4, 59: 1, 67: -3, 75: 3}),
    "g1": (90, {1: 1, 9: -1, 17: -2, 25: 1, 33: -2, 41: 4, 49: 5, 57: -2, 73: -6, 81: -1, 89: -2}),
    "g2": (90, {3: 1, 11: 1, 19: -3, 27: -2, 35: 2, 43: -1, 59: 1, 67: 1, 75: 3, 83: 1}),
    "h1": (90, {1: 1, 9: 1, 17: 2, 25: 3, 33: -2, 49: -3, 57: -6, 65: 4, 73: -2, 81: -1, 89: 2}),
    "h2": (90, {7: 1, 15: -1, 23: -1, 39: 1, 55: -1, 63: 1, 71: -1, 79: 2, 87: 1}),
    "k1": (90, {3: 1, 11: 1, 19: 1, 27: 2, 35: -2, 43: -1, 59: -3, 67: 1, 75: -1, 83: -3}),
    "k2": (90, {5: 1, 13: -1, 29: -1, 37: -1, 45: 1, 53: 1, 61: 1, 69: -2, 77: 2}),
}

# weight-2 newforms of E_1, E_-1, E_-2 through q^19 (index 0 unused)
NEWFORMS = {
    1: [0, 1, 0, 2, 0, 2, 0, -4, 0, 1, 0, -2, 0, 2, 0, 4, 0, -2, 0, 2],
    -1: [0, 1, 0, -2, 0, 2, 0, 4, 0, 1, 0, 2, 0, 2, 0, -4, 0, -2, 0, -2],
    -2: [0, 1, 0, 2, 0, -2, 0, 4, 0, 1, 0, -2, 0, -2, 0, -4, 0, -2, 0, 2],
}

# (n, x, y) points and the triangles (a, b, c) with sides (a, b*sqrt 2, c)
EXAMPLE_TRIANGLES = {
    2: ((1, 1), (1, 4, 5)),
    5: (("25/4", "175/8"), ("7/2", "20/7", "41/14")),
}

DIVISION_POLYNOMIALS = {
    3: [3, 8, -6, 0, -1],
    # x (x^2 + 1)(x^2 + 2x - 1)(x^4 + 4x^3 - 6x^2 - 4x + 1), expanded below
    4: None,
    5: [5, 40, 2, -160, -105, -720, -660, 224, 515, -280, 50, 0, 1],
}
DIVISION_4_FACTORS = [[1, 0], [1, 0, 1], [1, 2, -1], [1, 4, -6, -4, 1]]

AUTOMORPH_ORDERS = {
    (1, 8, 128, 0, 0, 0): 8,
    (7, 7, 44, -4, -4, -2): 4,
    (12, 15, 15, 14, 4, 4): 4,
    (3, 8, 43, 0, -2, 0): 4,
    (8, 11, 12, -4, 0, 0): 4,
}

RANK2_T2 = (410, (1025, 42025), ("1025/4", "42025/8"))
STEWART_TOP_T0 = 24192
EISENSTEIN_3024 = (60, -12)
PERIOD_RATIOS = {"L(E_-1,1)/Omega": 0.5, "L(E_-3,1)/Omega": 1.0}


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def division_polynomial(k: int) -> list[int]:
    if k == 4:
        poly = [1]
        for f in DIVISION_4_FACTORS:
            poly = poly_mul(poly, f)
        return poly
    return DIVISION_POLYNOMIALS[k]
