"""Tabulated base relations of the tower, transcribed as (c, k, e) = c*3^k*t^e.

    U_A(p1 y^m t^k) = y^(3m+8) p0 * GROUP_II[m, k](t)
    U_B(p0 y^m t^k) = y^(3m)   p1 * GROUP_III[m, k](t)

for m in {0, 1, 2} and k in {-1, 0, 1}.  Every entry is re-derived from
q-expansions by :mod:`cphi6.reduce`; nothing downstream trusts these tables
without that check.
"""

from __future__ import annotations

from .tpoly import TPoly

_F = TPoly.from_factored

GROUP_II: dict[tuple[int, int], TPoly] = {
    (0, -1): _F([(11, 0, -1), (38, 3, 0), (1085, 2, 1), (212, 3, 2), (-961, 3, 3),
                 (98, 4, 4), (1, 7, 5)]),
    (0, 0): _F([(1, 0, -1), (95, 1, 0), (16, 5, 1), (5, 3, 2), (-308, 3, 3), (91, 4, 4),
                (-20, 5, 5), (11, 5, 6), (-1, 6, 7)]),
    (0, 1): _F([(22, 1, 0), (176, 2, 1), (-11, 4, 2), (-19, 4, 3), (8, 4, 4), (79, 4, 5),
                (-88, 5, 6), (17, 7, 7), (-2, 9, 8), (11, 7, 9), (-1, 8, 10)]),
    (1, -1): _F([(14, 0, -1), (101, 3, 0), (7760, 2, 1), (188, 7, 2), (9572, 3, 3),
                 (-16102, 4, 4), (-128, 7, 5), (20, 10, 6), (-14, 9, 7), (-1, 10, 8)]),
    (1, 0): _F([(1, 0, -1), (200, 1, 0), (284, 4, 1), (5752, 3, 2), (1234, 3, 3),
                (-5912, 4, 4), (884, 5, 5), (392, 5, 6), (-55, 6, 7)]),
    (1, 1): _F([(4, 3, 0), (802, 2, 1), (751, 4, 2), (-224, 4, 3), (-1892, 4, 4),
                (2116, 4, 5), (-514, 5, 6), (16, 8, 7), (-32, 7, 8), (14, 7, 9), (-1, 8, 10)]),
    (2, -1): _F([(17, 0, -1), (215, 3, 0), (31742, 2, 1), (148039, 3, 2), (657251, 3, 3),
                 (119546, 4, 4), (-29324, 7, 5), (-1930, 9, 6), (4745, 9, 7), (241, 10, 8),
                 (-10, 14, 9), (17, 12, 10), (1, 13, 11)]),
    (2, 0): _F([(1, 0, -1), (356, 1, 0), (2963, 3, 1), (17042, 4, 2), (239206, 3, 3),
                (16864, 4, 4), (-32678, 6, 5), (692, 5, 6), (35045, 6, 7), (-52, 11, 8),
                (-17, 11, 9), (2, 12, 10)]),
    (2, 1): _F([(53, 1, 0), (770, 3, 1), (5827, 4, 2), (29704, 4, 3), (-1958, 5, 4),
                (-103100, 4, 5), (21722, 5, 6), (392, 8, 7), (-967, 7, 8), (98, 7, 9),
                (-1, 8, 10)]),
}

GROUP_III: dict[tuple[int, int], TPoly] = {
    (0, -1): _F([(4, 1, 0), (-14, 1, 1), (11, 2, 2), (-1, 4, 3), (-2, 4, 4), (5, 4, 5),
                 (-1, 5, 6)]),
    (0, 0): _F([(5, 0, 0), (-11, 1, 1), (2, 4, 2), (-14, 3, 3), (-1, 3, 4), (8, 5, 5),
                (-13, 5, 6), (5, 6, 8), (-1, 7, 9)]),
    (0, 1): _F([(1, 0, 0), (-1, 2, 1), (14, 2, 2), (-28, 3, 3), (61, 3, 4), (23, 4, 5),
                (-20, 6, 6), (8, 7, 7), (25, 6, 8), (-23, 7, 9), (2, 8, 10), (5, 8, 11),
                (-1, 9, 12)]),
    (1, -1): _F([(4, 2, 0), (88, 1, 1), (-55, 2, 2), (8, 4, 3), (-10, 4, 4), (8, 4, 5),
                 (-1, 5, 6)]),
    (1, 0): _F([(8, 0, 0), (46, 1, 1), (-16, 3, 2), (38, 3, 3), (-64, 3, 4), (5, 5, 5),
                (8, 5, 6), (-8, 6, 7), (8, 6, 8), (-1, 7, 9)]),
    (1, 1): _F([(1, 0, 0), (8, 2, 1), (-38, 2, 2), (16, 4, 3), (-128, 3, 4), (56, 4, 5),
                (2, 7, 6), (-40, 6, 7), (64, 6, 8), (-8, 7, 9), (-2, 9, 10), (8, 8, 11),
                (-1, 9, 12)]),
    (2, -1): _F([(23, 1, 0), (802, 1, 1), (923, 2, 2), (-140, 4, 3), (-7, 5, 4), (38, 4, 5),
                 (-1, 5, 6)]),
    (2, 0): _F([(11, 0, 0), (274, 1, 1), (14, 5, 2), (-31, 5, 3), (314, 3, 4), (-49, 5, 5),
                (62, 5, 6), (-19, 6, 7), (11, 6, 8), (-1, 7, 9)]),
    (2, 1): _F([(1, 0, 0), (28, 2, 1), (20, 4, 2), (-197, 3, 3), (430, 3, 4), (-280, 4, 5),
                (5, 8, 6), (-32, 6, 7), (-32, 6, 8), (40, 7, 9), (-17, 8, 10), (11, 8, 11),
                (-1, 9, 12)]),
}

# L0 = t^-1 + 27 + 3t + 9t^2 (weight 1, no y factor)
L0_POLY = TPoly({-1: 1, 0: 27, 1: 3, 2: 9})

# L1 = y^8 p0 * L1_POLY(t)
L1_POLY = _F([(4, 2, -1), (71, 4, 0), (2351, 3, 1), (89, 5, 2), (-1975, 4, 3), (407, 5, 4),
              (-19, 7, 5), (11, 7, 6), (-1, 8, 7)])

# reference values for two recurrence outputs
# U_A(p1 t^2) = y^8 p0 * WORKED_UA_P1_T2(t)
WORKED_UA_P1_T2 = _F([(11, 0, 0), (209, 1, 1), (-22, 3, 2), (-106, 3, 3), (259, 4, 4),
                      (259, 4, 5), (-11, 8, 6), (68, 7, 7), (-238, 6, 8), (7, 8, 9),
                      (29, 8, 10), (-16, 9, 11), (11, 9, 12), (-1, 10, 13)])
# The polynomial both the recurrences and the q-expansion actually give:
# no t^3 term, -106*3^3 sits at t^4 and 259*3^4 at t^5 only.
WORKED_UA_P1_T2_TRUE = TPoly({0: 11, 1: 627, 2: -594, 4: -2862, 5: 20979, 6: -72171,
                              7: 148716, 8: -173502, 9: 45927, 10: 190269, 11: -314928,
                              12: 216513, 13: -59049})
# U_B(p0 y^3 t^-1) = y^9 p1 * WORKED_UB_P0_Y3_TM1(t)
WORKED_UB_P0_Y3_TM1 = _F([(37, 1, 0), (2992, 1, 1), (13628, 2, 2), (3872, 4, 3), (-4814, 4, 4),
                          (-7600, 4, 5), (2564, 5, 6), (-1, 10, 8)])

# b_j(y) = y^(9-3j) * B_REWRITE[j](t) once y = 1/(1-3t); plus a second, incorrect expansion of j=1
B_REWRITE_TABULATED: dict[int, TPoly] = {
    0: -_F([(1, 0, 0), (-2, 2, 1), (5, 3, 2), (-20, 3, 3), (5, 5, 4), (-2, 6, 5), (1, 6, 6)]),
    1: -_F([(-3, 0, 0), (1, 2, 1), (1, 4, 2), (-14, 3, 3), (1, 5, 4), (1, 6, 5), (-1, 6, 6)]),
    2: -_F([(3, 0, 0), (4, 2, 1), (1, 3, 2), (-2, 3, 3)]),
}
B1_REWRITE_VARIANT = -_F([(-3, 0, 0), (1, 2, 1), (1, 4, 2), (-14, 3, 4), (1, 6, 5), (-1, 6, 6)])

# base values used by the scalar divisibility recurrences
BASE_B_M1 = (12, 36, 69)       # b(-1, m, 0), m = 0, 1, 2
BASE_A_0 = (285, 600, 1068)    # a(0, m, 0)
BASE_A_1 = (66, 108, 159)      # a(1, m, 0)


def base_poly(array: str, m: int, k: int) -> TPoly:
    table = GROUP_II if array == "a" else GROUP_III
    return table[m, k]
