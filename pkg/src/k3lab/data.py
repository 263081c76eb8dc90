"""Built-in numerical data for the Humbert configuration.

Index conventions: ``L1..L12`` are the alpha-lines (rows of the incidence
table), ``M1..M12`` the beta-lines (columns).  Whenever a flat index 1..24
is used, 1..12 are ``L1..L12`` and 13..24 are ``M1..M12``.
"""

from fractions import Fraction as F

# beta-neighbours of each alpha-line L1..L12
HUMBERT_NEIGHBOURS = [
    (1, 2, 6, 8, 9, 12),
    (1, 2, 5, 7, 10, 11),
    (3, 4, 6, 8, 10, 11),
    (3, 4, 5, 7, 9, 12),
    (2, 4, 5, 6, 10, 12),
    (1, 3, 5, 6, 9, 11),
    (2, 4, 7, 8, 9, 11),
    (1, 3, 7, 8, 10, 12),
    (1, 4, 6, 7, 9, 10),
    (2, 3, 5, 8, 9, 10),
    (2, 3, 6, 7, 11, 12),
    (1, 4, 5, 8, 11, 12),
]

# rows of the second hyperbolic (12_6, 12_6) graph, alpha x beta
GAMMA2_ROWS = [
    "111111......",
    "11....1111..",
    "1.11..11..1.",
    "1.1.1..1.1.1",
    "1..1.11.1..1",
    "1...11..111.",
    ".11.1.1.1..1",
    ".111....111.",
    ".1..1111..1.",
    ".1.1.1.1.1.1",
    "..1..1.11.11",
    "...11.1..111",
]

# Z-basis of the Picard lattice made of lines
HUMBERT_BASIS = [
    "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L11",
    "M1", "M2", "M3", "M6", "M8", "M9", "M12",
]

# generators of the discriminant group; coordinates refer to the basis
# lines listed in DUAL_COORDINATE_ORDER (same lines, different order)
DUAL_COORDINATE_ORDER = [
    "M1", "M2", "M6", "M8", "M9", "M12", "M3",
    "L5", "L6", "L7", "L8", "L2", "L3", "L4", "L11",
]
DUAL_GENERATORS = [
    [F(x, 2) for x in (0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0)],
    [F(x, 2) for x in (0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0)],
    [F(x, 2) for x in (0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 0)],
    [F(x, 2) for x in (1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0)],
    [F(x, 16) for x in (2, 2, 4, 2, 10, 12, 2, 1, 1, 7, 1, 2, 12, 12, 10)],
]

# expected Gram of DUAL_GENERATORS: diagonal mod 2, off-diagonal mod 1
DISCRIMINANT_GRAM = [
    [F(0), F(1, 2), F(0), F(0), F(0)],
    [F(1, 2), F(0), F(0), F(0), F(0)],
    [F(0), F(0), F(0), F(1, 2), F(0)],
    [F(0), F(0), F(1, 2), F(0), F(0)],
    [F(0), F(0), F(0), F(0), F(3, 16)],
]

# half-sums of lines representing the two order-2 classes up to symmetry
DELTA_VECTORS = {
    "delta1": {"M6": F(1, 2), "M8": F(-1, 2), "M9": F(1, 2), "M12": F(-1, 2)},
    "delta2": {"L5": F(1, 2), "L6": F(-1, 2), "L7": F(1, 2), "L8": F(-1, 2)},
}

TRANSCENDENTAL_GRAM = [
    [-2, 1, 0, 0, 0, 0, 0],
    [1, -2, -1, 0, 0, 0, 0],
    [0, -1, -6, 0, 0, 0, 0],
    [0, 0, 0, 0, 2, 0, 0],
    [0, 0, 0, 2, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 2],
    [0, 0, 0, 0, 0, 2, 0],
]

# the three permutations listed as generators of Sym(Gamma)
PRINTED_GENERATORS = {
    "swap": None,  # L_i <-> M_i
    "sigma1": {  # same permutation on both families
        "alpha": [(1, 9, 4, 12), (2, 10, 3, 11), (5, 8, 6, 7)],
        "beta": [(1, 9, 4, 12), (2, 10, 3, 11), (5, 8, 6, 7)],
    },
    "sigma2": {
        "alpha": [(1, 10, 8, 2, 11, 6), (3, 9, 7), (4, 12, 5)],
        "beta": [(1, 2, 3), (5, 12), (6, 9, 8, 10, 7, 11)],
    },
}

# line pattern of the chosen symmetric conic (flat indices, 13..24 = M1..M12)
NEW_CONIC_PATTERN = (5, 8, 10, 12, 18, 19, 21, 23)

# a longest induced cycle, flat indices
A11_CYCLE = (1, 13, 6, 17, 10, 22, 3, 16, 7, 19, 11, 24)

# the short-orbit D4 example and its complementary fragment, flat indices
D4_EXAMPLE = (1, 2, 6, 8, 13)
D4_COMPLEMENT = (3, 4, 5, 7, 16)

# split-conic grid subsets of the eight degeneration strata, cells "rs"
DEGENERATION_STRATA = [
    (16, ["11"]),
    (17, ["11", "12"]),
    (17, ["11", "22"]),
    (18, ["11", "12", "21"]),
    (18, ["11", "22", "33"]),
    (18, ["11", "12", "23", "33"]),
    (19, ["11", "12", "21", "22"]),
    (19, ["11", "12", "21", "23", "32", "33"]),
]

# curve census: degree -> (count, orbit sizes)
RATIONAL_CURVE_COUNTS = {
    1: (24, [24]),
    2: (9, [9]),
    3: (0, []),
    4: (72, [72]),
    5: (816, [48, 192, 576]),
    6: (720, [144, 288, 288]),
}

# pencil census: type -> list of (orbit size, admits a section)
PENCIL_TABLE = {
    "A3": [(18, True), (144, True)],
    "A5": [(192, True), (288, True), (576, True)],
    "A7": [(72, False), (144, True), (144, False), (288, True), (288, False), (576, True)],
    "A11": [(48, False)],
    "D4": [(72, False), (288, True)],
    "D5": [(144, True), (576, True)],
    "D6": [(144, False)] * 2 + [(288, False)] * 3 + [(576, True)] * 4 + [(576, False), (1152, True)],
    "D8": [(288, False), (576, False), (576, False)],
    "E6": [(96, False)] * 2 + [(192, True)] + [(576, True)] * 4 + [(576, False)] * 2,
    "E7": [(576, True)] * 3 + [(576, False)] * 7 + [(1152, True)] * 4 + [(1152, False)] * 2,
    "E8": [(1152, False)] * 4,
}
