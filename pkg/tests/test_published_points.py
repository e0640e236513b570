"""The model scored at the printed table locations reproduces the printed values.

This separates the model from the optimiser: where a table row misses its
acceptance tolerance, this check shows whether the printed objective is
consistent with the printed location.
"""

import pytest

from sftloc import evaluate
from sftloc.scenario import build_problem, load_table

# (table, case, x_N, Z_N, x_I, Z_I) as printed
PUBLISHED_ROWS = [
    ("table1", "1", (252, 117), 4039, (242, 52), 3959),
    ("table1", "2", (252, 117), 3626, (225, 171), 3575),
    ("table1", "3", (252, 117), 2746, (228, 108), 2727),
    ("table1", "4", (252, 117), 5214, (350, 162), 5037),
    ("table1", "5", (252, 117), 1605, (247, 102), 1604),
    ("table1", "6", (604, 265), 8305, (581, 101), 8148),
    ("table1", "7", (604, 265), 2728, (605, 270), 2728),
    ("table1", "8", (166, 48), 3103, (175, 35), 3061),
    ("table1", "9", (166, 48), 896, (164, 44), 896),
    ("table1", "10", (166, 48), 2742, (176, 84), 2597),
    ("table2", "1", (175, 138), 242, (95, 228), 124),
    ("table2", "2", (175, 138), 212, (108, 216), 124),
    ("table2", "3", (175, 138), 190, (116, 202), 124),
    ("table2", "4", (175, 138), 171, (122, 188), 124),
    ("table2", "5", (175, 138), 156, (146, 179), 124),
    ("table2", "6", (175, 138), 143, (151, 163), 123),
    ("table2", "7", (175, 138), 133, (175, 139), 123),
    ("table2", "8", (175, 138), 163, (261, 217), 125),
    ("table2", "9", (175, 138), 721, (265, 64), 126),
    ("table2", "10", (175, 138), 481, (118, 67), 128),
    ("table2", "11", (239, 163), 1401, (371, 40), 212),
    ("table2", "12", (331, 227), 525, (386, 140), 315),
    ("table2", "13", (331, 227), 1156, (161, 124), 309),
    ("table2", "14", (331, 227), 432, (474, 311), 306),
    ("table3", "1", (171, 134), 905, (189, 56), 401),
    ("table3", "2", (171, 134), 637, (175, 78), 342),
    ("table3", "3", (171, 134), 581, (181, 85), 340),
    ("table3", "4", (171, 134), 798, (214, 88), 394),
    ("table3", "5", (171, 134), 528, (183, 91), 344),
    ("table3", "6", (171, 134), 961, (160, 50), 389),
    ("table3", "7", (171, 134), 565, (188, 88), 348),
    ("table3", "8", (171, 134), 844, (156, 62), 384),
    ("table3", "9", (351, 234), 1842, (300, 90), 610),
    ("table3", "10", (351, 234), 450, (333, 223), 441),
    ("table3", "11", (351, 234), 447, (347, 231), 444),
    ("table3", "12", (351, 234), 448, (336, 225), 443),
    ("table3", "13", (351, 234), 453, (340, 225), 444),
    ("table3", "14", (333, 220), 1442, (234, 138), 829),
    ("table3", "15", (333, 220), 1648, (225, 124), 877),
    ("table3", "16", (333, 220), 1364, (246, 136), 819),
    ("table3", "17", (333, 220), 981, (269, 178), 734),
    ("table3", "18", (333, 220), 1375, (245, 141), 822),
    ("table3", "19", (333, 220), 1564, (235, 135), 869),
    ("table3", "20", (333, 220), 1307, (235, 153), 819),
    ("table3", "21", (333, 220), 987, (267, 178), 734),
    ("table3", "22", (2265, 1459), 4148, (2805, 1335), 2028),
    ("table3", "23", (2265, 1459), 3840, (2878, 1295), 2064),
    ("table3", "24", (2265, 1459), 4117, (2673, 1456), 1955),
]

# the printed x_I of this row scores 132.2, not the printed 123
INCONSISTENT = {("table2", "7")}

_CASES = {name: {c.case_id: c.scenario for c in load_table(name).cases} for name in ("table1", "table2", "table3")}


def _params():
    for row in PUBLISHED_ROWS:
        marks = ()
        if row[:2] in INCONSISTENT:
            marks = pytest.mark.xfail(strict=True, reason="printed Z_I disagrees with printed x_I")
        yield pytest.param(*row, id=f"{row[0]}-{row[1]}", marks=marks)


@pytest.mark.parametrize("table,case,x_n,z_n,x_i,z_i", list(_params()))
def test_printed_location_scores_printed_value(table, case, x_n, z_n, x_i, z_i):
    P = build_problem(_CASES[table][case])
    # locations are integer-rounded, so allow the same 2% the tables get
    assert evaluate(P, x_n).objective == pytest.approx(z_n, rel=0.02)
    assert evaluate(P, x_i).objective == pytest.approx(z_i, rel=0.02)
