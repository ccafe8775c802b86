import pytest

from regioncalc.gf2 import Gf2Matrix

FIG8_MATRIX = """7 5
11000
10110
01111
00001
11100
00110
11011
"""


# same matrix with the doubled corner counted mod 2
FIG8_MATRIX_MODIFIED = FIG8_MATRIX[:-6] + "11010\n"


@pytest.fixture
def fig8_matrix():
    return Gf2Matrix.from_text(FIG8_MATRIX)


def band_matrix(p):
    """p x (p-1): row i has ones in columns i-2, i-1, i; row 0 also in the last column."""
    rows = []
    for i in range(p):
        row = [1 if j in (i - 2, i - 1, i) else 0 for j in range(p - 1)]
        if i == 0:
            row[p - 2] = 1
        rows.append(row)
    return Gf2Matrix.from_lists(rows, p - 1)
