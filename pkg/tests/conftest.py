"""Shared fixtures: the example corpus and small construction helpers."""

from fractions import Fraction

import pytest

from specrig.matrf import MatRF
from specrig.parsing import parse_expression, parse_problem
from specrig.ratfn import INFINITY


AIRY = """\
poles inf
matrix
0, 1
z, 0
end
"""

FUCHSIAN = """\
poles 0, inf
matrix
(1/2)/z, 0
0, (1/3)/z
end
"""

RANK1_IRREGULAR = """\
poles 0
matrix
1/z^2
end
"""

RANK1_REGULAR = """\
poles 0, inf
matrix
5/z
end
"""

BESSEL = """\
poles 0, inf
matrix
0, 1
1/z, 0
end
"""


def gen_airy(k: int) -> str:
    return f"poles inf\nmatrix\n0, 1\nz^{k}, 0\nend\n"


CORPUS = {
    "airy": AIRY,
    "gen_airy_3": gen_airy(3),
    "gen_airy_5": gen_airy(5),
    "fuchsian": FUCHSIAN,
    "rank1_irregular": RANK1_IRREGULAR,
    "rank1_regular": RANK1_REGULAR,
}


@pytest.fixture
def corpus():
    return dict(CORPUS)


def mat(rows):
    """MatRF from a list of lists of expression strings."""
    return MatRF([[parse_expression(cell) for cell in row] for row in rows])


def problem(text):
    return parse_problem(text)


@pytest.fixture
def airy_matrix():
    return mat([["0", "1"], ["z", "0"]])


@pytest.fixture
def fuchsian_matrix():
    return mat([["(1/2)/z", "0"], ["0", "(1/3)/z"]])


INF_POINT = INFINITY
ZERO = Fraction(0)
