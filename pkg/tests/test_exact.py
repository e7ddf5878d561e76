from fractions import Fraction as F
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schubsig.exact import det, fstr, inertia, leading_minors, parse_fraction


def leibniz(a):
    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term *= a[i][perm[i]]
        total += term
    return total


small = st.integers(-4, 4)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_against_leibniz(a):
    assert det(a) == leibniz(a)


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inertia_against_eigenvalues(b):
    n = len(b)
    a = [[b[i][j] + b[j][i] for j in range(n)] for i in range(n)]
    eig = np.linalg.eigvalsh(np.array(a, dtype=float))
    pos, neg, zero = inertia(a)
    assert (pos, neg) == (int(np.sum(eig > 1e-9)), int(np.sum(eig < -1e-9)))
    assert pos + neg + zero == n


def test_inertia_zero_diagonal():
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[0, 0], [0, 0]]) == (0, 0, 2)


def test_leading_minors():
    assert leading_minors([[2, 1], [1, 1]]) == [2, 1]


def test_fraction_format():
    assert fstr(F(-3, 6)) == "-1/2"
    assert fstr(4) == "4/1"
    assert parse_fraction("9/2") == F(9, 2)
    assert parse_fraction(3) == 3
    with pytest.raises(ValueError):
        parse_fraction(True)
    with pytest.raises(ValueError):
        parse_fraction(0.5)
