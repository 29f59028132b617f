import numpy as np
import pytest

import gf2


def test_rank_counts_mod_two() -> None:
    assert gf2.rank([[1, 1], [1, 1]]) == 1
    assert gf2.rank([[1, 0], [0, 1]]) == 2
    assert gf2.rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2
    assert gf2.rank(np.zeros((0, 3), dtype=np.uint8)) == 0


def test_nullspace_vectors_are_killed() -> None:
    M = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    N = gf2.nullspace(M)
    assert N.shape == (1, 3)
    assert not (M.dot(N[0]) & 1).any()
    assert N[0].tolist() == [1, 1, 1]


def test_nullspace_of_empty_rows_is_identity() -> None:
    assert gf2.nullspace(np.zeros((0, 2), dtype=np.uint8)).tolist() == [[1, 0], [0, 1]]


def test_inverse() -> None:
    M = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    inv = gf2.inverse(M)
    assert (M.dot(inv) & 1).tolist() == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        gf2.inverse([[1, 1], [1, 1]])


def test_in_span() -> None:
    rows = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    assert gf2.in_span([1, 0, 1], rows)
    assert not gf2.in_span([1, 0, 0], rows)
    assert gf2.in_span([0, 0, 0], np.zeros((0, 3), dtype=np.uint8))


def test_rref_does_not_touch_input() -> None:
    M = np.array([[0, 1], [1, 1]], dtype=np.uint8)
    R, piv = gf2.rref(M)
    assert piv == [0, 1]
    assert R.tolist() == [[1, 0], [0, 1]]
    assert M.tolist() == [[0, 1], [1, 1]]
