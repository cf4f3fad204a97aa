import pytest

from khkit.errors import CapExceededError
from khkit.slicelab import catalan, enumerate_matchings, horseshoe, is_noncrossing

from oracles import brute_force_matchings


def test_catalan_counts():
    assert [catalan(m) for m in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]
    assert len(enumerate_matchings(8)) == 1430


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_against_brute_force(m):
    assert set(enumerate_matchings(m)) == brute_force_matchings(m)


def test_matchings_are_distinct_and_noncrossing():
    ms = enumerate_matchings(6)
    assert len(set(ms)) == len(ms)
    assert all(is_noncrossing(x) for x in ms)


def test_horseshoe():
    assert horseshoe(3) == ((1, 6), (2, 5), (3, 4))
    for m in range(1, 8):
        assert tuple(sorted(horseshoe(m))) in enumerate_matchings(m)


def test_noncrossing_detector():
    assert not is_noncrossing(((1, 3), (2, 4)))
    assert is_noncrossing(((1, 4), (2, 3)))


def test_cap_and_bad_input():
    with pytest.raises(CapExceededError):
        enumerate_matchings(13)
    with pytest.raises(ValueError):
        enumerate_matchings(0)
