import random

import pytest
from hypothesis import given, strategies as st

from khkit.braid import (
    BraidWord,
    closure,
    compose,
    conjugate,
    cycle_count,
    destabilize,
    double,
    parse_braid,
    permutation,
    random_markov_walk,
    stabilize,
    writhe,
    _invert,
)
from khkit.errors import BraidError


@st.composite
def braids(draw, max_strands=4, max_len=8):
    n = draw(st.integers(1, max_strands))
    if n == 1:
        return BraidWord(1, ())
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g])), max_size=max_len))
    return BraidWord(n, tuple(letters))


def test_writhe_examples():
    assert writhe(BraidWord(2, (1, 1, 1))) == 3
    assert writhe(BraidWord(3, ())) == 0
    assert writhe(BraidWord(2, (1, -1, 1, -1, 1))) == 1


def test_permutation_examples():
    assert permutation(BraidWord(2, (1,))) == (2, 1)
    assert permutation(BraidWord(3, (1, 2, 1))) == permutation(BraidWord(3, (2, 1, 2))) == (3, 2, 1)
    assert permutation(BraidWord(3, ())) == (1, 2, 3)


def test_conjugate_examples():
    assert conjugate(BraidWord(2, (1,)), BraidWord(2, ())) == BraidWord(2, (1,))
    assert conjugate(BraidWord(3, (1,)), BraidWord(3, (2,))).letters == (2, 1, -2)
    with pytest.raises(BraidError):
        conjugate(BraidWord(2, (1,)), BraidWord(3, ()))


def test_stabilize_and_double():
    assert stabilize(BraidWord(1, ()), 1) == BraidWord(2, (1,))
    b = BraidWord(3, (1, -2))
    assert writhe(stabilize(b, -1)) == writhe(b) - 1
    assert double(BraidWord(2, (1,))) == BraidWord(4, (1,))
    assert permutation(double(b))[3:] == (4, 5, 6)


def test_destabilize_only_when_safe():
    assert destabilize(BraidWord(3, (1, 2))) == BraidWord(2, (1,))
    assert destabilize(BraidWord(3, (2, 1, 2))) is None
    assert destabilize(BraidWord(3, (1,))) is None


def test_closure_examples():
    d = closure(BraidWord(1, ()))
    assert d.n_crossings == 0 and d.n_components == 1
    t = closure(BraidWord(2, (1, 1, 1)))
    assert t.n_crossings == 3 and t.n_components == 1 and t.writhe == 3
    h = closure(BraidWord(2, (1, 1)))
    assert h.n_crossings == 2 and h.n_components == 2


def test_parse_braid_text():
    assert parse_braid("2: 1 1 1") == BraidWord(2, (1, 1, 1))
    assert parse_braid("3:") == BraidWord(3, ())
    assert str(BraidWord(2, (1, -1))) == "2: 1 -1"
    for bad in ["1 1 1", "2: 2", "0:", "2: x", "2: 0"]:
        with pytest.raises(BraidError):
            parse_braid(bad)


@given(braids(), st.data())
def test_conjugation_is_a_homomorphism(b, data):
    n = b.strands
    s = data.draw(braids(max_strands=n).filter(lambda x: x.strands == n)) if n > 1 else BraidWord(1, ())
    p, q = permutation(b), permutation(s)
    assert permutation(conjugate(b, s)) == compose(compose(q, p), _invert(q))


@given(braids())
def test_components_match_cycles(b):
    assert closure(b).n_components == cycle_count(permutation(b))
    d = closure(b)
    assert [x.sign for x in d.crossings] == [1 if g > 0 else -1 for g in b.letters]


@given(braids(), st.integers(0, 30), st.integers(0, 10**6))
def test_walk_is_deterministic_and_bounded(b, steps, seed):
    w1 = random_markov_walk(b, steps, seed)
    w2 = random_markov_walk(b, steps, seed)
    assert w1 == w2
    assert w1.strands <= b.strands + 2
    assert len(w1) <= len(b) + 4
    assert cycle_count(permutation(w1)) == cycle_count(permutation(b))


def test_walk_with_zero_steps_is_identity():
    b = BraidWord(3, (1, -2, 1))
    assert random_markov_walk(b, 0, 123) == b
