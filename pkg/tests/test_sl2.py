from khkit.slicelab import sl2_word_check, word_power
from khkit.slicelab.sl2 import I2


def test_identity_at_multiples_of_six():
    for n in range(1, 11):
        assert sl2_word_check(n)


def test_truncations_are_not_identity():
    for k in range(1, 60):
        assert (word_power(k) == I2) == (k % 6 == 0)


def test_order_three_element():
    # AB has order 6 with (AB)^3 = -I
    assert word_power(3) == ((-1, 0), (0, -1))
