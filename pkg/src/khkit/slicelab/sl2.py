"""The word ``(AB)^k`` in SL(2, Z) with ``A = [[1,1],[0,1]]``, ``B = [[1,0],[-1,1]]``."""

from __future__ import annotations

A = ((1, 1), (0, 1))
B = ((1, 0), (-1, 1))
I2 = ((1, 0), (0, 1))


def matmul2(x, y):
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def word_power(k: int):
    """``(AB)^k`` by repeated multiplication (k >= 0)."""
    ab = matmul2(A, B)
    out = I2
    for _ in range(k):
        out = matmul2(out, ab)
    return out


def sl2_word_check(n: int) -> bool:
    """True iff ``(AB)^(6n)`` is the identity."""
    if n < 1:
        raise ValueError("n must be positive")
    return word_power(6 * n) == I2
