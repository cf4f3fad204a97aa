"""Braid words, Markov moves and trace closure.

A letter ``g > 0`` is the Artin generator sigma_g (strand at position ``g``
crosses *over* the strand at ``g + 1``, a positive crossing); ``g < 0`` is
its inverse.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .diagram import Crossing, LinkDiagram, _UF
from .errors import BraidError


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if not isinstance(self.strands, int) or self.strands < 1:
            raise BraidError(f"strand count must be a positive integer, got {self.strands!r}")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise BraidError(f"letter {g} invalid on {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return f"{self.strands}: " + " ".join(str(g) for g in self.letters) if self.letters else f"{self.strands}:"

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("strand-count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)


def parse_braid(text: str) -> BraidWord:
    """Parse ``"n: g1 g2 ... gk"``."""
    head, sep, body = text.partition(":")
    if not sep:
        raise BraidError(f"braid word needs an 'n:' prefix: {text!r}")
    try:
        n = int(head.strip())
        letters = tuple(int(tok) for tok in body.split())
    except ValueError:
        raise BraidError(f"malformed braid word {text!r}") from None
    return BraidWord(n, letters)


def writhe(b: BraidWord) -> int:
    return sum(1 if g > 0 else -1 for g in b.letters)


def permutation(b: BraidWord) -> tuple[int, ...]:
    """Image of ``b`` in Sym_n as a tuple of images of ``1..n``.

    Letters map to transpositions and words to composites, with the usual
    right-to-left composition, so this is a group homomorphism.
    """
    perm = list(range(1, b.strands + 1))
    for g in b.letters:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def _invert(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p, start=1):
        out[v - 1] = i
    return tuple(out)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p o q`` (apply ``q`` first)."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def cycle_count(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    n = 0
    for i in range(len(p)):
        if not seen[i]:
            n += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j] - 1
    return n


def conjugate(b: BraidWord, s: BraidWord) -> BraidWord:
    """``s . b . s^-1``."""
    if b.strands != s.strands:
        raise BraidError("strand-count mismatch")
    return s * b * s.inverse()


def stabilize(b: BraidWord, sign: int) -> BraidWord:
    """Markov II: append sigma_n^(+-1) on a new strand ``n + 1``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))


def destabilize(b: BraidWord) -> BraidWord | None:
    """Inverse of :func:`stabilize` when it is syntactically safe, else ``None``."""
    n = b.strands
    if n < 2 or not b.letters or abs(b.letters[-1]) != n - 1:
        return None
    if sum(1 for g in b.letters if abs(g) == n - 1) != 1:
        return None
    return BraidWord(n - 1, b.letters[:-1])


def double(b: BraidWord) -> BraidWord:
    """``b x id`` in Br_2n (letters unchanged)."""
    return BraidWord(2 * b.strands, b.letters)


def closure(b: BraidWord) -> LinkDiagram:
    """Trace closure as an oriented PD with one crossing per letter.

    Strands run upward; edge ids are numbered consecutively along each
    component in the direction of travel.
    """
    n = b.strands
    bottom = list(range(1, n + 1))
    cur = list(bottom)
    next_id = n + 1
    raw = []
    for g in b.letters:
        i = abs(g) - 1
        l_in, r_in = cur[i], cur[i + 1]
        l_out, r_out = next_id, next_id + 1  # l_out: left strand, now at i+1
        next_id += 2
        if g > 0:
            raw.append((r_in, l_out, r_out, l_in))
        else:
            raw.append((l_in, r_in, l_out, r_out))
        cur[i], cur[i + 1] = r_out, l_out

    uf = _UF(range(1, next_id))
    for p in range(n):
        uf.union(cur[p], bottom[p])
    crossings = tuple(
        Crossing(tuple(uf.find(e) for e in t), 1 if g > 0 else -1) for t, g in zip(raw, b.letters)
    )
    used = {e for x in crossings for e in x.edges}
    circles = sorted({uf.find(bottom[p]) for p in range(n)} - used)
    return _relabel_consecutive(LinkDiagram(crossings, tuple(circles)))


def _relabel_consecutive(d: LinkDiagram) -> LinkDiagram:
    mapping = {}
    nxt = 1
    for comp in d.components():
        for e in comp:
            mapping[e] = nxt
            nxt += 1
    cr = tuple(Crossing(tuple(mapping[e] for e in x.edges), x.sign) for x in d.crossings)
    return LinkDiagram(cr, tuple(mapping[e] for e in d.circles))


# ---------------------------------------------------------------------------
# random Markov walks
# ---------------------------------------------------------------------------

MOVES = ("conjugate", "braid_relation", "far_commute", "stabilize", "destabilize")


def _free_reduce(letters: list[int]) -> list[int]:
    out: list[int] = []
    for g in letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return out


def _braid_relation_sites(letters):
    sites = []
    for k in range(len(letters) - 2):
        a, b, c = letters[k:k + 3]
        if a == c and (a > 0) == (b > 0) and abs(abs(a) - abs(b)) == 1:
            sites.append(k)
    return sites


def _far_sites(letters):
    return [k for k in range(len(letters) - 1) if abs(abs(letters[k]) - abs(letters[k + 1])) >= 2]


def markov_step(b: BraidWord, rng: random.Random, max_strands: int, max_letters: int) -> tuple[BraidWord, str]:
    """Apply one randomly chosen applicable move; returns the new word and the move name."""
    letters = list(b.letters)
    n = b.strands
    options = []
    if n >= 2:
        options.append("conjugate")
    if _braid_relation_sites(letters):
        options.append("braid_relation")
    if _far_sites(letters):
        options.append("far_commute")
    if n < max_strands and len(letters) < max_letters:
        options.append("stabilize")
    if destabilize(b) is not None:
        options.append("destabilize")
    if not options:
        return b, "identity"
    move = rng.choice(options)
    if move == "conjugate":
        if letters and rng.random() < 0.5:
            # conjugation by the inverse of the first letter: cyclic rotation
            letters = letters[1:] + letters[:1]
        else:
            g = rng.choice([1, -1]) * rng.randint(1, n - 1)
            conj = _free_reduce([g] + letters + [-g])
            if len(conj) <= max(max_letters, len(letters)):
                letters = conj
            elif letters:
                letters = letters[1:] + letters[:1]
        return BraidWord(n, tuple(letters)), move
    if move == "braid_relation":
        k = rng.choice(_braid_relation_sites(letters))
        a, b_, _ = letters[k:k + 3]
        letters[k:k + 3] = [b_, a, b_]
        return BraidWord(n, tuple(letters)), move
    if move == "far_commute":
        k = rng.choice(_far_sites(letters))
        letters[k], letters[k + 1] = letters[k + 1], letters[k]
        return BraidWord(n, tuple(letters)), move
    if move == "stabilize":
        return stabilize(b, rng.choice([1, -1])), move
    return destabilize(b), move


def random_markov_walk(
    b: BraidWord,
    steps: int,
    seed: int,
    *,
    max_strands: int | None = None,
    max_letters: int | None = None,
) -> BraidWord:
    """Seeded random sequence of Markov moves and braid relations.

    The closure of the result is isotopic to the closure of ``b``.  Growth is
    bounded: stabilizations stop at ``max_strands`` strands or ``max_letters``
    letters (defaults: ``b.strands + 2`` and ``len(b) + 4``).
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    max_strands = b.strands + 2 if max_strands is None else max_strands
    max_letters = len(b) + 4 if max_letters is None else max_letters
    for _ in range(steps):
        b, _move = markov_step(b, rng, max_strands, max_letters)
    return b
