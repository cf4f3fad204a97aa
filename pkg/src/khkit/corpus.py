"""A fixed corpus of small links given as braid closures.

Every entry has at most 4 strands and at most 8 crossings.  Names follow
the usual knot-table labels where the braid word is the standard one;
otherwise the entry is named after its shape.
"""

from __future__ import annotations

from .braid import BraidWord, closure, parse_braid
from .diagram import LinkDiagram

CORPUS: dict[str, str] = {
    "unknot": "1:",
    "unlink_2": "2:",
    "unlink_3": "3:",
    "unlink_4": "4:",
    "unknot_kink_pos": "2: 1",
    "unknot_kink_neg": "2: -1",
    "unknot_twisted": "3: 1 -2",
    "hopf_pos": "2: 1 1",
    "hopf_neg": "2: -1 -1",
    "trefoil_right": "2: 1 1 1",
    "trefoil_left": "2: -1 -1 -1",
    "torus_2_4": "2: 1 1 1 1",
    "figure_eight": "3: 1 -2 1 -2",
    "cinquefoil": "2: 1 1 1 1 1",
    "three_twist": "3: 1 1 1 2 -1 2",
    "torus_2_6": "2: 1 1 1 1 1 1",
    "stevedore": "4: 1 1 2 -1 -3 2 -3",
    "knot_6_2": "3: -1 2 -1 2 2 2",
    "knot_6_3": "3: 1 1 -2 1 -2 -2",
    "borromean": "3: 1 -2 1 -2 1 -2",
    "torus_3_3": "3: 1 2 1 2 1 2",
    "septafoil": "2: 1 1 1 1 1 1 1",
    "torus_2_8": "2: 1 1 1 1 1 1 1 1",
    "torus_3_4": "3: 1 2 1 2 1 2 1 2",
    "three_strand_pretzel": "3: 1 1 1 -2 -1 -1 -1 -2",
    "trefoil_split_unknot": "3: 1 1 1",
    "hopf_split_hopf": "4: 1 1 3 3",
    "granny": "3: 1 1 1 2 2 2",
    "square": "3: 1 1 1 -2 -2 -2",
    "chain_4": "4: 1 1 2 2 3 3",
    "twisted_chain_3": "3: 1 1 -2 1 1 -2",
    "four_strand_mix": "4: 1 -2 3 -2 1 -2 3 -2",
}


def corpus_braids() -> dict[str, BraidWord]:
    return {name: parse_braid(w) for name, w in CORPUS.items()}


def corpus_diagrams() -> dict[str, LinkDiagram]:
    return {name: closure(b) for name, b in corpus_braids().items()}
