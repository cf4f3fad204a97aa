"""khkit: link invariants from braids and PD codes, with slice-lab checks.

The most used entry points are re-exported here; see the submodules for
the rest.
"""

from .braid import BraidWord, closure, parse_braid, random_markov_walk
from .diagram import (
    Crossing,
    LinkDiagram,
    mirror,
    parse_pd,
    resolve_all,
    smooth_crossing,
    switch_crossing,
    unlink_diagram,
)
from .homology import FreeComplex, HomologySummand, IntMatrix, homology, mapping_cone, smith_normal_form
from .khovanov import (
    cone_decomposition,
    collapsed_grading,
    graded_euler,
    kh_complex,
    kh_homology,
    verify_triangle_gradings,
)
from .laurent import HalfLaurent
from .polynomials import (
    alexander_skein,
    jones_bracket,
    jones_skein,
    substitute_q_minus_sqrt_t,
    verify_refined_skein,
    verify_skein_triple,
)

__version__ = "0.1.0"

__all__ = [
    "BraidWord", "Crossing", "FreeComplex", "HalfLaurent", "HomologySummand", "IntMatrix",
    "LinkDiagram", "alexander_skein", "closure", "collapsed_grading", "cone_decomposition",
    "graded_euler", "homology", "jones_bracket", "jones_skein", "kh_complex", "kh_homology",
    "mapping_cone", "mirror", "parse_braid", "parse_pd", "random_markov_walk", "resolve_all",
    "smith_normal_form", "smooth_crossing", "substitute_q_minus_sqrt_t", "switch_crossing",
    "unlink_diagram", "verify_refined_skein", "verify_skein_triple", "verify_triangle_gradings",
]
