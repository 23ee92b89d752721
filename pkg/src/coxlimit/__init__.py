"""Coxeter groups, infinite reduced words, their limits and blocks."""

from .core import (CoxeterError, CoxeterMatrix, Root, inversion_roots,
                   is_reduced, load_coxeter_matrix, parse_coxeter_matrix,
                   parse_word, subgroup_classify)
from .epwords import EPWord, boundary_reflections, root_membership
from .order import (block_fiber_poset, braid_limit_leq, canonical_generators,
                    ends_count, moussong_hyperbolic, same_block, wxi_group)

__all__ = [
    "CoxeterError", "CoxeterMatrix", "EPWord", "Root", "block_fiber_poset",
    "boundary_reflections", "braid_limit_leq", "canonical_generators",
    "ends_count", "inversion_roots", "is_reduced", "load_coxeter_matrix",
    "moussong_hyperbolic", "parse_coxeter_matrix", "parse_word",
    "root_membership", "same_block", "subgroup_classify", "wxi_group",
]
