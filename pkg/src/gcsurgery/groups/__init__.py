from .abelian import AbelianInvariants, abelianize, smith_diagonal
from .cosets import CosetOutcome, enumerate_cosets
from .identify import (GroupIdentification, GroupTag, IdentifyBudgets, describe_tag,
                       identify_and_simplify, identify_group, match_standard_form,
                       parse_group_text)
from .presentation import Presentation, free_product, quotient
from .tietze import simplify_presentation, simplify_with_trace
from .words import FreeWord, commutator_word, cyclically_reduce, parse_word, reduce_word

__all__ = [
    "AbelianInvariants", "abelianize", "smith_diagonal", "CosetOutcome", "enumerate_cosets",
    "GroupIdentification", "GroupTag", "IdentifyBudgets", "describe_tag", "identify_and_simplify",
    "identify_group", "match_standard_form", "parse_group_text", "Presentation", "free_product",
    "quotient", "simplify_presentation", "simplify_with_trace", "FreeWord", "commutator_word",
    "cyclically_reduce", "parse_word", "reduce_word",
]
