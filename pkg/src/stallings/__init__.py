"""Stallings automata for finitely generated subgroups of free groups."""

from ._backend import BACKEND
from .automaton import (
    Automaton,
    DisconnectedError,
    NotDeterministicError,
    bouquet,
    core,
    flower,
    from_text,
    graph_rank,
    isomorphic_based,
    isomorphic_unbased,
    product,
    product_component,
    read_path,
    read_word,
    restricted_core,
    spanning_tree,
    to_dot,
    to_text,
)
from .enumeration import EnumerationTooLarge, enumerate_index_subgroups
from .folding import FoldEvent, FoldingTrace, PetalWord, fold_to_completion, lift_path, loss, petal_decompose
from .subgroup import (
    IndexData,
    ShnAudit,
    Subgroup,
    are_conjugate,
    coset_intersect,
    contains,
    express,
    finite_index_data,
    hall_completion,
    intersect,
    is_basis,
    is_free_family,
    is_generating,
    is_normal,
    is_normal_graphical,
    make,
    shn_audit,
)
from .words import (
    Alphabet,
    AlphabetError,
    Word,
    WordSyntaxError,
    exponent_sum,
    invert,
    multiply,
    parse_word,
    reduce,
)

__version__ = "0.1.0"
