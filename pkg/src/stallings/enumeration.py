"""Subgroups of a given finite index, via transitive permutation actions."""

from __future__ import annotations

from math import factorial

from ._backend import enumerate_canonical_actions
from .automaton import Automaton
from .subgroup import Subgroup
from .words import Alphabet

DEFAULT_MAX_TUPLES = 5_000_000


class EnumerationTooLarge(ValueError):
    pass


def action_automaton(alphabet: Alphabet, flat: tuple[int, ...], k: int) -> Automaton:
    """Saturated automaton on points ``0..k-1``, based at 0, from a flat action."""
    A = Automaton(alphabet)
    for _ in range(k - 1):
        A.add_vertex()
    for j in range(alphabet.rank):
        for x in range(k):
            A.add_arc(x, j + 1, flat[j * k + x])
    return A


def enumerate_index_subgroups(alphabet: Alphabet, k: int, max_tuples: int = DEFAULT_MAX_TUPLES) -> list[Subgroup]:
    """Every subgroup of index exactly ``k``, sorted by canonical action.

    Brute force over ``(k!)^n`` tuples of permutations, keeping those that
    are transitive and already in BFS-canonical labelling.  Raises
    ``EnumerationTooLarge`` past ``max_tuples``.
    """
    if k < 1:
        raise ValueError(f"index must be positive, got {k}")
    total = factorial(k) ** alphabet.rank
    if total > max_tuples:
        raise EnumerationTooLarge(
            f"{total} permutation tuples for rank {alphabet.rank}, index {k} (cap {max_tuples})"
        )
    actions = enumerate_canonical_actions(alphabet.rank, k)
    return [Subgroup.from_automaton(action_automaton(alphabet, flat, k)) for flat in actions]
