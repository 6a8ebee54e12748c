"""Finitely generated subgroups of a free group via their Stallings automata."""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .automaton import (
    Automaton,
    bouquet,
    core,
    flower,
    graph_rank,
    isomorphic_based,
    isomorphic_unbased,
    product,
    product_component,
    read_path,
    read_word,
    restricted_core,
    tree_paths,
)
from .folding import FoldingTrace, PetalWord, fold_to_completion, lift_path, loss, petal_decompose
from .words import Alphabet, AlphabetError, Word, invert, parse_word

WordLike = Word | str


def _word(alphabet: Alphabet, w: WordLike) -> Word:
    if isinstance(w, str):
        return parse_word(w, alphabet)
    if w.alphabet != alphabet:
        raise AlphabetError(f"word {str(w)!r} has rank {w.alphabet.rank}, expected {alphabet.rank}")
    return w


def basis_of(A: Automaton, paths: dict | None = None) -> list[Word]:
    """Basis read off a deterministic connected automaton and a BFS tree.

    One word per arc outside the tree: tree path to its source, the arc, tree
    path back from its target.  Arcs are taken in id order.
    """
    paths = tree_paths(A) if paths is None else paths
    tree = {p[-1][0] for p in paths.values() if p}
    out = []
    for e, src, label, dst in A.arcs():
        if e in tree:
            continue
        there = A.path_label(paths[src])
        back = A.path_label(paths[dst])
        out.append(Word(A.alphabet, there + (label,) + tuple(-x for x in reversed(back)), _checked=True))
    return out


class Subgroup:
    """``<generators>`` together with its Stallings automaton and a basis.

    Instances are immutable after construction.  ``trace`` folds the flower
    of ``generators`` and is what membership witnesses are lifted through.
    """

    def __init__(self, alphabet: Alphabet, generators: Iterable[WordLike]):
        self.alphabet = alphabet
        self.generators = tuple(_word(alphabet, g) for g in generators)
        folded, self.trace = fold_to_completion(flower(alphabet, self.generators))
        self.stallings = core(folded)
        self._paths = tree_paths(self.stallings)
        self.tree = frozenset(p[-1][0] for p in self._paths.values() if p)
        self.basis = tuple(basis_of(self.stallings, self._paths))

    @classmethod
    def from_automaton(cls, A: Automaton) -> Subgroup:
        """The subgroup recognised by a deterministic connected automaton."""
        return cls(A.alphabet, basis_of(A))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def reduced_rank(self) -> int:
        return max(0, self.rank - 1)

    def is_trivial(self) -> bool:
        return self.stallings.num_arcs == 0

    def __contains__(self, w: WordLike) -> bool:
        return contains(self, w)

    def coset_vertex(self, w: WordLike) -> int | None:
        """Vertex reached reading ``w`` from the basepoint, if readable."""
        return read_word(self.stallings, self.stallings.basepoint, _word(self.alphabet, w), check=False)

    def __repr__(self):
        gens = ", ".join(str(g) or "1" for g in self.generators)
        return f"<Subgroup <{gens}> rank={self.rank} |V|={self.stallings.num_vertices}>"


def make(alphabet: Alphabet, generators: Iterable[WordLike]) -> Subgroup:
    return Subgroup(alphabet, generators)


# -- membership ---------------------------------------------------------------------


def contains(H: Subgroup, w: WordLike) -> bool:
    return H.coset_vertex(w) == H.stallings.basepoint


def express(H: Subgroup, w: WordLike) -> PetalWord | None:
    """Write ``w`` as a product of ``H.generators``; None if ``w`` is not in H.

    Indices in the returned product are 1-based positions in
    ``H.generators``.
    """
    w = _word(H.alphabet, w)
    St = H.stallings
    path = read_path(St, St.basepoint, w)
    if path is None or (path and St.step_end(*path[-1])[1] != St.basepoint):
        return None
    lifted = lift_path(H.trace, path)
    witness = petal_decompose(H.trace.initial, lifted)
    if witness.evaluate(H.generators, H.alphabet) != w:
        raise RuntimeError(f"witness {witness} does not evaluate to {w}")
    return witness


# -- generating sets ------------------------------------------------------------------


def is_free_family(alphabet: Alphabet, S: Sequence[WordLike]) -> bool:
    words = [_word(alphabet, s) for s in S]
    if any(not w for w in words):
        return False
    return loss(flower(alphabet, words)) == 0


def is_generating(alphabet: Alphabet, S: Sequence[WordLike]) -> bool:
    H = Subgroup(alphabet, S)
    return isomorphic_based(H.stallings, bouquet(alphabet)) is not None


def is_basis(alphabet: Alphabet, S: Sequence[WordLike]) -> bool:
    return len(S) == alphabet.rank and is_generating(alphabet, S)


# -- index ------------------------------------------------------------------------


class IndexData(NamedTuple):
    index: int
    transversal: list[Word]


def finite_index_data(H: Subgroup) -> IndexData | None:
    """Index and right-coset representatives, or None for infinite index.

    Representatives are labels of spanning-tree geodesics, identity first and
    then in BFS order.
    """
    St = H.stallings
    if not St.is_saturated():
        return None
    reps = [Word(H.alphabet, St.path_label(p), _checked=True) for p in H._paths.values()]
    return IndexData(St.num_vertices, reps)


# -- conjugacy and normality ------------------------------------------------------


def is_normal(H: Subgroup) -> bool:
    """Every generator conjugated by every letter stays in H."""
    gens = [g for g in H.generators if g]
    for x in H.alphabet.letters():
        z = Word(H.alphabet, (x,), _checked=True)
        for g in gens:
            if not contains(H, g.conjugate(z)):
                return False
    return True


def is_normal_graphical(H: Subgroup) -> bool:
    """Normality read off the automaton: saturated and vertex-transitive."""
    St = H.stallings
    if H.is_trivial():
        return True
    if not St.is_saturated():
        return False
    return all(isomorphic_based(St.rebased(v), St) is not None for v in St.vertices)


def are_conjugate(H: Subgroup, K: Subgroup) -> Word | None:
    """Some ``w`` with ``w^-1 H w == K``, or None."""
    if H.alphabet != K.alphabet:
        raise AlphabetError("subgroups live in different free groups")
    if H.is_trivial() or K.is_trivial():
        return H.alphabet.identity() if H.is_trivial() and K.is_trivial() else None
    dh, p, u = restricted_core(H.stallings)
    dk, q, v = restricted_core(K.stallings)
    psi = isomorphic_unbased(dh, dk)
    if psi is None:
        return None
    t = dk.path_label(tree_paths(dk, psi[p])[q])
    w = u * Word(H.alphabet, t, _checked=True) * invert(v)
    if not (all(contains(K, g.conjugate(w)) for g in H.basis)
            and all(contains(H, g.conjugate(invert(w))) for g in K.basis)):
        raise RuntimeError(f"conjugator {w} failed verification")
    return w


# -- intersections ------------------------------------------------------------------


def intersect(H: Subgroup, K: Subgroup) -> Subgroup:
    if H.alphabet != K.alphabet:
        raise AlphabetError("subgroups live in different free groups")
    P = core(product_component(H.stallings, K.stallings))
    return Subgroup.from_automaton(P)


class ShnAudit(NamedTuple):
    component_rrks: list[int]
    total: int
    howson_bound: int
    strong_bound: int

    @property
    def holds(self) -> bool:
        return self.total <= self.strong_bound


def _cyclic_core_rank(P: Automaton, comp: list[int]) -> int:
    alive = set(comp)
    deg = {v: P.degree(v) for v in comp}
    stack = [v for v in comp if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for e, d in P.incident(v):
            u = P.step_end(e, d)[1]
            if u in alive:
                deg[u] -= 1
                if deg[u] <= 1:
                    stack.append(u)
    if not alive:
        return 0
    arcs = sum(1 for _, s, _, t in P.arcs() if s in alive and t in alive)
    return 1 - len(alive) + arcs


def shn_audit(H: Subgroup, K: Subgroup) -> ShnAudit:
    """Reduced ranks of every component of the full product, with both bounds."""
    P = product(H.stallings, K.stallings)
    rrks = [max(0, _cyclic_core_rank(P, comp) - 1) for comp in P.components()]
    return ShnAudit(rrks, sum(rrks), 2 * H.reduced_rank * K.reduced_rank, H.reduced_rank * K.reduced_rank)


def _with_hair(A: Automaton, w: Word) -> tuple[Automaton, int]:
    """Copy of ``A`` extended so that ``w`` reads from the basepoint."""
    B = A.copy()
    v = B.basepoint
    for x in w:
        nxt = B.step(v, x)
        if nxt is None:
            nxt = B.add_vertex()
            if x > 0:
                B.add_arc(v, x, nxt)
            else:
                B.add_arc(nxt, -x, v)
        v = nxt
    return B, v


def coset_intersect(H: Subgroup, u: WordLike, K: Subgroup, v: WordLike) -> Word | None:
    """Some ``w`` with ``Hw == Hu`` and ``Kw == Kv``, or None if ``Hu`` and ``Kv`` are disjoint."""
    if H.alphabet != K.alphabet:
        raise AlphabetError("subgroups live in different free groups")
    u, v = _word(H.alphabet, u), _word(H.alphabet, v)
    AH, p = _with_hair(H.stallings, u)
    AK, q = _with_hair(K.stallings, v)
    P = product_component(AH, AK)
    target = P.index.get((p, q))
    if target is None:
        return None
    w = Word(H.alphabet, P.path_label(tree_paths(P)[target]), _checked=True)
    if not (contains(H, w * invert(u)) and contains(K, w * invert(v))):
        raise RuntimeError(f"coset representative {w} failed verification")
    return w


# -- Hall completion ------------------------------------------------------------------


def hall_completion(H: Subgroup) -> Subgroup:
    """A finite-index ``K`` having ``H`` as a free factor.

    Deficient vertices are paired positionally in BFS order, one label at a
    time.  ``K.generators`` starts with ``H.basis`` and continues with one word
    per added arc, all read along the spanning tree of ``St(H)``; together
    they form a basis of ``K``.
    """
    St = H.stallings
    if St.is_saturated():
        return H
    B = St.copy()
    order = list(H._paths)
    added = []
    for a in range(1, H.alphabet.rank + 1):
        outs = [v for v in order if B.step(v, a) is None]
        ins = [v for v in order if B.step(v, -a) is None]
        for p, q in zip(outs, ins):
            added.append((p, a, q))
            B.add_arc(p, a, q)
    extra = []
    for p, a, q in added:
        there = St.path_label(H._paths[p])
        back = St.path_label(H._paths[q])
        extra.append(Word(H.alphabet, there + (a,) + tuple(-x for x in reversed(back)), _checked=True))
    return Subgroup(H.alphabet, list(H.basis) + extra)


__all__ = [
    "IndexData",
    "PetalWord",
    "ShnAudit",
    "Subgroup",
    "are_conjugate",
    "basis_of",
    "coset_intersect",
    "contains",
    "express",
    "finite_index_data",
    "graph_rank",
    "hall_completion",
    "intersect",
    "is_basis",
    "is_free_family",
    "is_generating",
    "is_normal",
    "is_normal_graphical",
    "make",
    "shn_audit",
]
