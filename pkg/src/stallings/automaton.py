"""Finite involutive automata over a ranked alphabet.

Only positive arcs are stored; reading ``a^-1`` means traversing an
``a``-arc backwards.  Vertex and arc ids are small ints handed out by
counters and never reused, so ids recorded elsewhere (folding traces,
spanning trees) stay meaningful after deletions.

A *path* is a list of ``(arc_id, direction)`` steps, direction ``+1`` for
source-to-target and ``-1`` for target-to-source.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple

from .words import Alphabet, AlphabetError, Word, format_letters, letter_name, parse_letters


class NotDeterministicError(ValueError):
    pass


class DisconnectedError(ValueError):
    pass


class Automaton:
    """A based involutive automaton, represented by its positive part."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._arcs: dict[int, tuple[int, int, int]] = {}
        self._out: dict[int, dict[int, list[int]]] = {}
        self._in: dict[int, dict[int, list[int]]] = {}
        self._next_vertex = 0
        self._next_arc = 0
        # (generator index, petal path) pairs when built by flower()
        self.petals: tuple[tuple[int, tuple[tuple[int, int], ...]], ...] | None = None
        self.basepoint = self.add_vertex()

    # -- construction ------------------------------------------------------

    def add_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self._out[v] = {}
        self._in[v] = {}
        return v

    def add_arc(self, src: int, label: int, dst: int) -> int:
        if label < 1 or label > self.alphabet.rank:
            raise AlphabetError(f"arc label {label} outside alphabet of rank {self.alphabet.rank}")
        if src not in self._out or dst not in self._out:
            raise KeyError(f"arc endpoint not in automaton: {src} -> {dst}")
        e = self._next_arc
        self._next_arc += 1
        self._arcs[e] = (src, label, dst)
        self._out[src].setdefault(label, []).append(e)
        self._in[dst].setdefault(label, []).append(e)
        return e

    def remove_arc(self, e: int) -> None:
        src, label, dst = self._arcs.pop(e)
        _discard(self._out[src], label, e)
        _discard(self._in[dst], label, e)

    def remove_vertex(self, v: int) -> None:
        if v == self.basepoint:
            raise ValueError("cannot remove the basepoint")
        for e, _ in self.incident(v):
            if e in self._arcs:
                self.remove_arc(e)
        del self._out[v]
        del self._in[v]

    def redirect_arc(self, e: int, src: int, dst: int) -> None:
        _, label, _ = self._arcs[e]
        self.remove_arc(e)
        self._arcs[e] = (src, label, dst)
        self._out[src].setdefault(label, []).append(e)
        self._in[dst].setdefault(label, []).append(e)

    def copy(self) -> Automaton:
        new = Automaton.__new__(type(self))
        new.__dict__.update(self.__dict__)
        new._arcs = dict(self._arcs)
        new._out = {v: {a: list(es) for a, es in d.items()} for v, d in self._out.items()}
        new._in = {v: {a: list(es) for a, es in d.items()} for v, d in self._in.items()}
        return new

    def rebased(self, v: int) -> Automaton:
        new = self.copy()
        if v not in self._out:
            raise KeyError(v)
        new.basepoint = v
        return new

    # -- queries -----------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self._out)

    def has_vertex(self, v: int) -> bool:
        return v in self._out

    def has_arc(self, e: int) -> bool:
        return e in self._arcs

    @property
    def num_vertices(self) -> int:
        return len(self._out)

    @property
    def num_arcs(self) -> int:
        return len(self._arcs)

    def arc(self, e: int) -> tuple[int, int, int]:
        """``(source, label, target)`` of a live arc."""
        return self._arcs[e]

    def arcs(self) -> list[tuple[int, int, int, int]]:
        """``(id, source, label, target)`` for every arc, by id."""
        return [(e, *self._arcs[e]) for e in sorted(self._arcs)]

    def arcs_from(self, v: int, letter: int) -> list[tuple[int, int]]:
        """Steps leaving ``v`` that read the signed ``letter``."""
        if letter > 0:
            return [(e, 1) for e in sorted(self._out[v].get(letter, ()))]
        return [(e, -1) for e in sorted(self._in[v].get(-letter, ()))]

    def incident(self, v: int) -> list[tuple[int, int]]:
        """Every step leaving ``v``; a loop shows up once per direction."""
        steps = []
        for letter in self.alphabet.letters():
            steps += self.arcs_from(v, letter)
        return steps

    def degree(self, v: int) -> int:
        return sum(len(es) for es in self._out[v].values()) + sum(
            len(es) for es in self._in[v].values()
        )

    def step(self, v: int, letter: int) -> int | None:
        """Target of the (first) ``letter``-step from ``v``, or None."""
        if letter > 0:
            es = self._out[v].get(letter)
            return self._arcs[es[0]][2] if es else None
        es = self._in[v].get(-letter)
        return self._arcs[es[0]][0] if es else None

    def step_end(self, e: int, direction: int) -> tuple[int, int]:
        src, _, dst = self._arcs[e]
        return (src, dst) if direction > 0 else (dst, src)

    def is_deterministic(self) -> bool:
        for table in (self._out, self._in):
            for d in table.values():
                if any(len(es) > 1 for es in d.values()):
                    return False
        return True

    def is_saturated(self) -> bool:
        labels = range(1, self.alphabet.rank + 1)
        return all(
            self._out[v].get(a) and self._in[v].get(a) for v in self._out for a in labels
        )

    def deficient_vertices(self, letter: int) -> list[int]:
        """Vertices with no step reading ``letter``, in id order."""
        table = self._out if letter > 0 else self._in
        return [v for v in sorted(table) if not table[v].get(abs(letter))]

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = set()
        comps = []
        for v in sorted(self._out):
            if v in seen:
                continue
            comp = _reach(self, v)
            seen |= comp
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(_reach(self, self.basepoint)) == len(self._out)

    def path_label(self, path: Iterable[tuple[int, int]]) -> tuple[int, ...]:
        """Unreduced label of a path."""
        return tuple(self._arcs[e][1] * d for e, d in path)

    def __repr__(self):
        return (
            f"<Automaton rank={self.alphabet.rank} vertices={self.num_vertices} "
            f"arcs={self.num_arcs} base={self.basepoint}>"
        )


def _discard(table: dict[int, list[int]], label: int, e: int) -> None:
    es = table[label]
    es.remove(e)
    if not es:
        del table[label]


def _reach(A: Automaton, v: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for e, d in A.incident(x):
            y = A.step_end(e, d)[1]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _require_connected(A: Automaton) -> None:
    if not A.is_connected():
        raise DisconnectedError("automaton is not connected")


def _require_deterministic(A: Automaton) -> None:
    if not A.is_deterministic():
        raise NotDeterministicError("automaton is not deterministic")


# -- constructors -------------------------------------------------------------


def flower(alphabet: Alphabet, generators: Iterable[Word]) -> Automaton:
    """One petal through the basepoint per nontrivial generator.

    ``petals`` records, for each petal, the 1-based position of its word in
    ``generators`` together with the path walking the petal forward.
    """
    A = Automaton(alphabet)
    petals = []
    for index, w in enumerate(generators, start=1):
        if w.alphabet != alphabet:
            raise AlphabetError(
                f"generator {str(w)!r} has rank {w.alphabet.rank}, expected {alphabet.rank}"
            )
        if not w:
            continue
        steps = []
        cur = A.basepoint
        for pos, x in enumerate(w.letters):
            nxt = A.basepoint if pos == len(w) - 1 else A.add_vertex()
            if x > 0:
                steps.append((A.add_arc(cur, x, nxt), 1))
            else:
                steps.append((A.add_arc(nxt, -x, cur), -1))
            cur = nxt
        petals.append((index, tuple(steps)))
    A.petals = tuple(petals)
    return A


def bouquet(alphabet: Alphabet) -> Automaton:
    A = Automaton(alphabet)
    for a in range(1, alphabet.rank + 1):
        A.add_arc(A.basepoint, a, A.basepoint)
    return A


# -- reading ------------------------------------------------------------------


def read_path(A: Automaton, start: int, w: Word | Iterable[int]) -> list[tuple[int, int]] | None:
    """The unique path reading ``w`` from ``start`` in a deterministic automaton."""
    path = []
    v = start
    for x in w:
        steps = A.arcs_from(v, x)
        if not steps:
            return None
        e, d = steps[0]
        path.append((e, d))
        v = A.step_end(e, d)[1]
    return path


def read_word(A: Automaton, start: int, w: Word | Iterable[int], check: bool = True) -> int | None:
    """Endpoint of the path reading ``w`` from ``start``; None if it blocks."""
    if check:
        _require_deterministic(A)
    v = start
    step = A.step
    for x in w:
        v = step(v, x)
        if v is None:
            return None
    return v


# -- core and trees -----------------------------------------------------------


def _prune(A: Automaton) -> None:
    """Delete non-basepoint vertices of degree <= 1 until none remain."""
    todo = deque(v for v in A.vertices if A.degree(v) <= 1)
    while todo:
        v = todo.popleft()
        if v == A.basepoint or not A.has_vertex(v) or A.degree(v) > 1:
            continue
        nbrs = [A.step_end(e, d)[1] for e, d in A.incident(v)]
        A.remove_vertex(v)
        todo.extend(u for u in nbrs if u != v)


def core(A: Automaton) -> Automaton:
    """Largest subautomaton whose vertices lie on reduced basepoint loops.

    Implemented by pruning non-basepoint vertices of degree at most one,
    which is exact for deterministic connected automata.
    """
    _require_connected(A)
    _require_deterministic(A)
    B = A.copy()
    _prune(B)
    return B


class RestrictedCore(NamedTuple):
    graph: Automaton
    attach: int
    hair: Word


def restricted_core(A: Automaton) -> RestrictedCore:
    """Strip the basepoint hair from a core automaton.

    ``graph`` is based at ``attach`` (the vertex the hair ended at) purely as
    a convenience; ``hair`` labels the removed path from the old basepoint.
    """
    _require_connected(A)
    _require_deterministic(A)
    if graph_rank(A) == 0:
        raise ValueError("restricted core of the trivial subgroup is empty")
    B = core(A)
    letters = []
    v = B.basepoint
    while B.degree(v) == 1:
        ((e, d),) = B.incident(v)
        letters.append(B.arc(e)[1] * d)
        nxt = B.step_end(e, d)[1]
        B.basepoint = nxt
        B.remove_vertex(v)
        v = nxt
    return RestrictedCore(B, v, Word(A.alphabet, letters, _checked=True))


def tree_paths(A: Automaton, root: int | None = None) -> dict[int, list[tuple[int, int]]]:
    """BFS spanning-tree geodesics from ``root`` (default the basepoint).

    Neighbours are explored in letter order a, A, b, B, ... and arc id order.
    The dict is in BFS discovery order.
    """
    root = A.basepoint if root is None else root
    paths = {root: []}
    queue = deque([root])
    letters = A.alphabet.letters()
    while queue:
        v = queue.popleft()
        for x in letters:
            for e, d in A.arcs_from(v, x):
                u = A.step_end(e, d)[1]
                if u not in paths:
                    paths[u] = paths[v] + [(e, d)]
                    queue.append(u)
    return paths


def spanning_tree(A: Automaton) -> frozenset[int]:
    _require_connected(A)
    paths = tree_paths(A)
    return frozenset(p[-1][0] for p in paths.values() if p)


def graph_rank(A: Automaton) -> int:
    _require_connected(A)
    return 1 - A.num_vertices + A.num_arcs


# -- products -----------------------------------------------------------------


class ProductAutomaton(Automaton):
    """Product automaton that remembers which vertex pair each vertex is."""

    pairs: dict[int, tuple[int, int]]
    index: dict[tuple[int, int], int]


def _check_same(A1: Automaton, A2: Automaton) -> None:
    if A1.alphabet != A2.alphabet:
        raise AlphabetError(
            f"alphabet mismatch: rank {A1.alphabet.rank} vs rank {A2.alphabet.rank}"
        )


def product(A1: Automaton, A2: Automaton) -> ProductAutomaton:
    """Full pullback on ``V1 x V2``; vertex ids follow lexicographic pair order."""
    _check_same(A1, A2)
    P = ProductAutomaton.__new__(ProductAutomaton)
    Automaton.__init__(P, A1.alphabet)
    V1, V2 = A1.vertices, A2.vertices
    P.pairs = {0: (V1[0], V2[0])}
    for i, p in enumerate(V1):
        for j, q in enumerate(V2):
            v = P.add_vertex() if (i, j) != (0, 0) else 0
            P.pairs[v] = (p, q)
    P.index = {pq: v for v, pq in P.pairs.items()}
    P.basepoint = P.index[(A1.basepoint, A2.basepoint)]
    for a in range(1, A1.alphabet.rank + 1):
        for p in V1:
            for e1 in sorted(A1._out[p].get(a, ())):
                p2 = A1.arc(e1)[2]
                for q in V2:
                    for e2 in sorted(A2._out[q].get(a, ())):
                        P.add_arc(P.index[(p, q)], a, P.index[(p2, A2.arc(e2)[2])])
    return P


def product_component(A1: Automaton, A2: Automaton, start: tuple[int, int] | None = None) -> ProductAutomaton:
    """Connected component of the product containing ``start``.

    Vertices are discovered by synchronized BFS from ``start`` (default the
    pair of basepoints), which becomes vertex 0 and the basepoint; other ids
    follow discovery order.
    """
    _check_same(A1, A2)
    start = (A1.basepoint, A2.basepoint) if start is None else start
    P = ProductAutomaton.__new__(ProductAutomaton)
    Automaton.__init__(P, A1.alphabet)
    P.pairs = {P.basepoint: start}
    P.index = {start: P.basepoint}
    letters = A1.alphabet.letters()
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for x in letters:
            for e1, d in A1.arcs_from(p, x):
                p2 = A1.step_end(e1, d)[1]
                for e2, _ in A2.arcs_from(q, x):
                    pair = (p2, A2.step_end(e2, d)[1])
                    if pair not in P.index:
                        u = P.add_vertex()
                        P.index[pair] = u
                        P.pairs[u] = pair
                        queue.append(pair)
    for v in P.vertices:
        p, q = P.pairs[v]
        for a in range(1, A1.alphabet.rank + 1):
            for e1 in sorted(A1._out[p].get(a, ())):
                for e2 in sorted(A2._out[q].get(a, ())):
                    P.add_arc(v, a, P.index[(A1.arc(e1)[2], A2.arc(e2)[2])])
    return P


# -- isomorphism --------------------------------------------------------------


def _parallel_bfs(A1: Automaton, r1: int, A2: Automaton, r2: int) -> dict[int, int] | None:
    phi = {r1: r2}
    used = {r2}
    queue = deque([r1])
    letters = A1.alphabet.letters()
    while queue:
        v = queue.popleft()
        w = phi[v]
        for x in letters:
            s1, s2 = A1.arcs_from(v, x), A2.arcs_from(w, x)
            if len(s1) != len(s2):
                return None
            if not s1:
                continue
            u1 = A1.step_end(*s1[0])[1]
            u2 = A2.step_end(*s2[0])[1]
            if u1 in phi:
                if phi[u1] != u2:
                    return None
            else:
                if u2 in used:
                    return None
                phi[u1] = u2
                used.add(u2)
                queue.append(u1)
    return phi


def _comparable(A1: Automaton, A2: Automaton) -> bool:
    _require_deterministic(A1)
    _require_deterministic(A2)
    return (
        A1.alphabet == A2.alphabet
        and A1.num_vertices == A2.num_vertices
        and A1.num_arcs == A2.num_arcs
    )


def isomorphic_based(A1: Automaton, A2: Automaton) -> dict[int, int] | None:
    """The label- and basepoint-preserving isomorphism ``A1 -> A2``, if any."""
    if not _comparable(A1, A2):
        return None
    phi = _parallel_bfs(A1, A1.basepoint, A2, A2.basepoint)
    if phi is None or len(phi) != A1.num_vertices:
        return None
    return phi


def isomorphic_unbased(A1: Automaton, A2: Automaton) -> dict[int, int] | None:
    """A label-preserving isomorphism ignoring basepoints, if any.

    The smallest vertex of ``A1`` is tried against every vertex of ``A2`` in
    id order; the first success is returned.
    """
    if not _comparable(A1, A2):
        return None
    r1 = A1.vertices[0]
    for r2 in A2.vertices:
        phi = _parallel_bfs(A1, r1, A2, r2)
        if phi is not None and len(phi) == A1.num_vertices:
            return phi
    return None


# -- text formats -------------------------------------------------------------

_COLORS = ["blue", "red", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]


def to_dot(A: Automaton, name: str = "automaton") -> str:
    """DOT text with vertices renumbered ``0..k-1`` in id order."""
    relabel = {v: i for i, v in enumerate(A.vertices)}
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    for v, i in relabel.items():
        shape = ", shape=doublecircle" if v == A.basepoint else ""
        lines.append(f'  {i} [label="{i}"{shape}];')
    for e, src, label, dst in A.arcs():
        color = _COLORS[(label - 1) % len(_COLORS)]
        lines.append(f'  {relabel[src]} -> {relabel[dst]} [label="{letter_name(label)}", color={color}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(A: Automaton) -> str:
    """Line-oriented dump with vertices renumbered ``0..k-1`` in id order."""
    relabel = {v: i for i, v in enumerate(A.vertices)}
    lines = [f"alphabet {A.alphabet.rank}", f"vertices {A.num_vertices}", f"base {relabel[A.basepoint]}"]
    for e, src, label, dst in A.arcs():
        lines.append(f"arc {relabel[src]} {letter_name(label)} {relabel[dst]}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Automaton:
    header = {}
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key in ("alphabet", "vertices", "base") and len(parts) == 2:
                header[key] = int(parts[1])
            elif key == "arc" and len(parts) == 4:
                (label,) = parse_letters(parts[2])
                if label < 0:
                    raise ValueError("arc labels must be positive letters")
                arcs.append((int(parts[1]), label, int(parts[3])))
            else:
                raise ValueError("unrecognised line")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {raw.strip()!r}: {exc}") from None
    for key in ("alphabet", "vertices", "base"):
        if key not in header:
            raise ValueError(f"missing {key!r} line")
    A = Automaton(Alphabet(header["alphabet"]))
    for _ in range(header["vertices"] - 1):
        A.add_vertex()
    if not A.has_vertex(header["base"]):
        raise ValueError(f"base {header['base']} is not a vertex")
    A.basepoint = header["base"]
    for src, label, dst in arcs:
        A.add_arc(src, label, dst)
    return A


def word_of_path(A: Automaton, path: Iterable[tuple[int, int]]) -> Word:
    return Word(A.alphabet, A.path_label(path), _checked=True)


__all__ = [
    "Automaton",
    "DisconnectedError",
    "NotDeterministicError",
    "ProductAutomaton",
    "RestrictedCore",
    "bouquet",
    "core",
    "flower",
    "format_letters",
    "from_text",
    "graph_rank",
    "isomorphic_based",
    "isomorphic_unbased",
    "product",
    "product_component",
    "read_path",
    "read_word",
    "restricted_core",
    "spanning_tree",
    "to_dot",
    "to_text",
    "tree_paths",
    "word_of_path",
]
