"""Stallings foldings with a replayable trace.

Folding identifies two equally labelled arcs sharing an endpoint.  Every
elementary fold is logged, so a loop in the folded automaton can be lifted
back, fold by fold, to a loop in the automaton we started from (usually a
flower), and from there read off as a product of the original generators.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .automaton import Automaton, _require_connected
from .words import Alphabet, Word, letter_name

Path = list[tuple[int, int]]


@dataclass(frozen=True)
class FoldEvent:
    """One elementary fold.

    The two arcs share ``shared_endpoint``: as sources when ``outgoing`` is
    true, as targets otherwise.  Lower ids survive.  For a closed fold the
    far endpoints already coincide and ``survivor_vertex == absorbed_vertex``.
    """

    kind: str
    label: int
    survivor_arc: int
    absorbed_arc: int
    survivor_vertex: int
    absorbed_vertex: int
    shared_endpoint: int
    outgoing: bool

    @property
    def closed(self) -> bool:
        return self.kind == "closed"

    def describe(self) -> str:
        letter = letter_name(self.label if self.outgoing else -self.label)
        return (
            f"{self.kind} {letter} at {self.shared_endpoint}: "
            f"arc {self.absorbed_arc}->{self.survivor_arc} "
            f"vertex {self.absorbed_vertex}->{self.survivor_vertex}"
        )


class FoldingTrace:
    """Initial automaton plus the ordered fold events applied to it.

    Intermediate automata are never stored.  Arcs are only ever deleted by
    folding, so the endpoints of an arc after ``i`` folds are its initial
    endpoints pushed through the vertex merges of the first ``i`` events.
    """

    def __init__(self, initial: Automaton, events: Sequence[FoldEvent], final: Automaton):
        self.initial = initial
        self.events = tuple(events)
        self.final = final
        self._merged: dict[int, tuple[int, int]] = {}
        for i, ev in enumerate(self.events):
            if not ev.closed:
                self._merged[ev.absorbed_vertex] = (ev.survivor_vertex, i)

    def __len__(self):
        return len(self.events)

    @property
    def closed_count(self) -> int:
        return sum(ev.closed for ev in self.events)

    def vertex_at(self, v: int, step: int) -> int:
        """Where initial vertex ``v`` lives after the first ``step`` folds."""
        while v in self._merged and self._merged[v][1] < step:
            v = self._merged[v][0]
        return v

    def endpoints_at(self, e: int, step: int) -> tuple[int, int]:
        src, _, dst = self.initial.arc(e)
        return self.vertex_at(src, step), self.vertex_at(dst, step)

    def replay(self, steps: int | None = None) -> Automaton:
        """Rebuild the automaton after ``steps`` folds (default: all)."""
        A = self.initial.copy()
        for ev in self.events[: len(self.events) if steps is None else steps]:
            _apply(A, ev.survivor_arc, ev.absorbed_arc, ev.outgoing)
        return A

    def dump(self) -> str:
        return "".join(ev.describe() + "\n" for ev in self.events)


def _far(A: Automaton, e: int, outgoing: bool) -> int:
    src, _, dst = A.arc(e)
    return dst if outgoing else src


def _apply(A: Automaton, e_s: int, e_a: int, outgoing: bool) -> tuple[int, int]:
    """Fold arc ``e_a`` onto ``e_s``; return (survivor, absorbed) far vertices."""
    f_s, f_a = _far(A, e_s, outgoing), _far(A, e_a, outgoing)
    A.remove_arc(e_a)
    if f_s == f_a:
        return f_s, f_s
    keep, gone = min(f_s, f_a), max(f_s, f_a)
    if gone == A.basepoint:
        A.basepoint = keep
    moving = set()
    for table in (A._out[gone], A._in[gone]):
        for es in table.values():
            moving.update(es)
    for e in sorted(moving):
        src, _, dst = A.arc(e)
        A.redirect_arc(e, keep if src == gone else src, keep if dst == gone else dst)
    A.remove_vertex(gone)
    return keep, gone


def _violation(A: Automaton, v: int) -> tuple[int, bool, int, int] | None:
    """Smallest determinism violation at ``v`` as (label, outgoing, e1, e2)."""
    for a in range(1, A.alphabet.rank + 1):
        for outgoing, table in ((True, A._out), (False, A._in)):
            es = table[v].get(a)
            if es and len(es) > 1:
                e1, e2 = sorted(es)[:2]
                return a, outgoing, e1, e2
    return None


def _all_violations(A: Automaton) -> list[tuple[int, int, bool, int, int]]:
    out = []
    for v in A.vertices:
        for a in range(1, A.alphabet.rank + 1):
            for outgoing, table in ((True, A._out), (False, A._in)):
                es = sorted(table[v].get(a, ()))
                for i in range(len(es)):
                    for j in range(i + 1, len(es)):
                        out.append((v, a, outgoing, es[i], es[j]))
    return out


def fold_to_completion(A: Automaton, rng: random.Random | None = None) -> tuple[Automaton, FoldingTrace]:
    """Fold until deterministic.  ``A`` itself is left untouched.

    Without ``rng`` suspect vertices are processed FIFO and the smallest
    violation at a vertex folds first.  With ``rng`` every fold is picked
    uniformly among all current violations (used to test confluence).
    """
    _require_connected(A)
    B = A.copy()
    events: list[FoldEvent] = []

    def fold(v, a, outgoing, e1, e2):
        e_s, e_a = min(e1, e2), max(e1, e2)
        keep, gone = _apply(B, e_s, e_a, outgoing)
        events.append(
            FoldEvent(
                kind="closed" if keep == gone else "open",
                label=a,
                survivor_arc=e_s,
                absorbed_arc=e_a,
                survivor_vertex=keep,
                absorbed_vertex=gone,
                shared_endpoint=v,
                outgoing=outgoing,
            )
        )
        return keep, gone

    if rng is not None:
        while True:
            options = _all_violations(B)
            if not options:
                break
            fold(*rng.choice(options))
        return B, FoldingTrace(A.copy(), events, B)

    queue = deque(B.vertices)
    queued = set(queue)
    while queue:
        v = queue.popleft()
        queued.discard(v)
        while B.has_vertex(v):
            found = _violation(B, v)
            if found is None:
                break
            keep, gone = fold(v, *found)
            if v == gone:
                v = keep
            elif keep != v and keep not in queued:
                queue.append(keep)
                queued.add(keep)
    return B, FoldingTrace(A.copy(), events, B)


def loss(A: Automaton) -> int:
    """Number of closed folds on the way to a deterministic automaton."""
    return fold_to_completion(A)[1].closed_count


# -- lifting --------------------------------------------------------------------


def _reduce_path(path: Iterable[tuple[int, int]]) -> Path:
    stack: Path = []
    for e, d in path:
        if stack and stack[-1] == (e, -d):
            stack.pop()
        else:
            stack.append((e, d))
    return stack


def _check_loop(A: Automaton, path: Sequence[tuple[int, int]]) -> None:
    cur = A.basepoint
    for pos, (e, d) in enumerate(path):
        if not A.has_arc(e):
            raise ValueError(f"step {pos}: arc {e} is not in the automaton")
        start, end = A.step_end(e, d)
        if start != cur:
            raise ValueError(f"step {pos}: path is discontinuous at arc {e}")
        if pos and path[pos - 1] == (e, -d):
            raise ValueError(f"step {pos}: path is not reduced")
        cur = end
    if cur != A.basepoint:
        raise ValueError("path does not return to the basepoint")


def _lift_through(trace: FoldingTrace, i: int, path: Path) -> Path:
    ev = trace.events[i]
    if ev.closed:
        # survivor arc stands in for both folded arcs; nothing else changed
        return list(path)

    def ends(e, d):
        s, t = trace.endpoints_at(e, i)
        return (s, t) if d > 0 else (t, s)

    d_in = -1 if ev.outgoing else 1
    f_s = ends(ev.survivor_arc, d_in)[0]
    f_a = ends(ev.absorbed_arc, d_in)[0]
    # survivor's far end -> shared endpoint -> absorbed's far end, label a^-1 a
    s_to_a = [(ev.survivor_arc, d_in), (ev.absorbed_arc, -d_in)]
    a_to_s = [(ev.absorbed_arc, d_in), (ev.survivor_arc, -d_in)]

    def bridge(x, y):
        if (x, y) == (f_s, f_a):
            return s_to_a
        if (x, y) == (f_a, f_s):
            return a_to_s
        raise AssertionError(f"lift through fold {i} broke continuity at {x}->{y}")

    base = trace.vertex_at(trace.initial.basepoint, i)
    out: Path = []
    cur = base
    for e, d in path:
        start, end = ends(e, d)
        if start != cur:
            out += bridge(cur, start)
        out.append((e, d))
        cur = end
    if cur != base:
        out += bridge(cur, base)
    return _reduce_path(out)


def lift_path(trace: FoldingTrace, path: Sequence[tuple[int, int]]) -> Path:
    """Lift a reduced basepoint loop of ``trace.final`` to ``trace.initial``.

    Open folds insert a bridge ``e1^-1 e2`` wherever the loop crosses between
    the two vertices the fold merged; closed folds keep the survivor arc.
    The lifted loop is reduced and its label reduces to the same word.
    """
    _check_loop(trace.final, path)
    out = list(path)
    for i in reversed(range(len(trace.events))):
        out = _lift_through(trace, i, out)
    return out


class PetalWord(tuple):
    """A product of generators: ``((index, +-1), ...)`` with 1-based indices."""

    def evaluate(self, generators: Sequence[Word], alphabet: Alphabet) -> Word:
        out = alphabet.identity()
        for index, sign in self:
            g = generators[index - 1]
            out = out * (g if sign > 0 else g.inverse())
        return out

    def __str__(self):
        if not self:
            return "1"
        return " ".join(f"v{i}" if s > 0 else f"v{i}^-1" for i, s in self)

    def __repr__(self):
        return f"PetalWord({list(self)!r})"


def petal_decompose(flower_automaton: Automaton, path: Sequence[tuple[int, int]]) -> PetalWord:
    """Split a reduced basepoint loop of a flower into whole petal traversals."""
    if flower_automaton.petals is None:
        raise ValueError("automaton was not built by flower()")
    owner = {}
    for index, steps in flower_automaton.petals:
        for e, _ in steps:
            owner[e] = (index, steps)
    factors = []
    pos = 0
    while pos < len(path):
        e, d = path[pos]
        if e not in owner:
            raise ValueError(f"arc {e} is not on any petal")
        index, steps = owner[e]
        forward = list(steps)
        backward = [(x, -y) for x, y in reversed(steps)]
        segment = list(path[pos : pos + len(steps)])
        if segment == forward:
            factors.append((index, 1))
        elif segment == backward:
            factors.append((index, -1))
        else:
            raise ValueError(f"segment at step {pos} is not a whole petal traversal")
        pos += len(steps)
    return PetalWord(factors)
