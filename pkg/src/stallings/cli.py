"""Command-line front end: ``stallings <verb> [options] [words]``.

Exit status is 0 on success, 1 when a decision comes out negative
(non-member, not conjugate, infinite index, disjoint cosets, ...) and 2 on
usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .automaton import Automaton, to_dot, to_text
from .enumeration import EnumerationTooLarge, enumerate_index_subgroups
from .subgroup import (
    Subgroup,
    are_conjugate,
    coset_intersect,
    express,
    finite_index_data,
    hall_completion,
    intersect,
    is_free_family,
    is_generating,
    is_normal,
    shn_audit,
)
from .words import Alphabet, AlphabetError, WordSyntaxError, parse_letters, parse_word


class UsageError(Exception):
    pass


# verb -> (needs H, needs K, number of positional words or None for any)
VERBS = {
    "reduce": (False, False, None),
    "stallings": (True, False, 0),
    "basis": (True, False, 0),
    "rank": (True, False, 0),
    "member": (True, False, 1),
    "express": (True, False, 1),
    "index": (True, False, 0),
    "transversal": (True, False, 0),
    "normal": (True, False, 0),
    "conjugate": (True, True, 0),
    "intersect": (True, True, 0),
    "shn": (True, True, 0),
    "coset": (True, True, 2),
    "hall": (True, False, 0),
    "enumerate": (False, False, 0),
    "free-family": (True, False, 0),
    "generates": (True, False, 0),
    "dot": (True, False, 0),
}


def fmt(w) -> str:
    return str(w) or "1"


def render_dot(obj: Subgroup | Automaton, name: str = "stallings") -> str:
    """DOT text for a subgroup's Stallings automaton, or any automaton."""
    A = obj.stallings if isinstance(obj, Subgroup) else obj
    return to_dot(A, name)


def read_generators(path: str) -> list[str]:
    """Words from a generator file: one per line, ``#`` starts a comment."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc.strerror}") from None
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _infer_rank(texts: Sequence[str]) -> int:
    top = 1
    for t in texts:
        for x in parse_letters(t):
            top = max(top, abs(x))
    return top


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stallings",
        description="Stallings automata of finitely generated subgroups of free groups.",
    )
    ap.add_argument("verb", choices=sorted(VERBS), metavar="verb", help=", ".join(VERBS))
    ap.add_argument("words", nargs="*", help="words in the letters a..z / A..Z (or x<k> / X<k>)")
    ap.add_argument("-n", "--rank", type=int, default=None,
                    help="rank of the ambient free group (default: largest letter seen)")
    ap.add_argument("-H", dest="H", metavar="FILE", help="generators of H, one word per line ('-' for stdin)")
    ap.add_argument("-K", dest="K", metavar="FILE", help="generators of K, one word per line")
    ap.add_argument("-k", dest="k", type=int, help="index for 'enumerate'")
    ap.add_argument("-o", dest="output", metavar="PATH", help="write output here instead of stdout")
    ap.add_argument("--seed", type=int, default=None, help="reserved for randomised features")
    ap.add_argument("-v", "--verbose", action="store_true", help="dump the folding trace to stderr")
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    ap = build_parser()
    try:
        args = ap.parse_intermixed_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        status, text = dispatch(args, err)
    except (UsageError, WordSyntaxError, AlphabetError, EnumerationTooLarge) as exc:
        print(f"stallings: {args.verb}: {exc}", file=err)
        return 2
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"stallings: cannot write {args.output!r}: {exc.strerror}", file=err)
            return 2
    else:
        out.write(text)
    return status


def dispatch(args, err) -> tuple[int, str]:
    need_h, need_k, arity = VERBS[args.verb]
    if arity is not None and len(args.words) != arity:
        raise UsageError(f"expected {arity} word argument(s), got {len(args.words)}")
    if need_h and args.H is None:
        raise UsageError("missing -H generator file")
    if need_k and args.K is None:
        raise UsageError("missing -K generator file")
    if args.verb == "enumerate" and args.k is None:
        raise UsageError("missing -k index")

    h_words = read_generators(args.H) if need_h else []
    k_words = read_generators(args.K) if need_k else []
    if args.rank is None:
        rank = _infer_rank(list(args.words) + h_words + k_words)
    elif args.rank < 1:
        raise UsageError(f"rank must be positive, got {args.rank}")
    else:
        rank = args.rank
    F = Alphabet(rank)
    words = [parse_word(w, F) for w in args.words]
    H = Subgroup(F, h_words) if need_h else None
    K = Subgroup(F, k_words) if need_k else None
    if args.verbose and H is not None:
        err.write(H.trace.dump())

    verb = args.verb
    if verb == "reduce":
        return 0, "".join(fmt(w) + "\n" for w in words)
    if verb == "stallings":
        return 0, to_text(H.stallings)
    if verb == "basis":
        return 0, "".join(fmt(w) + "\n" for w in H.basis)
    if verb == "rank":
        return 0, f"{H.rank}\n"
    if verb == "member":
        witness = express(H, words[0])
        return (1, "no\n") if witness is None else (0, f"yes\n{witness}\n")
    if verb == "express":
        witness = express(H, words[0])
        return (1, "not a member\n") if witness is None else (0, f"{witness}\n")
    if verb in ("index", "transversal"):
        data = finite_index_data(H)
        if data is None:
            return 1, "infinite\n"
        reps = "".join(fmt(w) + "\n" for w in data.transversal)
        return 0, (f"{data.index}\n" + reps) if verb == "index" else reps
    if verb == "normal":
        return (0, "yes\n") if is_normal(H) else (1, "no\n")
    if verb == "conjugate":
        w = are_conjugate(H, K)
        return (1, "no\n") if w is None else (0, fmt(w) + "\n")
    if verb == "intersect":
        return 0, "".join(fmt(w) + "\n" for w in intersect(H, K).basis)
    if verb == "shn":
        audit = shn_audit(H, K)
        rrks = " ".join(map(str, audit.component_rrks)) or "-"
        return 0, (
            f"components {rrks}\n"
            f"total {audit.total}\n"
            f"strong {audit.strong_bound}\n"
            f"howson {audit.howson_bound}\n"
        )
    if verb == "coset":
        w = coset_intersect(H, words[0], K, words[1])
        return (1, "disjoint\n") if w is None else (0, fmt(w) + "\n")
    if verb == "hall":
        C = hall_completion(H)
        return 0, f"{C.stallings.num_vertices}\n" + "".join(fmt(w) + "\n" for w in C.generators)
    if verb == "enumerate":
        lines = []
        for S in enumerate_index_subgroups(F, args.k):
            lines.append(" ".join(fmt(w) for w in S.basis) + "\n")
        return 0, "".join(lines)
    if verb == "free-family":
        # a question about the listed words themselves, not their span
        ok = is_free_family(F, H.generators)
        return (0, "yes\n") if ok else (1, "no\n")
    if verb == "generates":
        return (0, "yes\n") if is_generating(F, H.generators) else (1, "no\n")
    if verb == "dot":
        return 0, render_dot(H)
    raise UsageError(f"unknown verb {verb!r}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
