"""Reduced words in the free group on a ranked alphabet.

A letter is a nonzero int: ``+i`` is generator ``i`` (1-based) and ``-i`` its
formal inverse.  Text syntax: ``a``..``z`` are generators 1..26, uppercase is
the inverse, ``x<k>``/``X<k>`` addresses any generator by index, and ``""`` or
``"1"`` is the identity.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from ._backend import free_reduce


class WordSyntaxError(ValueError):
    pass


class AlphabetError(ValueError):
    """A letter or word does not belong to the alphabet in use."""


_TOKEN = re.compile(r"([xX])(\d+)|([a-zA-Z])|(.)")


class Alphabet:
    """The basis ``{a_1, ..., a_rank}`` of a free group of finite rank."""

    __slots__ = ("rank",)

    def __init__(self, rank: int):
        if rank < 0:
            raise ValueError(f"alphabet rank must be nonnegative, got {rank}")
        self.rank = int(rank)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and other.rank == self.rank

    def __hash__(self):
        return hash(("Alphabet", self.rank))

    def __repr__(self):
        return f"Alphabet({self.rank})"

    def letters(self) -> list[int]:
        """Signed letters in canonical order a, A, b, B, ..."""
        out = []
        for i in range(1, self.rank + 1):
            out += [i, -i]
        return out

    def check_letter(self, x: int) -> None:
        if x == 0 or abs(x) > self.rank:
            raise AlphabetError(
                f"letter {letter_name(x) if x else '0'!r} outside alphabet of rank {self.rank}"
            )

    def word(self, letters: Iterable[int] = ()) -> Word:
        return Word(self, letters)

    def identity(self) -> Word:
        return Word(self, ())

    def generators(self) -> list[Word]:
        return [Word(self, (i,)) for i in range(1, self.rank + 1)]

    def parse(self, text: str) -> Word:
        return parse_word(text, self)


def letter_name(x: int) -> str:
    i = abs(x)
    if i <= 26:
        c = chr(ord("a") + i - 1)
        return c if x > 0 else c.upper()
    return f"x{i}" if x > 0 else f"X{i}"


def format_letters(letters: Iterable[int]) -> str:
    return "".join(letter_name(x) for x in letters)


def parse_letters(text: str) -> list[int]:
    """Tokenize a word without reducing it or checking the alphabet."""
    text = text.strip()
    if text in ("", "1"):
        return []
    out = []
    for m in _TOKEN.finditer(text):
        prefix, digits, single, bad = m.groups()
        if bad is not None:
            raise WordSyntaxError(f"invalid token {bad!r} in word {text!r}")
        if prefix is not None:
            index = int(digits)
            if index == 0:
                raise WordSyntaxError(f"invalid token {m.group(0)!r} in word {text!r}")
            out.append(index if prefix == "x" else -index)
        else:
            index = ord(single.lower()) - ord("a") + 1
            out.append(index if single.islower() else -index)
    return out


def parse_word(text: str, alphabet: Alphabet) -> Word:
    letters = parse_letters(text)
    for x in letters:
        if abs(x) > alphabet.rank:
            raise AlphabetError(
                f"letter {letter_name(x)!r} in word {text.strip()!r} outside alphabet of rank {alphabet.rank}"
            )
    return Word(alphabet, letters, _checked=True)


class Word:
    """An element of the free group, always stored reduced."""

    __slots__ = ("alphabet", "letters", "_hash")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = (), _checked=False):
        letters = tuple(letters)
        if not _checked:
            for x in letters:
                alphabet.check_letter(x)
        self.alphabet = alphabet
        self.letters = free_reduce(letters)
        self._hash = None

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters and self.alphabet == other.alphabet
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.rank, self.letters))
        return self._hash

    def __str__(self):
        return format_letters(self.letters)

    def __repr__(self):
        return f"Word({str(self) or '1'!r})"

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else invert(self)
        return Word(self.alphabet, base.letters * abs(n), _checked=True)

    def inverse(self) -> Word:
        return invert(self)

    def conjugate(self, z: Word) -> Word:
        """``z^-1 * self * z``."""
        return invert(z) * self * z


def reduce(alphabet: Alphabet, raw: Sequence[int] | str) -> Word:
    if isinstance(raw, str):
        return parse_word(raw, alphabet)
    return Word(alphabet, raw)


def _same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetError(f"alphabet mismatch: rank {u.alphabet.rank} vs rank {v.alphabet.rank}")


def multiply(u: Word, v: Word) -> Word:
    _same_alphabet(u, v)
    # both factors are reduced, so cancellation only happens at the seam
    a, b = u.letters, v.letters
    i = 0
    m = min(len(a), len(b))
    while i < m and a[len(a) - 1 - i] == -b[i]:
        i += 1
    w = Word.__new__(Word)
    w.alphabet = u.alphabet
    w.letters = a[: len(a) - i] + b[i:]
    w._hash = None
    return w


def invert(w: Word) -> Word:
    out = Word.__new__(Word)
    out.alphabet = w.alphabet
    out.letters = tuple(-x for x in reversed(w.letters))
    out._hash = None
    return out


def exponent_sum(w: Word, g: int | str) -> int:
    """Signed number of occurrences of generator ``g`` in ``w``."""
    if isinstance(g, str):
        (g,) = parse_letters(g)
        g = abs(g)
    if g < 1 or g > w.alphabet.rank:
        raise AlphabetError(f"generator index {g} outside alphabet of rank {w.alphabet.rank}")
    return sum((1 if x > 0 else -1) for x in w.letters if abs(x) == g)


def product(words: Iterable[Word], alphabet: Alphabet) -> Word:
    out = alphabet.identity()
    for w in words:
        out = out * w
    return out
