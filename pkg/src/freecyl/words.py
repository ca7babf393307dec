"""Freely reduced words over a finite alphabet and its formal inverses.

Letters are stored as nonzero ints: ``+i`` is the i-th generator (1-based),
``-i`` its inverse.  Text syntax uses lowercase letters for generators in
alphabet order and uppercase for inverses; the empty word is ``"1"``.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


class WordError(ValueError):
    pass


class AlphabetMismatch(WordError):
    pass


@dataclass(frozen=True)
class Alphabet:
    rank: int
    names: tuple[str, ...]

    def __post_init__(self):
        if self.rank < 2:
            raise WordError(f"rank must be at least 2, got {self.rank}")
        if len(self.names) != self.rank:
            raise WordError("need exactly one name per generator")
        if len(set(self.names)) != self.rank:
            raise WordError(f"generator names are not distinct: {self.names}")

    @classmethod
    def of_rank(cls, rank: int) -> "Alphabet":
        if not 2 <= rank <= 26:
            raise WordError(f"rank must be in 2..26, got {rank}")
        return cls(rank, tuple(string.ascii_lowercase[:rank]))

    def letters(self) -> list[int]:
        """All 2*rank letters in canonical order (a, A, b, B, ...)."""
        out = []
        for i in range(1, self.rank + 1):
            out.extend((i, -i))
        return out

    def letter_name(self, x: int) -> str:
        name = self.names[abs(x) - 1]
        return name if x > 0 else name.upper()

    def parse_letter(self, ch: str) -> int:
        low = ch.lower()
        if low not in self.names:
            raise WordError(f"unknown letter {ch!r} for alphabet {''.join(self.names)}")
        i = self.names.index(low) + 1
        return i if ch == low else -i


class Letter(NamedTuple):
    generator: int
    sign: int

    def code(self) -> int:
        return self.generator * self.sign

    @classmethod
    def from_code(cls, x: int) -> "Letter":
        return cls(abs(x), 1 if x > 0 else -1)


def letter_key(x: int) -> tuple[int, int]:
    # generator index first, positive before negative
    return (abs(x), 0 if x > 0 else 1)


def is_reduced_tuple(letters: Iterable[int]) -> bool:
    prev = 0
    for x in letters:
        if x == -prev:
            return False
        prev = x
    return True


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class ReducedWord:
    """An immutable freely reduced word."""

    __slots__ = ("letters", "alphabet", "_hash")

    def __init__(self, letters: Iterable[int], alphabet: Alphabet, *, check: bool = True):
        letters = tuple(letters)
        if check:
            for x in letters:
                if x == 0 or abs(x) > alphabet.rank:
                    raise WordError(f"letter {x} outside alphabet of rank {alphabet.rank}")
            if not is_reduced_tuple(letters):
                raise WordError(f"word {letters} is not freely reduced")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "_hash", hash((letters, alphabet.rank)))

    def __setattr__(self, name, value):
        raise AttributeError("ReducedWord is immutable")

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "ReducedWord":
        """Parse word syntax; rejects words that are not freely reduced."""
        letters = _parse_letters(text, alphabet)
        if not is_reduced_tuple(letters):
            raise WordError(f"word {text!r} is not freely reduced")
        return cls(letters, alphabet, check=False)

    @classmethod
    def parse_and_reduce(cls, text: str, alphabet: Alphabet) -> "ReducedWord":
        return cls(reduce_letters(_parse_letters(text, alphabet)), alphabet, check=False)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "ReducedWord":
        return cls((), alphabet, check=False)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        return (len(self.letters), tuple(letter_key(x) for x in self.letters))

    def __lt__(self, other: "ReducedWord") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(self.alphabet.letter_name(x) for x in self.letters)

    def __repr__(self) -> str:
        return f"ReducedWord({str(self)!r})"

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return reduce_concat(self, other)

    def __invert__(self) -> "ReducedWord":
        return invert(self)


def _parse_letters(text: str, alphabet: Alphabet) -> tuple[int, ...]:
    text = text.strip()
    if text == "1":
        return ()
    if not text:
        raise WordError("empty string is not a word; write '1' for the empty word")
    return tuple(alphabet.parse_letter(ch) for ch in text)


def _same(w1: ReducedWord, w2: ReducedWord) -> None:
    if w1.alphabet != w2.alphabet:
        raise AlphabetMismatch(f"{w1!r} and {w2!r} live over different alphabets")


def concat_letters(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Free reduction of a*b for already reduced tuples."""
    n = 0
    m = min(len(a), len(b))
    while n < m and a[-1 - n] == -b[n]:
        n += 1
    return a[: len(a) - n] + b[n:]


def reduce_concat(w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    _same(w1, w2)
    return ReducedWord(concat_letters(w1.letters, w2.letters), w1.alphabet, check=False)


def invert_letters(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(a))


def invert(w: ReducedWord) -> ReducedWord:
    return ReducedWord(invert_letters(w.letters), w.alphabet, check=False)


def lcp_len(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    n = 0
    m = min(len(a), len(b))
    while n < m and a[n] == b[n]:
        n += 1
    return n


def common_prefix(w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    _same(w1, w2)
    n = lcp_len(w1.letters, w2.letters)
    return ReducedWord(w1.letters[:n], w1.alphabet, check=False)


def is_prefix(u: ReducedWord, w: ReducedWord, strict: bool = False) -> bool:
    _same(u, w)
    if strict and len(u) >= len(w):
        return False
    return w.letters[: len(u)] == u.letters


def anti_prefix(u: ReducedWord, v: ReducedWord) -> bool:
    return not (is_prefix(u, v) or is_prefix(v, u))


def trim(w: ReducedWord, k: int) -> ReducedWord:
    if k < 0 or k > len(w):
        raise WordError(f"cannot trim {k} letters from a word of length {len(w)}")
    return ReducedWord(w.letters[: len(w) - k], w.alphabet, check=False)


def children_letters(a: tuple[int, ...], rank: int) -> Iterator[tuple[int, ...]]:
    last = a[-1] if a else 0
    for i in range(1, rank + 1):
        for x in (i, -i):
            if x != -last:
                yield a + (x,)


def extend_letters(a: tuple[int, ...], k: int, rank: int) -> list[tuple[int, ...]]:
    level = [a]
    for _ in range(k):
        level = [c for w in level for c in children_letters(w, rank)]
    return level


def extend(w: ReducedWord, k: int) -> list[ReducedWord]:
    """All reduced words of length |w|+k with prefix w, in canonical order."""
    if k < 0:
        raise WordError("extension length must be nonnegative")
    al = w.alphabet
    return [ReducedWord(t, al, check=False) for t in extend_letters(w.letters, k, al.rank)]


def all_words(alphabet: Alphabet, length: int) -> list[ReducedWord]:
    return extend(ReducedWord.empty(alphabet), length)


def extension_count(rank: int, base_len: int, k: int) -> int:
    if k == 0:
        return 1
    if base_len == 0:
        return 2 * rank * (2 * rank - 1) ** (k - 1)
    return (2 * rank - 1) ** k
