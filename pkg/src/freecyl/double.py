"""Double cylinders: pairs of boundary points whose geodesic passes through u, then v."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .automorphism import Automorphism, apply
from .image import dual_map
from .words import (
    Alphabet,
    Letter,
    ReducedWord,
    WordError,
    anti_prefix,
    invert,
    reduce_concat,
)


class DoubleCylinderError(ValueError):
    pass


_PAIR = re.compile(r"\[[^\[\]]*\]")


@dataclass(frozen=True, order=False)
class RectanglePair:
    left: ReducedWord
    right: ReducedWord

    def __post_init__(self):
        if self.left == self.right:
            raise DoubleCylinderError(f"double cylinder needs distinct words, got [{self.left}, {self.left}]")

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "RectanglePair":
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")) or s.count(",") != 1:
            raise WordError(f"pair must look like [u, v], got {text!r}")
        a, b = s[1:-1].split(",")
        return cls(ReducedWord.parse(a, alphabet), ReducedWord.parse(b, alphabet))

    def sort_key(self):
        return (self.left.sort_key(), self.right.sort_key())

    def __str__(self) -> str:
        return f"[{self.left}, {self.right}]"


class RectangleUnion:
    """A finite union of double cylinders."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[RectanglePair] = ()):
        self.pairs = frozenset(pairs)

    def __iter__(self):
        return iter(sorted(self.pairs, key=RectanglePair.sort_key))

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RectangleUnion):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __str__(self) -> str:
        return "\n".join(str(p) for p in self)

    def __repr__(self) -> str:
        return "RectangleUnion(" + ", ".join(str(p) for p in self) + ")"

    @classmethod
    def of(cls, *pairs: tuple[ReducedWord, ReducedWord]) -> "RectangleUnion":
        return cls(RectanglePair(u, v) for u, v in pairs)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "RectangleUnion":
        """Pairs ``[u, v]`` separated by whitespace (one per line when printed)."""
        pairs = []
        pos = 0
        for m in _PAIR.finditer(text):
            gap = text[pos:m.start()]
            if gap.strip():
                raise WordError(f"unexpected text {gap.strip()!r} between pairs")
            pairs.append(RectanglePair.parse(m.group(0), alphabet))
            pos = m.end()
        if text[pos:].strip():
            raise WordError(f"unexpected text {text[pos:].strip()!r} after pairs")
        return cls(pairs)

    def __or__(self, other: "RectangleUnion") -> "RectangleUnion":
        return RectangleUnion(self.pairs | other.pairs)


def is_rectangle(u: ReducedWord, v: ReducedWord) -> bool:
    """True iff the double cylinder [u, v] is the product C_u x C_v."""
    if u == v:
        raise DoubleCylinderError("u and v must differ")
    return anti_prefix(u, v)


def translate(w: ReducedWord, R: RectangleUnion) -> RectangleUnion:
    return RectangleUnion(
        RectanglePair(reduce_concat(w, p.left), reduce_concat(w, p.right)) for p in R.pairs
    )


def _letter_code(letter, alphabet: Alphabet) -> int:
    if isinstance(letter, Letter):
        return letter.code()
    if isinstance(letter, ReducedWord):
        if len(letter) != 1:
            raise WordError(f"expected a single letter, got {letter}")
        return letter[0]
    if isinstance(letter, str):
        return alphabet.parse_letter(letter)
    return int(letter)


def split_unit(letter, alphabet: Alphabet, side: str = "right") -> RectangleUnion:
    """[1, x] as the disjoint union of the [y, x] over letters y != x.

    With ``side="left"`` the mirror decomposition of [x, 1] into the [x, y].
    """
    x = _letter_code(letter, alphabet)
    one = lambda c: ReducedWord((c,), alphabet, check=False)
    pairs = []
    for y in alphabet.letters():
        if y != x:
            pairs.append((one(y), one(x)) if side == "right" else (one(x), one(y)))
    return RectangleUnion.of(*pairs)


def _product(phi: Automorphism, u: ReducedWord, v: ReducedWord) -> RectangleUnion:
    left = dual_map(phi, u).sorted_words()
    right = dual_map(phi, v).sorted_words()
    return RectangleUnion.of(*[(a, b) for a in left for b in right])


def double_image(phi: Automorphism, u: ReducedWord, v: ReducedWord) -> RectangleUnion:
    """The image of the double cylinder [u, v] as a disjoint union of double cylinders."""
    if u == v:
        raise DoubleCylinderError("u and v must differ")
    if anti_prefix(u, v):
        return _product(phi, u, v)
    al = u.alphabet
    short, long_ = (u, v) if len(u) < len(v) else (v, u)
    gap = len(long_) - len(short)
    if gap >= 2:
        w = ReducedWord(long_.letters[: len(short) + 1], al, check=False)
        winv = invert(w)
        inner = double_image(phi, reduce_concat(winv, u), reduce_concat(winv, v))
        return translate(apply(phi, w), inner)
    # gap 1: move the shorter word to the origin and split
    x = long_.letters[-1]
    side = "right" if short is u else "left"
    out = RectangleUnion()
    for p in split_unit(x, al, side).pairs:
        out = out | _product(phi, p.left, p.right)
    return translate(apply(phi, short), out) if len(short) else out


def double_image_closed(phi: Automorphism, u: ReducedWord, v: ReducedWord) -> RectangleUnion:
    """Closed-form image: left words phi(v).phi*(v^-1 u), right words phi(u).phi*(u^-1 v)."""
    if u == v:
        raise DoubleCylinderError("u and v must differ")
    pu, pv = apply(phi, u), apply(phi, v)
    left = [reduce_concat(pv, x) for x in dual_map(phi, reduce_concat(invert(v), u)).sorted_words()]
    right = [reduce_concat(pu, y) for y in dual_map(phi, reduce_concat(invert(u), v)).sorted_words()]
    return RectangleUnion.of(*[(a, b) for a in left for b in right])
