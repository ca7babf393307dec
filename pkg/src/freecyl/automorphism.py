"""Automorphisms of a free group given by generator images of phi and phi^-1."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .words import (
    Alphabet,
    AlphabetMismatch,
    ReducedWord,
    WordError,
    children_letters,
    concat_letters,
    extension_count,
    invert_letters,
)


class AutomorphismError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


def _image_table(images: tuple[tuple[int, ...], ...]) -> dict[int, tuple[int, ...]]:
    table = {}
    for i, img in enumerate(images, start=1):
        table[i] = img
        table[-i] = invert_letters(img)
    return table


def apply_letters(table: Mapping[int, tuple[int, ...]], letters) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        for y in table[x]:
            if stack and stack[-1] == -y:
                stack.pop()
            else:
                stack.append(y)
    return tuple(stack)


@dataclass(frozen=True)
class Automorphism:
    alphabet: Alphabet
    fwd: tuple[tuple[int, ...], ...]
    bwd: tuple[tuple[int, ...], ...]
    _ftab: dict = field(init=False, repr=False, compare=False, hash=False)
    _btab: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        rank = self.alphabet.rank
        if len(self.fwd) != rank or len(self.bwd) != rank:
            raise AutomorphismError(f"need {rank} images for phi and for its inverse")
        for imgs in (self.fwd, self.bwd):
            for i, img in enumerate(imgs, start=1):
                if not img:
                    raise AutomorphismError(f"image of {self.alphabet.names[i - 1]} is empty")
                ReducedWord(img, self.alphabet)  # raises on unreduced or foreign letters
        object.__setattr__(self, "_ftab", _image_table(self.fwd))
        object.__setattr__(self, "_btab", _image_table(self.bwd))
        validate(self)

    @classmethod
    def from_images(cls, fwd, bwd, alphabet: Optional[Alphabet] = None) -> "Automorphism":
        """Build from sequences of image words (strings or ReducedWords)."""
        if alphabet is None:
            alphabet = Alphabet.of_rank(len(fwd))

        def conv(w):
            if isinstance(w, ReducedWord):
                return w.letters
            return ReducedWord.parse(w, alphabet).letters

        return cls(alphabet, tuple(conv(w) for w in fwd), tuple(conv(w) for w in bwd))

    @classmethod
    def identity(cls, rank: int = 2) -> "Automorphism":
        gens = tuple((i,) for i in range(1, rank + 1))
        return cls(Alphabet.of_rank(rank), gens, gens)

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def inverse(self) -> "Automorphism":
        return Automorphism(self.alphabet, self.bwd, self.fwd)

    def image_of(self, x: int) -> tuple[int, ...]:
        return self._ftab[x]

    def apply_letters(self, letters) -> tuple[int, ...]:
        return apply_letters(self._ftab, letters)

    def apply_inverse_letters(self, letters) -> tuple[int, ...]:
        return apply_letters(self._btab, letters)

    def __str__(self) -> str:
        return dump_automorphism(self)


def validate(phi: Automorphism) -> None:
    """Raise AutomorphismError naming the first generator whose round trip fails."""
    al = phi.alphabet
    for i in range(1, al.rank + 1):
        back = apply_letters(phi._btab, phi._ftab[i])
        if back != (i,):
            w = ReducedWord(back, al, check=False)
            raise AutomorphismError(
                f"inverse images do not invert phi at generator {al.names[i - 1]}: "
                f"phi^-1(phi({al.names[i - 1]})) = {w}"
            )
        fwd = apply_letters(phi._ftab, phi._btab[i])
        if fwd != (i,):
            w = ReducedWord(fwd, al, check=False)
            raise AutomorphismError(
                f"inverse images do not invert phi at generator {al.names[i - 1]}: "
                f"phi(phi^-1({al.names[i - 1]})) = {w}"
            )


def is_valid(phi_fwd, phi_bwd, alphabet: Optional[Alphabet] = None) -> bool:
    try:
        Automorphism.from_images(phi_fwd, phi_bwd, alphabet)
    except (AutomorphismError, WordError):
        return False
    return True


def _check(phi: Automorphism, w: ReducedWord) -> None:
    if w.alphabet != phi.alphabet:
        raise AlphabetMismatch(f"{w!r} is not a word over the automorphism's alphabet")


def apply(phi: Automorphism, w: ReducedWord) -> ReducedWord:
    _check(phi, w)
    return ReducedWord(phi.apply_letters(w.letters), w.alphabet, check=False)


def apply_inverse(phi: Automorphism, w: ReducedWord) -> ReducedWord:
    _check(phi, w)
    return ReducedWord(phi.apply_inverse_letters(w.letters), w.alphabet, check=False)


def size(phi: Automorphism) -> int:
    return max(len(img) for img in phi.fwd + phi.bwd)


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """phi o psi: first psi, then phi."""
    if phi.alphabet != psi.alphabet:
        raise AlphabetMismatch("cannot compose automorphisms over different alphabets")
    fwd = tuple(phi.apply_letters(img) for img in psi.fwd)
    bwd = tuple(psi.apply_inverse_letters(img) for img in phi.bwd)
    return Automorphism(phi.alphabet, fwd, bwd)


# -- elementary automorphisms -------------------------------------------------

def permutation(perm, rank: Optional[int] = None) -> Automorphism:
    """Generator i goes to generator perm[i-1] (1-based)."""
    rank = rank or len(perm)
    fwd = tuple((perm[i],) for i in range(rank))
    inv = [0] * rank
    for i, p in enumerate(perm, start=1):
        inv[p - 1] = i
    bwd = tuple((inv[i],) for i in range(rank))
    return Automorphism(Alphabet.of_rank(rank), fwd, bwd)


def inversion(gen: int, rank: int) -> Automorphism:
    gens = tuple(((-i,) if i == gen else (i,)) for i in range(1, rank + 1))
    return Automorphism(Alphabet.of_rank(rank), gens, gens)


def nielsen(gen: int, other: int, rank: int) -> Automorphism:
    """a_gen -> a_gen * other, where ``other`` is a signed letter of another generator."""
    if abs(other) == gen:
        raise AutomorphismError("Nielsen move needs two different generators")
    fwd = tuple(((i, other) if i == gen else (i,)) for i in range(1, rank + 1))
    bwd = tuple(((i, -other) if i == gen else (i,)) for i in range(1, rank + 1))
    return Automorphism(Alphabet.of_rank(rank), fwd, bwd)


# -- cancellation bounds ------------------------------------------------------

@dataclass(frozen=True)
class CancellationBounds:
    """Bounds on the cancellation constants C(phi) and C(phi^-1).

    ``certified_*`` is always size**2.  ``exact_*`` is the true constant when it
    has been computed; ``empirical_*`` are lower bounds from a bounded search and
    never certify anything.
    """

    size: int
    certified_fwd: int
    certified_bwd: int
    exact_fwd: Optional[int] = None
    exact_bwd: Optional[int] = None
    empirical_fwd: Optional[int] = None
    empirical_bwd: Optional[int] = None
    empirical_depth: Optional[int] = None

    def __post_init__(self):
        if self.certified_fwd != self.size ** 2 or self.certified_bwd != self.size ** 2:
            raise ValueError("certified bounds must equal size**2")
        for emp, cert in ((self.empirical_fwd, self.certified_fwd),
                          (self.empirical_bwd, self.certified_bwd),
                          (self.exact_fwd, self.certified_fwd),
                          (self.exact_bwd, self.certified_bwd)):
            if emp is not None and emp > cert:
                raise ValueError(f"bound {emp} exceeds the certified value {cert}")

    @property
    def fwd(self) -> int:
        """Best certified bound on C(phi)."""
        return self.certified_fwd if self.exact_fwd is None else self.exact_fwd

    @property
    def bwd(self) -> int:
        return self.certified_bwd if self.exact_bwd is None else self.exact_bwd

    @property
    def is_exact(self) -> bool:
        return self.exact_fwd is not None and self.exact_bwd is not None

    def swapped(self) -> "CancellationBounds":
        """Bounds for the inverse automorphism."""
        return CancellationBounds(
            self.size, self.certified_bwd, self.certified_fwd,
            self.exact_bwd, self.exact_fwd,
            self.empirical_bwd, self.empirical_fwd, self.empirical_depth,
        )


def certified_cancellation(phi: Automorphism) -> CancellationBounds:
    s = size(phi)
    return CancellationBounds(s, s * s, s * s)


def tight_cancellation(phi: Automorphism) -> CancellationBounds:
    """Certified bounds that also carry the exact constants C(phi), C(phi^-1)."""
    from .cancellation import cancellation_constant

    s = size(phi)
    return CancellationBounds(
        s, s * s, s * s,
        exact_fwd=cancellation_constant(phi),
        exact_bwd=cancellation_constant(phi.inverse()),
    )


DEFAULT_DEFECT_BUDGET = 10 ** 7


def _max_defect(table, rank: int, depth: int) -> int:
    words = []
    level = [()]
    for _ in range(depth):
        level = [c for w in level for c in children_letters(w, rank)]
        words.extend(level)
    images = {w: apply_letters(table, w) for w in words}
    best = 0
    for u in words:
        iu = images[u]
        last = u[-1]
        for v in words:
            if v[0] == -last:
                continue
            iv = images[v]
            # cancellation between the two images is the whole defect
            n = 0
            m = min(len(iu), len(iv))
            while n < m and iu[-1 - n] == -iv[n]:
                n += 1
            if 2 * n > best:
                best = 2 * n
    return best


def empirical_cancellation(phi: Automorphism, depth: int,
                           budget: int = DEFAULT_DEFECT_BUDGET) -> CancellationBounds:
    """Largest defect |phi(u)|+|phi(v)|-|phi(uv)| over all u, v of length <= depth."""
    if depth < 1:
        raise ValueError("depth must be positive")
    rank = phi.rank
    n_words = sum(extension_count(rank, 0, k) for k in range(1, depth + 1))
    if n_words * n_words > budget:
        raise BudgetExceeded(f"{n_words}^2 word pairs exceed the budget of {budget}")
    base = certified_cancellation(phi)
    return CancellationBounds(
        base.size, base.certified_fwd, base.certified_bwd,
        empirical_fwd=_max_defect(phi._ftab, rank, depth),
        empirical_bwd=_max_defect(phi._btab, rank, depth),
        empirical_depth=depth,
    )


def defect(phi: Automorphism, u: ReducedWord, v: ReducedWord) -> int:
    iu = phi.apply_letters(u.letters)
    iv = phi.apply_letters(v.letters)
    return len(iu) + len(iv) - len(concat_letters(iu, iv))


# -- text format --------------------------------------------------------------

_LINE = re.compile(r"^(phi|inv)\s+(\S+)\s*->\s*(\S+)$")


def parse_automorphism(text: str) -> Automorphism:
    rank = None
    fwd: dict[int, tuple[int, ...]] = {}
    bwd: dict[int, tuple[int, ...]] = {}
    alphabet = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if rank is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "rank" or not parts[1].isdigit():
                raise AutomorphismError(f"line {lineno}: expected 'rank N', got {line!r}")
            rank = int(parts[1])
            try:
                alphabet = Alphabet.of_rank(rank)
            except WordError as e:
                raise AutomorphismError(f"line {lineno}: {e}") from e
            continue
        m = _LINE.match(line)
        if not m:
            raise AutomorphismError(f"line {lineno}: cannot parse {line!r}")
        kind, gen, word = m.groups()
        if gen not in alphabet.names:
            raise AutomorphismError(f"line {lineno}: unknown generator {gen!r}")
        i = alphabet.names.index(gen) + 1
        target = fwd if kind == "phi" else bwd
        if i in target:
            raise AutomorphismError(f"line {lineno}: duplicate image for {kind} {gen}")
        try:
            target[i] = ReducedWord.parse(word, alphabet).letters
        except WordError as e:
            raise AutomorphismError(f"line {lineno}: {e}") from e
    if rank is None:
        raise AutomorphismError("missing 'rank N' header")
    for name, table in (("phi", fwd), ("inv", bwd)):
        missing = [alphabet.names[i - 1] for i in range(1, rank + 1) if i not in table]
        if missing:
            raise AutomorphismError(f"missing {name} image for {', '.join(missing)}")
    return Automorphism(
        alphabet,
        tuple(fwd[i] for i in range(1, rank + 1)),
        tuple(bwd[i] for i in range(1, rank + 1)),
    )


def load_automorphism(path) -> Automorphism:
    return parse_automorphism(Path(path).read_text())


def dump_automorphism(phi: Automorphism) -> str:
    al = phi.alphabet
    lines = [f"rank {al.rank}"]
    for i, img in enumerate(phi.fwd, start=1):
        lines.append(f"phi {al.names[i - 1]} -> {ReducedWord(img, al, check=False)}")
    for i, img in enumerate(phi.bwd, start=1):
        lines.append(f"inv {al.names[i - 1]} -> {ReducedWord(img, al, check=False)}")
    return "\n".join(lines) + "\n"
